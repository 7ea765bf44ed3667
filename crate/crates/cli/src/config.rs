use std::path::{Path, PathBuf};

use tricon::enumeration::{Pipeline, PipelineRun, Seed};
use tricon::{Error, FamilySpec, Graph, OperationMask};

/// A family name, or a path to a graph6 file whose first graph is the seed.
pub fn parse_seed(text: &str) -> Result<Seed, Error> {
    if let Ok(spec) = text.parse::<FamilySpec>() {
        return Ok(Seed::Family(spec));
    }
    let path = Path::new(text);
    if !path.is_file() {
        return Err(Error::BadParameter(format!(
            "{text:?} is neither a family name nor a graph6 file"
        )));
    }
    let body = std::fs::read_to_string(path)?;
    let first = body
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::Parse(format!("{} is empty", path.display())))?;
    let graph = Graph::from_graph6(first)?;
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("seed")
        .to_string();
    Ok(Seed::External { name, graph })
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub pipeline: Pipeline,
    pub seed: Seed,
    pub max_rank: usize,
    pub ops: OperationMask,
    pub out_dir: PathBuf,
    pub resume: bool,
}

impl RunConfig {
    pub fn from_args(
        seed: &str,
        pipeline: &str,
        max_rank: usize,
        ops: &str,
        out_dir: PathBuf,
        resume: bool,
    ) -> Result<Self, Error> {
        let pipeline: Pipeline = pipeline.parse()?;
        let seed = if pipeline == Pipeline::All {
            Seed::Wheels
        } else {
            parse_seed(seed)?
        };
        let seed_rank = match seed.graph() {
            Some(g) => g.rank()?,
            None => 3,
        };
        if max_rank < seed_rank {
            return Err(Error::BadParameter(format!(
                "max rank {max_rank} is below the seed rank {seed_rank}"
            )));
        }
        Ok(RunConfig {
            pipeline,
            seed,
            max_rank,
            ops: ops.parse()?,
            out_dir,
            resume,
        })
    }

    pub fn to_run(&self) -> PipelineRun {
        PipelineRun {
            pipeline: self.pipeline,
            seed: self.seed.clone(),
            max_rank: self.max_rank,
            ops: self.ops,
            out_dir: Some(self.out_dir.clone()),
            resume: self.resume,
        }
    }
}
