//! Level files, run manifests, count reports and resumable pipeline runs.
//!
//! Layout under the output directory, one subdirectory per pipeline:
//!
//! ```text
//! <out>/<pipeline>/<seed>-r<rank>.g6      sorted canonical graph6, one per line
//! <out>/<pipeline>/<seed>-r<rank>.prov    provenance for the matching .g6 line
//! <out>/<pipeline>/<seed>.manifest.json   configuration the files belong to
//! <out>/<pipeline>/<seed>-counts.{tsv,json}
//! ```

use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    all_base, extend_all, extend_no_preserving, extend_with_minor, extract_minimal,
    no_preserving_base, with_minor_base, LevelSet, Seed,
};
use crate::canonical::{canonical_form, DedupStore, Member};
use crate::construction::{OperationMask, ProvenanceChain};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::minors::MinorTester;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    WithMinor,
    NoPreserving,
    All,
    Minimal,
}

impl Pipeline {
    pub fn as_str(&self) -> &'static str {
        match self {
            Pipeline::WithMinor => "with-minor",
            Pipeline::NoPreserving => "no-preserving",
            Pipeline::All => "all",
            Pipeline::Minimal => "minimal",
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "with-minor" => Ok(Pipeline::WithMinor),
            "no-preserving" => Ok(Pipeline::NoPreserving),
            "all" => Ok(Pipeline::All),
            "minimal" => Ok(Pipeline::Minimal),
            _ => Err(Error::BadParameter(format!("unknown pipeline {s:?}"))),
        }
    }
}

/// Identifies the configuration a directory of level files was produced by.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub pipeline: Pipeline,
    pub seed: String,
    pub seed_code: Option<String>,
    pub ops: Option<String>,
}

impl Manifest {
    fn for_run(pipeline: Pipeline, seed: &Seed, ops: OperationMask) -> Self {
        Manifest {
            pipeline,
            seed: seed.name(),
            seed_code: seed.graph().map(|g| canonical_form(&g).0.to_string()),
            ops: (pipeline == Pipeline::NoPreserving).then(|| ops.to_string()),
        }
    }
}

fn level_paths(dir: &Path, seed: &str, rank: usize) -> (PathBuf, PathBuf) {
    (
        dir.join(format!("{seed}-r{rank}.g6")),
        dir.join(format!("{seed}-r{rank}.prov")),
    )
}

/// Writes `level` as sorted canonical graph6 plus matching provenance lines.
pub fn write_level(dir: &Path, level: &LevelSet) -> Result<()> {
    fs::create_dir_all(dir)?;
    let seed = level.seed.name();
    let (g6, prov) = level_paths(dir, &seed, level.rank);
    let mut g6_out = BufWriter::new(fs::File::create(&g6)?);
    let mut prov_out = BufWriter::new(fs::File::create(&prov)?);
    for (code, member) in level.members.sorted_entries() {
        writeln!(g6_out, "{code}")?;
        writeln!(prov_out, "{}", member.provenance)?;
    }
    g6_out.flush()?;
    prov_out.flush()?;
    Ok(())
}

/// Reads a level written by [`write_level`]; `None` when the files are absent.
/// Every line must already be in canonical form.
pub fn read_level(dir: &Path, seed: &Seed, rank: usize) -> Result<Option<LevelSet>> {
    let (g6, prov) = level_paths(dir, &seed.name(), rank);
    if !g6.exists() || !prov.exists() {
        return Ok(None);
    }
    let g6_text = fs::read_to_string(&g6)?;
    let prov_text = fs::read_to_string(&prov)?;
    let codes: Vec<&str> = g6_text.lines().filter(|l| !l.is_empty()).collect();
    let chains: Vec<&str> = prov_text.lines().filter(|l| !l.is_empty()).collect();
    if codes.len() != chains.len() {
        return Err(Error::ResumeMismatch(format!(
            "{} has {} graphs but {} provenance lines",
            g6.display(),
            codes.len(),
            chains.len()
        )));
    }
    let mut members = DedupStore::new();
    for (line, chain) in codes.into_iter().zip(chains) {
        let g = Graph::from_graph6(line)?;
        let (code, canon) = canonical_form(&g);
        if code.as_str() != line {
            return Err(Error::ResumeMismatch(format!(
                "non-canonical line {line:?} in {}",
                g6.display()
            )));
        }
        let provenance = ProvenanceChain::parse(chain)?;
        members.insert_member(
            code,
            Member {
                graph: canon,
                provenance,
            },
        );
    }
    Ok(Some(LevelSet {
        rank,
        seed: seed.clone(),
        members,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub rank: usize,
    pub count: usize,
    pub max_edges: Option<usize>,
}

impl CountRow {
    pub fn of(level: &LevelSet) -> Self {
        CountRow {
            rank: level.rank,
            count: level.len(),
            max_edges: level.graphs().iter().map(Graph::edge_count).max(),
        }
    }
}

/// Writes `<seed>-counts.tsv` and `<seed>-counts.json` into `dir`.
pub fn write_count_report(
    dir: &Path,
    seed: &str,
    pipeline: Pipeline,
    rows: &[CountRow],
) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut tsv = String::from("pipeline\tseed\trank\tcount\tmax_edges\n");
    for r in rows {
        let max = r
            .max_edges
            .map(|m| m.to_string())
            .unwrap_or_else(|| "-".into());
        tsv.push_str(&format!(
            "{pipeline}\t{seed}\t{}\t{}\t{max}\n",
            r.rank, r.count
        ));
    }
    fs::write(dir.join(format!("{seed}-counts.tsv")), tsv)?;
    let json = serde_json::json!({ "pipeline": pipeline, "seed": seed, "levels": rows });
    let text = serde_json::to_string_pretty(&json).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(dir.join(format!("{seed}-counts.json")), text + "\n")?;
    Ok(())
}

/// A configured pipeline run with optional persistence and resume.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub pipeline: Pipeline,
    pub seed: Seed,
    pub max_rank: usize,
    pub ops: OperationMask,
    pub out_dir: Option<PathBuf>,
    pub resume: bool,
}

impl PipelineRun {
    fn dir(&self, pipeline: Pipeline) -> Option<PathBuf> {
        self.out_dir.as_ref().map(|d| d.join(pipeline.as_str()))
    }

    fn seed_for(&self, pipeline: Pipeline) -> Seed {
        if pipeline == Pipeline::All {
            Seed::Wheels
        } else {
            self.seed.clone()
        }
    }

    /// Runs the pipeline to `max_rank`. For [`Pipeline::Minimal`] the returned
    /// levels are the minimally 3-connected members of the with-minor levels.
    pub fn run(&self) -> Result<Vec<LevelSet>> {
        if self.ops.is_empty() {
            return Err(Error::BadParameter("operation mask is empty".into()));
        }
        match self.pipeline {
            Pipeline::Minimal => {
                let levels = self.run_engine(Pipeline::WithMinor)?;
                let minimal: Vec<LevelSet> = levels.iter().map(extract_minimal).collect();
                if let Some(dir) = self.dir(Pipeline::Minimal) {
                    self.write_manifest(&dir, Pipeline::Minimal)?;
                    for level in &minimal {
                        write_level(&dir, level)?;
                    }
                    self.write_counts(&dir, Pipeline::Minimal, &minimal)?;
                }
                Ok(minimal)
            }
            p => self.run_engine(p),
        }
    }

    fn write_manifest(&self, dir: &Path, pipeline: Pipeline) -> Result<()> {
        fs::create_dir_all(dir)?;
        let manifest = Manifest::for_run(pipeline, &self.seed_for(pipeline), self.ops);
        let text = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Io(e.to_string()))?;
        fs::write(
            dir.join(format!("{}.manifest.json", manifest.seed)),
            text + "\n",
        )?;
        Ok(())
    }

    fn write_counts(&self, dir: &Path, pipeline: Pipeline, levels: &[LevelSet]) -> Result<()> {
        let rows: Vec<CountRow> = levels.iter().map(CountRow::of).collect();
        write_count_report(dir, &self.seed_for(pipeline).name(), pipeline, &rows)
    }

    fn load_cached(&self, dir: &Path, pipeline: Pipeline) -> Result<Vec<LevelSet>> {
        let seed = self.seed_for(pipeline);
        let expected = Manifest::for_run(pipeline, &seed, self.ops);
        let path = dir.join(format!("{}.manifest.json", expected.seed));
        if !path.exists() {
            return Ok(Vec::new());
        }
        let found: Manifest = serde_json::from_str(&fs::read_to_string(&path)?).map_err(|e| {
            Error::ResumeMismatch(format!("unreadable manifest {}: {e}", path.display()))
        })?;
        if found != expected {
            return Err(Error::ResumeMismatch(format!(
                "{} was written for {found:?}, not {expected:?}",
                path.display()
            )));
        }
        let base_rank = match pipeline {
            Pipeline::All => 3,
            _ => seed
                .graph()
                .ok_or_else(|| Error::BadParameter("seed graph".into()))?
                .rank()?,
        };
        let mut levels = Vec::new();
        let mut rank = base_rank;
        while rank <= self.max_rank {
            match read_level(dir, &seed, rank)? {
                Some(level) => levels.push(level),
                None => break,
            }
            rank += 1;
        }
        Ok(levels)
    }

    fn run_engine(&self, pipeline: Pipeline) -> Result<Vec<LevelSet>> {
        let dir = self.dir(pipeline);
        let seed = self.seed_for(pipeline);
        let mut levels = match (&dir, self.resume) {
            (Some(d), true) => self.load_cached(d, pipeline)?,
            _ => Vec::new(),
        };
        if let Some(d) = &dir {
            self.write_manifest(d, pipeline)?;
        }
        let tester = match pipeline {
            Pipeline::NoPreserving => Some(MinorTester::new(
                seed.graph()
                    .ok_or_else(|| Error::BadParameter("seed graph".into()))?,
            )),
            _ => None,
        };
        let save = |level: &LevelSet| -> Result<()> {
            match &dir {
                Some(d) => write_level(d, level),
                None => Ok(()),
            }
        };
        if levels.is_empty() {
            let base = match pipeline {
                Pipeline::WithMinor | Pipeline::Minimal => with_minor_base(&seed)?,
                Pipeline::NoPreserving => no_preserving_base(&seed)?,
                Pipeline::All => all_base(),
            };
            if base.rank > self.max_rank {
                return Err(Error::BadParameter(format!(
                    "max rank {} is below the seed rank {}",
                    self.max_rank, base.rank
                )));
            }
            save(&base)?;
            levels.push(base);
        }
        while levels.last().expect("non-empty").rank < self.max_rank {
            let before = levels.len();
            let target = levels.last().expect("non-empty").rank + 1;
            match pipeline {
                Pipeline::WithMinor | Pipeline::Minimal => extend_with_minor(&mut levels, target),
                Pipeline::All => extend_all(&mut levels, target),
                Pipeline::NoPreserving => extend_no_preserving(
                    &mut levels,
                    tester.as_ref().expect("tester"),
                    self.ops,
                    target,
                )?,
            }
            debug_assert_eq!(levels.len(), before + 1);
            save(levels.last().expect("non-empty"))?;
        }
        if let Some(d) = &dir {
            self.write_counts(d, pipeline, &levels)?;
        }
        Ok(levels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;

    fn run(dir: &Path, pipeline: Pipeline, max_rank: usize, resume: bool) -> PipelineRun {
        PipelineRun {
            pipeline,
            seed: Seed::Family(FamilySpec::prism()),
            max_rank,
            ops: OperationMask::ALL,
            out_dir: Some(dir.to_path_buf()),
            resume,
        }
    }

    #[test]
    fn level_files_round_trip() {
        let tmp = tempfile::tempdir().unwrap();
        let levels = run(tmp.path(), Pipeline::WithMinor, 6, false)
            .run()
            .unwrap();
        let dir = tmp.path().join("with-minor");
        let seed = Seed::Family(FamilySpec::prism());
        let back = read_level(&dir, &seed, 6).unwrap().unwrap();
        assert_eq!(back.sorted_codes(), levels[1].sorted_codes());
        let text = fs::read_to_string(dir.join("prism-r6.g6")).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
        assert!(dir.join("prism-counts.tsv").exists());
        assert!(dir.join("prism-counts.json").exists());
    }

    #[test]
    fn resume_matches_fresh_run() {
        let tmp = tempfile::tempdir().unwrap();
        run(tmp.path(), Pipeline::NoPreserving, 6, false)
            .run()
            .unwrap();
        let resumed = run(tmp.path(), Pipeline::NoPreserving, 7, true)
            .run()
            .unwrap();
        let fresh_dir = tempfile::tempdir().unwrap();
        let fresh = run(fresh_dir.path(), Pipeline::NoPreserving, 7, false)
            .run()
            .unwrap();
        assert_eq!(resumed.len(), fresh.len());
        for (a, b) in resumed.iter().zip(&fresh) {
            assert_eq!(a.sorted_codes(), b.sorted_codes());
        }
        for name in ["prism-r7.g6", "prism-r7.prov"] {
            let a = fs::read(tmp.path().join("no-preserving").join(name)).unwrap();
            let b = fs::read(fresh_dir.path().join("no-preserving").join(name)).unwrap();
            assert_eq!(a, b, "{name}");
        }
    }

    #[test]
    fn resume_rejects_other_configuration() {
        let tmp = tempfile::tempdir().unwrap();
        run(tmp.path(), Pipeline::NoPreserving, 6, false)
            .run()
            .unwrap();
        let mut other = run(tmp.path(), Pipeline::NoPreserving, 6, true);
        other.ops = "i,ii".parse().unwrap();
        assert!(matches!(other.run(), Err(Error::ResumeMismatch(_))));
    }

    #[test]
    fn corrupted_level_is_rejected() {
        let tmp = tempfile::tempdir().unwrap();
        run(tmp.path(), Pipeline::NoPreserving, 6, false)
            .run()
            .unwrap();
        let path = tmp.path().join("no-preserving").join("prism-r6.g6");
        let text = fs::read_to_string(&path).unwrap();
        let first = text.lines().next().unwrap().to_string();
        // a permuted, non-canonical copy of the first graph
        let g = Graph::from_graph6(&first).unwrap();
        let perm: Vec<usize> = (0..g.vertex_count()).rev().collect();
        let other = g.permute(&perm).to_graph6();
        if other != first {
            fs::write(&path, text.replacen(&first, &other, 1)).unwrap();
            assert!(matches!(
                run(tmp.path(), Pipeline::NoPreserving, 6, true).run(),
                Err(Error::ResumeMismatch(_))
            ));
        }
    }

    #[test]
    fn pipeline_names() {
        for p in [
            Pipeline::WithMinor,
            Pipeline::NoPreserving,
            Pipeline::All,
            Pipeline::Minimal,
        ] {
            assert_eq!(p.as_str().parse::<Pipeline>().unwrap(), p);
        }
        assert!("fast".parse::<Pipeline>().is_err());
    }
}
