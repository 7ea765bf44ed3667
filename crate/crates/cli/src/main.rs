mod config;

use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tricon::enumeration::{
    enumerate_all_3connected, enumerate_no_preserving, is_wheel, verify_bounds, verify_dirac,
    verify_mader, Pipeline,
};
use tricon::{
    graph6, is_minimally_three_connected, is_three_connected, Error, FamilySpec, Graph, MinorTester,
};

use crate::config::{parse_seed, RunConfig};

/// Exit status for a completed check that found a violation.
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "tricon",
    version,
    about = "Enumerate and check 3-connected graphs with a fixed minor"
)]
struct Cli {
    /// Worker threads for candidate expansion (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyName {
    Prism,
    Petersen,
    Wheel,
    K3p,
    Complete,
    K5e,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a named graph as graph6.
    Family {
        name: FamilyName,
        /// r for wheel, p for k3p, n for complete.
        param: Option<usize>,
        /// Edges added inside the 3-class of K_{3,p} (0-3).
        #[arg(long, default_value_t = 0)]
        extra: usize,
    },
    /// Report connectivity, minor and deletable-edge facts for graph6 input.
    Check {
        /// graph6 file, or `-` for standard input.
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, default_value = "prism")]
        seed: String,
        /// Emit one JSON object per graph instead of TSV.
        #[arg(long)]
        json: bool,
    },
    /// Run an enumeration pipeline and write level files.
    Enumerate(EnumerateArgs),
    /// Check the size bounds or the prism-free catalog.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
}

#[derive(clap::Args, Debug)]
struct EnumerateArgs {
    /// Family name (prism, petersen, k6, ...) or a graph6 file.
    #[arg(long, default_value = "prism")]
    seed: String,
    #[arg(long, default_value = "with-minor")]
    pipeline: String,
    #[arg(long)]
    max_rank: usize,
    /// Operations used by the no-preserving pipeline.
    #[arg(long, default_value = "i,ii,iii")]
    ops: String,
    #[arg(long, env = "TRICON_OUT", default_value = "tricon-out")]
    out: std::path::PathBuf,
    /// Continue from level files already in the output directory.
    #[arg(long)]
    resume: bool,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Size bounds over graphs without seed-preserving deletable edges.
    Bounds {
        #[arg(long, default_value = "prism")]
        seed: String,
        #[arg(long)]
        max_rank: usize,
        #[arg(long, default_value = "i,ii,iii")]
        ops: String,
        #[arg(long)]
        json: bool,
    },
    /// Prism-free 3-connected graphs of one rank against the catalog.
    Dirac {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        json: bool,
    },
    /// 3r - 6 over minimally 3-connected graphs, equality only for K_{3,p}.
    Mader {
        #[arg(long)]
        max_rank: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("tricon: cannot start {n} workers: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("tricon: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))
}

fn run(command: Command) -> Result<ExitCode, Error> {
    let mut out = io::stdout().lock();
    match command {
        Command::Family { name, param, extra } => {
            let need = |what: &str| {
                param.ok_or_else(|| Error::BadParameter(format!("{what} needs a size parameter")))
            };
            let spec = match name {
                FamilyName::Prism => FamilySpec::prism(),
                FamilyName::Petersen => FamilySpec::petersen(),
                FamilyName::K5e => FamilySpec::k5_minus_e(),
                FamilyName::Wheel => FamilySpec::wheel(need("wheel")?),
                FamilyName::K3p => FamilySpec::k3p_variant(need("k3p")?, extra),
                FamilyName::Complete => FamilySpec::complete(need("complete")?),
            };
            writeln!(out, "{}", spec.build()?.to_graph6())?;
        }
        Command::Check { input, seed, json } => {
            let text = read_input(&input)?;
            let graphs = graph6::parse_lines(&text)?;
            let seed = parse_seed(&seed)?;
            let h = seed
                .graph()
                .ok_or_else(|| Error::BadParameter("seed graph".into()))?;
            let tester = MinorTester::new(h.clone());
            if !json {
                writeln!(out, "graph6\tthree_connected\tminimal\thas_minor\tpreserving_deletable\tbound\tslack")?;
            }
            for g in &graphs {
                let row = check_graph(g, &h, &tester)?;
                if json {
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&row.to_json())
                            .map_err(|e| Error::Io(e.to_string()))?
                    )?;
                } else {
                    writeln!(out, "{}", row.to_tsv())?;
                }
            }
        }
        Command::Enumerate(args) => {
            let config = RunConfig::from_args(
                &args.seed,
                &args.pipeline,
                args.max_rank,
                &args.ops,
                args.out,
                args.resume,
            )?;
            if let Some(h) = config.seed.graph() {
                if config.pipeline != Pipeline::All && is_wheel(&h) {
                    eprintln!("tricon: warning: seed {} is a wheel", config.seed);
                }
            }
            let levels = config.to_run().run()?;
            writeln!(out, "rank\tcount")?;
            for level in &levels {
                writeln!(out, "{}\t{}", level.rank, level.len())?;
            }
        }
        Command::Verify { what } => return verify(what, &mut out),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(what: VerifyCommand, out: &mut impl Write) -> Result<ExitCode, Error> {
    let ok = match what {
        VerifyCommand::Bounds {
            seed,
            max_rank,
            ops,
            json,
        } => {
            let seed = parse_seed(&seed)?;
            let h = seed.graph().expect("family or file seeds have a graph");
            let levels = enumerate_no_preserving(&seed, max_rank, ops.parse()?)?;
            let report = verify_bounds(&levels, &h)?;
            if json {
                writeln!(out, "{}", to_json(&report)?)?;
            } else {
                writeln!(out, "rank\tcount\tmax_edges\tbound\tsecondary_bound")?;
                for s in &report.summary {
                    let sec = s
                        .secondary_bound
                        .map(|b| b.to_string())
                        .unwrap_or_else(|| "-".into());
                    let max = s
                        .max_edges
                        .map(|b| b.to_string())
                        .unwrap_or_else(|| "-".into());
                    writeln!(out, "{}\t{}\t{max}\t{}\t{sec}", s.rank, s.count, s.bound)?;
                }
                writeln!(out, "violations\t{}", report.violations.len())?;
            }
            report.is_clean()
        }
        VerifyCommand::Dirac { rank, json } => {
            let report = verify_dirac(rank)?;
            if json {
                writeln!(out, "{}", to_json(&report)?)?;
            } else {
                writeln!(out, "rank\t{}", report.rank)?;
                writeln!(out, "total\t{}", report.total)?;
                writeln!(out, "with_prism_minor\t{}", report.with_prism_minor)?;
                writeln!(out, "prism_free\t{}", report.prism_free.join(" "))?;
                writeln!(out, "catalog_match\t{}", report.matches)?;
            }
            report.matches
        }
        VerifyCommand::Mader { max_rank, json } => {
            let levels = enumerate_all_3connected(max_rank)?;
            let report = verify_mader(&levels);
            if json {
                writeln!(out, "{}", to_json(&report)?)?;
            } else {
                writeln!(out, "rank\tminimal\tmax_edges\tbound\tat_bound")?;
                for s in report.summary.iter().filter(|s| s.rank >= 6) {
                    let max = s
                        .max_edges
                        .map(|b| b.to_string())
                        .unwrap_or_else(|| "-".into());
                    writeln!(
                        out,
                        "{}\t{}\t{max}\t{}\t{}",
                        s.rank,
                        s.count,
                        s.bound,
                        s.at_bound.join(" ")
                    )?;
                }
                writeln!(out, "violations\t{}", report.violations.len())?;
            }
            report.is_clean()
        }
    };
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    })
}

fn read_input(input: &str) -> Result<String, Error> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(input)?)
    }
}

struct CheckRow {
    graph6: String,
    three_connected: bool,
    minimal: Option<bool>,
    has_minor: bool,
    preserving: Option<Vec<tricon::Edge>>,
    bound: Option<(i64, i64)>,
}

fn check_graph(g: &Graph, h: &Graph, tester: &MinorTester) -> Result<CheckRow, Error> {
    let three_connected = is_three_connected(g);
    let has_minor = tester.has_minor(g);
    let minimal = three_connected
        .then(|| is_minimally_three_connected(g))
        .transpose()?;
    let preserving = (three_connected && has_minor)
        .then(|| tester.preserving_deletable_edges(g))
        .transpose()?;
    let bound = match (has_minor, g.rank(), h.rank()) {
        (true, Ok(r), Ok(hr)) => {
            let b = h.edge_count() as i64 + 3 * (r as i64 - hr as i64);
            Some((b, b - g.edge_count() as i64))
        }
        _ => None,
    };
    Ok(CheckRow {
        graph6: g.to_graph6(),
        three_connected,
        minimal,
        has_minor,
        preserving,
        bound,
    })
}

impl CheckRow {
    fn to_tsv(&self) -> String {
        let opt = |b: Option<bool>| b.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        let preserving = match &self.preserving {
            None => "-".to_string(),
            Some(edges) if edges.is_empty() => "none".to_string(),
            Some(edges) => edges
                .iter()
                .map(|(a, b)| format!("{a}-{b}"))
                .collect::<Vec<_>>()
                .join(","),
        };
        let (bound, slack) = match self.bound {
            Some((b, s)) => (b.to_string(), s.to_string()),
            None => ("-".into(), "-".into()),
        };
        format!(
            "{}\t{}\t{}\t{}\t{preserving}\t{bound}\t{slack}",
            self.graph6,
            self.three_connected,
            opt(self.minimal),
            self.has_minor
        )
    }

    fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "graph6": self.graph6,
            "three_connected": self.three_connected,
            "minimal": self.minimal,
            "has_minor": self.has_minor,
            "preserving_deletable": self.preserving.as_ref().map(|es| es.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>()),
        });
        if let Some((b, s)) = self.bound {
            v["bound"] = b.into();
            v["slack"] = s.into();
        }
        v
    }
}
