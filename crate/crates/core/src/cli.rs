//! Command-line surface: generation, partitioning, cycle factors, audits,
//! oracle suites, and a small benchmark harness.
//!
//! Exit codes: 0 verified success, 1 usage or I/O error, 2 audit failure,
//! 3 budget exceeded, 4 construction stage failure.

use crate::cycles::{cycle_factor, CycleFactorError, CycleFactorParams, CyclePlan};
use crate::io;
use crate::partitioner::{partition_robust, Mode, PartitionCertificate, PipelineParams};
use crate::tournament::Tournament;
use crate::verify::{
    self, audit_certificate_ledger, audit_cycle_plan, check_partition, AuditReport,
};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_AUDIT_FAILED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_STAGE_FAILED: i32 = 4;

#[derive(Parser)]
#[command(
    name = "tpart",
    version,
    about = "Partition tournaments into robust strongly k-connected classes or prescribed cycle factors"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated tournament (random N SEED | paley Q | transitive N)
    Gen {
        /// generator spec, e.g. `random 100 42`, `paley 7`, `transitive 16`
        spec: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition a tournament into t robust strongly k-connected classes
    Partition {
        input: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Split a tournament into vertex-disjoint cycles of prescribed lengths
    Cycles {
        input: PathBuf,
        /// comma-separated cycle lengths summing to n
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Re-audit a written certificate or cycle plan against its tournament
    Verify {
        tournament: PathBuf,
        certificate: PathBuf,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a brute-force oracle suite (connectivity | domination | reach | camion | song)
    Oracle {
        suite: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Time the core kernels on a generated instance
    Bench {
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    t: usize,
    #[arg(long, default_value = "practical")]
    mode: String,
    /// strict mode only: proceed on the caller's connectivity assumption
    #[arg(long)]
    assume_connectivity: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    spare_paths: Option<usize>,
    /// augmentation-set samples for the audit
    #[arg(long, default_value_t = 64)]
    samples: usize,
    /// node budget for path packing searches
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn mode(&self) -> Result<Mode, String> {
        match self.mode.as_str() {
            "practical" => Ok(Mode::Practical),
            "strict" => Ok(Mode::Strict {
                assume_connectivity: self.assume_connectivity,
            }),
            other => Err(format!("unknown mode {:?} (practical | strict)", other)),
        }
    }
}

/// On-disk envelope for emitted artifacts: the construction plus its audit.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArtifactFile {
    Partition {
        certificate: PartitionCertificate,
        audit: AuditReport,
    },
    Cycles {
        plan: CyclePlan,
        audit: AuditReport,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Gen { spec, out } => cmd_gen(&spec, out.as_deref()),
        Command::Partition { input, run, m } => cmd_partition(&input, &run, m),
        Command::Cycles { input, lengths, run } => cmd_cycles(&input, &lengths, &run),
        Command::Verify {
            tournament,
            certificate,
            samples,
            seed,
        } => cmd_verify(&tournament, &certificate, samples, seed),
        Command::Oracle {
            suite,
            n_max,
            k_max,
            samples,
            seed,
            jobs: _,
        } => cmd_oracle(&suite, n_max, k_max, samples, seed),
        Command::Bench { n, seed } => cmd_bench(n, seed),
    }
}

fn load_tournament(path: &Path) -> Result<Tournament, String> {
    let file = File::open(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    io::read_tournament(BufReader::new(file)).map_err(|e| format!("{}: {}", path.display(), e))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => {
            let mut f = File::create(p).map_err(|e| format!("{}: {}", p.display(), e))?;
            f.write_all(content.as_bytes())
                .map_err(|e| format!("{}: {}", p.display(), e))
        }
        None => {
            print!("{}", content);
            Ok(())
        }
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifacts serialize");
    s.push('\n');
    s
}

pub fn cmd_gen(spec: &[String], out: Option<&Path>) -> Result<i32, String> {
    let parse = |s: &String| -> Result<usize, String> {
        s.parse().map_err(|_| format!("bad number {:?}", s))
    };
    let t = match spec {
        [kind, n, seed] if kind == "random" => {
            Tournament::random(parse(n)?, parse(seed)? as u64)
        }
        [kind, q] if kind == "paley" => {
            Tournament::paley(parse(q)? as u64).map_err(|e| e.to_string())?
        }
        [kind, n] if kind == "transitive" => Tournament::transitive(parse(n)?),
        _ => {
            return Err(format!(
                "bad generator spec {:?}; expected `random N SEED`, `paley Q`, or `transitive N`",
                spec.join(" ")
            ))
        }
    };
    write_output(out, &io::to_canonical_string(&t))?;
    Ok(EXIT_OK)
}

pub fn cmd_partition(input: &Path, run: &RunArgs, m: usize) -> Result<i32, String> {
    let t = load_tournament(input)?;
    let mut params = PipelineParams::new(run.k, run.t, m);
    params.mode = run.mode()?;
    params.seed = run.seed;
    params.r_samples = run.samples;
    if let Some(s) = run.spare_paths {
        params.spare_paths = s;
    }
    if let Some(b) = run.budget {
        params.search_budget = b;
    }
    match partition_robust(&t, &params) {
        Err(f) => {
            eprintln!("partition failed at stage {}: {}", f.stage, f.reason);
            Ok(EXIT_STAGE_FAILED)
        }
        Ok(certificate) => {
            let mut audit = check_partition(&t, &certificate, run.samples, run.seed);
            audit.merge(audit_certificate_ledger(&t, &certificate));
            let passed = audit.passed();
            let artifact = ArtifactFile::Partition { certificate, audit };
            write_output(run.out.as_deref(), &to_json(&artifact))?;
            if passed {
                Ok(EXIT_OK)
            } else {
                eprintln!("emitted certificate failed its audit; this is a bug signal");
                Ok(EXIT_AUDIT_FAILED)
            }
        }
    }
}

pub fn cmd_cycles(input: &Path, lengths: &[usize], run: &RunArgs) -> Result<i32, String> {
    let t = load_tournament(input)?;
    if lengths.len() < 2 {
        return Err("cycle factors need at least two lengths".into());
    }
    let params = CycleFactorParams {
        mode: run.mode()?,
        seed: run.seed,
        search_budget: run.budget.unwrap_or(crate::paths::DEFAULT_NODE_BUDGET),
        split_budget: crate::cycles::DEFAULT_SPLIT_BUDGET,
        spare_paths: run.spare_paths,
    };
    match cycle_factor(&t, lengths, &params) {
        Err(CycleFactorError::Lengths(e)) => Err(e.to_string()),
        Err(CycleFactorError::Gate { threshold, n }) => {
            eprintln!(
                "strict mode requires strong {}-connectivity, impossible at n = {}",
                threshold, n
            );
            Ok(EXIT_STAGE_FAILED)
        }
        Err(e) => {
            eprintln!("cycle factor failed: {}", e);
            Ok(EXIT_STAGE_FAILED)
        }
        Ok(plan) => {
            let audit = audit_cycle_plan(&t, &plan);
            let passed = audit.passed();
            let artifact = ArtifactFile::Cycles { plan, audit };
            write_output(run.out.as_deref(), &to_json(&artifact))?;
            if passed {
                Ok(EXIT_OK)
            } else {
                eprintln!("emitted cycle plan failed its audit; this is a bug signal");
                Ok(EXIT_AUDIT_FAILED)
            }
        }
    }
}

pub fn cmd_verify(
    tournament: &Path,
    certificate: &Path,
    samples: usize,
    seed: u64,
) -> Result<i32, String> {
    let t = load_tournament(tournament)?;
    let mut raw = String::new();
    File::open(certificate)
        .and_then(|mut f| f.read_to_string(&mut raw))
        .map_err(|e| format!("{}: {}", certificate.display(), e))?;
    let artifact: ArtifactFile =
        serde_json::from_str(&raw).map_err(|e| format!("{}: {}", certificate.display(), e))?;
    let report = match &artifact {
        ArtifactFile::Partition { certificate, .. } => {
            let mut rep = check_partition(&t, certificate, samples, seed);
            rep.merge(audit_certificate_ledger(&t, certificate));
            rep
        }
        ArtifactFile::Cycles { plan, .. } => audit_cycle_plan(&t, plan),
    };
    print!("{}", to_json(&report));
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_AUDIT_FAILED)
    }
}

pub fn cmd_oracle(
    suite: &str,
    n_max: Option<usize>,
    k_max: Option<usize>,
    samples: Option<usize>,
    seed: u64,
) -> Result<i32, String> {
    let outcome = match suite {
        "connectivity" => verify::suite_connectivity(
            n_max.unwrap_or(7).min(5),
            n_max.unwrap_or(7),
            k_max.unwrap_or(3),
            samples.unwrap_or(500),
            seed,
        )
        .map_err(|e| e.to_string()),
        "domination" => Ok(verify::suite_domination(
            samples.unwrap_or(1000),
            n_max.unwrap_or(200),
            k_max.unwrap_or(10),
            seed,
        )),
        "reach" => verify::suite_reach(
            samples.unwrap_or(200),
            n_max.unwrap_or(6),
            k_max.unwrap_or(3),
            seed,
        )
        .map_err(|e| e.to_string()),
        "camion" => Ok(verify::suite_camion(
            n_max.unwrap_or(6).min(6),
            samples.unwrap_or(500),
            100,
            seed,
        )),
        "song" => Ok(verify::suite_song(samples.unwrap_or(100), seed)),
        other => return Err(format!("unknown suite {:?}", other)),
    };
    match outcome {
        Err(budget_msg) => {
            eprintln!("oracle budget exceeded: {}", budget_msg);
            Ok(EXIT_BUDGET)
        }
        Ok(report) => {
            print!("{}", to_json(&report));
            if report.passed() {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_AUDIT_FAILED)
            }
        }
    }
}

pub fn cmd_bench(n: usize, seed: u64) -> Result<i32, String> {
    use std::time::Instant;
    let mut lines = Vec::new();
    let mut time = |name: &str, f: &mut dyn FnMut()| {
        let start = Instant::now();
        f();
        lines.push(format!(
            "{{\"kernel\":\"{}\",\"n\":{},\"millis\":{:.3}}}",
            name,
            n,
            start.elapsed().as_secs_f64() * 1e3
        ));
    };
    let mut t = None;
    time("generate", &mut || t = Some(Tournament::random(n, seed)));
    let t = t.unwrap();
    time("strongly-connected", &mut || {
        let _ = crate::connectivity::strongly_connected(&t);
    });
    time("k-connectivity-k2", &mut || {
        let _ = crate::connectivity::is_strongly_k_connected(&t, 2);
    });
    time("hamilton-cycle", &mut || {
        let _ = crate::cycles::hamilton_cycle(&t);
    });
    time("partition-k1", &mut || {
        let mut params = PipelineParams::new(1, 2, 2);
        params.seed = seed;
        let _ = partition_robust(&t, &params);
    });
    for line in lines {
        println!("{}", line);
    }
    Ok(EXIT_OK)
}
