//! Subcommands and exit codes.
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | balanced separator found (or certificate verified) |
//! | 10   | `K_h` minor witness found: the graph is not `K_h`-minor-free |
//! | 1    | `verify`: the certificate is well-formed but fails its check |
//! | 2    | input error: unreadable file, bad format, bad arguments |
//! | 3    | a run failed its own verification; state is dumped to stderr |

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use minorsep_core::instances::{generate, InstanceSpec};
use minorsep_core::verify::{verify_balanced, verify_witness, VerificationReport};
use minorsep_core::{balanced_separator, Config, Graph, SeparatorOutcome};

use crate::bench::{median_spread, run_bench, summarize, write_csv, write_summary, BenchConfig};
use crate::edgelist::{read_edge_list, write_edge_list};
use crate::error::{CliError, Result};
use crate::family::{parse_family, parse_gen};
use crate::report::{to_mask, Certificate, RunReport, VerificationInfo, WitnessJson};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_SELF_CHECK: u8 = 3;
pub const EXIT_WITNESS: u8 = 10;

#[derive(Debug, Parser)]
#[command(name = "minorsep", version, about = "Balanced separators for K_h-minor-free graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a balanced separator, or a K_h minor witness.
    Separate(SeparateArgs),
    /// Check a separator or witness certificate against a graph.
    Verify(VerifyArgs),
    /// Write a generated instance as an edge list.
    Gen(GenArgs),
    /// Measure separator size against sqrt(n) over seeded trials.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct SeparateArgs {
    /// Edge-list file.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    pub input: Option<PathBuf>,
    /// Generated instance as `family:params`, e.g. `grid:20,20`.
    #[arg(long)]
    pub gen: Option<String>,
    /// Seed for random `--gen` families, independent of the run seed.
    #[arg(long, default_value_t = 0)]
    pub gen_seed: u64,
    #[arg(long)]
    pub h: usize,
    /// Layer width; defaults to round(sqrt(n) / (h sqrt(ceil(log2 h)))).
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample centers instead of decomposing after the first iteration.
    #[arg(long)]
    pub fast: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Also write the separator or witness certificate.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    /// Record wall time in the report (makes it non-reproducible).
    #[arg(long)]
    pub timing: bool,
    /// Evaluate the invariant suite at every iteration.
    #[arg(long)]
    pub check_invariants: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub certificate: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub family: String,
    /// Family parameters, comma separated (`10,10` for a 10x10 grid).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub params: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "grid")]
    pub family: String,
    /// Vertex counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub h: usize,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub fast: bool,
    /// Row-level CSV; the per-size summary always goes to stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Separate(a) => separate(&a, out),
        Command::Verify(a) => verify(&a, out),
        Command::Gen(a) => gen(&a, out).map(|()| EXIT_OK),
        Command::Bench(a) => bench(&a, out).map(|()| EXIT_OK),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Core(minorsep_core::Error::Logic(l)) = &e {
                let _ = writeln!(err, "state at iteration {}: {}", l.iteration, l.dump);
            }
            e.exit_code()
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    read_edge_list(&read_file(path)?)
}

fn separate(a: &SeparateArgs, out: &mut dyn Write) -> Result<u8> {
    let g = match (&a.input, &a.gen) {
        (Some(path), _) => load_graph(path)?,
        (None, Some(desc)) => generate(&InstanceSpec::new(parse_gen(desc)?, a.gen_seed))?,
        (None, None) => return Err(CliError::Usage("one of --input or --gen is required".into())),
    };
    let mut config = Config::new(a.h)
        .with_seed(a.seed)
        .with_fast_center(a.fast)
        .with_invariant_checks(a.check_invariants);
    config.ell = a.ell;

    let start = Instant::now();
    let run = balanced_separator(&g, &config)?;
    let elapsed = start.elapsed();

    // Re-check from the certificate alone, the way `verify` would.
    let cert = Certificate::from_outcome(&run.outcome, a.h);
    let recheck = check_certificate(&g, &cert)?;
    if !recheck.ok {
        let failed: Vec<String> = recheck
            .failures()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        return Err(minorsep_core::Error::Logic(minorsep_core::error::LogicError {
            iteration: run.stats.iterations,
            message: "output failed re-verification".into(),
            dump: failed.join("; "),
        })
        .into());
    }

    let mut report = RunReport::new(&g, &run, a.seed, a.fast, &recheck);
    if a.timing {
        report.wall_time_ms = Some(elapsed.as_secs_f64() * 1e3);
    }
    emit(a.json.as_deref(), &report.to_json(), out)?;
    if let Some(path) = &a.certificate {
        let mut text = serde_json::to_string(&cert).expect("certificate serializes");
        text.push('\n');
        write_file(path, &text)?;
    }
    Ok(match run.outcome {
        SeparatorOutcome::BalancedSeparator(_) => EXIT_OK,
        SeparatorOutcome::MinorWitness(_) => EXIT_WITNESS,
    })
}

/// Verifies a parsed certificate; ids outside the graph are input errors.
pub fn check_certificate(g: &Graph, cert: &Certificate) -> Result<VerificationReport> {
    Ok(match cert {
        Certificate::Separator { vertices } => verify_balanced(g, &to_mask(g.n(), vertices)?),
        Certificate::Witness { h, branches } => {
            let w = WitnessJson {
                h: *h,
                branches: branches.clone(),
            };
            verify_witness(g, &w.to_model(g.n())?, *h)
        }
    })
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let g = load_graph(&a.input)?;
    let cert = Certificate::parse(&read_file(&a.certificate)?)?;
    let report = check_certificate(&g, &cert)?;
    let mut text = serde_json::to_string_pretty(&VerificationInfo::from(&report)).expect("report serializes");
    text.push('\n');
    emit(None, &text, out)?;
    Ok(if report.ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn gen(a: &GenArgs, out: &mut dyn Write) -> Result<()> {
    let g = generate(&InstanceSpec::new(parse_family(&a.family, &a.params)?, a.seed))?;
    emit(a.out.as_deref(), &write_edge_list(&g), out)
}

fn bench(a: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let rows = run_bench(&BenchConfig {
        family: a.family.clone(),
        sizes: a.sizes.clone(),
        h: a.h,
        ell: a.ell,
        trials: a.trials,
        seed: a.seed,
        fast_center: a.fast,
    })?;
    if let Some(path) = &a.csv {
        write_file(path, &write_csv(&rows))?;
    }
    let summary = summarize(&rows);
    let mut text = write_summary(&summary);
    text.push_str(&format!("median spread {:.3}\n", median_spread(&summary)));
    emit(None, &text, out)
}
