//! `vsldpc`: build, check, search and simulate VS girth-8 QC-LDPC codes.
//!
//! Exit status is 0 on success, 1 when a command ran but a verification
//! failed, and 2 for usage errors or unreadable input.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "vsldpc", version, about = "Girth-8 QC-LDPC exponent matrices with vertical symmetry")]
struct Cli {
    /// Worker threads for sweeps, search and simulation (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the payload here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Payload format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Alist,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an exponent matrix from an explicit construction.
    Construct(ConstructArgs),
    /// Girth of a lifted exponent matrix.
    Girth(GirthArgs),
    /// Smallest circulant size for the alpha * beta^r family.
    Search(SearchArgs),
    /// Re-verify the published search tables.
    Tables(TablesArgs),
    /// ES and TD terms with the TD circulant sizes.
    Seq(SeqArgs),
    /// Write the lifted parity-check matrix.
    Export(ExportArgs),
    /// BPSK/AWGN sum-product simulation.
    Simulate(SimulateArgs),
    /// Girth sweeps over the TD and ES three-row constructions.
    VerifyConjectures(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Es,
    Td,
    Gcd,
    Maxfn,
    Theorem2,
    Theorem1,
    Dds,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Checked against the row count the method produces.
    #[arg(long = "J")]
    pub j: Option<usize>,
    #[arg(long = "L")]
    pub l: Option<usize>,
    #[arg(long = "P")]
    pub p: Option<i64>,
    /// Comma-separated sequence for `theorem1`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub betas: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',')]
    pub d1: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',')]
    pub d2: Option<Vec<i64>>,
    /// Attach a girth check from both engines; exit 1 unless it is 8.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Bfs,
    Equations,
    Both,
}

#[derive(Args, Debug)]
pub struct GirthArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Overrides the `P` stored in the matrix file.
    #[arg(long = "P")]
    pub p: Option<i64>,
    #[arg(long, default_value_t = 12)]
    pub cap: usize,
    #[arg(long, value_enum, default_value_t = Oracle::Both)]
    pub oracle: Oracle,
    /// Plain JSON array of 0/1 rows.
    #[arg(long)]
    pub mask: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long = "J")]
    pub j: usize,
    #[arg(long = "L")]
    pub l: usize,
    #[arg(long, default_value_t = 2)]
    pub pmin: i64,
    #[arg(long)]
    pub pmax: i64,
    /// Stop at the lexicographically first tuple (default).
    #[arg(long, conflicts_with = "exhaustive")]
    pub first: bool,
    /// Report every tuple at the smallest size.
    #[arg(long)]
    pub exhaustive: bool,
    /// Inclusive `lo..hi` for alpha_1, alpha_2.
    #[arg(long, value_parser = input::parse_range)]
    pub alpha_range: Option<(i64, i64)>,
    /// Inclusive `lo..hi` for beta.
    #[arg(long, value_parser = input::parse_range)]
    pub beta_range: Option<(i64, i64)>,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long = "J")]
    pub j: usize,
    /// Also run our own minimum search up to each published size.
    #[arg(long)]
    pub search: bool,
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    /// Number of terms.
    #[arg(long = "N")]
    pub n: u64,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long = "P")]
    pub p: Option<i64>,
    #[arg(long)]
    pub mask: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long = "P")]
    pub p: Option<i64>,
    #[arg(long)]
    pub mask: Option<PathBuf>,
    /// Comma-separated Eb/N0 points in dB.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub snr: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub frames: u64,
    #[arg(long, default_value_t = 50)]
    pub iters: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Stop a point after this many block errors.
    #[arg(long)]
    pub target_errors: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqArg {
    Es,
    Td,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// 1: TD matrices at P(L); 2: a sequence at every odd P in [P_x, 2 P_x).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: u8,
    #[arg(long = "Lmin", default_value_t = 3)]
    pub l_min: usize,
    #[arg(long = "Lmax")]
    pub l_max: usize,
    /// Sequence for the second sweep.
    #[arg(long, value_enum, default_value_t = SeqArg::Es)]
    pub seq: SeqArg,
}

/// Payload plus whether every check in it passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Construct(a) => commands::construct(a, cli.format),
        Command::Girth(a) => commands::girth(a, cli.format),
        Command::Search(a) => commands::search(a, cli.format),
        Command::Tables(a) => commands::tables(a, cli.format),
        Command::Seq(a) => commands::seq(a, cli.format),
        Command::Export(a) => commands::export(a, cli.format),
        Command::Simulate(a) => commands::simulate(a, cli.format),
        Command::VerifyConjectures(a) => commands::verify_conjectures(a, cli.format),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed");
        ExitCode::from(1)
    }
}
