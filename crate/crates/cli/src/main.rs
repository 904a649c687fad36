//! `k3cremona`: command line front end. Every command builds one report,
//! printed as JSON with `--json` and as flattened text otherwise.

mod commands;
mod report;

use clap::{Args, Parser, Subcommand};
use commands::{Outcome, INVALID_INPUT};
use k3cremona::links::LinkRecord;
use num_bigint::BigInt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(name = "k3cremona", version, about = "Picard lattices of rank-two quartic K3 surfaces and their Cremona actions")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Leave out the timestamp and timing fields, making output byte-stable.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

/// A lattice given by its discriminant (canonical model) or by `b` and `c`.
#[derive(Args)]
struct Model {
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["b", "c"])]
    r: Option<BigInt>,
    #[arg(long, allow_negative_numbers = true, requires = "c")]
    b: Option<BigInt>,
    #[arg(long, allow_negative_numbers = true, requires = "b")]
    c: Option<BigInt>,
}

#[derive(Subcommand)]
enum Command {
    /// Automorphism group type, generators and witnesses.
    Classify(Model),
    /// Solvability of x^2 - r y^2 = n.
    Pell {
        #[arg(long, allow_negative_numbers = true)]
        r: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        n: BigInt,
        /// Also list all solutions with |y| up to this bound.
        #[arg(long)]
        bound: Option<BigInt>,
    },
    /// A class of the given genus and degree.
    CurveClass {
        #[command(flatten)]
        model: Model,
        #[arg(long, allow_negative_numbers = true)]
        genus: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        degree: BigInt,
    },
    /// Catalog row and Picard matrix of the link blowing up a (g, d) curve.
    Link {
        #[arg(long, allow_negative_numbers = true)]
        genus: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        degree: BigInt,
    },
    /// Link words composing to each automorphism generator.
    Realize(Model),
    /// The r' list and the discriminants it rules out.
    Exclusion {
        #[arg(long)]
        bound: Option<BigInt>,
    },
    /// Exhaustive solution of the anti-flip system.
    AntiflipCheck,
    /// Run every golden check.
    VerifyPaper {
        /// Link catalog (JSON array of records) replacing the built-in one.
        #[arg(long, hide = true)]
        catalog: Option<PathBuf>,
    },
}

fn load_catalog(path: &PathBuf) -> Result<Vec<LinkRecord>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Classify(m) => commands::classify(&m.r, &m.b, &m.c),
        Command::Pell { r, n, bound } => commands::pell_cmd(r, n, bound),
        Command::CurveClass { model: m, genus, degree } => commands::curve_class(&m.r, &m.b, &m.c, genus, degree),
        Command::Link { genus, degree } => commands::link(genus, degree),
        Command::Realize(m) => commands::realize(&m.r, &m.b, &m.c),
        Command::Exclusion { bound } => commands::exclusion_cmd(bound),
        Command::AntiflipCheck => commands::antiflip_check(),
        Command::VerifyPaper { catalog } => match catalog.as_ref().map(load_catalog).transpose() {
            Ok(cat) => commands::verify_paper(cat),
            Err(e) => {
                let mut report = report::Report::new("verify-paper");
                report.error = Some(e);
                Outcome { report, code: INVALID_INPUT }
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let t = Instant::now();
    let Outcome { mut report, code } = run(&cli.command);
    if !cli.no_timestamp {
        report.elapsed_ms = Some(t.elapsed().as_secs_f64() * 1e3);
        report.generated_at = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
    }
    let text = if cli.json { report.to_json() + "\n" } else { report.to_text() };
    // A closed pipe downstream is not an error of the command.
    let _ = std::io::stdout().write_all(text.as_bytes());
    if let (true, Some(e)) = (cli.json, &report.error) {
        eprintln!("error: {e}");
    }
    ExitCode::from(code as u8)
}
