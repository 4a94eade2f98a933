//! `pfol`: command-line front end. Every command prints one JSON run report
//! on stdout; failures print a JSON error report on stderr and exit with 2
//! (bad input or violated precondition) or 3 (internal invariant broken).

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "pfol", version, about = "Foliations on projective space over finite fields")]
pub struct Cli {
    /// Pretty-print reports.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Closed,
    Log,
    Pullback,
    Exceptional,
    Pencil,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Full,
    Sample,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Projectiveness, saturation, local decomposability, integrability.
    Check { form_file: PathBuf },
    /// Build a member of one of the component families.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 5)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Closed family: the polynomial F (default: the Jouanolou-type F).
        #[arg(long)]
        poly: Option<String>,
        /// Closed family: e in deg F = p e for the default F.
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Log family: factors separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        factors: Option<String>,
        /// Log family: residues separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        lambdas: Option<String>,
        /// Log family, random instance: factor degrees, e.g. `1,2`.
        #[arg(long)]
        degrees: Option<String>,
        /// Pullback family: degree of the plane foliation.
        #[arg(long, default_value_t = 1)]
        degree: u32,
        /// Pencil family: codimension.
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the form file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// p-curvature values and the degeneracy divisor.
    Pcurvature {
        form_file: PathBuf,
        /// Degree bound for tangent fields (default: coefficient degree + p).
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Cartier operator of a closed form file or a log spec.
    Cartier { input: PathBuf },
    /// Component label with witness data and the Kupka codimension.
    Classify { form_file: PathBuf },
    /// Enumerate or sample projective 1-forms and tally labels.
    Census {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        n_samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Worker threads (0: all cores, 1: sequential).
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Normal-crossing-in-codimension-two test for a polynomial file.
    Nc2 {
        poly_file: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Number of variables (default: inferred from the polynomial).
        #[arg(long)]
        nvars: Option<usize>,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let name = commands::name(&cli.command);
    match commands::run(&cli.command) {
        Ok((inputs, result)) => {
            let text = report::render(&report::success(name, &argv, inputs, result), cli.pretty);
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let text = report::render(&report::failure(name, &argv, &e), cli.pretty);
            let _ = writeln!(std::io::stderr().lock(), "{text}");
            ExitCode::from(e.exit_code())
        }
    }
}
