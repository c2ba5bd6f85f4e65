//! `pf-spectra`: surveys, certificates and experiments for `z^D + c`.

mod cmd;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "pf-spectra", version, about = "Pushforward spectra of periodic z^D + c")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Degree D of z^D + c.
    #[arg(long, short = 'd', global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=16))]
    pub degree: u32,
    /// A single period m.
    #[arg(long, short = 'm', global = true)]
    pub period: Option<usize>,
    /// Comma-separated periods or ranges, e.g. `3,5,8-10`.
    #[arg(long, global = true)]
    pub periods: Option<String>,
    /// Working precision in bits for eigenvalue polishing (53 or 106).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Output file, or `csv`/`json` to pick a format for stdout.
    #[arg(long, short = 'o', global = true)]
    pub out: Option<String>,
    /// SVG scatter plot path.
    #[arg(long, global = true)]
    pub svg: Option<std::path::PathBuf>,
    /// Machine-readable JSON instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads; falls back to PF_SPECTRA_THREADS.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Run exact computations above the default size ceiling.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gleason polynomials: degree table and resultant certificates.
    Gleason {
        #[arg(long, default_value_t = 6)]
        max_period: usize,
        /// Certify simple roots and pairwise resultants.
        #[arg(long)]
        certify: bool,
    },
    /// Centers of exact period m.
    Centers,
    /// Spectra of every center of the given periods.
    Survey,
    /// Exact unit certificate for Dλ.
    CertifyUnits {
        /// Skip the numeric cross-check against the survey.
        #[arg(long)]
        no_crosscheck: bool,
    },
    /// Cycles of z^D + c up to period n_max and their eigenvalues.
    Cycles {
        /// Parameter as `re`, `re,im` or `a+bi`.
        #[arg(long, allow_hyphen_values = true, value_parser = cmd::parse_complex)]
        c: num_complex::Complex<f64>,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Spectra of centers accumulating at a Misiurewicz anchor.
    Equidist {
        #[arg(long, allow_hyphen_values = true, default_value = "-2", value_parser = cmd::parse_complex)]
        anchor: num_complex::Complex<f64>,
        /// Number of Fourier modes.
        #[arg(long, default_value_t = 10)]
        modes: usize,
    },
    /// Pushforward matrix by residues against the orbit formula.
    Matrix {
        /// Restrict to the center with this index in sorted order.
        #[arg(long)]
        index: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = cmd::init_threads(cli.global.threads) {
        return cmd::report_failure("init", e);
    }
    let g = &cli.global;
    let res = match &cli.command {
        Command::Gleason { max_period, certify } => cmd::gleason(g, *max_period, *certify),
        Command::Centers => cmd::centers(g),
        Command::Survey => cmd::survey(g),
        Command::CertifyUnits { no_crosscheck } => cmd::certify_units(g, !no_crosscheck),
        Command::Cycles { c, n_max } => cmd::cycles(g, *c, *n_max),
        Command::Equidist { anchor, modes } => cmd::equidist(g, *anchor, *modes),
        Command::Matrix { index } => cmd::matrix(g, *index),
    };
    let name = match &cli.command {
        Command::Gleason { .. } => "gleason",
        Command::Centers => "centers",
        Command::Survey => "survey",
        Command::CertifyUnits { .. } => "certify-units",
        Command::Cycles { .. } => "cycles",
        Command::Equidist { .. } => "equidist",
        Command::Matrix { .. } => "matrix",
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => cmd::report_failure(name, e),
    }
}
