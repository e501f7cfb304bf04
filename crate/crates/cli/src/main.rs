mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use striphyp::{Complex64, ErrorKind};

use crate::config::Config;
use crate::report::Format;

#[derive(Debug, Parser)]
#[command(name = "striphyp", version, about = "Weights, strip minorants, boundary values and transforms")]
struct Cli {
    /// Output format: JSON lines, or CSV plot data.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Flat `key = value` file overriding tolerances and grids.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized sample points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct Multiplier {
    /// Weight whose analytic minorant multiplies the representation.
    #[arg(long = "mult")]
    pub weight: Option<String>,
    #[arg(long = "mult-lambda", default_value_t = 1.0)]
    pub lambda: f64,
    /// Strip half-width of the minorant; defaults to twice the outer radius.
    #[arg(long = "mult-h")]
    pub h: Option<f64>,
    #[arg(long = "mult-mode", default_value = "dilate")]
    pub mode: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a growth condition of a weight function.
    CheckWeight {
        weight: String,
        #[arg(long)]
        cond: String,
    },
    /// Check a condition of a weight sequence.
    CheckSeq {
        seq: String,
        #[arg(long)]
        cond: String,
    },
    /// Non-triviality class of the spaces defined by a sequence.
    Classify { seq: String },
    /// Associated function M(t) of a sequence.
    Assoc {
        seq: String,
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
    },
    /// Analytic minorant of a weight on a strip.
    Minorant {
        weight: String,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value = "dilate")]
        mode: String,
        /// Points x at which log|F| is reported.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        y: f64,
        /// Check the certified sandwich on a grid and Cauchy-Riemann residuals at random points.
        #[arg(long)]
        verify: bool,
    },
    /// Weighted sup-norm of a test function on a strip.
    Norm {
        testfn: String,
        weight: String,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
    },
    /// Cauchy-transform representation of a functional.
    Represent {
        functional: String,
        #[command(flatten)]
        mult: Multiplier,
        #[arg(long)]
        b: f64,
        #[arg(long = "R")]
        r: f64,
        /// Points at which the representation is evaluated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_point)]
        z: Vec<Complex64>,
    },
    /// Boundary-value pairing of a functional with a test function.
    Pair {
        functional: String,
        testfn: String,
        #[arg(long)]
        k: f64,
        /// Inner radius of the representation; defaults to halfway between the atoms and k.
        #[arg(long)]
        b: Option<f64>,
        /// Outer radius of the representation; defaults to 2k + 1.
        #[arg(long = "R")]
        r: Option<f64>,
        /// Truncate the contour to a rectangle of this half-length.
        #[arg(long)]
        truncation: Option<f64>,
        #[command(flatten)]
        mult: Multiplier,
    },
    /// Fourier transform of a test function, computed along Im z = k.
    Fourier {
        testfn: String,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        xi: Vec<f64>,
        /// Contour shift, 0 < k < strip half-width of the test function.
        #[arg(long)]
        k: f64,
    },
    /// Laplace transform of a functional.
    Laplace {
        functional: String,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true, value_parser = parse_point)]
        zeta: Vec<Complex64>,
        /// Contour distance from the real axis.
        #[arg(long, default_value_t = 0.5)]
        b: f64,
        /// Support interval `lo:hi` (either end may be `inf`); defaults to the atoms' hull widened by 1.
        #[arg(long, allow_hyphen_values = true)]
        interval: Option<String>,
    },
    /// Paley-Wiener type bound check on sampled values `xi,eta,re,im`.
    Pwcheck {
        series: PathBuf,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        h: f64,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        weight: Option<String>,
        /// entire, upper, above_lambda, lower or below_lambda.
        #[arg(long, default_value = "upper")]
        region: String,
        #[arg(long, default_value = "beurling")]
        flavor: String,
    },
    /// Almost-analytic extension of the Fourier transform of a test function.
    Extend {
        testfn: String,
        weight: String,
        #[arg(long)]
        k: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Vec<f64>,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        eta: f64,
        /// Check both bounds on the configured grid.
        #[arg(long)]
        verify: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckWeight { .. } => "check-weight",
            Command::CheckSeq { .. } => "check-seq",
            Command::Classify { .. } => "classify",
            Command::Assoc { .. } => "assoc",
            Command::Minorant { .. } => "minorant",
            Command::Norm { .. } => "norm",
            Command::Represent { .. } => "represent",
            Command::Pair { .. } => "pair",
            Command::Fourier { .. } => "fourier",
            Command::Laplace { .. } => "laplace",
            Command::Pwcheck { .. } => "pwcheck",
            Command::Extend { .. } => "extend",
        }
    }
}

fn parse_point(s: &str) -> Result<Complex64, String> {
    striphyp::parse_complex(s).map_err(|e| e.to_string())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<striphyp::Error>().map(|e| e.kind()) {
        Some(ErrorKind::Precondition) => 2,
        Some(ErrorKind::Numeric) => 3,
        _ => 1,
    }
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("STRIPHYP_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| anyhow::anyhow!("STRIPHYP_THREADS must be a positive integer, got `{v}`"))?;
        if n == 0 {
            anyhow::bail!("STRIPHYP_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli, argv: &[String]) -> anyhow::Result<()> {
    init_threads()?;
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let name = cli.command.name();
    let out = commands::execute(&cli.command, &cfg, cli.seed)?;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    report::write(&mut lock, cli.format, name, argv, &out)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli, &argv[1..]) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
