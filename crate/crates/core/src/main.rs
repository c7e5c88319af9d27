use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use repcontain::characters::SearchParams;
use repcontain::cli::{self, CliError, CliResult};
use repcontain::decision::AnalysisParams;
use repcontain::selftest::{self, SelftestConfig};

/// Decide and certify asymptotic and catalytic containment of SU(n)
/// representations. Representations are JSON files of the form
/// {"n": 3, "terms": [{"partition": [2, 1], "mult": 1}]}.
#[derive(Parser)]
#[command(name = "repcontain", version)]
struct Cli {
    /// Worker threads [default: available parallelism]; REPCONTAIN_THREADS takes precedence
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    rho: PathBuf,
    #[arg(long)]
    sigma: PathBuf,
}

#[derive(Args)]
struct Search {
    /// Grid points per log-coordinate axis in the violation search
    #[arg(long, default_value_t = 33)]
    grid_depth: usize,
    /// Coordinate-descent rounds per refined candidate
    #[arg(long, default_value_t = 50)]
    descent_iters: usize,
    /// Half-width of the log-coordinate search box
    #[arg(long, default_value_t = 8.0)]
    log_bound: f64,
    /// Rational torus points sampled by the converse checks
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: conditions, witness searches and converse checks
    Check {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        search: Search,
        /// Largest tensor power tried
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        /// Box bound for catalyst candidates
        #[arg(long, default_value_t = 6)]
        catalyst_boxes: u32,
        /// Term bound for catalyst candidates
        #[arg(long, default_value_t = 4)]
        catalyst_terms: u32,
    },
    /// Least k with rho^k contained in sigma^k
    Asymptotic {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
    },
    /// First eta with rho⊗eta contained in sigma⊗eta
    Catalyst {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 6)]
        max_boxes: u32,
        #[arg(long, default_value_t = 4)]
        max_terms: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Exact character value at a point with coordinate product 1, e.g. --point 2,1/2
    Char {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Tropical evaluation along a sum-zero direction, e.g. --direction 1,0,-1
    Trop {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
    },
    /// Tensor product of the given representations, optionally raised to a power
    Tensor {
        #[arg(long = "rep", required = true)]
        reps: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Weight polytopes and their pairwise containments
    Wp {
        #[arg(long = "rep", required = true)]
        reps: Vec<PathBuf>,
    },
    /// Exact positivity certificate for SU(2) character differences
    Su2Certify {
        #[command(flatten)]
        pair: Pair,
    },
    /// Run the oracle cross-checks
    Selftest {
        /// Directory of corpus files; each *.json holds {"pairs": [{"name", "rho", "sigma"}]}
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

fn params(search: &Search, nmax: u32, boxes: u32, terms: u32) -> AnalysisParams {
    AnalysisParams {
        search: SearchParams {
            grid_depth: search.grid_depth,
            descent_iters: search.descent_iters,
            log_bound: search.log_bound,
            ..SearchParams::default()
        },
        n_max: nmax,
        catalyst_boxes: boxes,
        catalyst_terms: terms,
        converse_samples: search.samples,
        ..AnalysisParams::default()
    }
}

/// Returns the report and whether it counts as a pass.
fn run(command: Command) -> CliResult<(Value, bool)> {
    let ok = |v: Value| Ok((v, true));
    match command {
        Command::Check { pair, search, nmax, catalyst_boxes, catalyst_terms } => {
            ok(cli::cmd_check(&pair.rho, &pair.sigma, &params(&search, nmax, catalyst_boxes, catalyst_terms))?)
        }
        Command::Asymptotic { pair, nmax } => ok(cli::cmd_asymptotic(&pair.rho, &pair.sigma, nmax)?),
        Command::Catalyst { pair, max_boxes, max_terms, samples } => {
            let p = AnalysisParams { converse_samples: samples, ..AnalysisParams::default() };
            ok(cli::cmd_catalyst(&pair.rho, &pair.sigma, max_boxes, max_terms, &p)?)
        }
        Command::Char { rep, point } => ok(cli::cmd_char(&rep, &point)?),
        Command::Trop { rep, direction } => ok(cli::cmd_trop(&rep, &direction)?),
        Command::Tensor { reps, power } => ok(cli::cmd_tensor(&reps, power)?),
        Command::Wp { reps } => ok(cli::cmd_wp(&reps)?),
        Command::Su2Certify { pair } => ok(cli::cmd_su2_certify(&pair.rho, &pair.sigma)?),
        Command::Selftest { corpus } => {
            let report = selftest::run(
                &SelftestConfig::default(),
                &selftest::default_product,
                corpus.as_deref(),
                &AnalysisParams::default(),
            );
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAILED {}: {}", c.name, c.failures.join("; "));
            }
            let passed = report.passed;
            Ok((serde_json::to_value(&report).expect("report serializes"), passed))
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    match std::env::var("REPCONTAIN_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .map(Some)
            .ok_or_else(|| CliError::Usage(format!("REPCONTAIN_THREADS={v:?} is not a positive integer"))),
        Err(_) => Ok(flag),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = thread_count(cli.threads).and_then(|threads| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            builder = builder.num_threads(t);
        }
        let pool = builder.build().map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
        pool.install(|| run(cli.command))
    });
    match result {
        Ok((value, passed)) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("JSON value prints"));
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
