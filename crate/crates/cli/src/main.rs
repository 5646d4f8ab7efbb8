use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use latpoly::triangulation::SearchConfig;
use latpoly_cli::report::{exit_code, DEFAULT_SEED};
use latpoly_cli::{commands, verify, CliError, Output, RunReport, Settings};

/// Integer points, Minkowski powers and word-ball boundaries of lattice
/// polytopes, computed exactly.
#[derive(Parser)]
#[command(name = "latpoly", version)]
struct Cli {
    /// Print human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Cap on enumerated integer points and on word-ball sizes.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<u64>,

    /// Seed for the randomized checks of verify-paper.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Include the elapsed time in the JSON report.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Maximum number of search nodes.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,

    /// Refuse polytopes with more integer points than this.
    #[arg(long, default_value_t = 14)]
    max_points: usize,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            node_budget: self.budget,
            point_cap: self.max_points,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the integer points of nP.
    Points { polytope: PathBuf, n: u64 },
    /// List the n-fold Minkowski sum of the integer points of P.
    Minkowski { polytope: PathBuf, n: u64 },
    /// Compare (nP) ∩ Z^d with n*(P ∩ Z^d) for every n in a range such as 1..5.
    CheckEquality { polytope: PathBuf, range: String },
    /// Write a point of nP as a sum of n integer points of P.
    Decompose {
        polytope: PathBuf,
        n: u64,
        /// Coordinates, e.g. 1,-1.
        #[arg(allow_hyphen_values = true)]
        point: String,
        /// Primitive triangulation to use; searched for when omitted.
        #[arg(long)]
        triangulation: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Classify a simplex (or polytope) as elementary and/or primitive.
    Classify { polytope: PathBuf },
    /// Evaluate the unimodularity conditions of a square matrix given by columns.
    Lemma1 { matrix: PathBuf },
    /// Check that a triangulation file is a valid face-to-face triangulation.
    ValidateTriangulation { triangulation: PathBuf },
    /// Search for a primitive triangulation.
    SearchPrimitive {
        polytope: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// List the word ball Ω_n.
    WordBall { group: PathBuf, n: u64 },
    /// Ω-interior and Ω-boundary of Ω_n.
    Boundary { group: PathBuf, n: u64 },
    /// Compare the Ω-boundary of Ω_n with Ω_n minus Ω_(n-1) over a range.
    CheckBoundary { group: PathBuf, range: String },
    /// Run the reproduction suite.
    VerifyPaper,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Points { .. } => "points",
            Command::Minkowski { .. } => "minkowski",
            Command::CheckEquality { .. } => "check-equality",
            Command::Decompose { .. } => "decompose",
            Command::Classify { .. } => "classify",
            Command::Lemma1 { .. } => "lemma1",
            Command::ValidateTriangulation { .. } => "validate-triangulation",
            Command::SearchPrimitive { .. } => "search-primitive",
            Command::WordBall { .. } => "word-ball",
            Command::Boundary { .. } => "boundary",
            Command::CheckBoundary { .. } => "check-boundary",
            Command::VerifyPaper => "verify-paper",
        }
    }
}

fn run(command: &Command, s: &Settings) -> Result<Output, CliError> {
    match command {
        Command::Points { polytope, n } => commands::points(polytope, *n, s),
        Command::Minkowski { polytope, n } => commands::minkowski(polytope, *n, s),
        Command::CheckEquality { polytope, range } => commands::check_equality(polytope, range, s),
        Command::Decompose {
            polytope,
            n,
            point,
            triangulation,
            search,
        } => commands::decompose_point(polytope, *n, point, triangulation.as_deref(), &search.config()),
        Command::Classify { polytope } => commands::classify(polytope, s),
        Command::Lemma1 { matrix } => commands::lemma1(matrix),
        Command::ValidateTriangulation { triangulation } => commands::validate(triangulation),
        Command::SearchPrimitive { polytope, search } => commands::search(polytope, &search.config()),
        Command::WordBall { group, n } => commands::word_ball(group, *n, s),
        Command::Boundary { group, n } => commands::boundary(group, *n, s),
        Command::CheckBoundary { group, range } => commands::check_boundary(group, range, s),
        Command::VerifyPaper => Ok(verify::output(s.seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut settings = Settings {
        pretty: cli.pretty,
        seed: cli.seed,
        timing: cli.timing,
        ..Settings::default()
    };
    if let Some(cap) = cli.cap {
        settings.point_cap = cap;
        settings.ball_cap = usize::try_from(cap).unwrap_or(usize::MAX);
    }

    let start = Instant::now();
    let outcome = run(&cli.command, &settings);
    // Write errors (such as a closed pipe) are ignored.
    let mut stdout = std::io::stdout().lock();
    match &outcome {
        Ok(out) if settings.pretty => {
            let _ = write!(stdout, "{}", out.text);
        }
        Ok(out) => {
            let report = RunReport {
                command: cli.command.name().to_string(),
                inputs: out.inputs.clone(),
                result: out.result.clone(),
                elapsed_ms: settings.timing.then(|| start.elapsed().as_millis()),
            };
            let _ = writeln!(stdout, "{}", report.to_json());
        }
        Err(e) => eprintln!("error: {e}"),
    }
    exit_code(&outcome)
}
