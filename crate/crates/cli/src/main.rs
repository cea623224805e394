//! Command-line front end for radius-of-efficiency analysis of vector
//! quadratic fractional programs.
//!
//! Exit codes are part of the interface and scripts rely on them:
//!
//! * `0` — success (for `certify`: the point was certified; for `oracle`:
//!   no dominator was found)
//! * `1` — the instance or the candidate point failed validation
//! * `2` — unreadable or malformed input, or bad arguments
//! * `3` — a dominating point was found and verified
//! * `4` — the analysis could not commit to a verdict

mod example1;

use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use pareto_radius::io;
use pareto_radius::linalg;
use pareto_radius::oracle;
use pareto_radius::problem::{self, VqfpInstance};
use pareto_radius::radius::{self, SweepConfig, Verdict};
use pareto_radius::tol;
use pareto_radius::{build_associated, classify, generate};

pub(crate) const EXIT_OK: i32 = 0;
pub(crate) const EXIT_INVALID: i32 = 1;
pub(crate) const EXIT_PARSE: i32 = 2;
pub(crate) const EXIT_DOMINATED: i32 = 3;
pub(crate) const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Parser)]
#[command(
    name = "pareto-radius",
    version,
    about = "Certify how far a candidate Pareto point of a vector quadratic \
             fractional program stays undominated"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance file against the model's well-posedness rules.
    Validate(ValidateArgs),
    /// Classify one direction at a candidate point and print its profile row.
    Analyze(AnalyzeArgs),
    /// Sweep directions, bound the radius of efficiency, and emit a report.
    Certify(CertifyArgs),
    /// Brute-force dominance search around a point, independent of the
    /// direction machinery.
    Oracle(OracleArgs),
    /// Emit branch and efficient-curve CSV data for the built-in
    /// two-objective example.
    Example1(example1::Example1Args),
    /// Generate a random well-posed instance file.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Instance document (JSON).
    #[arg(long)]
    instance: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Instance document (JSON).
    #[arg(long)]
    instance: PathBuf,
    /// Candidate point, comma separated ("v1,v2,...").
    #[arg(long)]
    point: String,
    /// Direction, comma separated; normalized internally.
    #[arg(long)]
    direction: String,
    /// Relative zero band when reading signs off the Taylor coefficients.
    #[arg(long, default_value_t = tol::CLASSIFY_EPS)]
    tol: f64,
    /// Write the CSV here instead of printing it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    /// Instance document (JSON).
    #[arg(long)]
    instance: PathBuf,
    /// Candidate point, comma separated ("v1,v2,...").
    #[arg(long)]
    point: String,
    /// Random directions to sweep (default scales with the dimension).
    #[arg(long)]
    dirs: Option<usize>,
    /// Seed for the direction stream; equal seeds reproduce reports exactly.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample budget for the advisory local dominance probe.
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
    /// Relative dominance tolerance for the final witness verification.
    #[arg(long)]
    tol: Option<f64>,
    /// Also write the JSON report here (it is always printed).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Instance document (JSON).
    #[arg(long)]
    instance: PathBuf,
    /// Base point, comma separated ("v1,v2,...").
    #[arg(long)]
    point: String,
    /// Radius of the closed search ball.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Number of random samples (a lattice of comparable size is added).
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
    /// Seed for the sample stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GenerateArgs {
    /// Ambient dimension (>= 1).
    #[arg(long)]
    n: usize,
    /// Number of ratio objectives (>= 1).
    #[arg(long)]
    m: usize,
    /// Number of linear constraint rows (0 = unconstrained).
    #[arg(long, default_value_t = 0)]
    p: usize,
    /// Generator seed; equal seeds give byte-identical files.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Jointly convex family sharing one minimizer (always certifiable
    /// there); unconstrained by construction.
    #[arg(long, conflicts_with = "indefinite")]
    convex: bool,
    /// General indefinite numerators (the default family).
    #[arg(long)]
    indefinite: bool,
    /// Instance file to write.
    #[arg(long)]
    out: PathBuf,
}

/// Print `error: <message>` and hand back the exit code, so call sites can
/// `return Err(fail(...))` in one line.
pub(crate) fn fail(code: i32, message: impl Display) -> i32 {
    eprintln!("error: {message}");
    code
}

/// Write to stdout, exiting quietly when the reader has gone away (for
/// example when the output is piped into `head`).
fn emit(text: impl Display) {
    use std::io::Write;
    if write!(std::io::stdout(), "{text}").is_err() {
        std::process::exit(EXIT_OK);
    }
}

fn load_instance(path: &Path) -> Result<VqfpInstance, i32> {
    io::read_instance(path).map_err(|e| fail(EXIT_PARSE, e))
}

/// Read an instance and insist it validates; the audit trail is not printed
/// here (use `validate` for that), only the failing check.
fn load_valid_instance(path: &Path) -> Result<VqfpInstance, i32> {
    let instance = load_instance(path)?;
    let report = problem::validate_instance(&instance);
    match report.error {
        None => Ok(instance),
        Some(e) => Err(fail(EXIT_INVALID, e)),
    }
}

/// Parse a comma-separated vector and check its length against the
/// instance dimension.
fn parse_vector(flag: &str, text: &str, n: usize) -> Result<Vec<f64>, i32> {
    let parsed: Result<Vec<f64>, _> =
        text.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match parsed {
        Err(e) => Err(fail(
            EXIT_PARSE,
            format!("{flag}: cannot parse \"{text}\" as a comma-separated vector: {e}"),
        )),
        Ok(v) if v.len() != n => Err(fail(
            EXIT_PARSE,
            format!("{flag}: expected {n} components, got {}", v.len()),
        )),
        Ok(v) => Ok(v),
    }
}

fn require_feasible(instance: &VqfpInstance, point: &[f64]) -> Result<(), i32> {
    if problem::is_feasible(instance, point, tol::ACTIVE) {
        Ok(())
    } else {
        Err(fail(
            EXIT_INVALID,
            "the candidate point violates the instance constraints",
        ))
    }
}

fn cmd_validate(args: &ValidateArgs) -> Result<i32, i32> {
    let instance = load_instance(&args.instance)?;
    let report = problem::validate_instance(&instance);
    for check in &report.checks {
        let flag = if check.passed { "ok  " } else { "FAIL" };
        emit(format!("{flag} {}: {}\n", check.name, check.detail));
    }
    match report.error {
        None => {
            emit(format!(
                "instance is valid: dimension {}, {} objectives, {} constraint rows\n",
                instance.n,
                instance.objectives.len(),
                instance.constraints.as_ref().map_or(0, |c| c.rhs.len()),
            ));
            Ok(EXIT_OK)
        }
        Some(e) => Err(fail(EXIT_INVALID, e)),
    }
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<i32, i32> {
    let instance = load_valid_instance(&args.instance)?;
    let point = parse_vector("--point", &args.point, instance.n)?;
    let mut direction = parse_vector("--direction", &args.direction, instance.n)?;
    require_feasible(&instance, &point)?;
    if !linalg::normalize(&mut direction) {
        return Err(fail(EXIT_PARSE, "zero direction"));
    }
    let model = build_associated(&instance, &point);
    let profile = classify(&model, &direction, args.tol);
    let csv = io::profiles_csv(instance.n, std::slice::from_ref(&profile));
    match &args.out {
        Some(path) => {
            io::write_text(path, &csv).map_err(|e| fail(EXIT_PARSE, e))?;
            eprintln!("wrote {}", path.display());
        }
        None => emit(&csv),
    }
    Ok(EXIT_OK)
}

fn cmd_certify(args: &CertifyArgs) -> Result<i32, i32> {
    let instance = load_valid_instance(&args.instance)?;
    let point = parse_vector("--point", &args.point, instance.n)?;
    require_feasible(&instance, &point)?;

    // Advisory empirical probe: a dominator inside the tiny ball refutes
    // local efficiency, which the certification below will then confirm
    // through its own route. This stays a warning, never a verdict.
    let local = oracle::local_efficiency_check(&instance, &point, args.budget, args.seed);
    if let Some(distance) = local.distance {
        eprintln!(
            "warning: candidate is not locally efficient: sampling found a \
             dominator at distance {distance:.6e} (ball radius {}, budget {})",
            oracle::LOCAL_RADIUS,
            args.budget,
        );
    }

    let mut config = SweepConfig::new(instance.n);
    config.seed = args.seed;
    if let Some(dirs) = args.dirs {
        config.num_directions = dirs;
    }
    if let Some(tol_dom) = args.tol {
        config.dominance_tol = tol_dom;
    }
    let report = radius::certify(&instance, &point, &config);
    emit(io::report_to_json(&report));
    if let Some(path) = &args.out {
        io::write_report(path, &report).map_err(|e| fail(EXIT_PARSE, e))?;
        eprintln!("wrote {}", path.display());
    }
    match report.verdict {
        Verdict::CertifiedGlobalUpToSampling => Ok(EXIT_OK),
        Verdict::DominatedWithWitness => {
            let w = report.witness.as_ref().expect("dominated verdicts carry a witness");
            eprintln!(
                "dominated: verified witness at distance {:.6e} (step {:.6e})",
                w.distance, w.lambda,
            );
            Ok(EXIT_DOMINATED)
        }
        Verdict::Inconclusive => {
            eprintln!("inconclusive: no verdict at this sampling resolution");
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

fn cmd_oracle(args: &OracleArgs) -> Result<i32, i32> {
    let instance = load_valid_instance(&args.instance)?;
    let point = parse_vector("--point", &args.point, instance.n)?;
    if !problem::is_feasible(&instance, &point, tol::ACTIVE) {
        eprintln!("warning: the base point is infeasible; dominance is still judged on objective values");
    }
    let result = oracle::brute_force_dominator(&instance, &point, args.radius, args.budget, args.seed);
    let doc = serde_json::json!({
        "found": result.found(),
        "dominator": result.dominator,
        "distance": result.distance,
        "samples": result.samples,
        "radius": args.radius,
        "budget": args.budget,
        "seed": args.seed,
    });
    let rendered = serde_json::to_string_pretty(&doc).expect("oracle results always serialize");
    emit(format!("{rendered}\n"));
    Ok(if result.found() { EXIT_DOMINATED } else { EXIT_OK })
}

fn cmd_generate(args: &GenerateArgs) -> Result<i32, i32> {
    if args.n == 0 || args.m == 0 {
        return Err(fail(EXIT_PARSE, "--n and --m must be at least 1"));
    }
    let (instance, point) = if args.convex {
        if args.p > 0 {
            return Err(fail(
                EXIT_PARSE,
                "--convex instances are unconstrained; use --p 0",
            ));
        }
        generate::convex_common_minimizer(args.n, args.m, args.seed)
    } else {
        let mut config = generate::GeneratorConfig::new(args.n, args.m, args.seed);
        if args.p > 0 {
            config.constrained = true;
            config.constraint_rows = Some(args.p);
        }
        generate::random_instance(&config)
    };
    io::write_instance(&args.out, &instance).map_err(|e| fail(EXIT_PARSE, e))?;
    // The anchor (or shared minimizer) composes directly with `--point`.
    let rendered: Vec<String> = point.iter().map(|v| v.to_string()).collect();
    emit(format!("{}\n", rendered.join(",")));
    eprintln!("wrote {}", args.out.display());
    Ok(EXIT_OK)
}

fn main() {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Example1(args) => example1::run(args),
        Command::Generate(args) => cmd_generate(args),
    }
    .unwrap_or_else(|code| code);
    std::process::exit(code);
}
