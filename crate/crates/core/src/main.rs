use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use meanforge::hermitian::{ComplexMatrix, Fixture, PDMatrix};
use meanforge::matrix_inequalities::MatrixCheckInput;
use meanforge::matrix_means::MeanKind;
use meanforge::scalar_means::{self as sm, PositivePair, Weight};
use meanforge::suite::{self, CheckInput, ScalarCheckInput, SuiteConfig};
use meanforge::{Error, Result};

const TOL_ENV: &str = "MEANFORGE_TOL";

#[derive(Parser)]
#[command(name = "meanforge", version, about = "Evaluate means and certify inequalities between them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the value of a scalar mean, or a matrix mean of a fixture's A and B.
    Eval(EvalArgs),
    /// Run one check and print its verdict as JSON.
    Check(CheckArgs),
    /// Run a randomized suite and write a JSON report.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct Operands {
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    /// JSON fixture with matrices A, B and optionally X.
    #[arg(long)]
    fixture: Option<PathBuf>,
    /// Matrix dimension for --identity or for scalar multiples of I.
    #[arg(long)]
    dim: Option<usize>,
    /// Use A = B = X = I.
    #[arg(long)]
    identity: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    mean: String,
    #[command(flatten)]
    ops: Operands,
}

#[derive(Args)]
struct CheckArgs {
    check_id: String,
    #[command(flatten)]
    ops: Operands,
    /// Constant for the monotonicity probes.
    #[arg(long)]
    c: Option<f64>,
    /// Grid size for the monotonicity probes.
    #[arg(long, default_value_t = meanforge::scalar_inequalities::DEFAULT_GRID)]
    grid: usize,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct SuiteArgs {
    /// Check ids or globs such as `S-*`, comma separated or repeated.
    #[arg(long, value_delimiter = ',', default_values_t = ["S-*".to_string(), "M-*".to_string()])]
    families: Vec<String>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Inclusive range `lo..hi`.
    #[arg(long, default_value = "1..8", value_parser = parse_dims)]
    dims: [usize; 2],
    #[arg(long, default_value_t = 1e4)]
    cond_max: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    tol: Option<f64>,
    /// Weight grid size, also the probe grid.
    #[arg(long, default_value_t = meanforge::scalar_inequalities::DEFAULT_GRID)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Assert the first selected check in the wrong direction; the run must fail.
    #[arg(long)]
    self_test_negative: bool,
}

fn parse_dims(s: &str) -> std::result::Result<[usize; 2], String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo = lo.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let hi = hi.trim().trim_start_matches('=').parse::<usize>().map_err(|e| e.to_string())?;
    Ok([lo, hi])
}

/// 15 significant digits, trailing zeros dropped.
fn fmt_value(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{m}e{exp}")
    }
}

fn env_tol() -> Result<Option<f64>> {
    match std::env::var(TOL_ENV) {
        Ok(s) => {
            let tol: f64 = s.trim().parse().map_err(|_| Error::Config(format!("{TOL_ENV}={s:?} is not a number")))?;
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Error::Config(format!("{TOL_ENV} must be positive")));
            }
            Ok(Some(tol))
        }
        Err(_) => Ok(None),
    }
}

fn weight(v: Option<f64>) -> Result<Option<Weight>> {
    v.map(Weight::new).transpose()
}

fn pair(ops: &Operands) -> Result<PositivePair> {
    match (ops.a, ops.b) {
        (Some(a), Some(b)) => PositivePair::new(a, b),
        _ => Err(Error::Config("--a and --b are required".into())),
    }
}

fn read_fixture(path: &PathBuf) -> Result<Fixture> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    Fixture::parse(&text)
}

fn matrix_input(ops: &Operands) -> Result<MatrixCheckInput> {
    let (t, tau, nu) = (weight(ops.t)?, weight(ops.tau)?, weight(ops.nu)?);
    if let Some(path) = &ops.fixture {
        let f = read_fixture(path)?;
        let b = if f.has("B") { Some(f.pd("B")?) } else { None };
        let x = if f.has("X") { Some(f.matrix("X")?) } else { None };
        return Ok(MatrixCheckInput { a: f.pd("A")?, b, x, t, tau, nu });
    }
    let n = ops.dim.unwrap_or(1);
    if n == 0 {
        return Err(Error::Config("--dim must be at least 1".into()));
    }
    let (a, b) = if ops.identity {
        (PDMatrix::identity(n), PDMatrix::identity(n))
    } else {
        let p = pair(ops)?;
        (PDMatrix::identity(n).scaled(p.a())?, PDMatrix::identity(n).scaled(p.b())?)
    };
    Ok(MatrixCheckInput { a, b: Some(b), x: Some(ComplexMatrix::identity(n)), t, tau, nu })
}

fn cmd_eval(args: &EvalArgs) -> Result<ExitCode> {
    let name = args.mean.to_ascii_lowercase().replace('_', "-");
    let t = || weight(args.ops.t)?.ok_or_else(|| Error::Config("--t is required".into()));
    if let Some(path) = &args.ops.fixture {
        let f = read_fixture(path)?;
        let kind: MeanKind = name.parse()?;
        let m = kind.apply(&f.pd("A")?, &f.pd("B")?, t()?)?;
        println!("{}", Fixture::from_matrices(m.matrix(), None, None).to_json());
        return Ok(ExitCode::SUCCESS);
    }
    let p = pair(&args.ops)?;
    let value = match name.as_str() {
        "kantorovich" => sm::kantorovich(p),
        "arithmetic" => sm::weighted_arithmetic(p, t()?),
        "harmonic" => sm::weighted_harmonic(p, t()?),
        "geometric" => sm::weighted_geometric(p, t()?),
        "heinz" => sm::heinz(p, t()?),
        "harmonic-heinz" => sm::harmonic_heinz(p, t()?),
        "heron" => sm::heron(p, t()?),
        "heron-harmonic" => sm::heron_harmonic(p, t()?),
        _ => return Err(Error::Config(format!("unknown mean {:?}", args.mean))),
    };
    println!("{}", fmt_value(value));
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: &CheckArgs) -> Result<ExitCode> {
    let id = args.check_id.to_ascii_uppercase();
    if !suite::check_ids().contains(&id) {
        return Err(Error::Config(format!("unknown check {:?}", args.check_id)));
    }
    let tol = match args.tol {
        Some(t) => t,
        None => env_tol()?.unwrap_or_else(|| suite::default_tol(&id)),
    };
    let input = if id.starts_with("M-") {
        CheckInput::Matrix(matrix_input(&args.ops)?)
    } else if id.starts_with("S-MONO-") {
        let c = args.c.ok_or_else(|| Error::Config("--c is required".into()))?;
        CheckInput::Probe { c, grid: args.grid }
    } else {
        CheckInput::Scalar(ScalarCheckInput {
            pair: Some(pair(&args.ops)?),
            t: weight(args.ops.t)?,
            tau: weight(args.ops.tau)?,
            nu: weight(args.ops.nu)?,
        })
    };
    let v = suite::evaluate(&id, &input, tol)?;
    println!("{}", serde_json::to_string(&v).expect("verdict serializes"));
    Ok(if v.holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_suite(args: &SuiteArgs) -> Result<ExitCode> {
    let tol_rel = match args.tol {
        Some(t) => Some(t),
        None => env_tol()?,
    };
    let cfg = SuiteConfig {
        families: args.families.clone(),
        trials: args.trials,
        dims: args.dims,
        cond_max: args.cond_max,
        seed: args.seed,
        tol_rel,
        weight_grid: args.grid,
        output_path: args.out.as_ref().map(|p| p.display().to_string()),
        self_test_negative: args.self_test_negative,
    };
    let report = suite::run_suite(&cfg)?;
    let json = report.to_json();
    match &args.out {
        Some(path) => {
            std::fs::write(path, json + "\n").map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            for c in &report.checks {
                println!(
                    "{:<22} trials {:>7}  failures {:>5}  worst margin {}",
                    c.check_id,
                    c.trials,
                    c.failures,
                    fmt_value(c.worst_margin)
                );
            }
            println!("overall: {}", if report.overall_pass { "pass" } else { "FAIL" });
        }
        None => println!("{json}"),
    }
    Ok(if report.overall_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Check(a) => cmd_check(a),
        Command::Suite(a) => cmd_suite(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_format() {
        assert_eq!(fmt_value(1.6), "1.6");
        assert_eq!(fmt_value(3.0), "3");
        assert_eq!(fmt_value(160.0 / 91.0), "1.75824175824176");
        assert_eq!(fmt_value(1e-9), "1e-9");
        assert_eq!(fmt_value(-0.25), "-0.25");
        assert_eq!(fmt_value(123456.5), "123456.5");
    }

    #[test]
    fn dims_parse() {
        assert_eq!(parse_dims("1..6").unwrap(), [1, 6]);
        assert_eq!(parse_dims("2..=4").unwrap(), [2, 4]);
        assert!(parse_dims("3").is_err());
    }
}
