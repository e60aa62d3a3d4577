//! `rampi`: verification suites, digits, derivations, sequence dumps and
//! timings for Ramanujan-type series for 1/pi^2.

mod checks;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rampi_core::arith::{parse_rational, Rational};
use rampi_core::derivation::{derive_ramanujan, SourceFormula};
use rampi_core::hyper_eval::{
    check_identity_numeric, decimal_exponent_upper, evaluate, extract_pi, FormulaId,
    RamanujanFormula, Strategy,
};
use rampi_core::sequences::{a_seq, b_seq, big_u_seq, u_seq, BigUMethod, UMethod};

use checks::{Status, Suite};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "rampi",
    version,
    about = "Exact and high-precision checks of Ramanujan-type 1/pi^2 series"
)]
struct Cli {
    /// Worker threads for parallel summation and check batteries.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the identity battery and print a JSON report.
    Verify(VerifyArgs),
    /// Evaluate a catalog series to a number of digits.
    Digits(DigitsArgs),
    /// Derive a new series from a source formula at a point z0.
    Derive(DeriveArgs),
    /// Dump a sequence as JSON lines.
    Seq(SeqArgs),
    /// Time naive against binary-split summation (CSV).
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Truncation order of the formal power series checks.
    #[arg(long, default_value_t = 40)]
    order: usize,
    /// Decimal digits for the numeric residual checks.
    #[arg(long, default_value_t = 100)]
    digits: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Exact,
    Numeric,
    All,
}

#[derive(Args, Debug)]
struct DigitsArgs {
    /// eq1, eq2, eq3, yang, thm3-1 or thm3-2.
    #[arg(long)]
    formula: String,
    #[arg(long)]
    digits: u64,
    #[arg(long, value_enum, default_value = "binary-split")]
    strategy: StrategyArg,
    /// Also print pi recovered from the series.
    #[arg(long)]
    as_pi: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Naive,
    BinarySplit,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Naive => Strategy::Naive,
            StrategyArg::BinarySplit => Strategy::BinarySplit,
        }
    }
}

#[derive(Args, Debug)]
struct DeriveArgs {
    /// Quadratic of the source series, as `a2,a1,a0`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Evaluation point, `p/q` or an integer.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Rational right side `R` of the source formula `R / pi^2`.
    #[arg(long, allow_hyphen_values = true)]
    rhs: String,
    /// Also check the derived series numerically at this many digits.
    #[arg(long)]
    check: Option<u64>,
}

#[derive(Args, Debug)]
struct SeqArgs {
    #[arg(long, value_parser = ["u", "U", "A", "B"])]
    name: String,
    /// Largest index.
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma-separated digit counts.
    #[arg(long, default_value = "100,1000")]
    digits: String,
    /// A single formula id; all of them when absent.
    #[arg(long)]
    formula: Option<String>,
}

/// What went wrong, split by exit code.
enum Failure {
    /// Exit 1: a check ran and did not pass.
    Check(String),
    /// Exit 2: bad flags or inputs.
    Usage(String),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(usage(e.to_string())),
        },
        None => dispatch(cli.command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("rampi: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("rampi: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Verify(a) => verify(a),
        Command::Digits(a) => digits(a),
        Command::Derive(a) => derive(a),
        Command::Seq(a) => seq(a),
        Command::Bench(a) => bench(a),
    }
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    if args.order < 4 {
        return Err(usage(format!(
            "--order must be at least 4, got {}",
            args.order
        )));
    }
    if args.digits < 10 {
        return Err(usage(format!(
            "--digits must be at least 10, got {}",
            args.digits
        )));
    }
    let (suite, suite_name) = match args.suite {
        SuiteArg::Exact => (Suite::Exact, "exact"),
        SuiteArg::Numeric => (Suite::Numeric, "numeric"),
        SuiteArg::All => (Suite::All, "all"),
    };
    let start = Instant::now();
    let results = checks::run(suite, args.order, args.digits);
    let failed = results.iter().filter(|r| r.status != Status::Pass).count();
    let report = json!({
        "command": format!("verify --suite {suite_name} --order {} --digits {}", args.order, args.digits),
        "version": VERSION,
        "elapsed_ms": start.elapsed().as_millis() as u64,
        "checks": results.iter().map(|r| json!({
            "name": r.name,
            "status": r.status.as_str(),
            "detail": r.detail,
            "elapsed_ms": r.elapsed_ms as u64,
        })).collect::<Vec<_>>(),
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{failed} of {} checks did not pass",
            results.len()
        )))
    }
}

fn lookup(id: &str) -> Result<RamanujanFormula, Failure> {
    id.parse::<FormulaId>()
        .map(FormulaId::formula)
        .map_err(|e| usage(e.to_string()))
}

fn bound_exponent(bound: &Rational) -> String {
    match decimal_exponent_upper(bound) {
        i64::MIN => "0".into(),
        e => format!("1e{e}"),
    }
}

fn digits(args: DigitsArgs) -> Result<(), Failure> {
    let formula = lookup(&args.formula)?;
    if args.digits == 0 {
        return Err(usage("--digits must be at least 1"));
    }
    let start = Instant::now();
    let eval =
        evaluate(&formula, args.digits, args.strategy.into()).map_err(|e| usage(e.to_string()))?;
    let elapsed = start.elapsed().as_millis();
    let d = args.digits as usize;
    println!("formula: {}", formula.name);
    println!("claimed: {}", formula.claimed);
    println!("value: {}", eval.value.to_decimal(d));
    println!("error_bound: {}", bound_exponent(&eval.value.error_bound()));
    println!("terms: {}", eval.terms);
    if args.as_pi {
        let pi = extract_pi(&formula, args.digits).map_err(|e| Failure::Check(e.to_string()))?;
        println!("pi: {}", pi.to_decimal(d));
        println!("pi_error_bound: {}", bound_exponent(&pi.error_bound()));
    }
    println!("elapsed_ms: {elapsed}");
    Ok(())
}

fn parse_alpha(s: &str) -> Result<[i64; 3], Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let values = parts
        .iter()
        .map(|p| p.parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("--alpha {s:?}: {e}")))?;
    values
        .try_into()
        .map_err(|_| usage(format!("--alpha needs three integers, got {s:?}")))
}

fn derive(args: DeriveArgs) -> Result<(), Failure> {
    let alpha = parse_alpha(&args.alpha)?;
    let z0 = parse_rational(&args.z).map_err(|e| usage(format!("--z: {e}")))?;
    let rhs = parse_rational(&args.rhs).map_err(|e| usage(format!("--rhs: {e}")))?;
    let source = SourceFormula::new(alpha, z0, rhs).map_err(|e| usage(e.to_string()))?;
    let derived = derive_ramanujan(&source).map_err(|e| usage(e.to_string()))?;
    println!("{derived}");
    if let Some(d) = args.check {
        if d < 10 {
            return Err(usage("--check needs at least 10 digits"));
        }
        let formula = RamanujanFormula::from_derived("derived", &derived)
            .map_err(|e| usage(e.to_string()))?;
        let r = check_identity_numeric(&formula, d).map_err(|e| usage(e.to_string()))?;
        let verdict = if r.pass { "pass" } else { "fail" };
        println!(
            "check: {verdict} residual_bound<=1e{} terms={}",
            r.residual_bound_exponent, r.terms
        );
        if !r.pass {
            return Err(Failure::Check(String::new()));
        }
    }
    Ok(())
}

fn seq(args: SeqArgs) -> Result<(), Failure> {
    let values: Vec<String> = match args.name.as_str() {
        "u" => u_seq(args.n, UMethod::Recurrence)
            .iter()
            .map(ToString::to_string)
            .collect(),
        "U" => big_u_seq(args.n, BigUMethod::Recurrence)
            .map_err(|e| usage(e.to_string()))?
            .iter()
            .map(ToString::to_string)
            .collect(),
        "A" => a_seq(args.n).iter().map(ToString::to_string).collect(),
        "B" => b_seq(args.n).iter().map(ToString::to_string).collect(),
        other => return Err(usage(format!("unknown sequence {other}"))),
    };
    for (n, v) in values.iter().enumerate() {
        println!("{}", json!({ "n": n, "name": args.name, "value": v }));
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<(), Failure> {
    let digit_list = args
        .digits
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("--digits {:?}: {e}", args.digits)))?;
    if digit_list.contains(&0) {
        return Err(usage("--digits entries must be at least 1"));
    }
    let ids: Vec<FormulaId> = match &args.formula {
        Some(id) => vec![id
            .parse()
            .map_err(|e: rampi_core::Error| usage(e.to_string()))?],
        None => FormulaId::ALL.to_vec(),
    };
    println!("formula,digits,terms,naive_ms,binary_split_ms");
    for id in ids {
        let formula = id.formula();
        for &d in &digit_list {
            let timed = |s: Strategy| {
                let start = Instant::now();
                evaluate(&formula, d, s).map(|e| (e.terms, start.elapsed().as_secs_f64() * 1e3))
            };
            let (terms, naive) =
                timed(Strategy::Naive).map_err(|e| Failure::Check(e.to_string()))?;
            let (_, split) =
                timed(Strategy::BinarySplit).map_err(|e| Failure::Check(e.to_string()))?;
            println!("{},{d},{terms},{naive:.3},{split:.3}", id.as_str());
        }
    }
    Ok(())
}
