//! The verification battery behind `rampi verify`.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use rampi_core::arith::{int, rat, Rational};
use rampi_core::derivation::{derive_ramanujan, SourceFormula};
use rampi_core::hyper_eval::{
    agreement_bound, catalog, check_identity_numeric, decimal_exponent_upper, extract_pi,
};
use rampi_core::power_series::{
    pfaff_saalschutz_check, transform_sides, verify_transform, Identity,
};
use rampi_core::sampling::{random_params, random_rational};
use rampi_core::sequences::{
    big_u_seq, check_recurrence, to_rationals, u_seq, BigUMethod, RecurrenceSpec, UMethod,
};

const SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u128,
}

type Outcome = rampi_core::Result<(bool, String)>;

struct Check {
    name: String,
    run: Box<dyn Fn() -> Outcome + Send + Sync>,
}

impl Check {
    fn new(name: impl Into<String>, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            run: Box::new(run),
        }
    }

    fn execute(&self) -> CheckResult {
        let start = Instant::now();
        let (status, detail) = match (self.run)() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e) => (Status::Error, e.to_string()),
        };
        CheckResult {
            name: self.name.clone(),
            status,
            detail,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }
}

fn show(params: &[Rational]) -> String {
    params
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn transform_check(identity: Identity, params: Vec<Rational>, order: usize, name: String) -> Check {
    Check::new(name, move || {
        let r = verify_transform(identity, &params, order)?;
        let detail = match r.first_mismatch {
            None => format!("params=({}) order={order}", show(&params)),
            Some(k) => format!("params=({}) first_mismatch={k}", show(&params)),
        };
        Ok((r.equal, detail))
    })
}

fn admissible(identity: Identity, params: &[Rational]) -> bool {
    transform_sides(identity, params, 2).is_ok()
}

fn exact_checks(order: usize) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checks = Vec::new();
    for (identity, count) in [(Identity::Gauss, 10), (Identity::Whipple, 10)] {
        for i in 0..count {
            let p = random_params(&mut rng, identity.arity(), |p| admissible(identity, p));
            checks.push(transform_check(
                identity,
                p,
                order,
                format!("transform:{identity}:{i}"),
            ));
        }
    }
    for i in 0..5 {
        let p = random_params(&mut rng, 5, |p| {
            admissible(Identity::QuinticDoubleSum, p) && admissible(Identity::QuinticOrr, p)
        });
        for identity in [Identity::QuinticDoubleSum, Identity::QuinticOrr] {
            checks.push(transform_check(
                identity,
                p.clone(),
                order,
                format!("transform:{identity}:{i}"),
            ));
        }
    }
    for identity in [Identity::HalfQuintic, Identity::Twelfths] {
        checks.push(transform_check(
            identity,
            Vec::new(),
            order,
            format!("transform:{identity}"),
        ));
    }

    let draws: Vec<[Rational; 3]> = (0..200)
        .map(|_| [0; 3].map(|_| random_rational(&mut rng, 12, 3)))
        .collect();
    checks.push(Check::new("pfaff_saalschutz", move || {
        let mut checked = 0u64;
        for [a, d, e] in &draws {
            if checked == 50 {
                break;
            }
            let n = checked % 11;
            match pfaff_saalschutz_check(a, d, e, n) {
                Ok(true) => checked += 1,
                Ok(false) => return Ok((false, format!("a={a} d={d} e={e} n={n}"))),
                Err(_) => {}
            }
        }
        Ok((checked == 50, format!("{checked} terminating sums")))
    }));

    checks.push(Check::new("sequence:u_forms", move || {
        let a = u_seq(order, UMethod::Convolution);
        let ok = a == u_seq(order, UMethod::Quarters) && a == u_seq(order, UMethod::Recurrence);
        Ok((ok, format!("n<={order}")))
    }));
    checks.push(Check::new("sequence:u_recurrence", move || {
        let u = u_seq(order, UMethod::Convolution);
        let r = check_recurrence(&u, &RecurrenceSpec::u_three_term(), 1, order as i64 - 1)?;
        Ok((r.holds, recurrence_detail(r.first_failure, order)))
    }));
    checks.push(Check::new("sequence:big_u_methods", move || {
        let direct = big_u_seq(order, BigUMethod::Direct)?;
        let ok = direct == big_u_seq(order, BigUMethod::Rescale)?
            && direct == big_u_seq(order, BigUMethod::Recurrence)?;
        Ok((ok, format!("n<={order}")))
    }));
    checks.push(Check::new("sequence:big_u_recurrence", move || {
        let seq = to_rationals(&big_u_seq(order, BigUMethod::Direct)?);
        let r = check_recurrence(
            &seq,
            &RecurrenceSpec::big_u_three_term(),
            1,
            order as i64 - 1,
        )?;
        Ok((r.holds, recurrence_detail(r.first_failure, order)))
    }));
    checks.push(Check::new("sequence:big_u_initial", || {
        let u = big_u_seq(2, BigUMethod::Direct)?;
        let shown = u
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",");
        Ok((shown == "1,40,2008", shown))
    }));

    for (name, alpha, z0, rhs, expected) in [
        (
            "derive:thm3-1",
            [20, 8, 1],
            rat(-1, 4),
            int(8),
            "18n^2-10n-3 / 6400^n = 10*sqrt(5)/pi^2",
        ),
        (
            "derive:thm3-2",
            [820, 180, 13],
            rat(-1, 1024),
            int(128),
            "1046529n^2+227104n+16032 / 1050625^n = 25625*sqrt(41)/pi^2",
        ),
    ] {
        checks.push(Check::new(name, move || {
            let out = derive_ramanujan(&SourceFormula::new(alpha, z0.clone(), rhs.clone())?)?;
            let shown = out.to_string();
            Ok((shown == expected, shown))
        }));
    }
    checks
}

fn recurrence_detail(first_failure: Option<i64>, order: usize) -> String {
    match first_failure {
        None => format!("n in 1..={}", order - 1),
        Some(n) => format!("first_failure={n}"),
    }
}

fn numeric_checks(digits: u64) -> Vec<Check> {
    let mut checks: Vec<Check> = catalog()
        .into_iter()
        .map(|f| {
            Check::new(format!("numeric:{}", f.name), move || {
                let r = check_identity_numeric(&f, digits)?;
                let mut detail = format!(
                    "residual_bound<=1e{} terms={}",
                    r.residual_bound_exponent, r.terms
                );
                if r.conjectural {
                    detail.push_str("; conjectural in source");
                }
                Ok((r.pass, detail))
            })
        })
        .collect();
    checks.push(Check::new("numeric:pi_consistency", move || {
        let pis = catalog()
            .iter()
            .map(|f| extract_pi(f, digits))
            .collect::<rampi_core::Result<Vec<_>>>()?;
        let mut worst = Rational::from_integer(0.into());
        for (i, a) in pis.iter().enumerate() {
            for b in &pis[i + 1..] {
                worst = worst.max(agreement_bound(a, b));
            }
        }
        let e = decimal_exponent_upper(&worst);
        let threshold = 5 - digits as i64;
        Ok((e < threshold, format!("max_pairwise_gap<=1e{e}")))
    }));
    checks
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Exact,
    Numeric,
    All,
}

/// Runs the selected suites; results keep a fixed order.
pub fn run(suite: Suite, order: usize, digits: u64) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Exact | Suite::All) {
        checks.extend(exact_checks(order));
    }
    if matches!(suite, Suite::Numeric | Suite::All) {
        checks.extend(numeric_checks(digits));
    }
    checks.par_iter().map(Check::execute).collect()
}
