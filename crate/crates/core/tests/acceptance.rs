//! Acceptance criteria, one test per criterion.
//!
//! Every test prints a single `criterion N [PASS|FAIL] ...` line; run with
//! `--nocapture` to see them.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rampi_core::arith::{int, rat, Rational};
use rampi_core::derivation::{derive_ramanujan, SourceFormula};
use rampi_core::hyper_eval::{
    agreement_bound, binary_split, catalog, check_identity_numeric, decimal_exponent_upper,
    evaluate, extract_pi, naive_sum, naive_terms, tail_bound, BigFloat, ClaimedValue, FormulaId,
    Strategy,
};
use rampi_core::power_series::{
    compare_sides, pfaff_saalschutz_check, transform_sides, verify_transform, Identity,
};
use rampi_core::sampling::{random_params, random_rational};
use rampi_core::sequences::{
    big_u_seq, check_recurrence, to_rationals, u_seq, BigUMethod, RecurrenceSpec, UMethod,
};

fn ten_pow(e: i64) -> Rational {
    let p = BigInt::from(10u32).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Runs one criterion, prints its verdict line and fails the test on error.
fn criterion(id: u32, title: &str, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => println!("criterion {id:>2} [PASS] {title} ({secs:.2}s): {detail}"),
        Err(why) => {
            println!("criterion {id:>2} [FAIL] {title} ({secs:.2}s): {why}");
            panic!("criterion {id} failed: {why}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn admissible(identity: Identity, params: &[Rational]) -> bool {
    transform_sides(identity, params, 2).is_ok()
}

fn random_battery(identity: Identity, seed: u64, count: usize, order: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let p = random_params(&mut rng, identity.arity(), |p| admissible(identity, p));
        let r = verify_transform(identity, &p, order).map_err(|e| e.to_string())?;
        ensure(r.equal, || {
            format!("{identity} {p:?} differs at z^{:?}", r.first_mismatch)
        })?;
    }
    Ok(())
}

#[test]
fn c01_exact_transformations() {
    criterion(1, "exact transformation suite", || {
        random_battery(Identity::Gauss, 101, 10, 40)?;
        random_battery(Identity::Whipple, 102, 10, 40)?;
        // both quintic forms on the same parameter sets
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for _ in 0..5 {
            let p = random_params(&mut rng, 5, |p| {
                admissible(Identity::QuinticDoubleSum, p) && admissible(Identity::QuinticOrr, p)
            });
            let a =
                transform_sides(Identity::QuinticDoubleSum, &p, 40).map_err(|e| e.to_string())?;
            let b = transform_sides(Identity::QuinticOrr, &p, 40).map_err(|e| e.to_string())?;
            for (name, sides) in [("double sum", &a), ("orr", &b)] {
                let r = compare_sides(sides);
                ensure(r.equal, || format!("quintic {name} {p:?}: {r:?}"))?;
            }
            ensure(a[1] == b[1], || {
                format!("quintic right sides disagree for {p:?}")
            })?;
        }
        let half = verify_transform(Identity::HalfQuintic, &[], 100).map_err(|e| e.to_string())?;
        ensure(half.equal, || format!("half quintic: {half:?}"))?;
        let sides = transform_sides(Identity::Twelfths, &[], 60).map_err(|e| e.to_string())?;
        ensure(sides.len() == 3, || "twelfths needs three sides".into())?;
        let r = compare_sides(&sides);
        ensure(r.equal, || format!("twelfths: {r:?}"))?;
        Ok("gauss 10, whipple 10, quintic 5+5 at order 40; half quintic 100; twelfths 60".into())
    });
}

#[test]
fn c02_pfaff_saalschutz() {
    criterion(2, "terminating balanced 3F2", || {
        let mut rng = ChaCha8Rng::seed_from_u64(202);
        let mut checked = 0u64;
        let mut skipped = 0u64;
        while checked < 50 {
            let a = random_rational(&mut rng, 12, 3);
            let d = random_rational(&mut rng, 12, 3);
            let e = random_rational(&mut rng, 12, 3);
            let n = checked % 11;
            match pfaff_saalschutz_check(&a, &d, &e, n) {
                Ok(true) => checked += 1,
                Ok(false) => return Err(format!("a={a} d={d} e={e} n={n}")),
                Err(_) => skipped += 1,
            }
        }
        Ok(format!(
            "{checked} exact equalities, {skipped} pole draws skipped"
        ))
    });
}

#[test]
fn c03_sequences() {
    criterion(3, "sequence identities to n = 500", || {
        let nmax = 501;
        let conv = u_seq(nmax, UMethod::Convolution);
        let quarters = u_seq(nmax, UMethod::Quarters);
        ensure(conv == quarters, || "u_n forms disagree".into())?;
        let rec = u_seq(nmax, UMethod::Recurrence);
        ensure(conv == rec, || "u_n recurrence values disagree".into())?;
        let r = check_recurrence(&conv, &RecurrenceSpec::u_three_term(), 1, 500)
            .map_err(|e| e.to_string())?;
        ensure(r.holds, || {
            format!("u recurrence fails at {:?}", r.first_failure)
        })?;

        let direct = big_u_seq(nmax, BigUMethod::Direct).map_err(|e| e.to_string())?;
        let rescaled = big_u_seq(nmax, BigUMethod::Rescale).map_err(|e| e.to_string())?;
        let recurred = big_u_seq(nmax, BigUMethod::Recurrence).map_err(|e| e.to_string())?;
        ensure(direct == rescaled, || "U_n != 64^n u_n".into())?;
        ensure(direct == recurred, || {
            "U_n recurrence values disagree".into()
        })?;
        let r = check_recurrence(
            &to_rationals(&direct),
            &RecurrenceSpec::big_u_three_term(),
            1,
            500,
        )
        .map_err(|e| e.to_string())?;
        ensure(r.holds, || {
            format!("U recurrence fails at {:?}", r.first_failure)
        })?;

        let first: Vec<i64> = [1, 40, 2008].to_vec();
        ensure(
            direct[..3] == first.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(),
            || format!("U_0..2 = {:?}", &direct[..3]),
        )?;
        // U_2 forced two ways: 4096 u_2, and solving the recurrence at n = 1
        ensure(int(4096) * &conv[2] == int(2008), || {
            "4096 u_2 != 2008".into()
        })?;
        let forced = (int(8 * 3 * 21) * int(40) - int(4096)) / int(8);
        ensure(forced == int(2008), || {
            format!("recurrence forces U_2 = {forced}")
        })?;
        Ok("u forms, u recurrence, U = 64^n u, U recurrence, U_0..2 = 1, 40, 2008".into())
    });
}

#[test]
fn c04_derivation() {
    criterion(4, "derivation reproduces both new series", || {
        let cases = [
            (
                [20, 8, 1],
                rat(-1, 4),
                int(8),
                [18i64, -10, -3],
                6400u64,
                10i64,
                5u64,
            ),
            (
                [820, 180, 13],
                rat(-1, 1024),
                int(128),
                [1046529, 227104, 16032],
                1050625,
                25625,
                41,
            ),
        ];
        let mut shown = Vec::new();
        for (alpha, z0, rhs, quad, base, s, d) in cases {
            let src = SourceFormula::new(alpha, z0, rhs).map_err(|e| e.to_string())?;
            let out = derive_ramanujan(&src).map_err(|e| e.to_string())?;
            ensure(out.quadratic == quad.map(BigInt::from), || {
                format!("quadratic {out}")
            })?;
            ensure(out.integer_base() == Some(BigUint::from(base)), || {
                format!("base {out}")
            })?;
            ensure(*out.rhs.coefficient() == int(s), || format!("rhs {out}"))?;
            ensure(*out.rhs.radicand() == BigUint::from(d), || {
                format!("radicand {out}")
            })?;
            shown.push(out.to_string());
        }
        Ok(shown.join("; "))
    });
}

#[test]
fn c05_numeric_residuals() {
    criterion(5, "numeric residuals at 100 digits", || {
        let threshold = ten_pow(-95);
        let mut parts = Vec::new();
        for f in catalog() {
            let r = check_identity_numeric(&f, 100).map_err(|e| e.to_string())?;
            ensure(r.pass && r.residual_bound < threshold, || {
                format!("{}: bound 1e{}", f.name, r.residual_bound_exponent)
            })?;
            let tag = if r.conjectural {
                " (conjectural in source)"
            } else {
                ""
            };
            parts.push(format!(
                "{} <= 1e{}{tag}",
                f.name, r.residual_bound_exponent
            ));
        }
        let eq3 = FormulaId::CentralSquaresA.formula();
        ensure(eq3.conjectural, || "eq3 must be flagged conjectural".into())?;
        ensure(
            catalog().iter().filter(|f| f.conjectural).count() == 1,
            || "only eq3 is conjectural".into(),
        )?;
        Ok(parts.join(", "))
    });
}

#[test]
fn c06_deep_run() {
    criterion(6, "1000 digits of the 1050625 series", || {
        let start = Instant::now();
        let f = FormulaId::DerivedKilo.formula();
        let r = check_identity_numeric(&f, 1000).map_err(|e| e.to_string())?;
        let secs = start.elapsed().as_secs_f64();
        ensure(r.residual_bound < ten_pow(-995), || {
            format!("bound 1e{}", r.residual_bound_exponent)
        })?;
        ensure(secs < 30.0, || format!("took {secs:.1}s, target 30s"))?;
        Ok(format!(
            "{} terms, residual <= 1e{}, {secs:.2}s",
            r.terms, r.residual_bound_exponent
        ))
    });
}

#[test]
fn c07_split_matches_naive() {
    criterion(7, "binary splitting equals naive summation", || {
        for f in catalog() {
            let split = binary_split(&f, 0, 200).map_err(|e| e.to_string())?.value();
            let naive = naive_sum(&f, 0, 200).map_err(|e| e.to_string())?;
            ensure(split == naive, || format!("{}: exact sums differ", f.name))?;
            for bits in [64u64, 400, 3000] {
                let a = BigFloat::from_rational(&split, bits);
                let b = BigFloat::from_rational(&naive, bits);
                ensure(a.mantissa() == b.mantissa(), || {
                    format!("{}: rounding at {bits} bits", f.name)
                })?;
            }
            let a = evaluate(&f, 100, Strategy::BinarySplit).map_err(|e| e.to_string())?;
            let b = evaluate(&f, 100, Strategy::Naive).map_err(|e| e.to_string())?;
            ensure(a.value == b.value, || {
                format!("{}: evaluated values differ", f.name)
            })?;
        }
        Ok(format!(
            "{} formulas over [0,200) and at 100 digits",
            catalog().len()
        ))
    });
}

#[test]
fn c08_pi_cross_consistency() {
    criterion(8, "pi extracted from every pair of formulas", || {
        let pis: Vec<(String, BigFloat)> = catalog()
            .into_iter()
            .map(|f| extract_pi(&f, 100).map(|p| (f.name.clone(), p)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let threshold = ten_pow(-95);
        let mut worst = Rational::zero();
        for (i, (na, a)) in pis.iter().enumerate() {
            for (nb, b) in &pis[i + 1..] {
                let gap = agreement_bound(a, b);
                ensure(gap < threshold, || format!("{na} vs {nb}"))?;
                if gap > worst {
                    worst = gap;
                }
            }
        }
        let pairs = pis.len() * (pis.len() - 1) / 2;
        Ok(format!(
            "{pairs} pairs, worst bound <= 1e{}",
            decimal_exponent_upper(&worst)
        ))
    });
}

#[test]
fn c09_tail_bound_soundness() {
    criterion(9, "tail bounds dominate partial tails", || {
        let ks = [1usize, 2, 3, 5, 8, 13, 21, 34, 55, 89, 100];
        let mut checks = 0usize;
        for f in catalog() {
            let terms = naive_terms(&f, 401).map_err(|e| e.to_string())?;
            let mut prefix = Vec::with_capacity(terms.len() + 1);
            prefix.push(Rational::zero());
            for t in &terms {
                let next = prefix.last().unwrap() + t;
                prefix.push(next);
            }
            for n in 0..=300 {
                let bound = tail_bound(&f, n).map_err(|e| e.to_string())?;
                for &k in &ks {
                    let tail = (&prefix[n + k] - &prefix[n]).abs();
                    ensure(tail <= bound, || format!("{}: N={n} k={k}", f.name))?;
                    checks += 1;
                }
            }
        }
        Ok(format!(
            "{checks} (formula, N, k) triples, N <= 300, k <= 100"
        ))
    });
}

#[test]
fn c10_negative_controls() {
    criterion(10, "corruptions are detected", || {
        // coefficient: C = -3 -> -2
        let bad = FormulaId::DerivedQuarter.formula().with_coefficient(2, -2);
        let r = check_identity_numeric(&bad, 50).map_err(|e| e.to_string())?;
        ensure(!r.pass, || "corrupted quadratic passed".into())?;

        // series coefficient in an exact transformation
        let mut sides = transform_sides(Identity::Whipple, &[rat(1, 3), rat(1, 5), rat(2, 7)], 20)
            .map_err(|e| e.to_string())?;
        let bumped = sides[1].coeff(7) + rat(1, 1000);
        sides[1].set_coeff(7, bumped);
        let t = compare_sides(&sides);
        ensure(t.first_mismatch == Some(7), || {
            format!("transform control: {t:?}")
        })?;

        // sequence entries
        let mut u = u_seq(20, UMethod::Convolution);
        u[2] = rat(1, 2);
        let s = check_recurrence(&u, &RecurrenceSpec::u_three_term(), 1, 19)
            .map_err(|e| e.to_string())?;
        ensure(s.first_failure == Some(1), || format!("u control: {s:?}"))?;
        let mut big = to_rationals(&big_u_seq(20, BigUMethod::Direct).map_err(|e| e.to_string())?);
        big[10] += int(1);
        let s = check_recurrence(&big, &RecurrenceSpec::big_u_three_term(), 1, 19)
            .map_err(|e| e.to_string())?;
        ensure(s.first_failure == Some(9), || format!("U control: {s:?}"))?;

        // claimed constant: 25625 sqrt(41) -> 25626 sqrt(41)
        let f = FormulaId::DerivedKilo.formula();
        let wrong = f.with_claimed(ClaimedValue::over_pi_squared(int(25626), 41));
        let r = check_identity_numeric(&wrong, 50).map_err(|e| e.to_string())?;
        ensure(!r.pass, || "corrupted constant passed".into())?;
        let yang = FormulaId::YangB.formula();
        let mut c = yang.claimed.clone();
        c.extra_sqrt_denom = Some(BigUint::from(14u32));
        let r = check_identity_numeric(&yang.with_claimed(c), 50).map_err(|e| e.to_string())?;
        ensure(!r.pass, || "corrupted radical passed".into())?;
        ensure(r.residual_bound.is_positive(), || {
            "zero residual on a control".into()
        })?;
        Ok("quadratic, transform coefficient, u_2, U_10, claimed S, claimed radical".into())
    });
}
