//! High-precision evaluation of the catalog series.
//!
//! Partial sums are exact (binary splitting over integers); the only
//! rounding happens once at the end, and the truncated tail is covered by
//! [`tail_bound`]. Claimed constants are assembled from [`oracle`], which
//! never touches the series themselves.

mod bigfloat;
mod formula;
pub mod oracle;
mod split;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

pub use bigfloat::{bits_for_digits, decimal_exponent_upper, format_decimal, isqrt, BigFloat};
pub use formula::{catalog, ClaimedValue, FormulaId, Kernel, RamanujanFormula};
pub use oracle::{pi_machin, pi_reference, pi_stormer, sqrt_int, sqrt_int_at};
pub use split::{binary_split, naive_sum, naive_terms, SplitSum};

/// Guard bits on top of the requested decimal precision.
pub const GUARD_BITS: u64 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Naive,
    BinarySplit,
}

/// `|sum_{n >= start} term(n)|` is at most the returned value.
///
/// Uses `|term(n)| <= Q (n+1)^k rho^n` with `Q = |A| + |B| + |C|`,
/// `k = 2 + kernel exponent` and `rho = g |x|` from [`Kernel::growth`].
/// From the first index `M >= start` where the ratio bound
/// `((M+2)/(M+1))^k rho` drops to `(1+rho)/2`, the rest is a geometric
/// series; the few terms before `M` are summed explicitly.
pub fn tail_bound(formula: &RamanujanFormula, start: usize) -> Result<Rational> {
    let rho = formula.rho();
    if rho >= Rational::one() {
        return Err(Error::Divergent(formula.name.clone()));
    }
    let q: BigInt = formula.quadratic.iter().map(|c| c.abs()).sum();
    let q = Rational::from_integer(q);
    if q.is_zero() {
        return Ok(Rational::zero());
    }
    let (_, extra) = formula.kernel.growth();
    let k = 2 + extra;
    let one = Rational::one();
    let half_way = (&one + &rho) / Rational::from_integer(BigInt::from(2));

    let term_bound = |n: usize, rho_n: &Rational| {
        &q * Rational::from_integer(BigInt::from(n + 1).pow(k)) * rho_n
    };
    let ratio_at =
        |m: usize| Rational::new(BigInt::from(m + 2), BigInt::from(m + 1)).pow(k as i32) * &rho;

    let mut rho_n = rho.pow(start as i32);
    let mut total = Rational::zero();
    let mut m = start;
    loop {
        let r = ratio_at(m);
        if r <= half_way {
            total += term_bound(m, &rho_n) / (&one - r);
            return Ok(total);
        }
        total += term_bound(m, &rho_n);
        rho_n *= &rho;
        m += 1;
    }
}

/// Smallest `N` (found by estimate, then exact check) with
/// `tail_bound(N) <= 2^-bits`.
pub fn terms_for_bits(formula: &RamanujanFormula, bits: u64) -> Result<usize> {
    let rho = formula.rho();
    if rho.is_zero() {
        return Ok(1);
    }
    let log_rho = rho.to_f64().unwrap_or(0.5).log2();
    let q: f64 = formula
        .quadratic
        .iter()
        .map(|c| c.abs().to_f64().unwrap_or(f64::MAX))
        .sum::<f64>()
        .max(1.0);
    let k = 2 + formula.kernel.growth().1;
    // crude estimate of where Q (n+1)^k rho^n / (1 - rho) falls below 2^-bits
    let mut n = 0usize;
    while q.log2() + k as f64 * ((n + 1) as f64).log2() + n as f64 * log_rho
        - (1.0 - rho.to_f64().unwrap_or(0.5)).log2()
        > -(bits as f64) - 2.0
    {
        n += 1;
    }
    let target = Rational::new(BigInt::one(), BigInt::one() << bits);
    // walk down while the exact bound still holds, then up until it does
    while n > 0 && tail_bound(formula, n - 1)? <= target {
        n -= 1;
    }
    while tail_bound(formula, n)? > target {
        n += 1;
    }
    Ok(n)
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: BigFloat,
    pub terms: usize,
    pub exact_partial: Rational,
    pub tail: Rational,
}

/// Sums enough terms for `digits` digits and rounds once.
pub fn evaluate(formula: &RamanujanFormula, digits: u64, strategy: Strategy) -> Result<Evaluation> {
    if digits == 0 {
        return Err(Error::InvalidInput("digits must be at least 1".into()));
    }
    let base_bits = bits_for_digits(digits) + GUARD_BITS;
    let terms = terms_for_bits(formula, base_bits)?;
    let precision = base_bits + (usize::BITS - terms.leading_zeros()) as u64;
    let exact_partial = match strategy {
        Strategy::BinarySplit => binary_split(formula, 0, terms)?.value(),
        Strategy::Naive => naive_sum(formula, 0, terms)?,
    };
    let tail = tail_bound(formula, terms)?;
    let value = BigFloat::from_rational_with_error(&exact_partial, &tail, precision);
    Ok(Evaluation {
        value,
        terms,
        exact_partial,
        tail,
    })
}

/// The series value to `digits` significant digits, with error bound.
pub fn eval_formula(formula: &RamanujanFormula, digits: u64) -> Result<BigFloat> {
    Ok(evaluate(formula, digits, Strategy::BinarySplit)?.value)
}

/// `S sqrt(d) / (pi^p sqrt(e))` at `precision` bits, from the oracles.
pub fn claimed_value(claimed: &ClaimedValue, precision: u64) -> Result<BigFloat> {
    let pi = pi_machin(precision);
    let mut den = if claimed.pi_power == 2 {
        pi.mul(&pi)
    } else {
        pi
    };
    if let Some(e) = &claimed.extra_sqrt_denom {
        den = den.mul(&sqrt_int_at(e, precision));
    }
    let num = sqrt_int_at(&claimed.d, precision).scale(&claimed.s);
    num.div(&den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericReport {
    /// Smallest `e` with residual bound `<= 10^e`.
    pub residual_bound_exponent: i64,
    pub residual_bound: Rational,
    pub pass: bool,
    pub terms: usize,
    pub conjectural: bool,
}

/// Rigorous bound on `|series - claimed|`; passes when it is below
/// `10^(5 - digits)`.
pub fn check_identity_numeric(formula: &RamanujanFormula, digits: u64) -> Result<NumericReport> {
    check_identity_numeric_with(formula, digits, Strategy::BinarySplit)
}

pub fn check_identity_numeric_with(
    formula: &RamanujanFormula,
    digits: u64,
    strategy: Strategy,
) -> Result<NumericReport> {
    if digits < 10 {
        return Err(Error::InvalidInput(
            "numeric checks need at least 10 digits".into(),
        ));
    }
    let eval = evaluate(formula, digits, strategy)?;
    let claimed = claimed_value(&formula.claimed, eval.value.precision())?;
    let residual = eval.value.sub(&claimed);
    let bound = residual.magnitude_bound();
    let threshold = Rational::new(BigInt::one(), BigInt::from(10u32).pow(digits as u32 - 5));
    let exponent = if bound.is_zero() {
        -(digits as i64) - GUARD_BITS as i64
    } else {
        decimal_exponent_upper(&bound)
    };
    Ok(NumericReport {
        residual_bound_exponent: exponent,
        pass: bound < threshold,
        residual_bound: bound,
        terms: eval.terms,
        conjectural: formula.conjectural,
    })
}

/// pi recovered from the series alone: `pi^p = S sqrt(d) / (sum sqrt(e))`.
pub fn extract_pi(formula: &RamanujanFormula, digits: u64) -> Result<BigFloat> {
    let eval = evaluate(formula, digits, Strategy::BinarySplit)?;
    let p = eval.value.precision();
    let c = &formula.claimed;
    let mut den = eval.value;
    if let Some(e) = &c.extra_sqrt_denom {
        den = den.mul(&sqrt_int_at(e, p));
    }
    let num = sqrt_int_at(&c.d, p).scale(&c.s);
    let pi_pow = num.div(&den)?;
    if c.pi_power == 2 {
        pi_pow.sqrt()
    } else {
        Ok(pi_pow)
    }
}

/// Bound on `|a - b|` for two enclosures, at a common precision.
pub fn agreement_bound(a: &BigFloat, b: &BigFloat) -> Rational {
    let p = a.precision().min(b.precision());
    a.rescale(p).sub(&b.rescale(p)).magnitude_bound()
}
