//! Coefficientwise checks of the quadratic transformations.
//!
//! Each [`Identity`] builds two (or three) independent [`Series`] and
//! compares them exactly. The right-hand sides all have the shape
//! `(1-z)^(-a) * G(w)` with `w = -4z/(1-z)^2`, assembled from
//! [`Series::pow_rational`], [`quad_map`] and [`Series::compose`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{hypergeometric_series, one_minus_z, quad_map, HypergeometricSpec, Series};
use crate::arith::{int, pochhammer_table, rat, Rational};
use crate::error::{Error, Result};
use crate::sequences::{u_seq, UMethod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `2F1(a, b; 1+a-b; z)` in terms of `w`, parameters `(a, b)`.
    Gauss,
    /// The `3F2` analogue, parameters `(a, b, c)`.
    Whipple,
    /// Very-well-poised-shape `5F4` as an explicit double sum in `w`,
    /// parameters `(a, b, c, d, e)`.
    QuinticDoubleSum,
    /// Same `5F4`, with the inner sum read off the coefficients `f_n` of
    /// `(1-z)^(b+c-a-1) 3F2(b, c, 1+a-d-e; 1+a-d, 1+a-e; z)`.
    QuinticOrr,
    /// All parameters `1/2`: the inner sum collapses to `u_n`. No parameters.
    HalfQuintic,
    /// `sum u_n (1/3)_n (2/3)_n / n!^2 z^n = 3F2(1/6,1/2,5/6;1,1;z)^2 =
    /// 2F1(1/12,5/12;1;z)^4`. No parameters; three sides.
    Twelfths,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::Gauss,
        Identity::Whipple,
        Identity::QuinticDoubleSum,
        Identity::QuinticOrr,
        Identity::HalfQuintic,
        Identity::Twelfths,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Gauss => "gauss",
            Identity::Whipple => "whipple",
            Identity::QuinticDoubleSum => "quintic_double_sum",
            Identity::QuinticOrr => "quintic_orr",
            Identity::HalfQuintic => "half_quintic",
            Identity::Twelfths => "twelfths",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Identity::Gauss => 2,
            Identity::Whipple => 3,
            Identity::QuinticDoubleSum | Identity::QuinticOrr => 5,
            Identity::HalfQuintic | Identity::Twelfths => 0,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformReport {
    pub equal: bool,
    pub first_mismatch: Option<usize>,
}

/// Builds every side of `identity` to `order`. The first entry is the
/// left-hand side.
pub fn transform_sides(
    identity: Identity,
    params: &[Rational],
    order: usize,
) -> Result<Vec<Series>> {
    if params.len() != identity.arity() {
        return Err(Error::ParameterCount {
            identity: identity.name(),
            expected: identity.arity(),
            got: params.len(),
        });
    }
    if order == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    let one = Rational::one();
    let half = rat(1, 2);
    match identity {
        Identity::Gauss => {
            let (a, b) = (&params[0], &params[1]);
            let lower = &one + a - b;
            let lhs = HypergeometricSpec::new(vec![a.clone(), b.clone()], vec![lower.clone()])?;
            let inner =
                HypergeometricSpec::new(vec![a * &half, &half + a * &half - b], vec![lower])?;
            let rhs = prefactored(a, &hypergeometric_series(&inner, order))?;
            Ok(vec![hypergeometric_series(&lhs, order), rhs])
        }
        Identity::Whipple => {
            let (a, b, c) = (&params[0], &params[1], &params[2]);
            let lb = &one + a - b;
            let lc = &one + a - c;
            let lhs = HypergeometricSpec::new(
                vec![a.clone(), b.clone(), c.clone()],
                vec![lb.clone(), lc.clone()],
            )?;
            let inner = HypergeometricSpec::new(
                vec![a * &half, &half + a * &half, &one + a - b - c],
                vec![lb, lc],
            )?;
            let rhs = prefactored(a, &hypergeometric_series(&inner, order))?;
            Ok(vec![hypergeometric_series(&lhs, order), rhs])
        }
        Identity::QuinticDoubleSum | Identity::QuinticOrr => {
            let (a, b, c, d, e) = (&params[0], &params[1], &params[2], &params[3], &params[4]);
            let lhs = HypergeometricSpec::new(
                vec![a.clone(), b.clone(), c.clone(), d.clone(), e.clone()],
                vec![&one + a - b, &one + a - c, &one + a - d, &one + a - e],
            )?;
            let cubic = HypergeometricSpec::new(
                vec![b.clone(), c.clone(), &one + a - d - e],
                vec![&one + a - d, &one + a - e],
            )?;
            let inner = if identity == Identity::QuinticDoubleSum {
                double_sum_inner(a, b, c, &cubic, order)
            } else {
                orr_coefficients(a, b, c, &cubic, order)?
            };
            let outer = outer_weights(a, b, c, order);
            let g = Series::new(inner.iter().zip(&outer).map(|(f, w)| f * w).collect());
            Ok(vec![
                hypergeometric_series(&lhs, order),
                prefactored(a, &g)?,
            ])
        }
        Identity::HalfQuintic => {
            let lhs = HypergeometricSpec::new(vec![half.clone(); 5], vec![one.clone(); 4])?;
            let u = u_seq(order - 1, UMethod::Convolution);
            let c = quarter_weights(&rat(1, 4), &rat(3, 4), order);
            let g = Series::new(u.iter().zip(&c).map(|(u, c)| u * c).collect());
            Ok(vec![
                hypergeometric_series(&lhs, order),
                prefactored(&half, &g)?,
            ])
        }
        Identity::Twelfths => {
            let u = u_seq(order - 1, UMethod::Convolution);
            let c = quarter_weights(&rat(1, 3), &rat(2, 3), order);
            let lhs = Series::new(u.iter().zip(&c).map(|(u, c)| u * c).collect());
            let cubic = HypergeometricSpec::new(
                vec![rat(1, 6), half.clone(), rat(5, 6)],
                vec![one.clone(), one.clone()],
            )?;
            let cubic = hypergeometric_series(&cubic, order);
            let gauss = HypergeometricSpec::new(vec![rat(1, 12), rat(5, 12)], vec![one])?;
            let gauss = hypergeometric_series(&gauss, order);
            let gauss_sq = gauss.mul(&gauss);
            Ok(vec![lhs, cubic.mul(&cubic), gauss_sq.mul(&gauss_sq)])
        }
    }
}

/// Compares every side against the first.
pub fn compare_sides(sides: &[Series]) -> TransformReport {
    let first_mismatch = sides[1..]
        .iter()
        .filter_map(|s| sides[0].first_mismatch(s))
        .min();
    TransformReport {
        equal: first_mismatch.is_none(),
        first_mismatch,
    }
}

pub fn verify_transform(
    identity: Identity,
    params: &[Rational],
    order: usize,
) -> Result<TransformReport> {
    Ok(compare_sides(&transform_sides(identity, params, order)?))
}

/// `(1-z)^(-a) * g(w)` with `w = -4z/(1-z)^2`.
fn prefactored(a: &Rational, g: &Series) -> Result<Series> {
    let order = g.order();
    let pre = one_minus_z(order).pow_rational(&-a)?;
    Ok(pre.mul(&g.compose(&quad_map(order))?))
}

/// `(a/2)_n (1/2+a/2)_n / ((1+a-b)_n (1+a-c)_n)`.
fn outer_weights(a: &Rational, b: &Rational, c: &Rational, order: usize) -> Vec<Rational> {
    let one = Rational::one();
    let half = rat(1, 2);
    let n = order - 1;
    let p1 = pochhammer_table(&(a * &half), n);
    let p2 = pochhammer_table(&(&half + a * &half), n);
    let q1 = pochhammer_table(&(&one + a - b), n);
    let q2 = pochhammer_table(&(&one + a - c), n);
    (0..order)
        .map(|k| &p1[k] * &p2[k] / (&q1[k] * &q2[k]))
        .collect()
}

/// `(x)_n (y)_n / n!^2`.
fn quarter_weights(x: &Rational, y: &Rational, order: usize) -> Vec<Rational> {
    let n = order - 1;
    let px = pochhammer_table(x, n);
    let py = pochhammer_table(y, n);
    let fact = pochhammer_table(&int(1), n);
    (0..order)
        .map(|k| &px[k] * &py[k] / (&fact[k] * &fact[k]))
        .collect()
}

/// Inner finite sum of the double-sum form: for each n,
/// `sum_{v<=n} t_v (1+a-b-c)_{n-v} / (n-v)!` with `t_v` the `3F2` terms.
fn double_sum_inner(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    cubic: &HypergeometricSpec,
    order: usize,
) -> Vec<Rational> {
    let t = cubic.terms(order);
    let shift = Rational::one() + a - b - c;
    let poch = pochhammer_table(&shift, order - 1);
    let fact = pochhammer_table(&int(1), order - 1);
    let k: Vec<Rational> = poch.iter().zip(&fact).map(|(p, f)| p / f).collect();
    (0..order)
        .map(|n| {
            (0..=n).fold(Rational::zero(), |acc, v| {
                if t[v].is_zero() || k[n - v].is_zero() {
                    acc
                } else {
                    acc + &t[v] * &k[n - v]
                }
            })
        })
        .collect()
}

/// The coefficients `f_n` of `(1-z)^(b+c-a-1) * 3F2(...)`.
fn orr_coefficients(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    cubic: &HypergeometricSpec,
    order: usize,
) -> Result<Vec<Rational>> {
    let exponent = b + c - a - Rational::from_integer(BigInt::one());
    let pre = one_minus_z(order).pow_rational(&exponent)?;
    Ok(pre.mul(&hypergeometric_series(cubic, order)).into_coeffs())
}

/// Terminating `3F2(-n, a+n, 1+a-d-e; 1+a-d, 1+a-e; 1)` against the closed
/// form `(d)_n (e)_n / ((1+a-d)_n (1+a-e)_n)`.
pub fn pfaff_saalschutz_check(a: &Rational, d: &Rational, e: &Rational, n: u64) -> Result<bool> {
    let one = Rational::one();
    let nn = Rational::from_integer(BigInt::from(n));
    let spec = HypergeometricSpec::new(
        vec![-&nn, a + &nn, &one + a - d - e],
        vec![&one + a - d, &one + a - e],
    )?;
    let sum = spec
        .terms(n as usize + 1)
        .into_iter()
        .fold(Rational::zero(), |acc, t| acc + t);
    let nu = n as usize;
    let den =
        &pochhammer_table(&(&one + a - d), nu)[nu] * &pochhammer_table(&(&one + a - e), nu)[nu];
    if den.is_zero() {
        return Err(Error::DivisionByZero(format!(
            "closed form denominator vanishes for a={a}, d={d}, e={e}, n={n}"
        )));
    }
    let closed = &pochhammer_table(d, nu)[nu] * &pochhammer_table(e, nu)[nu] / den;
    Ok(sum == closed)
}
