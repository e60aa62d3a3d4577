//! Truncated formal power series over [`Rational`].
//!
//! A [`Series`] of order `N` stores the coefficients of `z^0 .. z^(N-1)`.
//! Binary operations truncate to the smaller order of their operands, and
//! equality compares coefficients up to the common order.

mod hypergeometric;
mod transform;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

pub use hypergeometric::{hypergeometric_series, HypergeometricSpec};
pub use transform::{
    compare_sides, pfaff_saalschutz_check, transform_sides, verify_transform, Identity,
    TransformReport,
};

#[derive(Clone, Debug)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Panics on an empty coefficient list; every series has order >= 1.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series order must be positive");
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self::new((0..order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The formal variable `z`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Builds a series from small integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: Rational) {
        self.coeffs[n] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..order.min(self.order())].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order];
        for (i, a) in self.coeffs[..order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series::new(out)
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm(inner.coeffs[0].to_string()));
        }
        let order = self.order().min(inner.order());
        // Horner from the top. Since inner = O(z), the partial result for
        // coefficient index i only matters up to order N - i.
        let mut acc = Series::constant(self.coeffs[order - 1].clone(), 1);
        for i in (0..order - 1).rev() {
            let width = order - i;
            let mut next = vec![Rational::zero(); width];
            next[0] = self.coeffs[i].clone();
            for (j, a) in acc.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for k in 1..width - j {
                    let w = &inner.coeffs[k];
                    if !w.is_zero() {
                        next[j + k] += a * w;
                    }
                }
            }
            acc = Series::new(next);
        }
        Ok(acc)
    }

    /// `self^alpha` for a series with constant term 1.
    ///
    /// Uses `n b_n = sum_{k=1}^{n} (alpha k - (n - k)) a_k b_{n-k}`, which is
    /// the coefficient form of `B' A = alpha A' B`.
    pub fn pow_rational(&self, alpha: &Rational) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne(self.coeffs[0].to_string()));
        }
        let order = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(order);
        out.push(Rational::one());
        for n in 1..order {
            let mut acc = Rational::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if a.is_zero() {
                    continue;
                }
                let weight = alpha * Rational::from_integer(BigInt::from(k))
                    - Rational::from_integer(BigInt::from(n - k));
                acc += weight * a * &out[n - k];
            }
            out.push(acc / Rational::from_integer(BigInt::from(n)));
        }
        Ok(Series::new(out))
    }

    /// The Euler operator `z d/dz`: multiplies the n-th coefficient by n.
    pub fn theta(&self) -> Series {
        Series::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * Rational::from_integer(BigInt::from(n)))
                .collect(),
        )
    }

    /// Formal derivative; the result has order one less (minimum 1).
    pub fn derivative(&self) -> Series {
        if self.order() == 1 {
            return Series::zero(1);
        }
        Series::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * Rational::from_integer(BigInt::from(n)))
                .collect(),
        )
    }

    /// First index below the common order where the coefficients differ.
    pub fn first_mismatch(&self, other: &Series) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

/// `-4z / (1-z)^2 = -4 sum_{n>=1} n z^n`, truncated to `order`.
pub fn quad_map(order: usize) -> Series {
    Series::from_fn(order, |n| {
        Rational::from_integer(BigInt::from(-4 * n as i64))
    })
}

/// `1 - z`, the base of every `(1-z)^alpha` prefactor.
pub fn one_minus_z(order: usize) -> Series {
    let mut s = Series::one(order);
    if order > 1 {
        s.coeffs[1] = -Rational::one();
    }
    s
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        Series::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        Series::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}
