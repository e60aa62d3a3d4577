//! Exact integer and rational building blocks.
//!
//! Everything here is exact. [`Rational`] is the scalar field for all
//! series coefficients and is kept in lowest terms with a positive
//! denominator after every operation.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always canonical.
pub type Rational = BigRational;

/// Shorthand for a small rational constant.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero(format!("rational {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// True when `q` is zero or a negative integer, i.e. `(q)_n` vanishes for
/// large enough `n`.
pub fn is_nonpositive_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_positive()
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = a.clone();
    for _ in 0..n {
        if acc.is_zero() {
            break;
        }
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

/// `[(a)_0, (a)_1, ..., (a)_n]`.
pub fn pochhammer_table(a: &Rational, n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Rational::one();
    let mut factor = a.clone();
    out.push(acc.clone());
    for _ in 0..n {
        acc *= &factor;
        factor += Rational::one();
        out.push(acc.clone());
    }
    out
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `n! / (k! (n-k)!)`, and 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(4n)! / (n!^2 (2n)!)`, computed as `C(4n, 2n) * C(2n, n)`.
pub fn factorial_ratio(n: u64) -> BigUint {
    binomial(4 * n, 2 * n) * binomial(2 * n, n)
}

/// Writes `m = s^2 d` with `d` squarefree, by trial division.
///
/// Panics if `m` is zero.
pub fn squarefree_decompose(m: &BigUint) -> (BigUint, BigUint) {
    assert!(!m.is_zero(), "squarefree_decompose of 0");
    let mut rest = m.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        if count > 0 {
            square *= p.pow(count / 2);
            if count % 2 == 1 {
                free *= &p;
            }
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    // rest is 1 or a prime
    free *= rest;
    (square, free)
}

/// A number `r * sqrt(d)` with `r` rational and `d` a squarefree positive
/// integer. `d == 1` is a plain rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicValue {
    r: Rational,
    d: BigUint,
}

impl AlgebraicValue {
    /// `r * sqrt(m)` for any positive `m`; square factors of `m` move into `r`.
    pub fn new(r: Rational, m: BigUint) -> Self {
        if r.is_zero() {
            return Self::rational(r);
        }
        let (s, d) = squarefree_decompose(&m);
        Self {
            r: r * Rational::from_integer(BigInt::from(s)),
            d,
        }
    }

    pub fn rational(r: Rational) -> Self {
        Self {
            r,
            d: BigUint::one(),
        }
    }

    /// `sqrt(q)` for positive rational `q`, using `sqrt(p/q) = sqrt(p q) / q`.
    pub fn sqrt_of(q: &Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::InvalidInput(format!("sqrt of non-positive {q}")));
        }
        let num = q.numer().to_biguint().expect("positive");
        let den = q.denom().to_biguint().expect("positive");
        Ok(Self::new(
            Rational::new(BigInt::one(), BigInt::from(den.clone())),
            num * den,
        ))
    }

    pub fn coefficient(&self) -> &Rational {
        &self.r
    }

    pub fn radicand(&self) -> &BigUint {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_one()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::rational(Rational::zero());
        }
        Self {
            r: &self.r * k,
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let g = self.d.gcd(&other.d);
        // sqrt(d1) sqrt(d2) = g sqrt(d1 d2 / g^2), and d1 d2 / g^2 is squarefree
        let d = (&self.d / &g) * (&other.d / &g);
        Self::new(
            &self.r * &other.r * Rational::from_integer(BigInt::from(g)),
            d,
        )
    }

    pub fn recip(&self) -> Result<Self> {
        if self.r.is_zero() {
            return Err(Error::DivisionByZero("reciprocal of 0".into()));
        }
        let d = Rational::from_integer(BigInt::from(self.d.clone()));
        Ok(Self {
            r: (&self.r * d).recip(),
            d: self.d.clone(),
        })
    }

    /// Lossy, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.r.to_f64().unwrap_or(f64::NAN) * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d.is_one() {
            return write!(f, "{}", self.r);
        }
        if self.r.is_one() {
            write!(f, "sqrt({})", self.d)
        } else if (-&self.r).is_one() {
            write!(f, "-sqrt({})", self.d)
        } else {
            write!(f, "{}*sqrt({})", self.r, self.d)
        }
    }
}
