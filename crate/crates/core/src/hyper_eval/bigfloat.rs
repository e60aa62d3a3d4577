//! Binary fixed-point numbers with a carried absolute error bound.
//!
//! A [`BigFloat`] is `mantissa * 2^-precision`, and the true value it
//! stands for lies within `error_ulps * 2^-precision` of it. Every
//! operation rounds once and widens the bound accordingly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Bits needed for `digits` decimal digits: `ceil(digits * log2(10))`.
pub fn bits_for_digits(digits: u64) -> u64 {
    // log2(10) < 3.3219280949
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    mantissa: BigInt,
    precision: u64,
    error_ulps: BigUint,
}

/// `round(num / den)` for `den > 0`, ties rounded up.
fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    if (r << 1) >= *den {
        q + 1
    } else {
        q
    }
}

/// `ceil(num / 2^shift)` for nonnegative `num`.
fn shr_ceil(num: &BigUint, shift: u64) -> BigUint {
    let q = num >> shift;
    if &(&q << shift) == num {
        q
    } else {
        q + 1u32
    }
}

/// Floor square root by Newton iteration.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    // start above the root: 2^ceil(bits/2)
    let mut x = BigUint::one() << n.bits().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

impl BigFloat {
    pub fn from_parts(mantissa: BigInt, precision: u64, error_ulps: BigUint) -> Self {
        Self {
            mantissa,
            precision,
            error_ulps,
        }
    }

    /// Nearest fixed-point value to `q`; error at most half an ulp, recorded
    /// as one ulp.
    pub fn from_rational(q: &Rational, precision: u64) -> Self {
        let num = q.numer() << precision;
        let mantissa = div_round(&num, q.denom());
        let exact = &mantissa * q.denom() == num;
        Self {
            mantissa,
            precision,
            error_ulps: if exact {
                BigUint::zero()
            } else {
                BigUint::one()
            },
        }
    }

    /// `q` rounded, with an extra absolute error `extra` folded in.
    pub fn from_rational_with_error(q: &Rational, extra: &Rational, precision: u64) -> Self {
        let mut out = Self::from_rational(q, precision);
        let scaled = extra * Rational::from_integer(BigInt::one() << precision);
        let ulps = scaled.ceil().to_integer().to_biguint().unwrap_or_default();
        out.error_ulps += ulps;
        out
    }

    pub fn from_integer(n: BigInt, precision: u64) -> Self {
        Self {
            mantissa: n << precision,
            precision,
            error_ulps: BigUint::zero(),
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    /// Binary exponent of the last mantissa bit.
    pub fn exponent(&self) -> i64 {
        -(self.precision as i64)
    }

    pub fn error_ulps(&self) -> &BigUint {
        &self.error_ulps
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), BigInt::one() << self.precision)
    }

    /// Absolute error bound as an exact rational.
    pub fn error_bound(&self) -> Rational {
        Rational::new(
            BigInt::from(self.error_ulps.clone()),
            BigInt::one() << self.precision,
        )
    }

    /// Upper bound on the magnitude of the represented true value.
    pub fn magnitude_bound(&self) -> Rational {
        Rational::new(
            self.mantissa.abs() + BigInt::from(self.error_ulps.clone()),
            BigInt::one() << self.precision,
        )
    }

    /// Whether `q` lies inside the error interval.
    pub fn contains(&self, q: &Rational) -> bool {
        (q - self.to_rational()).abs() <= self.error_bound()
    }

    pub fn with_extra_error(mut self, ulps: &BigUint) -> Self {
        self.error_ulps += ulps;
        self
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.precision, other.precision,
            "mixed precision arithmetic"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        Self {
            mantissa: &self.mantissa + &other.mantissa,
            precision: self.precision,
            error_ulps: &self.error_ulps + &other.error_ulps,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        Self {
            mantissa: &self.mantissa - &other.mantissa,
            precision: self.precision,
            error_ulps: &self.error_ulps + &other.error_ulps,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            mantissa: -&self.mantissa,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let p = self.precision;
        let product = &self.mantissa * &other.mantissa;
        let mantissa = div_round(&product, &(BigInt::one() << p));
        let a = self.mantissa.magnitude();
        let b = other.mantissa.magnitude();
        let (e1, e2) = (&self.error_ulps, &other.error_ulps);
        // |m1| e2 + |m2| e1 + e1 e2 in ulps^2, then one rounding
        let spread = a * e2 + b * e1 + e1 * e2;
        let rounding = if (&mantissa << p) == product {
            0u32
        } else {
            1u32
        };
        Self {
            mantissa,
            precision: p,
            error_ulps: shr_ceil(&spread, p) + rounding,
        }
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, q: &Rational) -> Self {
        let mantissa = div_round(&(&self.mantissa * q.numer()), q.denom());
        let factor = q.abs();
        let grown = Rational::from_integer(BigInt::from(self.error_ulps.clone())) * factor;
        Self {
            mantissa,
            precision: self.precision,
            error_ulps: grown.ceil().to_integer().to_biguint().unwrap_or_default() + 1u32,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same(other);
        let p = self.precision;
        let b = other.mantissa.magnitude();
        let e2 = &other.error_ulps;
        if b <= e2 {
            return Err(Error::PrecisionLoss(
                "divisor interval contains zero".into(),
            ));
        }
        let num = &self.mantissa << p;
        let den = &other.mantissa;
        let (num, den) = if den.sign() == Sign::Minus {
            (-num, -den)
        } else {
            (num, den.clone())
        };
        let mantissa = div_round(&num, &den);
        // 2^p (e1 b + a e2) / (b (b - e2)) ulps, then one rounding
        let a = self.mantissa.magnitude();
        let e1 = &self.error_ulps;
        let spread_num = (e1 * b + a * e2) << p;
        let spread_den = b * (b - e2);
        let spread = spread_num.div_ceil(&spread_den);
        Ok(Self {
            mantissa,
            precision: p,
            error_ulps: spread + 1u32,
        })
    }

    pub fn sqrt(&self) -> Result<Self> {
        let p = self.precision;
        let e = BigInt::from(self.error_ulps.clone());
        if self.mantissa <= e {
            return Err(Error::PrecisionLoss(
                "sqrt of an interval reaching zero".into(),
            ));
        }
        let m = self.mantissa.magnitude();
        let root = isqrt(&(m << p));
        let lower = isqrt(&((m - self.error_ulps.clone()) << p));
        // |sqrt(x) - sqrt(x~)| <= e 2^p / sqrt((m - e) 2^p) in ulps
        let spread = if self.error_ulps.is_zero() {
            BigUint::zero()
        } else if lower.is_zero() {
            return Err(Error::PrecisionLoss("sqrt lower bound vanished".into()));
        } else {
            (&self.error_ulps << p).div_ceil(&lower)
        };
        Ok(Self {
            mantissa: BigInt::from(root),
            precision: p,
            error_ulps: spread + 1u32,
        })
    }

    /// Re-rounds to a different precision.
    pub fn rescale(&self, precision: u64) -> Self {
        match precision.cmp(&self.precision) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let shift = precision - self.precision;
                Self {
                    mantissa: &self.mantissa << shift,
                    precision,
                    error_ulps: &self.error_ulps << shift,
                }
            }
            Ordering::Less => {
                let shift = self.precision - precision;
                let mantissa = div_round(&self.mantissa, &(BigInt::one() << shift));
                Self {
                    mantissa,
                    precision,
                    error_ulps: shr_ceil(&self.error_ulps, shift) + 1u32,
                }
            }
        }
    }

    /// Smallest integer `e` with `magnitude_bound() <= 10^e`.
    pub fn magnitude_exponent(&self) -> i64 {
        decimal_exponent_upper(&self.magnitude_bound())
    }

    /// Decimal rendering with `digits` significant digits, round half up.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_decimal(&self.to_rational(), digits)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.precision as f64 / std::f64::consts::LOG2_10)
            .floor()
            .max(1.0) as usize;
        f.write_str(&self.to_decimal(digits))
    }
}

fn pow10(e: i64) -> Rational {
    let p = BigInt::from(10u32).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Smallest integer `e` with `x <= 10^e`, for `x > 0`. Returns `i64::MIN`
/// for zero.
pub fn decimal_exponent_upper(x: &Rational) -> i64 {
    if x.is_zero() {
        return i64::MIN;
    }
    let x = x.abs();
    let estimate = log10_estimate(&x).ceil() as i64;
    let mut e = estimate;
    while x > pow10(e) {
        e += 1;
    }
    while x <= pow10(e - 1) {
        e -= 1;
    }
    e
}

/// Largest integer `e` with `10^e <= x`, for `x > 0`.
fn decimal_exponent_floor(x: &Rational) -> i64 {
    let mut e = log10_estimate(x).floor() as i64;
    while pow10(e) > *x {
        e -= 1;
    }
    while pow10(e + 1) <= *x {
        e += 1;
    }
    e
}

fn log10_estimate(x: &Rational) -> f64 {
    let lead = |v: &BigInt| {
        let bits = v.bits();
        let shift = bits.saturating_sub(60);
        (v.abs() >> shift).to_f64().unwrap_or(1.0).log2() + shift as f64
    };
    (lead(x.numer()) - lead(x.denom())) * std::f64::consts::LOG10_2
}

/// `x` to `digits` significant decimal digits, ties rounded up.
pub fn format_decimal(x: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let ax = x.abs();
    let mut e10 = decimal_exponent_floor(&ax);
    let mut n = round_scaled(&ax, digits as i64 - 1 - e10);
    if n.to_string().len() > digits {
        e10 += 1;
        n = round_scaled(&ax, digits as i64 - 1 - e10);
    }
    let s = n.to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if e10 >= 0 {
        let int_len = e10 as usize + 1;
        if int_len >= s.len() {
            out.push_str(&s);
            out.extend(std::iter::repeat_n('0', int_len - s.len()));
        } else {
            out.push_str(&s[..int_len]);
            out.push('.');
            out.push_str(&s[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-e10 - 1) as usize));
        out.push_str(&s);
    }
    out
}

fn round_scaled(x: &Rational, shift: i64) -> BigInt {
    let scaled = x * pow10(shift);
    div_round(scaled.numer(), scaled.denom())
}
