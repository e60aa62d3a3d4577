//! Reference constants that share no machinery with the series under test:
//! pi from Machin-type arctangent sums and integer square roots.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::bigfloat::{bits_for_digits, isqrt, BigFloat};

const GUARD_BITS: u64 = 32;

/// `atan(1/k) * 2^bits` by the alternating Taylor series in fixed point,
/// with an error bound in ulps.
///
/// Each `power_i` is a floored `2^bits / k^(2i+1)` and stays within 2 ulps
/// of the exact value; each floored term is within 3 ulps; the alternating
/// tail after the last nonzero power is below 2 ulps.
fn arctan_recip(k: u64, bits: u64) -> (BigInt, BigUint) {
    let k2 = BigUint::from(k) * k;
    let mut power = (BigUint::from(1u32) << bits) / k;
    let mut sum = BigInt::zero();
    let mut i = 0u64;
    while !power.is_zero() {
        let term = BigInt::from(&power / (2 * i + 1));
        if i.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        i += 1;
    }
    (sum, BigUint::from(3 * i + 2))
}

/// `pi = sum c_i atan(1/k_i)` evaluated at `precision` bits.
fn machin_like(terms: &[(i64, u64)], precision: u64) -> BigFloat {
    let work = precision + GUARD_BITS;
    let mut mantissa = BigInt::zero();
    let mut err = BigUint::zero();
    for &(c, k) in terms {
        let (v, e) = arctan_recip(k, work);
        mantissa += v * c;
        err += e * c.unsigned_abs();
    }
    BigFloat::from_parts(mantissa, work, err).rescale(precision)
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi_machin(precision: u64) -> BigFloat {
    machin_like(&[(16, 5), (-4, 239)], precision)
}

/// `pi = 176 atan(1/57) + 28 atan(1/239) - 48 atan(1/682) + 96 atan(1/12943)`.
pub fn pi_stormer(precision: u64) -> BigFloat {
    machin_like(&[(176, 57), (28, 239), (-48, 682), (96, 12943)], precision)
}

/// pi to `digits` significant digits (plus guard bits).
pub fn pi_reference(digits: u64) -> BigFloat {
    pi_machin(bits_for_digits(digits) + GUARD_BITS)
}

/// `sqrt(d)` at `precision` bits, from the floor square root of `d 4^p`.
pub fn sqrt_int_at(d: &BigUint, precision: u64) -> BigFloat {
    let root = isqrt(&(d << (2 * precision)));
    let exact = &root * &root == d << (2 * precision);
    BigFloat::from_parts(
        BigInt::from(root),
        precision,
        if exact {
            BigUint::zero()
        } else {
            BigUint::from(1u32)
        },
    )
}

pub fn sqrt_int(d: &BigUint, digits: u64) -> BigFloat {
    sqrt_int_at(d, bits_for_digits(digits) + GUARD_BITS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Rational};
    use num_traits::Signed;

    #[test]
    fn pi_digits() {
        assert_eq!(pi_reference(10).to_decimal(10), "3.141592654");
        assert_eq!(pi_reference(1).to_decimal(1), "3");
        let pi = pi_reference(60).to_decimal(60);
        assert_eq!(
            pi,
            "3.14159265358979323846264338327950288419716939937510582097494"
        );
    }

    #[test]
    fn two_machin_formulas_agree() {
        let p = bits_for_digits(50) + 32;
        let a = pi_machin(p);
        let b = pi_stormer(p);
        let gap = (a.to_rational() - b.to_rational()).abs();
        assert!(gap <= a.error_bound() + b.error_bound());
        let tol = Rational::new(1.into(), BigInt::from(10u32).pow(48));
        assert!(gap < tol);
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_int(&BigUint::from(1u32), 10).to_decimal(5), "1.0000");
        assert_eq!(sqrt_int(&BigUint::from(4u32), 10).to_decimal(5), "2.0000");
        assert!(sqrt_int(&BigUint::from(4u32), 10).error_ulps().is_zero());
        let r = sqrt_int(&BigUint::from(41u32), 20);
        assert_eq!(r.to_decimal(20), "6.4031242374328486865");
        let rr = r.to_rational();
        let diff = (&rr * &rr - int(41)).abs();
        assert!(diff < Rational::new(1.into(), BigInt::from(10u32).pow(19)));
    }

    #[test]
    fn sqrt_residual_bound() {
        for d in [2u32, 3, 5, 15, 41, 1025, 999_983] {
            for digits in [10u64, 50, 200] {
                let r = sqrt_int(&BigUint::from(d), digits);
                let rr = r.to_rational();
                let lhs = (&rr * &rr - int(d as i64)).abs();
                let rhs =
                    int(2) * &rr / Rational::from_integer(BigInt::from(10u32).pow(digits as u32));
                assert!(lhs < rhs, "d={d} digits={digits}");
            }
        }
    }
}
