use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Series;
use crate::arith::{is_nonpositive_integer, Rational};
use crate::error::{Error, Result};

/// Parameters of a `_{q+1}F_q` series.
///
/// Lower parameters are validated at construction: none may be zero or a
/// negative integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricSpec {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
}

impl HypergeometricSpec {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Result<Self> {
        if upper.len() != lower.len() + 1 {
            return Err(Error::ParameterShape {
                expected: lower.len() + 1,
                lower: lower.len(),
                got: upper.len(),
            });
        }
        if let Some(bad) = lower.iter().find(|b| is_nonpositive_integer(b)) {
            return Err(Error::InvalidLowerParameter(bad.to_string()));
        }
        Ok(Self { upper, lower })
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    /// `t_{n+1} / t_n = prod (a_i + n) / ((n + 1) prod (b_j + n))`.
    pub fn term_ratio(&self, n: usize) -> Rational {
        let shift = Rational::from_integer(BigInt::from(n));
        let num = self
            .upper
            .iter()
            .fold(Rational::one(), |acc, a| acc * (a + &shift));
        let den = self
            .lower
            .iter()
            .fold(Rational::from_integer(BigInt::from(n + 1)), |acc, b| {
                acc * (b + &shift)
            });
        num / den
    }

    /// Terms `t_0 .. t_{count-1}` at `z = 1`.
    pub fn terms(&self, count: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(count);
        let mut t = Rational::one();
        for n in 0..count {
            out.push(t.clone());
            if t.is_zero() {
                // terminated: an upper parameter hit a nonpositive integer
                out.resize(count, Rational::zero());
                break;
            }
            t *= self.term_ratio(n);
        }
        out
    }
}

/// The series `sum_n prod (a_i)_n / (n! prod (b_j)_n) z^n` to `order`.
pub fn hypergeometric_series(spec: &HypergeometricSpec, order: usize) -> Series {
    Series::new(spec.terms(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, pochhammer, rat};
    use crate::power_series::one_minus_z;

    #[test]
    fn binomial_theorem() {
        for a in [rat(1, 2), rat(-7, 3), int(4), rat(5, 12)] {
            let spec = HypergeometricSpec::new(vec![a.clone()], vec![]).unwrap();
            let lhs = hypergeometric_series(&spec, 20);
            let rhs = one_minus_z(20).pow_rational(&-a).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn direct_terms() {
        let half = rat(1, 2);
        let spec = HypergeometricSpec::new(vec![half.clone(); 5], vec![int(1); 4]).unwrap();
        let s = hypergeometric_series(&spec, 12);
        assert_eq!(*s.coeff(1), rat(1, 32));
        for n in 0..12u64 {
            let p = pochhammer(&half, n);
            let f = pochhammer(&int(1), n);
            let expected = (&p * &p * &p * &p * &p) / (&f * &f * &f * &f * &f);
            assert_eq!(*s.coeff(n as usize), expected);
        }

        let spec = HypergeometricSpec::new(vec![rat(1, 12), rat(5, 12)], vec![int(1)]).unwrap();
        assert_eq!(*hypergeometric_series(&spec, 3).coeff(1), rat(5, 144));
    }

    #[test]
    fn terminating_series() {
        let spec = HypergeometricSpec::new(vec![int(-2), int(1)], vec![int(1)]).unwrap();
        // (1 - z)^2
        assert_eq!(
            hypergeometric_series(&spec, 6).coeffs(),
            Series::from_ints(&[1, -2, 1, 0, 0, 0]).coeffs()
        );
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            HypergeometricSpec::new(vec![int(1), int(1)], vec![int(0)]),
            Err(Error::InvalidLowerParameter(_))
        ));
        assert!(matches!(
            HypergeometricSpec::new(vec![int(1), int(1)], vec![int(-3)]),
            Err(Error::InvalidLowerParameter(_))
        ));
        assert!(matches!(
            HypergeometricSpec::new(vec![int(1)], vec![int(2)]),
            Err(Error::ParameterShape { .. })
        ));
        assert!(HypergeometricSpec::new(vec![int(1), int(1)], vec![rat(-1, 2)]).is_ok());
    }
}
