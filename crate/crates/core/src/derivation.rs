//! Turning a `5F4` evaluation at `z0` into a series in `w(z0)`.
//!
//! Write `f(z) = (1-z)^(-1/2) sum_n C_n w^n` with `w = -4z/(1-z)^2` and
//! `C_n = u_n (1/4)_n (3/4)_n / n!^2`. Applying `theta = z d/dz` uses
//!
//! ```text
//! theta   f: weight n (1+z)/(1-z) + z/(2(1-z))
//! theta^2 f: weight n^2 (1+z)^2/(1-z)^2 + n z(3+z)/(1-z)^2 + z(2+z)/(4(1-z)^2)
//! ```
//!
//! on each term. Substituting `z0` into `(a2 theta^2 + a1 theta + a0) f`
//! gives a quadratic in `n`, and `C_n w^n = U_n (4n)!/(n!^2 (2n)!) (w/4096)^n`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, AlgebraicValue, Rational};
use crate::error::{Error, Result};

/// A known evaluation `sum (1/2)_n^5/n!^5 (a2 n^2 + a1 n + a0) z0^n = rhs / pi^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceFormula {
    alpha: [BigInt; 3],
    z0: Rational,
    rhs: Rational,
}

impl SourceFormula {
    /// Checks `|z0| < 1` and `|4 z0 / (1 - z0)^2| < 1`.
    pub fn new(alpha: [i64; 3], z0: Rational, rhs: Rational) -> Result<Self> {
        if z0.abs() >= Rational::one() {
            return Err(Error::Hypothesis(format!("|z|<1 fails for z = {z0}")));
        }
        let x = quad_value(&z0);
        if x.abs() >= Rational::one() {
            return Err(Error::Hypothesis(format!(
                "|4z/(1-z)^2|<1 fails for z = {z0} (value {})",
                x.abs()
            )));
        }
        Ok(Self {
            alpha: alpha.map(BigInt::from),
            z0,
            rhs,
        })
    }

    pub fn alpha(&self) -> &[BigInt; 3] {
        &self.alpha
    }

    pub fn z0(&self) -> &Rational {
        &self.z0
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }
}

/// `-4 z / (1 - z)^2`.
fn quad_value(z: &Rational) -> Rational {
    let one_minus = Rational::one() - z;
    int(-4) * z / (&one_minus * &one_minus)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaCoefficients {
    /// `q2 n^2 + q1 n + q0`
    pub quadratic: [Rational; 3],
    /// `(1 - z0)^(-1/2)`
    pub prefactor: AlgebraicValue,
    /// `w(z0)`
    pub x: Rational,
}

/// Collects `alpha[0] theta^2 + alpha[1] theta + alpha[2]` applied to
/// `(1-z)^(-1/2) sum C_n w^n`, evaluated at `z0`.
pub fn theta_coefficients(alpha: &[BigInt; 3], z0: &Rational) -> Result<ThetaCoefficients> {
    let one = Rational::one();
    if *z0 == one {
        return Err(Error::Hypothesis("z = 1 is a singular point".into()));
    }
    let [a2, a1, a0] = alpha.clone().map(Rational::from_integer);
    let om = &one - z0;
    let op = &one + z0;
    let om2 = &om * &om;

    let q2 = &a2 * &op * &op / &om2;
    let q1 = &a2 * z0 * (int(3) + z0) / &om2 + &a1 * &op / &om;
    let q0 = &a2 * z0 * (int(2) + z0) / (int(4) * &om2) + &a1 * z0 / (int(2) * &om) + a0;

    Ok(ThetaCoefficients {
        quadratic: [q2, q1, q0],
        prefactor: AlgebraicValue::sqrt_of(&om)?.recip()?,
        x: quad_value(z0),
    })
}

/// `sum U_n (4n)!/(n!^2 (2n)!) (A n^2 + B n + C) / M^n = S sqrt(d) / pi^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedFormula {
    pub quadratic: [BigInt; 3],
    /// `M`; the term ratio is `1/M`.
    pub base: Rational,
    pub rhs: AlgebraicValue,
}

impl DerivedFormula {
    /// Integer coefficients with gcd 1 and a positive leading nonzero
    /// coefficient; the removed factor is folded into the right side.
    pub fn normalized(
        quadratic: &[Rational; 3],
        base: Rational,
        rhs: AlgebraicValue,
    ) -> Result<Self> {
        let lcm = quadratic
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled: Vec<BigInt> = quadratic
            .iter()
            .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let gcd = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if gcd.is_zero() {
            return Err(Error::InvalidInput(
                "operator annihilates the series".into(),
            ));
        }
        let lead_negative = scaled
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        let sign = if lead_negative {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let divisor = &gcd * &sign;
        let coeffs: Vec<BigInt> = scaled.iter().map(|c| c / &divisor).collect();
        // old quadratic = (divisor / lcm) * new quadratic
        let factor = Rational::new(lcm, divisor);
        Ok(Self {
            quadratic: [coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone()],
            base,
            rhs: rhs.scale(&factor),
        })
    }

    pub fn renormalized(&self) -> Result<Self> {
        let q = self.quadratic.clone().map(Rational::from_integer);
        Self::normalized(&q, self.base.clone(), self.rhs.clone())
    }

    /// The base as an integer, when it is one.
    pub fn integer_base(&self) -> Option<BigUint> {
        if self.base.is_integer() {
            self.base.to_integer().to_biguint()
        } else {
            None
        }
    }
}

fn write_quadratic(f: &mut fmt::Formatter<'_>, q: &[BigInt; 3]) -> fmt::Result {
    let mut first = true;
    for (c, suffix) in q.iter().zip(["n^2", "n", ""]) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { "-" } else { "+" })?;
        }
        if !mag.is_one() || suffix.is_empty() {
            write!(f, "{mag}")?;
        }
        f.write_str(suffix)?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for DerivedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_quadratic(f, &self.quadratic)?;
        write!(f, " / {}^n = {}/pi^2", self.base, self.rhs)
    }
}

/// Rewrites a source evaluation as an integral series in `U_n` and the
/// factorial ratio.
pub fn derive_ramanujan(input: &SourceFormula) -> Result<DerivedFormula> {
    let theta = theta_coefficients(&input.alpha, &input.z0)?;
    // u_n c_n x^n = U_n fr(n) (x / 2^12)^n
    let ratio = &theta.x / Rational::from_integer(BigInt::from(4096));
    if ratio.is_zero() {
        return Err(Error::InvalidInput("z0 = 0 gives a trivial series".into()));
    }
    let base = ratio.recip();
    // prefactor * sum = rhs / pi^2
    let rhs = theta.prefactor.recip()?.scale(&input.rhs);
    DerivedFormula::normalized(&theta.quadratic, base, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::power_series::{one_minus_z, quad_map, Series};

    fn source(alpha: [i64; 3], z0: Rational, rhs: i64) -> SourceFormula {
        SourceFormula::new(alpha, z0, int(rhs)).unwrap()
    }

    #[test]
    fn identity_operator_passes_through() {
        let z0 = rat(-1, 4);
        let t = theta_coefficients(&[0, 0, 1].map(BigInt::from), &z0).unwrap();
        assert_eq!(t.quadratic, [int(0), int(0), int(1)]);
        assert_eq!(
            t.prefactor,
            AlgebraicValue::new(rat(2, 5), BigUint::from(5u32))
        );
        assert_eq!(t.x, rat(16, 25));
    }

    #[test]
    fn quarter_point_coefficients() {
        let t = theta_coefficients(&[20, 8, 1].map(BigInt::from), &rat(-1, 4)).unwrap();
        assert_eq!(t.quadratic, [rat(36, 5), int(-4), rat(-6, 5)]);
        assert_eq!(t.prefactor.to_string(), "2/5*sqrt(5)");
        assert_eq!(t.x, rat(16, 25));
    }

    #[test]
    fn kilo_point_coefficients() {
        let t = theta_coefficients(&[820, 180, 13].map(BigInt::from), &rat(-1, 1024)).unwrap();
        assert_eq!(t.x, rat(4096, 1025 * 1025));
        assert_eq!(t.quadratic[0], rat(820 * 1023 * 1023, 1025 * 1025));
    }

    #[test]
    fn singular_point() {
        assert!(matches!(
            theta_coefficients(&[1, 0, 0].map(BigInt::from), &int(1)),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn derives_printed_formulas() {
        let d = derive_ramanujan(&source([20, 8, 1], rat(-1, 4), 8)).unwrap();
        assert_eq!(d.quadratic, [18, -10, -3].map(BigInt::from));
        assert_eq!(d.base, int(6400));
        assert_eq!(d.rhs, AlgebraicValue::new(int(10), BigUint::from(5u32)));
        assert_eq!(d.to_string(), "18n^2-10n-3 / 6400^n = 10*sqrt(5)/pi^2");

        let d = derive_ramanujan(&source([820, 180, 13], rat(-1, 1024), 128)).unwrap();
        assert_eq!(d.quadratic, [1046529, 227104, 16032].map(BigInt::from));
        assert_eq!(d.integer_base(), Some(BigUint::from(1050625u32)));
        assert_eq!(d.rhs, AlgebraicValue::new(int(25625), BigUint::from(41u32)));
        assert_eq!(
            d.to_string(),
            "1046529n^2+227104n+16032 / 1050625^n = 25625*sqrt(41)/pi^2"
        );
    }

    #[test]
    fn identity_path_derivation() {
        let d = derive_ramanujan(&source([0, 0, 1], rat(-1, 4), 8)).unwrap();
        assert_eq!(d.quadratic, [0, 0, 1].map(BigInt::from));
        assert_eq!(d.base, int(6400));
        // sum = R / (prefactor pi^2) = R sqrt(5) / (2 pi^2)
        assert_eq!(d.rhs, AlgebraicValue::new(int(4), BigUint::from(5u32)));
    }

    #[test]
    fn normalization_is_idempotent() {
        for (alpha, z0) in [
            ([20, 8, 1], rat(-1, 4)),
            ([820, 180, 13], rat(-1, 1024)),
            ([-3, 5, 2], rat(1, 9)),
        ] {
            let d = derive_ramanujan(&source(alpha, z0, 7)).unwrap();
            assert_eq!(d.renormalized().unwrap(), d);
        }
    }

    #[test]
    fn hypotheses_enforced() {
        assert!(matches!(
            SourceFormula::new([20, 8, 1], int(1), int(8)),
            Err(Error::Hypothesis(m)) if m.contains("|z|<1")
        ));
        // z = 1/2: 4z/(1-z)^2 = 8
        assert!(matches!(
            SourceFormula::new([20, 8, 1], rat(1, 2), int(8)),
            Err(Error::Hypothesis(m)) if m.contains("|4z/(1-z)^2|<1")
        ));
    }

    /// The weight formulas agree with the series operator `theta`, applied
    /// to `(1-z)^(-1/2) sum C_n w^n` for arbitrary `C_n`.
    #[test]
    fn weights_match_series_theta() {
        let order = 18;
        let c: Vec<Rational> = (0..order)
            .map(|n| rat(3 * n as i64 - 5, n as i64 + 1))
            .collect();
        let pre = one_minus_z(order).pow_rational(&rat(-1, 2)).unwrap();
        let w = quad_map(order);
        let build = |weight: &dyn Fn(usize) -> Series| {
            let mut acc = Series::zero(order);
            let mut power = Series::one(order);
            for (n, cn) in c.iter().enumerate() {
                acc = &acc + &weight(n).mul(&power).scale(cn);
                power = power.mul(&w);
            }
            pre.mul(&acc)
        };
        let f = build(&|_| Series::one(order));

        let inv = one_minus_z(order).pow_rational(&int(-1)).unwrap();
        let inv2 = one_minus_z(order).pow_rational(&int(-2)).unwrap();
        let zs = Series::variable(order);
        let poly = |cs: &[i64]| Series::from_fn(order, |k| cs.get(k).map_or(int(0), |&c| int(c)));
        let one_plus = poly(&[1, 1]);
        let theta1 = |n: usize| {
            let lin = one_plus.mul(&inv).scale(&int(n as i64));
            let c0 = zs.mul(&inv).scale(&rat(1, 2));
            &lin + &c0
        };
        assert_eq!(f.theta(), build(&theta1));

        let theta2 = |n: usize| {
            let nn = int(n as i64);
            let sq = one_plus.mul(&one_plus).mul(&inv2).scale(&(&nn * &nn));
            let three = poly(&[3, 1]);
            let lin = zs.mul(&three).mul(&inv2).scale(&nn);
            let two = poly(&[2, 1]);
            let c0 = zs.mul(&two).mul(&inv2).scale(&rat(1, 4));
            &(&sq + &lin) + &c0
        };
        assert_eq!(f.theta().theta(), build(&theta2));
    }
}
