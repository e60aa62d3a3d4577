//! Series descriptors and the catalog of concrete formulas.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::arith::{factorial, factorial_ratio, int, pochhammer_table, rat, Rational};
use crate::derivation::DerivedFormula;
use crate::error::{Error, Result};
use crate::sequences::{a_seq, b_seq, big_u_seq, BigUMethod};

/// The coefficient family `K(n)` of a series `sum K(n) (A n^2 + B n + C) x^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// `(1/2)_n^5 / n!^5`
    PochhammerHalf5,
    /// `U_n (4n)! / (n!^2 (2n)!)`
    FrTimesU,
    /// `A_n = C(2n,n)^2 sum_k C(2k,k)^2 C(2n-2k,n-k)^2`
    AperyLikeA,
    /// `B_n = sum_k C(n,k)^4`
    YangB,
}

impl Kernel {
    /// `(g, k)` with `K(n) <= (n+1)^k g^n` for all `n`.
    ///
    /// * `(1/2)_n / n! <= 1`, so the fifth power is at most 1.
    /// * `(4n)!/(n!^2 (2n)!) = C(4n,2n) C(2n,n) <= 16^n 4^n`, and `U_n = 64^n u_n`
    ///   with `u_n` a sum of `n+1` products of factors `(1/2)_k/k! <= 1`, so
    ///   `U_n <= (n+1) 64^n` and the product is at most `(n+1) 4096^n`.
    /// * `sum a_k^2 <= (sum a_k)^2` with `sum_k C(2k,k) C(2n-2k,n-k) = 4^n`
    ///   gives `A_n <= C(2n,n)^2 16^n <= 256^n`.
    /// * `sum C(n,k)^4 <= (sum C(n,k)^2)^2 = C(2n,n)^2 <= 16^n`.
    pub fn growth(self) -> (u64, u32) {
        match self {
            Kernel::PochhammerHalf5 => (1, 0),
            Kernel::FrTimesU => (4096, 1),
            Kernel::AperyLikeA => (256, 0),
            Kernel::YangB => (16, 0),
        }
    }

    /// Hypergeometric part of `K(j+1)/K(j)` as `(p, q)`; the non-hypergeometric
    /// sequence factor is supplied separately by [`Kernel::sequence`].
    pub fn ratio(self, j: u64) -> (BigInt, BigInt) {
        let j = BigInt::from(j);
        match self {
            Kernel::PochhammerHalf5 => {
                let p: BigInt = 2 * &j + 1;
                let q: BigInt = 2 * &j + 2;
                (p.pow(5), q.pow(5))
            }
            // fr(j+1)/fr(j) = 4 (4j+1)(4j+3) / (j+1)^2
            Kernel::FrTimesU => (4 * (4 * &j + 1u32) * (4 * &j + 3u32), (&j + 1u32).pow(2)),
            Kernel::AperyLikeA | Kernel::YangB => (BigInt::one(), BigInt::one()),
        }
    }

    /// The integer factor streamed into the product tree, for indices
    /// `0..count`. `None` means the factor is identically 1.
    pub fn sequence(self, count: usize) -> Result<Option<Vec<BigInt>>> {
        if count == 0 {
            return Ok(Some(Vec::new()));
        }
        Ok(match self {
            Kernel::PochhammerHalf5 => None,
            Kernel::FrTimesU => Some(big_u_seq(count - 1, BigUMethod::Recurrence)?),
            Kernel::AperyLikeA => Some(a_seq(count - 1)),
            Kernel::YangB => Some(b_seq(count - 1)),
        })
    }

    /// `K(n)` for `n in 0..count`, computed from closed forms without term
    /// ratios.
    pub fn direct_values(self, count: usize) -> Result<Vec<Rational>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        Ok(match self {
            Kernel::PochhammerHalf5 => {
                let half = pochhammer_table(&rat(1, 2), count - 1);
                (0..count)
                    .map(|n| {
                        let f = Rational::from_integer(BigInt::from(factorial(n as u64)));
                        (&half[n] / f).pow(5)
                    })
                    .collect()
            }
            Kernel::FrTimesU => big_u_seq(count - 1, BigUMethod::Direct)?
                .into_iter()
                .enumerate()
                .map(|(n, u)| Rational::from_integer(u * BigInt::from(factorial_ratio(n as u64))))
                .collect(),
            Kernel::AperyLikeA => a_seq(count - 1)
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
            Kernel::YangB => b_seq(count - 1)
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        })
    }
}

/// Claimed sum `S sqrt(d) / (pi^p sqrt(e))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimedValue {
    pub s: Rational,
    pub d: BigUint,
    pub pi_power: u32,
    pub extra_sqrt_denom: Option<BigUint>,
}

impl ClaimedValue {
    pub fn over_pi_squared(s: Rational, d: u64) -> Self {
        Self {
            s,
            d: BigUint::from(d),
            pi_power: 2,
            extra_sqrt_denom: None,
        }
    }
}

impl fmt::Display for ClaimedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.s)?;
        if !self.d.is_one() {
            write!(f, "*sqrt({})", self.d)?;
        }
        let pi = if self.pi_power == 1 {
            "pi".to_string()
        } else {
            format!("pi^{}", self.pi_power)
        };
        match &self.extra_sqrt_denom {
            Some(e) => write!(f, "/({pi}*sqrt({e}))"),
            None => write!(f, "/{pi}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamanujanFormula {
    pub name: String,
    pub kernel: Kernel,
    pub quadratic: [BigInt; 3],
    pub x: Rational,
    pub claimed: ClaimedValue,
    /// The claimed value is not proven in the literature.
    pub conjectural: bool,
}

impl RamanujanFormula {
    /// Rejects series whose term-magnitude ratio bound `g |x|` is not below 1.
    pub fn new(
        name: impl Into<String>,
        kernel: Kernel,
        quadratic: [i64; 3],
        x: Rational,
        claimed: ClaimedValue,
    ) -> Result<Self> {
        Self::from_parts(name.into(), kernel, quadratic.map(BigInt::from), x, claimed)
    }

    fn from_parts(
        name: String,
        kernel: Kernel,
        quadratic: [BigInt; 3],
        x: Rational,
        claimed: ClaimedValue,
    ) -> Result<Self> {
        if !(claimed.pi_power == 1 || claimed.pi_power == 2) {
            return Err(Error::InvalidInput(format!(
                "pi power {}",
                claimed.pi_power
            )));
        }
        let f = Self {
            name,
            kernel,
            quadratic,
            x,
            claimed,
            conjectural: false,
        };
        if f.rho() >= Rational::one() {
            return Err(Error::Divergent(format!(
                "{}: growth ratio {} is not below 1",
                f.name,
                f.rho()
            )));
        }
        Ok(f)
    }

    /// The integral series produced by a derivation.
    pub fn from_derived(name: impl Into<String>, derived: &DerivedFormula) -> Result<Self> {
        if derived.rhs.coefficient().is_zero() {
            return Err(Error::InvalidInput("derived right side is zero".into()));
        }
        Self::from_parts(
            name.into(),
            Kernel::FrTimesU,
            derived.quadratic.clone(),
            derived.base.recip(),
            ClaimedValue {
                s: derived.rhs.coefficient().clone(),
                d: derived.rhs.radicand().clone(),
                pi_power: 2,
                extra_sqrt_denom: None,
            },
        )
    }

    pub fn conjectural(mut self) -> Self {
        self.conjectural = true;
        self
    }

    /// `g |x|`, the geometric rate of the term bound.
    pub fn rho(&self) -> Rational {
        let (g, _) = self.kernel.growth();
        Rational::from_integer(BigInt::from(g)) * self.x.abs()
    }

    pub fn poly(&self, n: u64) -> BigInt {
        let n = BigInt::from(n);
        let [a, b, c] = &self.quadratic;
        (a * &n + b) * &n + c
    }

    /// Returns a copy with one quadratic coefficient replaced.
    pub fn with_coefficient(&self, index: usize, value: i64) -> Self {
        let mut f = self.clone();
        f.quadratic[index] = BigInt::from(value);
        f
    }

    pub fn with_claimed(&self, claimed: ClaimedValue) -> Self {
        let mut f = self.clone();
        f.claimed = claimed;
        f
    }
}

impl fmt::Display for RamanujanFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: sum {:?}(n) ({}n^2 + {}n + {}) ({})^n = {}",
            self.name,
            self.kernel,
            self.quadratic[0],
            self.quadratic[1],
            self.quadratic[2],
            self.x,
            self.claimed
        )
    }
}

/// Identifiers of the catalog formulas, as used on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaId {
    HalfQuinticQuarter,
    HalfQuinticKilo,
    CentralSquaresA,
    YangB,
    DerivedQuarter,
    DerivedKilo,
}

impl FormulaId {
    pub const ALL: [FormulaId; 6] = [
        FormulaId::HalfQuinticQuarter,
        FormulaId::HalfQuinticKilo,
        FormulaId::CentralSquaresA,
        FormulaId::YangB,
        FormulaId::DerivedQuarter,
        FormulaId::DerivedKilo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::HalfQuinticQuarter => "eq1",
            FormulaId::HalfQuinticKilo => "eq2",
            FormulaId::CentralSquaresA => "eq3",
            FormulaId::YangB => "yang",
            FormulaId::DerivedQuarter => "thm3-1",
            FormulaId::DerivedKilo => "thm3-2",
        }
    }

    pub fn formula(self) -> RamanujanFormula {
        let name = self.as_str();
        let f = match self {
            FormulaId::HalfQuinticQuarter => RamanujanFormula::new(
                name,
                Kernel::PochhammerHalf5,
                [20, 8, 1],
                rat(-1, 4),
                ClaimedValue::over_pi_squared(int(8), 1),
            ),
            FormulaId::HalfQuinticKilo => RamanujanFormula::new(
                name,
                Kernel::PochhammerHalf5,
                [820, 180, 13],
                rat(-1, 1024),
                ClaimedValue::over_pi_squared(int(128), 1),
            ),
            FormulaId::CentralSquaresA => RamanujanFormula::new(
                name,
                Kernel::AperyLikeA,
                [36, 12, 1],
                rat(1, 1024),
                ClaimedValue::over_pi_squared(int(32), 1),
            )
            .map(RamanujanFormula::conjectural),
            FormulaId::YangB => RamanujanFormula::new(
                name,
                Kernel::YangB,
                [0, 4, 1],
                rat(1, 36),
                ClaimedValue {
                    s: int(18),
                    d: BigUint::one(),
                    pi_power: 1,
                    extra_sqrt_denom: Some(BigUint::from(15u32)),
                },
            ),
            FormulaId::DerivedQuarter => RamanujanFormula::new(
                name,
                Kernel::FrTimesU,
                [18, -10, -3],
                rat(1, 6400),
                ClaimedValue::over_pi_squared(int(10), 5),
            ),
            FormulaId::DerivedKilo => RamanujanFormula::new(
                name,
                Kernel::FrTimesU,
                [1046529, 227104, 16032],
                rat(1, 1050625),
                ClaimedValue::over_pi_squared(int(25625), 41),
            ),
        };
        f.expect("catalog formulas converge")
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown formula id {s:?}")))
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn catalog() -> Vec<RamanujanFormula> {
    FormulaId::ALL.iter().map(|id| id.formula()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_ratios_match_direct_values() {
        for kernel in [
            Kernel::PochhammerHalf5,
            Kernel::FrTimesU,
            Kernel::AperyLikeA,
            Kernel::YangB,
        ] {
            let direct = kernel.direct_values(40).unwrap();
            let seq = kernel.sequence(40).unwrap();
            let mut hyper = Rational::one();
            for n in 0..40 {
                let s = seq
                    .as_ref()
                    .map_or_else(Rational::one, |s| Rational::from_integer(s[n].clone()));
                assert_eq!(&hyper * s, direct[n], "{kernel:?} n={n}");
                let (p, q) = kernel.ratio(n as u64);
                hyper *= Rational::new(p, q);
            }
        }
    }

    #[test]
    fn growth_bounds_hold() {
        for kernel in [
            Kernel::PochhammerHalf5,
            Kernel::FrTimesU,
            Kernel::AperyLikeA,
            Kernel::YangB,
        ] {
            let (g, k) = kernel.growth();
            for (n, v) in kernel.direct_values(300).unwrap().iter().enumerate() {
                let bound = Rational::from_integer(
                    BigInt::from(n + 1).pow(k) * BigInt::from(g).pow(n as u32),
                );
                assert!(*v <= bound, "{kernel:?} n={n}");
            }
        }
    }

    #[test]
    fn catalog_rates() {
        assert_eq!(FormulaId::DerivedQuarter.formula().rho(), rat(16, 25));
        assert_eq!(FormulaId::DerivedKilo.formula().rho(), rat(4096, 1050625));
        assert_eq!(FormulaId::HalfQuinticQuarter.formula().rho(), rat(1, 4));
        assert_eq!(FormulaId::CentralSquaresA.formula().rho(), rat(1, 4));
        assert_eq!(FormulaId::YangB.formula().rho(), rat(4, 9));
        assert!(FormulaId::CentralSquaresA.formula().conjectural);
    }

    #[test]
    fn ids_round_trip() {
        for id in FormulaId::ALL {
            assert_eq!(id.as_str().parse::<FormulaId>().unwrap(), id);
        }
        assert!("eq4".parse::<FormulaId>().is_err());
    }

    #[test]
    fn rejects_divergent() {
        let r = RamanujanFormula::new(
            "bad",
            Kernel::FrTimesU,
            [1, 0, 0],
            rat(1, 4096),
            ClaimedValue::over_pi_squared(int(1), 1),
        );
        assert!(matches!(r, Err(Error::Divergent(_))));
    }
}
