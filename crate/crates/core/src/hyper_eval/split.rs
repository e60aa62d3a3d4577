//! Exact partial sums: binary splitting and a naive term-by-term reference.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::formula::RamanujanFormula;
use crate::arith::Rational;
use crate::error::Result;

/// Ranges at least this long are split on the rayon pool.
const PARALLEL_CUTOFF: usize = 48;

/// Unreduced exact sum `numer / denom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSum {
    pub numer: BigInt,
    pub denom: BigInt,
}

impl SplitSum {
    pub fn value(&self) -> Rational {
        Rational::new(self.numer.clone(), self.denom.clone())
    }
}

struct Node {
    p: BigInt,
    q: BigInt,
    t: BigInt,
}

struct Terms<'a> {
    formula: &'a RamanujanFormula,
    seq: Option<Vec<BigInt>>,
}

impl Terms<'_> {
    /// `p(j)/q(j) = K(j+1)/K(j) * x` without the streamed factor.
    fn ratio(&self, j: usize) -> (BigInt, BigInt) {
        let (p, q) = self.formula.kernel.ratio(j as u64);
        (p * self.formula.x.numer(), q * self.formula.x.denom())
    }

    /// Streamed factor times the quadratic.
    fn leaf(&self, n: usize) -> BigInt {
        let poly = self.formula.poly(n as u64);
        match &self.seq {
            Some(s) => &s[n] * poly,
            None => poly,
        }
    }

    /// For `[a, b)`: `P = prod p`, `Q = prod q`,
    /// `T = Q * sum_{n} leaf(n) prod_{a <= j < n} p(j)/q(j)`.
    fn split(&self, a: usize, b: usize) -> Node {
        if b - a == 1 {
            let (p, q) = self.ratio(a);
            let t = self.leaf(a) * &q;
            return Node { p, q, t };
        }
        let m = a + (b - a) / 2;
        let (left, right) = if b - a >= PARALLEL_CUTOFF {
            rayon::join(|| self.split(a, m), || self.split(m, b))
        } else {
            (self.split(a, m), self.split(m, b))
        };
        Node {
            t: &left.t * &right.q + &left.p * &right.t,
            p: left.p * right.p,
            q: left.q * right.q,
        }
    }
}

/// `sum_{n0 <= n < n1} term(n)` exactly, by a product tree.
pub fn binary_split(formula: &RamanujanFormula, n0: usize, n1: usize) -> Result<SplitSum> {
    if n1 <= n0 {
        return Ok(SplitSum {
            numer: BigInt::zero(),
            denom: BigInt::one(),
        });
    }
    let terms = Terms {
        formula,
        seq: formula.kernel.sequence(n1)?,
    };
    // prefix product up to n0
    let (mut pre_p, mut pre_q) = (BigInt::one(), BigInt::one());
    for j in 0..n0 {
        let (p, q) = terms.ratio(j);
        pre_p *= p;
        pre_q *= q;
    }
    let node = terms.split(n0, n1);
    Ok(SplitSum {
        numer: pre_p * node.t,
        denom: pre_q * node.q,
    })
}

/// Exact term `K(n) (A n^2 + B n + C) x^n` for every `n < count`, from
/// closed-form kernel values.
pub fn naive_terms(formula: &RamanujanFormula, count: usize) -> Result<Vec<Rational>> {
    let kernel = formula.kernel.direct_values(count)?;
    let mut power = Rational::one();
    let mut out = Vec::with_capacity(count);
    for (n, k) in kernel.into_iter().enumerate() {
        out.push(k * Rational::from_integer(formula.poly(n as u64)) * &power);
        power *= &formula.x;
    }
    Ok(out)
}

/// Term-by-term exact sum over `[n0, n1)`.
pub fn naive_sum(formula: &RamanujanFormula, n0: usize, n1: usize) -> Result<Rational> {
    if n1 <= n0 {
        return Ok(Rational::zero());
    }
    Ok(naive_terms(formula, n1)?
        .into_iter()
        .skip(n0)
        .fold(Rational::zero(), |acc, t| acc + t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::hyper_eval::formula::{catalog, FormulaId};

    #[test]
    fn first_terms_of_derived_quarter() {
        let f = FormulaId::DerivedQuarter.formula();
        assert_eq!(binary_split(&f, 0, 1).unwrap().value(), int(-3));
        assert_eq!(binary_split(&f, 0, 2).unwrap().value(), rat(-21, 8));
        assert_eq!(binary_split(&f, 5, 5).unwrap().value(), int(0));
    }

    #[test]
    fn matches_naive_on_every_formula() {
        for f in catalog() {
            for (n0, n1) in [(0, 1), (0, 37), (3, 64), (17, 18), (10, 90)] {
                assert_eq!(
                    binary_split(&f, n0, n1).unwrap().value(),
                    naive_sum(&f, n0, n1).unwrap(),
                    "{} [{n0},{n1})",
                    f.name
                );
            }
        }
    }

    #[test]
    fn ranges_concatenate() {
        let f = FormulaId::DerivedKilo.formula();
        let whole = binary_split(&f, 4, 150).unwrap().value();
        for mid in [4, 5, 60, 149, 150] {
            let left = binary_split(&f, 4, mid).unwrap().value();
            let right = binary_split(&f, mid, 150).unwrap().value();
            assert_eq!(left + right, whole);
        }
    }
}
