//! The combinatorial sequences `u_n`, `U_n`, `A_n`, `B_n` and an exact
//! checker for holonomic recurrences.
//!
//! ```text
//! u_n = sum_k (1/2)_k^3/k!^3 (1/2)_{n-k}/(n-k)!
//!     = sum_k ((1/4)_k (3/4)_{n-k} / (k! (n-k)!))^2
//! U_n = sum_k C(2k,k)^3 C(2n-2k,n-k) 16^(n-k)  = 64^n u_n
//! A_n = C(2n,n)^2 sum_k C(2k,k)^2 C(2n-2k,n-k)^2
//! B_n = sum_k C(n,k)^4
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{binomial, int, pochhammer_table, rat, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UMethod {
    /// `(1/2)` convolution form.
    Convolution,
    /// Squared quarter-parameter form.
    Quarters,
    /// Three-term recurrence from `u_0 = 1`, `u_1 = 5/8`.
    Recurrence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BigUMethod {
    /// Binomial sum.
    Direct,
    /// Three-term recurrence from `U_0 = 1`, `U_1 = 40`.
    Recurrence,
    /// `64^n u_n` with `u_n` from the convolution form.
    Rescale,
}

/// `u_0 ..= u_nmax`.
pub fn u_seq(nmax: usize, method: UMethod) -> Vec<Rational> {
    match method {
        UMethod::Convolution => {
            let half = pochhammer_table(&rat(1, 2), nmax);
            let fact = pochhammer_table(&int(1), nmax);
            let h: Vec<Rational> = half.iter().zip(&fact).map(|(p, f)| p / f).collect();
            let h3: Vec<Rational> = h.iter().map(|x| x * x * x).collect();
            (0..=nmax)
                .map(|n| (0..=n).fold(Rational::zero(), |acc, k| acc + &h3[k] * &h[n - k]))
                .collect()
        }
        UMethod::Quarters => {
            let q1 = pochhammer_table(&rat(1, 4), nmax);
            let q3 = pochhammer_table(&rat(3, 4), nmax);
            let fact = pochhammer_table(&int(1), nmax);
            let lo: Vec<Rational> = q1.iter().zip(&fact).map(|(p, f)| p / f).collect();
            let hi: Vec<Rational> = q3.iter().zip(&fact).map(|(p, f)| p / f).collect();
            (0..=nmax)
                .map(|n| {
                    (0..=n).fold(Rational::zero(), |acc, k| {
                        let t = &lo[k] * &hi[n - k];
                        acc + &t * &t
                    })
                })
                .collect()
        }
        UMethod::Recurrence => {
            let mut out = vec![int(1)];
            if nmax >= 1 {
                out.push(rat(5, 8));
            }
            for n in 1..nmax {
                let nb = BigInt::from(n);
                let mid = (2 * &nb + 1) * (8 * &nb * &nb + 8 * &nb + 5);
                let low = 8 * &nb * &nb * &nb;
                let top = 8 * (&nb + 1u32).pow(3);
                let next = (Rational::from_integer(mid) * &out[n]
                    - Rational::from_integer(low) * &out[n - 1])
                    / Rational::from_integer(top);
                out.push(next);
            }
            out
        }
    }
}

/// `U_0 ..= U_nmax`. Fails if a recurrence step or the rescaling does not
/// produce an integer.
pub fn big_u_seq(nmax: usize, method: BigUMethod) -> Result<Vec<BigInt>> {
    match method {
        BigUMethod::Direct => {
            let central: Vec<BigInt> = (0..=nmax as u64)
                .map(|k| BigInt::from(binomial(2 * k, k)))
                .collect();
            let cubes: Vec<BigInt> = central.iter().map(|c| c * c * c).collect();
            let weighted: Vec<BigInt> = central
                .iter()
                .enumerate()
                .map(|(m, c)| c << (4 * m))
                .collect();
            Ok((0..=nmax)
                .map(|n| (0..=n).fold(BigInt::zero(), |acc, k| acc + &cubes[k] * &weighted[n - k]))
                .collect())
        }
        BigUMethod::Recurrence => {
            let mut out = vec![BigInt::one()];
            if nmax >= 1 {
                out.push(BigInt::from(40));
            }
            for n in 1..nmax {
                let nb = BigInt::from(n);
                let mid = 8 * (2 * &nb + 1) * (8 * &nb * &nb + 8 * &nb + 5);
                let low = 4096 * &nb * &nb * &nb;
                let top = (&nb + 1u32).pow(3);
                let num: BigInt = mid * &out[n] - low * &out[n - 1];
                let (q, r) = num.div_rem(&top);
                if !r.is_zero() {
                    return Err(Error::NotIntegral(format!("U_{} from recurrence", n + 1)));
                }
                out.push(q);
            }
            Ok(out)
        }
        BigUMethod::Rescale => u_seq(nmax, UMethod::Convolution)
            .into_iter()
            .enumerate()
            .map(|(n, u)| {
                let scaled = u * Rational::from_integer(BigInt::one() << (6 * n));
                if scaled.is_integer() {
                    Ok(scaled.to_integer())
                } else {
                    Err(Error::NotIntegral(format!("64^{n} u_{n} = {scaled}")))
                }
            })
            .collect(),
    }
}

/// `A_0 ..= A_nmax`.
pub fn a_seq(nmax: usize) -> Vec<BigInt> {
    let sq: Vec<BigInt> = (0..=nmax as u64)
        .map(|k| {
            let c = BigInt::from(binomial(2 * k, k));
            &c * &c
        })
        .collect();
    (0..=nmax)
        .map(|n| {
            let inner = (0..=n).fold(BigInt::zero(), |acc, k| acc + &sq[k] * &sq[n - k]);
            &sq[n] * inner
        })
        .collect()
}

/// `B_0 ..= B_nmax`.
pub fn b_seq(nmax: usize) -> Vec<BigInt> {
    (0..=nmax as u64)
        .into_par_iter()
        .map(|n| {
            // walk the row C(n, k), using the symmetry to halve the work
            let mut c = BigInt::one();
            let mut total = BigInt::zero();
            for k in 0..=n / 2 {
                let p = c.pow(4);
                if 2 * k == n {
                    total += p;
                } else {
                    total += p << 1;
                }
                c = c * (n - k) / (k + 1);
            }
            total
        })
        .collect()
}

/// Polynomial in `n` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial(Vec<BigInt>);

impl Polynomial {
    pub fn new(coeffs: &[i64]) -> Self {
        Self(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, n: i64) -> BigInt {
        let n = BigInt::from(n);
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &n + c)
    }
}

/// `sum_i p_i(n) s_{n + i - shift} = 0`.
///
/// `shift` keeps the index convention of the printed recurrences: for a
/// relation in `s_{n-1}, s_n, s_{n+1}` use `shift = 1` and list the
/// polynomials for `s_{n-1}`, `s_n`, `s_{n+1}` in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    polys: Vec<Polynomial>,
    shift: usize,
}

impl RecurrenceSpec {
    pub fn new(polys: Vec<Polynomial>, shift: usize) -> Result<Self> {
        match polys.last() {
            None => Err(Error::InvalidRecurrence(
                "no coefficient polynomials".into(),
            )),
            Some(p) if p.is_zero() => Err(Error::InvalidRecurrence(
                "leading polynomial is zero".into(),
            )),
            Some(_) => Ok(Self { polys, shift }),
        }
    }

    /// `8(n+1)^3 u_{n+1} - (2n+1)(8n^2+8n+5) u_n + 8n^3 u_{n-1} = 0`.
    pub fn u_three_term() -> Self {
        Self::new(
            vec![
                Polynomial::new(&[0, 0, 0, 8]),
                // -(2n+1)(8n^2+8n+5) = -(16n^3 + 24n^2 + 18n + 5)
                Polynomial::new(&[-5, -18, -24, -16]),
                Polynomial::new(&[8, 24, 24, 8]),
            ],
            1,
        )
        .expect("static recurrence")
    }

    /// `(n+1)^3 U_{n+1} - 8(2n+1)(8n^2+8n+5) U_n + 4096 n^3 U_{n-1} = 0`.
    pub fn big_u_three_term() -> Self {
        Self::new(
            vec![
                Polynomial::new(&[0, 0, 0, 4096]),
                Polynomial::new(&[-40, -144, -192, -128]),
                Polynomial::new(&[1, 3, 3, 1]),
            ],
            1,
        )
        .expect("static recurrence")
    }

    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    /// Exact value of the recurrence combination at `n`.
    pub fn residual(&self, seq: &[Rational], n: i64) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (i, p) in self.polys.iter().enumerate() {
            let index = n + i as i64 - self.shift as i64;
            if index < 0 || index as usize >= seq.len() {
                return Err(Error::SequenceTooShort {
                    len: seq.len(),
                    index,
                });
            }
            let c = p.eval(n);
            if !c.is_zero() {
                acc += Rational::from_integer(c) * &seq[index as usize];
            }
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub holds: bool,
    pub first_failure: Option<i64>,
}

/// Evaluates the recurrence exactly for every `n` in `lo..=hi`.
pub fn check_recurrence(
    seq: &[Rational],
    rec: &RecurrenceSpec,
    lo: i64,
    hi: i64,
) -> Result<RecurrenceReport> {
    for n in lo..=hi {
        if !rec.residual(seq, n)?.is_zero() {
            return Ok(RecurrenceReport {
                holds: false,
                first_failure: Some(n),
            });
        }
    }
    Ok(RecurrenceReport {
        holds: true,
        first_failure: None,
    })
}

pub fn to_rationals(seq: &[BigInt]) -> Vec<Rational> {
    seq.iter().cloned().map(Rational::from_integer).collect()
}

/// True when every entry is positive and the sequence strictly increases
/// from index 1 on.
pub fn positive_increasing(seq: &[BigInt]) -> bool {
    seq.iter().all(Signed::is_positive) && seq.windows(2).skip(1).all(|w| w[0] < w[1])
}
