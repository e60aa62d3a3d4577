//! Seeded random rational parameters for the identity batteries.

use num_bigint::BigInt;
use rand::Rng;

use crate::arith::Rational;

/// A rational `p/q` with `1 <= q <= max_den` and `|p/q| <= max_abs`.
pub fn random_rational<R: Rng>(rng: &mut R, max_den: i64, max_abs: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(-max_abs * den..=max_abs * den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Draws `count` rationals, retrying the whole tuple until `accept` holds.
///
/// Used to step around pole configurations (lower parameters that are zero
/// or negative integers).
pub fn random_params<R: Rng>(
    rng: &mut R,
    count: usize,
    mut accept: impl FnMut(&[Rational]) -> bool,
) -> Vec<Rational> {
    loop {
        let params: Vec<Rational> = (0..count).map(|_| random_rational(rng, 12, 3)).collect();
        if accept(&params) {
            return params;
        }
    }
}
