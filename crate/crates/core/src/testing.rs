//! Shorthand constructors for unit tests.

use crate::arith::GaussianRational;
use crate::character::{CharacterGL1, PrincipalSeries};

/// `sgn^e |·|^(num/den)`.
pub fn ch(e: u64, num: i64, den: i64) -> CharacterGL1 {
    CharacterGL1::new(e, GaussianRational::from_fraction(num, den))
}

pub fn ps(chars: &[(u64, i64, i64)]) -> PrincipalSeries {
    PrincipalSeries::new(chars.iter().map(|&(e, n, d)| ch(e, n, d)).collect()).unwrap()
}

pub fn q(num: i64, den: i64) -> GaussianRational {
    GaussianRational::from_fraction(num, den)
}

/// The pair used as the running example throughout the docs.
pub fn worked_pair() -> (PrincipalSeries, PrincipalSeries) {
    (ps(&[(1, -4, 3), (1, 1, 2)]), ps(&[(0, 1, 3), (1, -1, 2)]))
}
