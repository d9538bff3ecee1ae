//! Characters `sgn^ε |·|^s` of ℝ^× and principal-series inducing data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::GaussianRational;
use crate::error::{Error, Result};
use crate::gamma::GammaProduct;

/// The character `sgn^parity · |·|^exponent` of ℝ^×.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharacterGL1 {
    parity: u8,
    exponent: GaussianRational,
}

impl CharacterGL1 {
    /// Parity is reduced mod 2.
    pub fn new(parity: u64, exponent: GaussianRational) -> Self {
        CharacterGL1 {
            parity: (parity % 2) as u8,
            exponent,
        }
    }

    pub fn trivial() -> Self {
        Self::new(0, GaussianRational::zero())
    }

    /// `|·|^s`.
    pub fn unsigned(exponent: GaussianRational) -> Self {
        Self::new(0, exponent)
    }

    /// The algebraic character `α(a) = a = sgn(a)|a|`.
    pub fn alpha() -> Self {
        Self::new(1, GaussianRational::from_integer(1))
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn exponent(&self) -> &GaussianRational {
        &self.exponent
    }

    pub fn is_trivial(&self) -> bool {
        self.parity == 0 && self.exponent.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        CharacterGL1 {
            parity: (self.parity + other.parity) % 2,
            exponent: &self.exponent + &other.exponent,
        }
    }

    /// Inverse character; the contragredient for GL(1).
    pub fn dual(&self) -> Self {
        CharacterGL1 {
            parity: self.parity,
            exponent: -&self.exponent,
        }
    }

    /// `self · α^l`.
    pub fn algebraic_twist(&self, l: u64) -> Self {
        CharacterGL1 {
            parity: ((self.parity as u64 + l) % 2) as u8,
            exponent: self.exponent.add_integer(l as i64),
        }
    }

    /// `self · |·|^u`.
    pub fn twist_by_abs(&self, u: &GaussianRational) -> Self {
        CharacterGL1 {
            parity: self.parity,
            exponent: &self.exponent + u,
        }
    }

    /// The shift `a` with `L(s, self) = Γ_R(s - a)`, i.e. `-(s + ε)`.
    pub fn l_factor_shift(&self) -> GaussianRational {
        -self.exponent.add_integer(self.parity as i64)
    }

    pub fn l_factor(&self) -> GammaProduct {
        GammaProduct::gamma_r(self.l_factor_shift())
    }
}

impl fmt::Display for CharacterGL1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sgn^{} * |.|^({})", self.parity, self.exponent)
    }
}

impl fmt::Debug for CharacterGL1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.parity, self.exponent)
    }
}

/// Which general-position condition fails, with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneralPositionViolation {
    IntegralExponent {
        index: usize,
        exponent: GaussianRational,
    },
    IntegralDifference {
        first: usize,
        second: usize,
        difference: GaussianRational,
    },
}

impl fmt::Display for GeneralPositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneralPositionViolation::IntegralExponent { index, exponent } => write!(
                f,
                "exponent s_{} = {} is an integer (need s_i not in Z)",
                index + 1,
                exponent
            ),
            GeneralPositionViolation::IntegralDifference {
                first,
                second,
                difference,
            } => write!(
                f,
                "s_{} - s_{} = {} is an integer (need s_i - s_i' not in Z)",
                first + 1,
                second + 1,
                difference
            ),
        }
    }
}

/// Inducing data `χ_1 × ··· × χ_n` of a principal series of GL_n(ℝ).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrincipalSeries {
    chars: Vec<CharacterGL1>,
}

impl PrincipalSeries {
    pub fn new(chars: Vec<CharacterGL1>) -> Result<Self> {
        if chars.is_empty() {
            return Err(Error::EmptyPrincipalSeries);
        }
        Ok(PrincipalSeries { chars })
    }

    pub fn rank(&self) -> usize {
        self.chars.len()
    }

    pub fn chars(&self) -> &[CharacterGL1] {
        &self.chars
    }

    pub fn char(&self, i: usize) -> &CharacterGL1 {
        &self.chars[i]
    }

    /// The sub-series on the given (0-based) character indices.
    pub fn restrict(&self, indices: &[usize]) -> PrincipalSeries {
        PrincipalSeries {
            chars: indices.iter().map(|&i| self.chars[i].clone()).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&CharacterGL1) -> CharacterGL1) -> PrincipalSeries {
        PrincipalSeries {
            chars: self.chars.iter().map(f).collect(),
        }
    }

    /// Contragredient: every inducing character inverted.
    pub fn dual(&self) -> PrincipalSeries {
        self.map(CharacterGL1::dual)
    }

    /// Representations are equal when their character multisets are.
    pub fn same_representation(&self, other: &Self) -> bool {
        let mut a = self.chars.clone();
        let mut b = other.chars.clone();
        a.sort();
        b.sort();
        a == b
    }

    pub fn general_position_violation(&self) -> Option<GeneralPositionViolation> {
        for (index, c) in self.chars.iter().enumerate() {
            if c.exponent.is_integer() {
                return Some(GeneralPositionViolation::IntegralExponent {
                    index,
                    exponent: c.exponent.clone(),
                });
            }
        }
        for first in 0..self.chars.len() {
            for second in first + 1..self.chars.len() {
                let difference = &self.chars[first].exponent - &self.chars[second].exponent;
                if difference.is_integer() {
                    return Some(GeneralPositionViolation::IntegralDifference {
                        first,
                        second,
                        difference,
                    });
                }
            }
        }
        None
    }

    pub fn is_general_position(&self) -> bool {
        self.general_position_violation().is_none()
    }

    pub(crate) fn require_general_position(&self, which: &'static str) -> Result<()> {
        match self.general_position_violation() {
            None => Ok(()),
            Some(violation) => Err(Error::NotGeneralPosition { which, violation }),
        }
    }
}

impl fmt::Display for PrincipalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dsl::render_principal_series(self))
    }
}

impl fmt::Debug for PrincipalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.chars).finish()
    }
}

pub fn char_mul(a: &CharacterGL1, b: &CharacterGL1) -> CharacterGL1 {
    a.mul(b)
}

pub fn char_dual(a: &CharacterGL1) -> CharacterGL1 {
    a.dual()
}

pub fn algebraic_twist(a: &CharacterGL1, l: u64) -> CharacterGL1 {
    a.algebraic_twist(l)
}

pub fn l_factor(a: &CharacterGL1) -> GammaProduct {
    a.l_factor()
}

pub fn is_general_position(p: &PrincipalSeries) -> bool {
    p.is_general_position()
}

pub(crate) fn require_same_rank(p1: &PrincipalSeries, p2: &PrincipalSeries) -> Result<usize> {
    if p1.rank() != p2.rank() {
        return Err(Error::LengthMismatch {
            left: p1.rank(),
            right: p2.rank(),
        });
    }
    Ok(p1.rank())
}

/// `(i, j)` for the factor `L(s, μ_i χ_j)`, 0-based.
pub type IndexPair = (usize, usize);

/// First pair of distinct index pairs whose single-character L-factors share
/// a pole, if any. Indices are 0-based `(i, j)` for `μ_i χ_j`.
pub fn shared_pole_pair(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
) -> Result<Option<(IndexPair, IndexPair)>> {
    let n = require_same_rank(p1, p2)?;
    let mut shifts = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            shifts.push(((i, j), p1.chars[i].mul(&p2.chars[j]).l_factor_shift()));
        }
    }
    for a in 0..shifts.len() {
        for b in a + 1..shifts.len() {
            if shifts[a].1.chain_equiv(&shifts[b].1) {
                return Ok(Some((shifts[a].0, shifts[b].0)));
            }
        }
    }
    Ok(None)
}

/// Both series in general position, and no two distinct index pairs `(i, j)`
/// give single factors `L(s, μ_i χ_j)` with a common pole.
pub fn is_strong_general_position(p1: &PrincipalSeries, p2: &PrincipalSeries) -> Result<bool> {
    require_same_rank(p1, p2)?;
    if !p1.is_general_position() || !p2.is_general_position() {
        return Ok(false);
    }
    Ok(shared_pole_pair(p1, p2)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{ch, ps};
    use proptest::prelude::*;

    #[test]
    fn multiplication_examples() {
        assert_eq!(ch(1, 1, 3).mul(&ch(1, -1, 3)), CharacterGL1::trivial());
        assert_eq!(ch(0, 1, 2).mul(&ch(1, 1, 3)), ch(1, 5, 6));
        assert_eq!(ch(1, 0, 1).mul(&ch(1, 0, 1)), CharacterGL1::trivial());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(ch(0, 1, 3).dual(), ch(0, -1, 3));
        assert_eq!(ch(1, -1, 2).dual(), ch(1, 1, 2));
        assert_eq!(CharacterGL1::trivial().dual(), CharacterGL1::trivial());
    }

    #[test]
    fn twist_examples() {
        assert_eq!(ch(0, 1, 3).algebraic_twist(1), ch(1, 4, 3));
        assert_eq!(ch(1, -1, 2).algebraic_twist(0), ch(1, -1, 2));
        assert_eq!(CharacterGL1::trivial().algebraic_twist(2), ch(0, 2, 1));
        assert_eq!(
            CharacterGL1::trivial().algebraic_twist(1),
            CharacterGL1::alpha()
        );
    }

    #[test]
    fn parity_is_reduced_on_construction() {
        assert_eq!(CharacterGL1::new(3, GaussianRational::zero()).parity(), 1);
        assert_eq!(CharacterGL1::new(4, GaussianRational::zero()).parity(), 0);
    }

    #[test]
    fn l_factor_examples() {
        let g = |a: GaussianRational| GammaProduct::gamma_r(a);
        assert_eq!(
            CharacterGL1::trivial().l_factor(),
            g(GaussianRational::zero())
        );
        assert_eq!(
            ch(1, 0, 1).l_factor(),
            g(GaussianRational::from_integer(-1))
        );
        assert_eq!(
            ch(0, -11, 6).l_factor(),
            g(GaussianRational::from_fraction(11, 6))
        );
    }

    #[test]
    fn general_position_examples() {
        assert!(ps(&[(0, 1, 3), (0, -1, 2)]).is_general_position());
        assert_eq!(
            ps(&[(0, 1, 3), (0, 4, 3)]).general_position_violation(),
            Some(GeneralPositionViolation::IntegralDifference {
                first: 0,
                second: 1,
                difference: GaussianRational::from_integer(-1),
            })
        );
        assert!(matches!(
            ps(&[(0, 2, 1)]).general_position_violation(),
            Some(GeneralPositionViolation::IntegralExponent { index: 0, .. })
        ));
    }

    #[test]
    fn strong_general_position_examples() {
        let p1 = ps(&[(1, -4, 3), (1, 1, 2)]);
        let p2 = ps(&[(0, 1, 3), (1, -1, 2)]);
        assert!(!is_strong_general_position(&p1, &p2).unwrap());
        assert_eq!(shared_pole_pair(&p1, &p2).unwrap(), Some(((0, 0), (1, 1))));

        assert!(is_strong_general_position(&ps(&[(0, -1, 3)]), &ps(&[(0, 1, 5)])).unwrap());

        let p1 = ps(&[(0, 1, 5), (0, 1, 7)]);
        let p2 = ps(&[(0, 1, 11), (0, 1, 13)]);
        assert!(is_strong_general_position(&p1, &p2).unwrap());
    }

    #[test]
    fn strong_general_position_rejects_length_mismatch() {
        let err = is_strong_general_position(&ps(&[(0, 1, 3)]), &ps(&[(0, 1, 5), (0, 1, 7)]));
        assert_eq!(err, Err(Error::LengthMismatch { left: 1, right: 2 }));
    }

    #[test]
    fn transposed_pairs_count_as_distinct() {
        // μ_1χ_2 and μ_2χ_1 share the pole 0 although {1,2} = {2,1} as sets.
        let p1 = ps(&[(0, 1, 3), (0, 1, 5)]);
        let p2 = ps(&[(0, -1, 5), (0, -1, 3)]);
        assert!(p1.is_general_position() && p2.is_general_position());
        assert_eq!(shared_pole_pair(&p1, &p2).unwrap(), Some(((0, 1), (1, 0))));
        assert!(!is_strong_general_position(&p1, &p2).unwrap());
    }

    #[test]
    fn empty_series_rejected() {
        assert_eq!(
            PrincipalSeries::new(vec![]),
            Err(Error::EmptyPrincipalSeries)
        );
    }

    fn arb_char() -> impl Strategy<Value = CharacterGL1> {
        (0u64..2, -60i64..60, 1i64..13, -3i64..3, 1i64..5).prop_map(|(e, a, b, c, d)| {
            CharacterGL1::new(e, GaussianRational::from_parts((a, b), (c, d)))
        })
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(a in arb_char(), b in arb_char(), c in arb_char()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.dual().dual(), a.clone());
        }

        #[test]
        fn trivial_product_gives_gamma_r_at_zero(a in arb_char()) {
            let t = a.mul(&a.dual());
            prop_assert!(t.is_trivial());
            prop_assert_eq!(t.l_factor(), GammaProduct::gamma_r(GaussianRational::zero()));
        }

        #[test]
        fn general_position_permutation_invariant(chars in proptest::collection::vec(arb_char(), 1..5), rot in 0usize..5) {
            let p = PrincipalSeries::new(chars.clone()).unwrap();
            let mut rotated = chars;
            let len = rotated.len();
            rotated.rotate_left(rot % len);
            rotated.reverse();
            let q = PrincipalSeries::new(rotated).unwrap();
            prop_assert_eq!(p.is_general_position(), q.is_general_position());
            prop_assert!(p.same_representation(&q));
        }

        #[test]
        fn strong_implies_general(a in proptest::collection::vec(arb_char(), 2), b in proptest::collection::vec(arb_char(), 2)) {
            let p1 = PrincipalSeries::new(a).unwrap();
            let p2 = PrincipalSeries::new(b).unwrap();
            if is_strong_general_position(&p1, &p2).unwrap() {
                prop_assert!(p1.is_general_position() && p2.is_general_position());
            }
        }
    }
}
