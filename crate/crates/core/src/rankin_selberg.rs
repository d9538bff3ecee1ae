//! The pair L-function `L(s, π₁ × π₂)` and its exceptional poles.
//!
//! Exceptional poles are found two ways. [`exceptional_poles`] counts pole
//! orders: for a general-position pair they are exactly the points where
//! `L(s, π₁ × π₂)` has a pole of full order `n`. [`exceptional_certificate`]
//! instead produces the multi-index matching
//! `μ_{σ(j)} = (χ_j α^{l_j})^{-1} |·|^{-s₀}` that witnesses such a point.
//! The two must agree; the test suites hold them to it.

use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::GaussianRational;
use crate::character::{require_same_rank, CharacterGL1, PrincipalSeries};
use crate::error::{CertificateFailure, Error, Result};
use crate::gamma::GammaProduct;

/// A multi-index `l = (l_1, …, l_n)` with `|l| = Σ l_j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u64>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Witness that `s0` is an exceptional pole of level `level`:
/// `μ_{matching[j]} · χ_j = sgn^{l_j} |·|^{-(l_j + s0)}` for every `j`.
/// `matching` is 0-based here and 1-based in JSON.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExceptionalCertificate {
    pub s0: GaussianRational,
    pub level: u64,
    pub multi_index: MultiIndex,
    pub matching: Vec<usize>,
}

impl ExceptionalCertificate {
    pub fn is_identity_matching(&self) -> bool {
        self.matching.iter().enumerate().all(|(j, &i)| i == j)
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateRepr {
    s0: GaussianRational,
    level: u64,
    multi_index: Vec<u64>,
    matching: Vec<usize>,
}

impl Serialize for ExceptionalCertificate {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        CertificateRepr {
            s0: self.s0.clone(),
            level: self.level,
            multi_index: self.multi_index.0.clone(),
            matching: self.matching.iter().map(|i| i + 1).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExceptionalCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CertificateRepr::deserialize(deserializer)?;
        let matching = repr
            .matching
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| D::Error::custom("matching is 1-based"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(ExceptionalCertificate {
            s0: repr.s0,
            level: repr.level,
            multi_index: MultiIndex(repr.multi_index),
            matching,
        })
    }
}

/// One entry `L(s, μ_i χ_j) = Γ_R(s - shift)` of the n × n factor table.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PairFactor {
    pub i: usize,
    pub j: usize,
    pub character: CharacterGL1,
    pub shift: GaussianRational,
}

pub fn pair_factor_table(p1: &PrincipalSeries, p2: &PrincipalSeries) -> Result<Vec<PairFactor>> {
    let n = require_same_rank(p1, p2)?;
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let character = p1.char(i).mul(p2.char(j));
            let shift = character.l_factor_shift();
            table.push(PairFactor {
                i,
                j,
                character,
                shift,
            });
        }
    }
    Ok(table)
}

/// `L(s, π₁ × π₂) = ∏_{i,j} L(s, μ_i χ_j)`. No general-position hypothesis.
pub fn pair_l_function(p1: &PrincipalSeries, p2: &PrincipalSeries) -> Result<GammaProduct> {
    Ok(GammaProduct::from_factors(
        pair_factor_table(p1, p2)?.into_iter().map(|f| (f.shift, 1)),
    ))
}

fn require_pair_in_general_position(p1: &PrincipalSeries, p2: &PrincipalSeries) -> Result<usize> {
    let n = require_same_rank(p1, p2)?;
    p1.require_general_position("pi1")?;
    p2.require_general_position("pi2")?;
    Ok(n)
}

/// Maximal points `s_1, …, s_r` with `P_ex = ⊔ {s_i - 2k}`, in canonical chain order.
pub fn exceptional_poles(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
) -> Result<Vec<GaussianRational>> {
    let n = require_pair_in_general_position(p1, p2)? as i64;
    let l = pair_l_function(p1, p2)?;
    Ok(l.pole_chains()
        .iter()
        .filter_map(|chain| {
            debug_assert!(
                chain.max_pole_order() <= n,
                "pole order above n in general position"
            );
            chain.first_pole_of_order(n)
        })
        .collect())
}

/// `L_ex(s, π₁ × π₂) = ∏ Γ_R(s - s_i)^n`, or 1 when `P_ex` is empty.
pub fn exceptional_l_factor(p1: &PrincipalSeries, p2: &PrincipalSeries) -> Result<GammaProduct> {
    let n = p1.rank() as i64;
    let anchors = exceptional_poles(p1, p2)?;
    Ok(GammaProduct::from_factors(
        anchors.into_iter().map(|a| (a, n)),
    ))
}

/// The level `l ≥ 0` with `c = sgn^l |·|^{-(l + s0)}`, if one exists.
/// `Err(level)` reports a solution of the right parity that is negative.
fn matching_level(
    c: &CharacterGL1,
    s0: &GaussianRational,
) -> Option<std::result::Result<u64, i64>> {
    let level = (-(c.exponent() + s0)).to_integer()?;
    let parity_ok = (&level % 2u32).abs().to_u8() == Some(c.parity());
    if !parity_ok {
        return None;
    }
    if level.is_negative() {
        return Some(Err(level.to_i64().unwrap_or(i64::MIN)));
    }
    level.to_u64().map(Ok)
}

/// Multi-index certificate for `s0 ∈ P_ex`.
///
/// For each `j` the level is solved exactly from the exponents; general
/// position leaves at most one candidate `i`.
pub fn exceptional_certificate(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
    s0: &GaussianRational,
) -> Result<ExceptionalCertificate> {
    let n = require_pair_in_general_position(p1, p2)?;
    let fail = |reason| Error::NotExceptional {
        s0: s0.clone(),
        reason,
    };

    let mut matching = Vec::with_capacity(n);
    let mut levels = Vec::with_capacity(n);
    for j in 0..n {
        let mut found = None;
        let mut negative = None;
        for i in 0..n {
            match matching_level(&p1.char(i).mul(p2.char(j)), s0) {
                Some(Ok(level)) => {
                    debug_assert!(
                        found.is_none(),
                        "two matches for one chi in general position"
                    );
                    found = Some((i, level));
                }
                Some(Err(level)) => negative = Some((i, level)),
                None => {}
            }
        }
        match (found, negative) {
            (Some((i, level)), _) => {
                matching.push(i);
                levels.push(level);
            }
            (None, Some((i, level))) => {
                return Err(fail(CertificateFailure::NegativeLevel { i, j, level }))
            }
            (None, None) => return Err(fail(CertificateFailure::NoMatch { j })),
        }
    }

    let mut seen = vec![false; n];
    for &i in &matching {
        if std::mem::replace(&mut seen[i], true) {
            return Err(fail(CertificateFailure::NotBijective));
        }
    }

    let multi_index = MultiIndex(levels);
    Ok(ExceptionalCertificate {
        s0: s0.clone(),
        level: multi_index.degree(),
        multi_index,
        matching,
    })
}

/// Checks every defining identity of a certificate against the pair.
pub fn validate_certificate(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
    cert: &ExceptionalCertificate,
) -> bool {
    let n = p1.rank();
    if p2.rank() != n || cert.matching.len() != n || cert.multi_index.len() != n {
        return false;
    }
    if cert.multi_index.degree() != cert.level {
        return false;
    }
    let mut seen = vec![false; n];
    for (j, &i) in cert.matching.iter().enumerate() {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return false;
        }
        let l = cert.multi_index.0[j];
        // μ_i = (χ_j α^l)^{-1} |·|^{-s0}
        let expected = p2
            .char(j)
            .algebraic_twist(l)
            .dual()
            .twist_by_abs(&-&cert.s0);
        if *p1.char(i) != expected {
            return false;
        }
    }
    true
}

/// Top of `P_ex ∩ (s0 + ℤ)`: `s0 + min_i (l_i - δ_i)` with `δ_i ≡ l_i (mod 2)`.
pub fn exceptional_lattice_slice(cert: &ExceptionalCertificate) -> GaussianRational {
    let drop = cert
        .multi_index
        .0
        .iter()
        .map(|&l| l - (l % 2))
        .min()
        .unwrap_or(0);
    cert.s0.add_integer(drop as i64)
}

/// Pole order of `L(s, π₁ × π₂)` at `s0`, with the character subsets that
/// carry it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoleWitness {
    pub order: usize,
    /// `(i, j)` with `L(s, μ_i χ_j)` singular at `s0`, 0-based, sorted by `j`.
    pub pairs: Vec<(usize, usize)>,
    /// Sorted indices into π₁ / π₂.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Certificate for `s0` on the pair of sub-series `(π₁|left, π₂|right)`.
    pub certificate: ExceptionalCertificate,
}

/// For a pole `s0` of order `k`, the `k`-element subsets spanning derivative
/// components on which `s0` is exceptional of full order `k`.
pub fn pole_order_witness(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
    s0: &GaussianRational,
) -> Result<PoleWitness> {
    let n = require_pair_in_general_position(p1, p2)?;
    let mut pairs: Vec<(usize, usize)> = pair_factor_table(p1, p2)?
        .into_iter()
        .filter(|f| f.shift.steps_down_to(s0).is_some())
        .map(|f| (f.i, f.j))
        .collect();
    if pairs.is_empty() {
        return Err(Error::NotAPole { s0: s0.clone() });
    }
    pairs.sort_by_key(|&(i, j)| (j, i));
    debug_assert!(pairs.len() <= n);

    let mut left: Vec<usize> = pairs.iter().map(|&(i, _)| i).collect();
    let mut right: Vec<usize> = pairs.iter().map(|&(_, j)| j).collect();
    left.sort_unstable();
    right.sort_unstable();
    left.dedup();
    right.dedup();

    let sub1 = p1.restrict(&left);
    let sub2 = p2.restrict(&right);
    let certificate = exceptional_certificate(&sub1, &sub2, s0)?;
    Ok(PoleWitness {
        order: pairs.len(),
        pairs,
        left,
        right,
        certificate,
    })
}

/// Inducing characters `χ_j α^{l_j}` of the graded piece of `π₂ ⊗ Sym^m`
/// indexed by `l`.
pub fn sympower_graded_series(p2: &PrincipalSeries, l: &MultiIndex) -> Result<PrincipalSeries> {
    if l.len() != p2.rank() {
        return Err(Error::LengthMismatch {
            left: p2.rank(),
            right: l.len(),
        });
    }
    PrincipalSeries::new(
        p2.chars()
            .iter()
            .zip(&l.0)
            .map(|(c, &lj)| c.algebraic_twist(lj))
            .collect(),
    )
}

/// All `l ∈ ℤ_{≥0}^n` with `|l| = m`, lexicographically increasing;
/// there are `C(n+m-1, m)` of them.
pub fn enumerate_multi_indices(n: usize, m: u64) -> Vec<MultiIndex> {
    fn fill(prefix: &mut Vec<u64>, slots: usize, remaining: u64, out: &mut Vec<MultiIndex>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=remaining {
            prefix.push(first);
            fill(prefix, slots - 1, remaining - first, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    fill(&mut Vec::with_capacity(n), n, m, &mut out);
    out
}
