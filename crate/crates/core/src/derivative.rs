//! Derivatives of principal series and the lcm factorization of
//! `L(s, π₁ × π₂)^{-1}` through exceptional factors of derivative components.

use serde::Serialize;

use crate::arith::GaussianRational;
use crate::character::{
    is_strong_general_position, require_same_rank, shared_pole_pair, CharacterGL1, PrincipalSeries,
};
use crate::error::{Error, Result};
use crate::gamma::{lcm_inverse_products, GammaProduct};
use crate::rankin_selberg::{exceptional_l_factor, pair_l_function};

/// One irreducible constituent of a derivative, addressed by the 0-based
/// indices of the inducing characters it keeps.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DerivativeComponent {
    pub indices: Vec<usize>,
    pub series: PrincipalSeries,
}

/// `π^{(k)} = ⊕` over `(n-k)`-subsets of the inducing characters.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DerivativeDecomposition {
    pub order: usize,
    pub components: Vec<DerivativeComponent>,
}

/// All `size`-element subsets of `0..n`, lexicographically increasing.
pub fn index_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut current: Vec<usize> = (0..size).collect();
    loop {
        out.push(current.clone());
        // Rightmost slot that can still advance.
        let Some(pos) = (0..size).rev().find(|&p| current[p] < n - size + p) else {
            return out;
        };
        current[pos] += 1;
        for q in pos + 1..size {
            current[q] = current[q - 1] + 1;
        }
    }
}

/// The `k`-th derivative of a general-position principal series.
pub fn derivative(p: &PrincipalSeries, k: usize) -> Result<DerivativeDecomposition> {
    let n = p.rank();
    if k >= n {
        return Err(Error::DerivativeOrder { k, n });
    }
    p.require_general_position("pi")?;
    let components = index_subsets(n, n - k)
        .into_iter()
        .map(|indices| DerivativeComponent {
            series: p.restrict(&indices),
            indices,
        })
        .collect();
    Ok(DerivativeDecomposition {
        order: k,
        components,
    })
}

/// Level `m` at which `s0` is a GL(1) exceptional pole for `(c1, c2)`:
/// `s0 + s1 + s2 = -m` with `m ≥ 0` and `m ≡ ε1 + ε2 (mod 2)`.
pub fn gl1_pole_membership(
    c1: &CharacterGL1,
    c2: &CharacterGL1,
    s0: &GaussianRational,
) -> Option<u64> {
    let total = s0 + &(c1.exponent() + c2.exponent());
    let m = (-total).to_integer()?;
    let m: u64 = m.try_into().ok()?;
    (m % 2 == u64::from((c1.parity() + c2.parity()) % 2)).then_some(m)
}

/// `L_ex(s, π_{1,i}^{(k)} × π_{2,j}^{(k)})^{-1}` for one component pair.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Contribution {
    pub k: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub inverse_factor: GammaProduct,
    /// Known to be 1 under strong general position (`k < n - 1`).
    pub skipped_by_strong_gp: bool,
}

/// Outcome of the strong-general-position shortcut.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ShortcutCheck {
    /// Every contribution with `k < n - 1` is the constant 1.
    pub lower_contributions_trivial: bool,
    /// The lcm equals `∏_{i,j} L(s, μ_i × χ_j)^{-1}` directly.
    pub direct_product_matches: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Theorem12Report {
    pub pi1: PrincipalSeries,
    pub pi2: PrincipalSeries,
    /// `L(s, π₁ × π₂)^{-1}`.
    pub lhs: GammaProduct,
    /// lcm of the inverse exceptional factors.
    pub rhs: GammaProduct,
    pub equal: bool,
    pub strong_general_position: bool,
    pub contributions: Vec<Contribution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shortcut: Option<ShortcutCheck>,
}

impl Theorem12Report {
    /// Contributions that are not the constant 1.
    pub fn nontrivial_contributions(&self) -> impl Iterator<Item = &Contribution> {
        self.contributions
            .iter()
            .filter(|c| !c.inverse_factor.is_one())
    }
}

fn contribution_grid(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
    strong: bool,
) -> Result<Vec<Contribution>> {
    let n = p1.rank();
    let mut out = Vec::new();
    for k in 0..n {
        let d1 = derivative(p1, k)?;
        let d2 = derivative(p2, k)?;
        for a in &d1.components {
            for b in &d2.components {
                out.push(Contribution {
                    k,
                    left: a.indices.clone(),
                    right: b.indices.clone(),
                    inverse_factor: exceptional_l_factor(&a.series, &b.series)?.inverse(),
                    skipped_by_strong_gp: strong && k + 1 < n,
                });
            }
        }
    }
    Ok(out)
}

/// Recomputes both sides of
/// `L(s, π₁ × π₂)^{-1} = lcm_{k,i,j} L_ex(s, π_{1,i}^{(k)} × π_{2,j}^{(k)})^{-1}`.
pub fn verify_theorem_1_2(p1: &PrincipalSeries, p2: &PrincipalSeries) -> Result<Theorem12Report> {
    require_same_rank(p1, p2)?;
    p1.require_general_position("pi1")?;
    p2.require_general_position("pi2")?;
    let strong = is_strong_general_position(p1, p2)?;

    let lhs = pair_l_function(p1, p2)?.inverse();
    let contributions = contribution_grid(p1, p2, strong)?;
    let factors: Vec<GammaProduct> = contributions
        .iter()
        .map(|c| c.inverse_factor.clone())
        .collect();
    let rhs = lcm_inverse_products(&factors)?;
    Ok(Theorem12Report {
        pi1: p1.clone(),
        pi2: p2.clone(),
        equal: lhs == rhs,
        lhs,
        rhs,
        strong_general_position: strong,
        contributions,
        shortcut: None,
    })
}

/// The factorization under strong general position, where only the
/// `(n-1)`-th derivatives (single characters) can contribute.
pub fn strong_gp_contributions(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
) -> Result<Theorem12Report> {
    let n = require_same_rank(p1, p2)?;
    p1.require_general_position("pi1")?;
    p2.require_general_position("pi2")?;
    if let Some((a, b)) = shared_pole_pair(p1, p2)? {
        return Err(Error::NotStrongGeneralPosition {
            reason: format!(
                "L(s, mu_{} x chi_{}) and L(s, mu_{} x chi_{}) share a pole",
                a.0 + 1,
                a.1 + 1,
                b.0 + 1,
                b.1 + 1
            ),
        });
    }

    let lhs = pair_l_function(p1, p2)?.inverse();
    let contributions = contribution_grid(p1, p2, true)?;
    let lower_contributions_trivial = contributions
        .iter()
        .filter(|c| c.k + 1 < n)
        .all(|c| c.inverse_factor.is_one());

    let top: Vec<GammaProduct> = contributions
        .iter()
        .filter(|c| c.k + 1 == n)
        .map(|c| c.inverse_factor.clone())
        .collect();
    let rhs = lcm_inverse_products(&top)?;
    let direct = p1
        .chars()
        .iter()
        .flat_map(|m| {
            p2.chars()
                .iter()
                .map(move |c| m.mul(c).l_factor().inverse())
        })
        .fold(GammaProduct::one(), |acc, f| acc.mul(&f));

    Ok(Theorem12Report {
        pi1: p1.clone(),
        pi2: p2.clone(),
        equal: lhs == rhs,
        shortcut: Some(ShortcutCheck {
            lower_contributions_trivial,
            direct_product_matches: rhs == direct,
        }),
        lhs,
        rhs,
        strong_general_position: true,
        contributions,
    })
}
