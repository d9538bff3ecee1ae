//! Finite products `∏ Γ_R(s - a)^m` with signed exponents.
//!
//! `Γ_R(s) = π^{-s/2} Γ(s/2)` has simple poles exactly at `0, -2, -4, …` and
//! no zeros, so `Γ_R(s - a)` has poles on the chain `{a - 2k : k ≥ 0}`. Every
//! order-of-vanishing question about a product reduces to arithmetic along
//! such chains, which is what this module does.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// `∏ Γ_R(s - shift)^exp` in canonical form: distinct shifts, no zero
/// exponents, ordered by imaginary then real part. The empty product is 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GammaProduct {
    factors: BTreeMap<GaussianRational, i64>,
}

impl GammaProduct {
    pub fn one() -> Self {
        Self::default()
    }

    /// `Γ_R(s - shift)`.
    pub fn gamma_r(shift: GaussianRational) -> Self {
        Self::gamma_r_pow(shift, 1)
    }

    /// `Γ_R(s - shift)^exp`.
    pub fn gamma_r_pow(shift: GaussianRational, exp: i64) -> Self {
        let mut factors = BTreeMap::new();
        if exp != 0 {
            factors.insert(shift, exp);
        }
        GammaProduct { factors }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (GaussianRational, i64)>) -> Self {
        let mut out = GammaProduct::one();
        for (shift, exp) in factors {
            out.accumulate(shift, exp);
        }
        out
    }

    fn accumulate(&mut self, shift: GaussianRational, exp: i64) {
        if exp == 0 {
            return;
        }
        let merged = self
            .factors
            .get(&shift)
            .copied()
            .unwrap_or(0)
            .checked_add(exp)
            .expect("Γ_R exponent overflow");
        if merged == 0 {
            self.factors.remove(&shift);
        } else {
            self.factors.insert(shift, merged);
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors in canonical order.
    pub fn factors(&self) -> impl Iterator<Item = (&GaussianRational, i64)> + '_ {
        self.factors.iter().map(|(k, &v)| (k, v))
    }

    pub fn exponent_at(&self, shift: &GaussianRational) -> i64 {
        self.factors.get(shift).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (shift, &exp) in &other.factors {
            out.accumulate(shift.clone(), exp);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        GammaProduct {
            factors: self.factors.iter().map(|(k, &v)| (k.clone(), -v)).collect(),
        }
    }

    /// Raise to an integer power.
    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        GammaProduct {
            factors: self
                .factors
                .iter()
                .map(|(k, &v)| (k.clone(), v.checked_mul(e).expect("Γ_R exponent overflow")))
                .collect(),
        }
    }

    /// True iff every exponent is negative (a product of inverse Γ_R factors).
    pub fn is_inverse_product(&self) -> bool {
        self.factors.values().all(|&e| e < 0)
    }

    /// Order of vanishing at `z`: negative for a pole, positive for a zero.
    pub fn ord_at(&self, z: &GaussianRational) -> i64 {
        self.factors
            .iter()
            .filter(|(shift, _)| shift.steps_down_to(z).is_some())
            .map(|(_, &m)| -m)
            .sum()
    }

    /// Every shift, grouped by pole chain, with the cumulative order at each
    /// breakpoint.
    pub fn pole_chains(&self) -> Vec<PoleChain> {
        let mut grouped: BTreeMap<ChainKey, Vec<(GaussianRational, i64)>> = BTreeMap::new();
        for (shift, &exp) in &self.factors {
            grouped
                .entry(ChainKey::of(shift))
                .or_default()
                .push((shift.clone(), exp));
        }
        grouped
            .into_values()
            .map(PoleChain::from_factors)
            .filter(|c| c.orders.iter().any(|&(_, o)| o != 0))
            .collect()
    }
}

/// Sort key of the progression `a + 2ℤ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct ChainKey {
    im: Rational,
    re_mod_two: Rational,
}

impl ChainKey {
    fn of(z: &GaussianRational) -> Self {
        let (im, re_mod_two) = z.chain_key();
        ChainKey { im, re_mod_two }
    }
}

/// The orders of a product along one chain `{anchor - 2k : k ≥ 0}`.
///
/// `orders` lists `(k, ord_{anchor-2k})` at each breakpoint, i.e. at every
/// factor start on this chain, in increasing `k`. The order is constant
/// between breakpoints and equals `terminal` from the last one downward.
/// Above the anchor it is 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoleChain {
    pub anchor: GaussianRational,
    pub orders: Vec<(BigInt, i64)>,
    pub terminal: i64,
}

impl PoleChain {
    fn from_factors(mut factors: Vec<(GaussianRational, i64)>) -> Self {
        // Highest real part first.
        factors.sort_by(|a, b| b.0.re().cmp(a.0.re()));
        let anchor = factors[0].0.clone();
        let mut running = 0i64;
        let mut orders = Vec::with_capacity(factors.len());
        for (shift, exp) in factors {
            running -= exp;
            let k = anchor
                .steps_down_to(&shift)
                .expect("factors grouped on one chain");
            orders.push((k, running));
        }
        PoleChain {
            anchor,
            orders,
            terminal: running,
        }
    }

    /// Breakpoint points `anchor - 2k` with their orders.
    pub fn breakpoints(&self) -> impl Iterator<Item = (GaussianRational, i64)> + '_ {
        self.orders.iter().map(move |(k, o)| {
            let two_k = Rational::from_integer(k * 2);
            (&self.anchor - &GaussianRational::real(two_k), *o)
        })
    }

    /// Order at a point on this chain, or `None` if the point is off-chain.
    pub fn order_at(&self, z: &GaussianRational) -> Option<i64> {
        if !self.anchor.chain_equiv(z) {
            return None;
        }
        let Some(k) = self.anchor.steps_down_to(z) else {
            return Some(0);
        };
        Some(
            self.orders
                .iter()
                .take_while(|(bk, _)| *bk <= k)
                .last()
                .map(|&(_, o)| o)
                .unwrap_or(0),
        )
    }

    /// Largest point of the chain at which the pole order is at least `n`.
    pub fn first_pole_of_order(&self, n: i64) -> Option<GaussianRational> {
        self.breakpoints().find(|(_, o)| -o >= n).map(|(z, _)| z)
    }

    /// Highest pole order reached anywhere on the chain.
    pub fn max_pole_order(&self) -> i64 {
        self.orders
            .iter()
            .map(|&(_, o)| -o)
            .max()
            .unwrap_or(0)
            .max(0)
    }
}

pub fn gp_mul(f: &GammaProduct, g: &GammaProduct) -> GammaProduct {
    f.mul(g)
}

pub fn gp_inverse(f: &GammaProduct) -> GammaProduct {
    f.inverse()
}

pub fn ord_at(f: &GammaProduct, z: &GaussianRational) -> i64 {
    f.ord_at(z)
}

pub fn pole_chains(f: &GammaProduct) -> Vec<PoleChain> {
    f.pole_chains()
}

/// Minimal inverse product `H` with `ord_z(H) = max_i ord_z(F_i)` for every `z`.
///
/// Along a chain each input's order is a nondecreasing step function of the
/// depth, so the pointwise maximum `t` is one too; `H` places
/// `Γ_R(s - x)^{-(t(x) - t(x⁺))}` at each breakpoint `x`, where `x⁺` is the
/// next breakpoint above.
pub fn lcm_inverse_products(fs: &[GammaProduct]) -> Result<GammaProduct> {
    if fs.is_empty() {
        return Err(Error::EmptyLcm);
    }
    for (index, f) in fs.iter().enumerate() {
        if let Some((shift, _)) = f.factors().find(|&(_, e)| e > 0) {
            return Err(Error::PositiveExponent {
                index,
                shift: shift.clone(),
            });
        }
    }

    // chain key -> breakpoint -> per-input exponent contributions
    let mut chains: BTreeMap<ChainKey, BTreeMap<RealDesc, Vec<i64>>> = BTreeMap::new();
    for (index, f) in fs.iter().enumerate() {
        for (shift, exp) in f.factors() {
            let slots = chains
                .entry(ChainKey::of(shift))
                .or_default()
                .entry(RealDesc(shift.clone()))
                .or_insert_with(|| vec![0; fs.len()]);
            slots[index] += -exp;
        }
    }

    let mut out = GammaProduct::one();
    for breakpoints in chains.into_values() {
        let mut cumulative = vec![0i64; fs.len()];
        let mut previous_max = 0i64;
        for (RealDesc(point), contributions) in breakpoints {
            for (c, add) in cumulative.iter_mut().zip(&contributions) {
                *c += add;
            }
            let max = *cumulative.iter().max().expect("nonempty family");
            debug_assert!(max >= previous_max);
            out.accumulate(point, -(max - previous_max));
            previous_max = max;
        }
    }
    Ok(out)
}

/// Points on one chain, ordered from the top (largest real part) down.
#[derive(Clone, PartialEq, Eq)]
struct RealDesc(GaussianRational);

impl Ord for RealDesc {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.0.re().cmp(self.0.re())
    }
}

impl PartialOrd for RealDesc {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GammaProduct {
    /// `Γ_R(s)^2·Γ_R(s-11/6)^-1`; the empty product prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (n, (shift, &exp)) in self.factors.iter().enumerate() {
            if n > 0 {
                f.write_str("·")?;
            }
            write!(f, "Γ_R({})", shift_argument(shift))?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GammaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `s`, `s-11/6`, `s+11/6`, `s-(1/2+1*i)`.
pub fn shift_argument(shift: &GaussianRational) -> String {
    if shift.is_zero() {
        return "s".to_string();
    }
    if shift.is_real() {
        let neg = -shift;
        if shift.re() > &Rational::from_integer(0.into()) {
            return format!("s-{shift}");
        }
        return format!("s+{neg}");
    }
    format!("s-({shift})")
}

#[derive(Serialize, Deserialize)]
struct FactorRepr {
    shift: GaussianRational,
    exp: i64,
}

impl Serialize for GammaProduct {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.factors.len()))?;
        for (shift, &exp) in &self.factors {
            seq.serialize_element(&FactorRepr {
                shift: shift.clone(),
                exp,
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GammaProduct {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let reprs = Vec::<FactorRepr>::deserialize(deserializer)?;
        Ok(GammaProduct::from_factors(
            reprs.into_iter().map(|r| (r.shift, r.exp)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(shift: i64, exp: i64) -> GammaProduct {
        GammaProduct::gamma_r_pow(GaussianRational::from_integer(shift), exp)
    }

    fn z(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    fn lcm_family() -> [GammaProduct; 3] {
        [
            g(0, -1).mul(&g(2, -2)),
            g(0, -2).mul(&g(4, -1)),
            g(2, -1).mul(&g(4, -2)),
        ]
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(g(0, 1).mul(&g(0, 1)), g(0, 2));
        assert!(g(0, 2).mul(&g(0, -2)).is_one());
        assert_eq!(
            g(0, -1).mul(&g(2, -2)).mul(&g(2, 1)),
            g(0, -1).mul(&g(2, -1))
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(g(0, 2).inverse(), g(0, -2));
        assert!(GammaProduct::one().inverse().is_one());
        assert_eq!(g(4, -2).mul(&g(2, -1)).inverse(), g(4, 2).mul(&g(2, 1)));
    }

    #[test]
    fn ord_examples() {
        assert_eq!(g(0, 1).ord_at(&z(0)), -1);
        assert_eq!(lcm_family()[2].ord_at(&z(2)), 3);
        assert_eq!(g(0, 1).ord_at(&z(1)), 0);
        assert_eq!(g(0, 1).ord_at(&z(2)), 0);
        assert_eq!(g(0, 1).ord_at(&z(-40)), -1);
    }

    #[test]
    fn lcm_ord_table() {
        let [f1, f2, f3] = lcm_family();
        let rows = [
            (4, [0, 1, 2], 2),
            (2, [2, 1, 3], 3),
            (0, [3, 3, 3], 3),
            (-2, [3, 3, 3], 3),
        ];
        for (s0, ords, max) in rows {
            let got = [f1.ord_at(&z(s0)), f2.ord_at(&z(s0)), f3.ord_at(&z(s0))];
            assert_eq!(got, ords, "row s0 = {s0}");
            assert_eq!(*got.iter().max().unwrap(), max);
        }
    }

    #[test]
    fn lcm_examples() {
        let fs = lcm_family();
        let h = lcm_inverse_products(&fs).unwrap();
        assert_eq!(h, g(4, -2).mul(&g(2, -1)));

        for f in &fs {
            assert_eq!(lcm_inverse_products(std::slice::from_ref(f)).unwrap(), *f);
        }

        let a = GaussianRational::from_fraction(11, 6);
        let fs = [
            g(0, -2),
            GammaProduct::gamma_r_pow(a.clone(), -1),
            GammaProduct::gamma_r_pow(-&a, -1),
        ];
        let h = lcm_inverse_products(&fs).unwrap();
        let product = fs.iter().fold(GammaProduct::one(), |acc, f| acc.mul(f));
        assert_eq!(h, product);
        assert_eq!(h.ord_at(&z(0)), 2);
        assert_eq!(h.ord_at(&a), 1);
        assert_eq!(h.ord_at(&-&a), 1);
    }

    #[test]
    fn lcm_rejects_bad_input() {
        assert_eq!(lcm_inverse_products(&[]), Err(Error::EmptyLcm));
        assert!(matches!(
            lcm_inverse_products(&[g(0, -1), g(2, 1)]),
            Err(Error::PositiveExponent { index: 1, .. })
        ));
    }

    #[test]
    fn pole_chain_examples() {
        let chains = g(0, 1).mul(&g(-2, 1)).pole_chains();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].anchor, z(0));
        assert_eq!(
            chains[0].orders,
            vec![(BigInt::from(0), -1), (BigInt::from(1), -2)]
        );
        assert_eq!(chains[0].terminal, -2);
        assert_eq!(chains[0].order_at(&z(-10)), Some(-2));
        assert_eq!(chains[0].order_at(&z(2)), Some(0));
        assert_eq!(chains[0].order_at(&z(1)), None);

        let a = GaussianRational::from_fraction(11, 6);
        let chains = GammaProduct::gamma_r(a.clone())
            .mul(&GammaProduct::gamma_r(-&a))
            .pole_chains();
        let anchors: Vec<_> = chains.iter().map(|c| c.anchor.clone()).collect();
        assert_eq!(anchors.len(), 2);
        assert!(anchors.contains(&a) && anchors.contains(&-&a));

        assert!(GammaProduct::one().pole_chains().is_empty());
    }

    #[test]
    fn display() {
        let a = GaussianRational::from_fraction(11, 6);
        let f = g(0, 2)
            .mul(&GammaProduct::gamma_r(a.clone()))
            .mul(&GammaProduct::gamma_r(-&a));
        assert_eq!(f.to_string(), "Γ_R(s+11/6)·Γ_R(s)^2·Γ_R(s-11/6)");
        assert_eq!(GammaProduct::one().to_string(), "1");
    }

    #[test]
    fn json_shape_and_round_trip() {
        let f = g(4, -2).mul(&g(2, -1));
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(
            text,
            r#"[{"shift":{"re":"2","im":"0"},"exp":-1},{"shift":{"re":"4","im":"0"},"exp":-2}]"#
        );
        let back: GammaProduct = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    fn arb_shift() -> impl Strategy<Value = GaussianRational> {
        // Few distinct chains so factors collide often.
        (-6i64..6, prop::sample::select(vec![1i64, 2, 3]), -1i64..2)
            .prop_map(|(a, b, c)| GaussianRational::from_parts((a, b), (c, 1)))
    }

    fn arb_product(signed: bool) -> impl Strategy<Value = GammaProduct> {
        proptest::collection::vec((arb_shift(), 1i64..4, any::<bool>()), 0..6).prop_map(move |v| {
            GammaProduct::from_factors(
                v.into_iter()
                    .map(|(s, m, flip)| (s, if signed && flip { m } else { -m })),
            )
        })
    }

    fn probe_points(fs: &[&GammaProduct]) -> Vec<GaussianRational> {
        let mut pts = Vec::new();
        for f in fs {
            for (shift, _) in f.factors() {
                for d in [2i64, 1, 0, -1, -2, -4, -6] {
                    pts.push(shift.add_integer(d));
                }
            }
        }
        pts.push(GaussianRational::from_fraction(1, 7));
        pts
    }

    proptest! {
        #[test]
        fn ord_is_additive(f in arb_product(true), g in arb_product(true)) {
            let fg = f.mul(&g);
            for p in probe_points(&[&f, &g]) {
                prop_assert_eq!(fg.ord_at(&p), f.ord_at(&p) + g.ord_at(&p));
                prop_assert_eq!(f.inverse().ord_at(&p), -f.ord_at(&p));
            }
            prop_assert!(f.mul(&f.inverse()).is_one());
        }

        #[test]
        fn chains_agree_with_ord(f in arb_product(true)) {
            for chain in f.pole_chains() {
                for (point, order) in chain.breakpoints() {
                    prop_assert_eq!(f.ord_at(&point), order);
                }
                prop_assert_eq!(chain.terminal, f.ord_at(&chain.anchor.add_integer(-1000)));
            }
        }

        #[test]
        fn lcm_is_pointwise_max_and_minimal(fs in proptest::collection::vec(arb_product(false), 1..5)) {
            let h = lcm_inverse_products(&fs).unwrap();
            prop_assert!(h.is_inverse_product());
            let refs: Vec<&GammaProduct> = fs.iter().chain(std::iter::once(&h)).collect();
            let pts = probe_points(&refs);
            for p in &pts {
                let max = fs.iter().map(|f| f.ord_at(p)).max().unwrap();
                prop_assert_eq!(h.ord_at(p), max);
            }
            // Dropping one copy of any factor breaks the max somewhere.
            for (shift, _) in h.factors() {
                let smaller = h.mul(&GammaProduct::gamma_r(shift.clone()));
                let broken = pts.iter().any(|p| {
                    smaller.ord_at(p) != fs.iter().map(|f| f.ord_at(p)).max().unwrap()
                });
                prop_assert!(broken);
            }
        }

        #[test]
        fn lcm_laws(f in arb_product(false), g in arb_product(false)) {
            prop_assert_eq!(lcm_inverse_products(&[f.clone(), f.clone()]).unwrap(), f.clone());
            prop_assert_eq!(lcm_inverse_products(&[f.clone(), GammaProduct::one()]).unwrap(), f.clone());
            prop_assert_eq!(
                lcm_inverse_products(&[f.clone(), g.clone()]).unwrap(),
                lcm_inverse_products(&[g, f]).unwrap()
            );
        }

        #[test]
        fn json_round_trip(f in arb_product(true)) {
            let text = serde_json::to_string(&f).unwrap();
            let back: GammaProduct = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
            prop_assert_eq!(back, f);
        }
    }
}
