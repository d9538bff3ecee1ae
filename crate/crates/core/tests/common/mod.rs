//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's certificate or pole-detection code; it
//! works directly from the defining identity
//! `μ_{σ(j)} = (χ_j α^{l_j})^{-1} |·|^{-s0}` on raw exponents.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rslab::{GaussianRational, PrincipalSeries};

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every `s0` admitting a matching with all `l_j ≤ max_level`, found by
/// enumerating bijections and level vectors.
pub fn brute_force_certified(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
    max_level: u64,
) -> BTreeSet<GaussianRational> {
    let n = p1.rank();
    let mut found = BTreeSet::new();
    let levels = (max_level + 1).pow(n as u32);
    for sigma in permutations(n) {
        for code in 0..levels {
            let mut rest = code;
            let l: Vec<u64> = (0..n)
                .map(|_| {
                    let v = rest % (max_level + 1);
                    rest /= max_level + 1;
                    v
                })
                .collect();
            let mut s0: Option<GaussianRational> = None;
            let mut ok = true;
            for j in 0..n {
                let mu = p1.char(sigma[j]);
                let chi = p2.char(j);
                // sign: ε_μ = ε_χ + l_j (mod 2)
                if !(u64::from(mu.parity()) + u64::from(chi.parity()) + l[j]).is_multiple_of(2) {
                    ok = false;
                    break;
                }
                // exponent: s_μ = -(s_χ + l_j) - s0
                let candidate = -(mu.exponent() + chi.exponent()).add_integer(l[j] as i64);
                match &s0 {
                    None => s0 = Some(candidate),
                    Some(s) if *s == candidate => {}
                    Some(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                found.insert(s0.expect("n > 0"));
            }
        }
    }
    found
}

/// `x ~ y` iff `x - y` is an even integer.
pub fn same_chain(x: &GaussianRational, y: &GaussianRational) -> bool {
    (x - y).to_integer().is_some_and(|d| d % 2 == 0.into())
}

/// Largest element (by real part) of each chain class.
pub fn chain_maxima(points: &BTreeSet<GaussianRational>) -> BTreeSet<GaussianRational> {
    let mut tops: Vec<GaussianRational> = Vec::new();
    for p in points {
        match tops.iter_mut().find(|t| same_chain(t, p)) {
            Some(t) => {
                if p.re() > t.re() {
                    *t = p.clone();
                }
            }
            None => tops.push(p.clone()),
        }
    }
    tops.into_iter().collect()
}
