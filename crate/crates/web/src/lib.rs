//! Browser bindings. Every export takes strings and numbers and returns a JSON
//! string: `{"ok": ...}` on success or `{"error": "..."}` otherwise, so the
//! page never has to catch exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use rslab::numeric::shift_to_complex;
use rslab::{
    exceptional_certificate, exceptional_poles, pair_factor_table, pair_l_function,
    parse_character, parse_principal_series, tate_closed_form, tate_integral_num,
    verify_theorem_1_2, ComplexFloat, GammaProduct, GaussianRational, PrincipalSeries,
};

/// Points drawn per pole chain.
const CHAIN_DEPTH: i64 = 6;

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => json!({ "ok": v }).to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn series(text: &str, what: &str) -> Result<PrincipalSeries, String> {
    parse_principal_series(text).map_err(|e| format!("{what}: {e}\n{}", e.snippet(text)))
}

fn point(z: &GaussianRational) -> Value {
    let c = shift_to_complex(z);
    json!({ "text": z.to_string(), "re": c.re, "im": c.im })
}

fn analyze(pi1: &str, pi2: &str) -> Result<Value, String> {
    let p1 = series(pi1, "pi1")?;
    let p2 = series(pi2, "pi2")?;
    let table = pair_factor_table(&p1, &p2).map_err(|e| e.to_string())?;
    let l = pair_l_function(&p1, &p2).map_err(|e| e.to_string())?;
    let n = p1.rank() as i64;

    let factors: Vec<Value> = table
        .iter()
        .map(|f| {
            json!({
                "i": f.i + 1,
                "j": f.j + 1,
                "character": f.character.to_string(),
                "shift": point(&f.shift),
                "factor": GammaProduct::gamma_r(f.shift.clone()).to_string(),
            })
        })
        .collect();
    let chains: Vec<Value> = l
        .pole_chains()
        .iter()
        .map(|c| {
            let points: Vec<Value> = (0..CHAIN_DEPTH)
                .map(|k| {
                    let z = c.anchor.add_integer(-2 * k);
                    let order = -c.order_at(&z).unwrap_or(0);
                    json!({ "point": point(&z), "order": order })
                })
                .collect();
            json!({ "anchor": point(&c.anchor), "points": points })
        })
        .collect();

    let exceptional = match exceptional_poles(&p1, &p2) {
        Ok(anchors) => {
            let certs: Vec<Value> = anchors
                .iter()
                .map(|a| {
                    let cert = exceptional_certificate(&p1, &p2, a).map_err(|e| e.to_string())?;
                    Ok(json!({ "anchor": point(a), "certificate": cert }))
                })
                .collect::<Result<_, String>>()?;
            json!({ "general_position": true, "poles": certs })
        }
        Err(e) => json!({ "general_position": false, "reason": e.to_string() }),
    };

    Ok(json!({
        "pi1": p1.to_string(),
        "pi2": p2.to_string(),
        "n": n,
        "factors": factors,
        "l_function": l.to_string(),
        "chains": chains,
        "exceptional": exceptional,
    }))
}

fn verify(pi1: &str, pi2: &str) -> Result<Value, String> {
    let p1 = series(pi1, "pi1")?;
    let p2 = series(pi2, "pi2")?;
    let r = verify_theorem_1_2(&p1, &p2).map_err(|e| e.to_string())?;
    let contributions: Vec<Value> = r
        .nontrivial_contributions()
        .map(|c| {
            json!({
                "k": c.k,
                "left": c.left.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "right": c.right.iter().map(|j| j + 1).collect::<Vec<_>>(),
                "inverse_factor": c.inverse_factor.to_string(),
            })
        })
        .collect();
    Ok(json!({
        "lhs": r.lhs.to_string(),
        "rhs": r.rhs.to_string(),
        "equal": r.equal,
        "strong_general_position": r.strong_general_position,
        "total_contributions": r.contributions.len(),
        "nontrivial_contributions": contributions,
    }))
}

fn tate(
    c1: &str,
    c2: &str,
    deg: u32,
    re_min: f64,
    re_max: f64,
    im: f64,
    samples: u32,
) -> Result<Value, String> {
    let c1 = parse_character(c1).map_err(|e| format!("c1: {e}"))?;
    let c2 = parse_character(c2).map_err(|e| format!("c2: {e}"))?;
    if !(re_min.is_finite() && re_max.is_finite() && im.is_finite()) || re_min >= re_max {
        return Err("need finite re_min < re_max".into());
    }
    let samples = samples.clamp(2, 400);
    let mut curve = Vec::with_capacity(samples as usize);
    for k in 0..samples {
        let re = re_min + (re_max - re_min) * f64::from(k) / f64::from(samples - 1);
        let s = ComplexFloat::new(re, im);
        // Points outside the half-plane of convergence are skipped, not errors.
        let (Ok(q), Ok(c)) = (
            tate_integral_num(s, &c1, &c2, deg),
            tate_closed_form(s, &c1, &c2, deg),
        ) else {
            continue;
        };
        curve.push(
            json!({ "s": [s.re, s.im], "quadrature": [q.re, q.im], "closed_form": [c.re, c.im] }),
        );
    }
    Ok(json!({
        "c1": c1.to_string(),
        "c2": c2.to_string(),
        "deg": deg,
        "odd": (u32::from(c1.parity()) + u32::from(c2.parity()) + deg) % 2 == 1,
        "curve": curve,
    }))
}

/// Factor table, pole chains and certified exceptional poles of a pair.
#[wasm_bindgen]
pub fn analyze_pair(pi1: &str, pi2: &str) -> String {
    respond(analyze(pi1, pi2))
}

/// Both sides of the lcm identity and the contributions that are not 1.
#[wasm_bindgen]
pub fn verify_lcm(pi1: &str, pi2: &str) -> String {
    respond(verify(pi1, pi2))
}

/// Tate integral by quadrature and in closed form along `re + im·i`,
/// `re ∈ [re_min, re_max]`.
#[wasm_bindgen]
pub fn tate_curve(
    c1: &str,
    c2: &str,
    deg: u32,
    re_min: f64,
    re_max: f64,
    im: f64,
    samples: u32,
) -> String {
    respond(tate(c1, c2, deg, re_min, re_max, im, samples))
}
