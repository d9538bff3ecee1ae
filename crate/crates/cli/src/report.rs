//! Text and JSON renderings. Indices are 1-based in both.

use std::fmt::Write as _;

use serde_json::{json, Value};

use rslab::{
    CertificateFailure, ComplexFloat, DerivativeDecomposition, ExceptionalCertificate,
    GammaProduct, GaussianRational, PairFactor, PoleWitness, PrincipalSeries, Theorem12Report,
};

use crate::Output;

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn set(v: &[usize]) -> String {
    let parts: Vec<String> = one_based(v).iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn header(p1: &PrincipalSeries, p2: &PrincipalSeries) -> String {
    format!("pi1 = {p1}\npi2 = {p2}\n")
}

fn complex(z: ComplexFloat) -> Value {
    json!([z.re, z.im])
}

fn show(z: ComplexFloat) -> String {
    if z.im == 0.0 {
        format!("{:.12e}", z.re)
    } else {
        format!(
            "{:.12e} {} {:.12e}i",
            z.re,
            if z.im < 0.0 { '-' } else { '+' },
            z.im.abs()
        )
    }
}

pub fn lfactor(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
    table: &[PairFactor],
    product: &GammaProduct,
) -> Output {
    let mut text = header(p1, p2);
    let width = table
        .iter()
        .map(|f| f.character.to_string().chars().count())
        .max()
        .unwrap_or(0);
    for f in table {
        let c = f.character.to_string();
        let pad = width - c.chars().count();
        let _ = writeln!(
            text,
            "  ({}, {})  {c}{}  {}",
            f.i + 1,
            f.j + 1,
            " ".repeat(pad),
            GammaProduct::gamma_r(f.shift.clone())
        );
    }
    let _ = write!(text, "L(s, pi1 x pi2) = {product}");
    let factors: Vec<Value> = table
        .iter()
        .map(|f| json!({"i": f.i + 1, "j": f.j + 1, "character": f.character, "shift": f.shift}))
        .collect();
    Output::ok(
        json!({
            "command": "lfactor",
            "pi1": p1.to_string(),
            "pi2": p2.to_string(),
            "factors": factors,
            "l_function": product,
            "l_function_text": product.to_string(),
        }),
        text,
    )
}

fn certificate_line(c: &ExceptionalCertificate) -> String {
    let pairs: Vec<String> = c
        .matching
        .iter()
        .enumerate()
        .map(|(j, i)| format!("chi_{} ~ mu_{}", j + 1, i + 1))
        .collect();
    format!(
        "s0 = {}: level {}, l = {}, {}",
        c.s0,
        c.level,
        c.multi_index,
        pairs.join(", ")
    )
}

pub fn exceptional(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
    certs: &[ExceptionalCertificate],
) -> Output {
    let mut text = header(p1, p2);
    if certs.is_empty() {
        text.push_str("P_ex empty");
    } else {
        for c in certs {
            let _ = writeln!(text, "  {}", certificate_line(c));
        }
        text.pop();
    }
    Output::ok(
        json!({
            "command": "exceptional",
            "pi1": p1.to_string(),
            "pi2": p2.to_string(),
            "certificates": certs,
        }),
        text,
    )
}

pub fn refusal(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
    s0: &GaussianRational,
    reason: &CertificateFailure,
) -> Output {
    let detail = match reason {
        CertificateFailure::NoMatch { j } => json!({"kind": "no_match", "j": j + 1}),
        CertificateFailure::NegativeLevel { i, j, level } => {
            json!({"kind": "negative_level", "i": i + 1, "j": j + 1, "level": level})
        }
        CertificateFailure::NotBijective => json!({"kind": "not_bijective"}),
    };
    Output {
        json: json!({
            "command": "exceptional",
            "pi1": p1.to_string(),
            "pi2": p2.to_string(),
            "s0": s0,
            "exceptional": false,
            "reason": detail,
            "message": reason.to_string(),
        }),
        text: format!("{}{s0} not in P_ex: {reason}", header(p1, p2)),
        verified_false: true,
    }
}

pub fn witness(
    p1: &PrincipalSeries,
    p2: &PrincipalSeries,
    s0: &GaussianRational,
    w: &PoleWitness,
) -> Output {
    let pairs: Vec<Value> = w
        .pairs
        .iter()
        .map(|&(i, j)| json!([i + 1, j + 1]))
        .collect();
    let text = format!(
        "{}pole of order {} at {s0}: I = {}, J = {}\n  on the sub-pair: {}",
        header(p1, p2),
        w.order,
        set(&w.left),
        set(&w.right),
        certificate_line(&w.certificate)
    );
    Output::ok(
        json!({
            "command": "witness",
            "pi1": p1.to_string(),
            "pi2": p2.to_string(),
            "s0": s0,
            "order": w.order,
            "pairs": pairs,
            "left": one_based(&w.left),
            "right": one_based(&w.right),
            "certificate": w.certificate,
        }),
        text,
    )
}

pub fn report_json(r: &Theorem12Report) -> Value {
    let contributions: Vec<Value> = r
        .contributions
        .iter()
        .map(|c| {
            json!({
                "k": c.k,
                "left": one_based(&c.left),
                "right": one_based(&c.right),
                "inverse_factor": c.inverse_factor,
                "inverse_factor_text": c.inverse_factor.to_string(),
                "skipped_by_strong_gp": c.skipped_by_strong_gp,
            })
        })
        .collect();
    json!({
        "pi1": r.pi1.to_string(),
        "pi2": r.pi2.to_string(),
        "lhs": r.lhs,
        "rhs": r.rhs,
        "lhs_text": r.lhs.to_string(),
        "rhs_text": r.rhs.to_string(),
        "equal": r.equal,
        "strong_general_position": r.strong_general_position,
        "contributions": contributions,
    })
}

pub fn verify(r: &Theorem12Report, quiet: bool) -> Output {
    let mut text = format!(
        "{}lhs = {}\nrhs = {}\nequal: {}",
        header(&r.pi1, &r.pi2),
        r.lhs,
        r.rhs,
        r.equal
    );
    if !quiet || !r.equal {
        for c in &r.contributions {
            let _ = write!(
                text,
                "\n  k={} I={} J={}: {}",
                c.k,
                set(&c.left),
                set(&c.right),
                c.inverse_factor
            );
        }
    }
    let mut json = report_json(r);
    json["command"] = json!("verify-lcm");
    Output {
        json,
        text,
        verified_false: !r.equal,
    }
}

pub fn derivative(p: &PrincipalSeries, d: &DerivativeDecomposition) -> Output {
    let mut text = format!(
        "pi = {p}\nderivative of order {}: {} components",
        d.order,
        d.components.len()
    );
    for c in &d.components {
        let _ = write!(text, "\n  {}: {}", set(&c.indices), c.series);
    }
    let components: Vec<Value> = d
        .components
        .iter()
        .map(|c| json!({"indices": one_based(&c.indices), "series": c.series.to_string()}))
        .collect();
    Output::ok(
        json!({"command": "derivative", "pi": p.to_string(), "k": d.order, "components": components}),
        text,
    )
}

pub fn tate(
    c1: &rslab::CharacterGL1,
    c2: &rslab::CharacterGL1,
    deg: u32,
    s: ComplexFloat,
    numeric: ComplexFloat,
    closed: ComplexFloat,
) -> Output {
    let abs_err = (numeric - closed).norm();
    let rel_err = (closed.norm() > 0.0).then(|| abs_err / closed.norm());
    let err_line = match rel_err {
        Some(r) => format!("rel err     = {r:.3e}"),
        None => format!("abs err     = {abs_err:.3e} (closed form vanishes by parity)"),
    };
    let text = format!(
        "c1 = {c1}, c2 = {c2}, j = {deg}, s = {}\nquadrature  = {}\nclosed form = {}\n{err_line}",
        show(s),
        show(numeric),
        show(closed)
    );
    Output::ok(
        json!({
            "command": "tate",
            "c1": c1.to_string(),
            "c2": c2.to_string(),
            "deg": deg,
            "s": complex(s),
            "quadrature": complex(numeric),
            "closed_form": complex(closed),
            "abs_err": abs_err,
            "rel_err": rel_err,
        }),
        text,
    )
}
