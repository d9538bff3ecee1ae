//! Floating-point oracle.
//!
//! Nothing here decides an acceptance question on its own; the values are
//! cross-checks for the exact modules. `Γ_R` is evaluated through a Lanczos
//! `ln Γ` with reflection, products are accumulated in log space, and the
//! GL(1) Tate integral is computed by adaptive Gauss–Kronrod quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::character::CharacterGL1;
use crate::error::NumericError;
use crate::gamma::GammaProduct;

pub type ComplexFloat = Complex64;

/// Evaluation refuses points this close to a pole.
pub const POLE_GUARD: f64 = 1e-9;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// A branch of `ln Γ(z)`; only `exp` of sums of these is ever used.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        return Complex64::new(PI.ln(), 0.0) - (z * PI).sin().ln() - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        series += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + series.ln()
}

/// Nearest pole of `Γ_R` (a non-positive even integer) if `s` is within `POLE_GUARD`.
fn nearby_gamma_r_pole(s: Complex64) -> Option<f64> {
    let p = 2.0 * (s.re / 2.0).round();
    (p <= 0.0 && (s - p).norm() < POLE_GUARD).then_some(p)
}

pub fn ln_gamma_r(s: Complex64) -> Result<Complex64, NumericError> {
    if let Some(p) = nearby_gamma_r_pole(s) {
        return Err(NumericError::NearPole {
            point: s,
            pole: Complex64::new(p, 0.0),
        });
    }
    Ok(-0.5 * s * PI.ln() + ln_gamma(s / 2.0))
}

/// `Γ_R(s) = π^{-s/2} Γ(s/2)`.
pub fn gamma_r_eval(s: Complex64) -> Result<Complex64, NumericError> {
    finite(ln_gamma_r(s)?.exp(), s)
}

fn finite(v: Complex64, at: Complex64) -> Result<Complex64, NumericError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(NumericError::NonFinite(at))
    }
}

pub fn shift_to_complex(shift: &crate::arith::GaussianRational) -> Complex64 {
    let (re, im) = shift.to_f64_pair();
    Complex64::new(re, im)
}

/// `∏ Γ_R(s - a)^m`, summed in log space.
pub fn gp_eval(f: &GammaProduct, s: Complex64) -> Result<Complex64, NumericError> {
    let mut log = Complex64::new(0.0, 0.0);
    for (shift, exp) in f.factors() {
        let arg = s - shift_to_complex(shift);
        log += exp as f64
            * ln_gamma_r(arg).map_err(|e| match e {
                NumericError::NearPole { pole, .. } => NumericError::NearPole {
                    point: s,
                    pole: pole + shift_to_complex(shift),
                },
                other => other,
            })?;
    }
    finite(log.exp(), s)
}

/// Distance from `s` to the chain `{a - 2k : k ≥ 0}`.
fn distance_to_chain(s: Complex64, a: Complex64) -> f64 {
    let d = s - a;
    let k = (-d.re / 2.0).round().max(0.0);
    (d + 2.0 * k).norm()
}

/// Compares `f` and `g` numerically at `trials` seeded random points kept
/// away from every pole chain of either product.
pub fn symbolic_numeric_spotcheck(
    f: &GammaProduct,
    g: &GammaProduct,
    trials: usize,
    seed: u64,
) -> bool {
    const MARGIN: f64 = 0.05;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shifts: Vec<Complex64> = f
        .factors()
        .chain(g.factors())
        .map(|(a, _)| shift_to_complex(a))
        .collect();
    let mut done = 0;
    let mut attempts = 0;
    while done < trials {
        attempts += 1;
        if attempts > trials * 50 + 100 {
            return false;
        }
        let s = Complex64::new(rng.gen_range(-12.0..12.0), rng.gen_range(-6.0..6.0));
        if shifts.iter().any(|&a| distance_to_chain(s, a) < MARGIN) {
            continue;
        }
        let (Ok(fv), Ok(gv)) = (gp_eval(f, s), gp_eval(g, s)) else {
            continue;
        };
        let rel = (fv - gv).norm() / gv.norm().max(1e-300);
        if rel >= 1e-9 {
            return false;
        }
        done += 1;
    }
    true
}

// Gauss–Kronrod 7/15 on [-1, 1]; nodes listed from the outside in, centre last.
#[allow(clippy::excessive_precision)]
const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for GK_NODES[1], [3], [5], [7].
#[allow(clippy::excessive_precision)]
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn gauss_kronrod(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = Complex64::new(0.0, 0.0);
    let mut gauss = Complex64::new(0.0, 0.0);
    for (k, (&x, &wk)) in GK_NODES.iter().zip(&KRONROD_WEIGHTS).enumerate() {
        let pair = if x == 0.0 {
            f(centre)
        } else {
            f(centre - half * x) + f(centre + half * x)
        };
        kronrod += wk * pair;
        if k % 2 == 1 {
            gauss += GAUSS_WEIGHTS[k / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
    }
}

/// Globally adaptive Gauss–Kronrod: bisect the worst panel until the summed
/// error estimate is below `rel_tol · |I|` or the panel budget is spent.
pub fn integrate_adaptive(
    f: impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    initial_panels: usize,
    rel_tol: f64,
) -> Complex64 {
    const MAX_PANELS: usize = 20_000;
    let width = (b - a) / initial_panels as f64;
    let mut panels: Vec<Panel> = (0..initial_panels)
        .map(|k| gauss_kronrod(&f, a + k as f64 * width, a + (k + 1) as f64 * width))
        .collect();
    loop {
        let total: Complex64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= rel_tol * total.norm() || error < 1e-300 || panels.len() >= MAX_PANELS {
            return total;
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(k, _)| k)
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        panels.push(gauss_kronrod(&f, p.a, mid));
        panels.push(gauss_kronrod(&f, mid, p.b));
    }
}

/// `I(s, χ₁, χ₂, Φ) = ∫_{ℝ^×} χ₁χ₂(x) Φ(x) |x|^s d^×x` with `Φ(x) = x^j e^{-πx²}`.
///
/// With `x = ±e^t` each half line becomes `∫_ℝ e^{wt - πe^{2t}} dt`,
/// `w = s + s₁ + s₂ + j`; the negative half carries the sign
/// `(-1)^{ε₁+ε₂+j}`.
pub fn tate_integral_num(
    s: Complex64,
    c1: &CharacterGL1,
    c2: &CharacterGL1,
    j: u32,
) -> Result<Complex64, NumericError> {
    let w = s + shift_to_complex(c1.exponent()) + shift_to_complex(c2.exponent()) + j as f64;
    if w.re <= 0.0 || !w.re.is_finite() {
        return Err(NumericError::Divergent(w.re));
    }
    let integrand = |t: f64| (w * t - PI * (2.0 * t).exp()).exp();

    // Below t_lo the integrand is under e^{-50} of its tail scale; above t_hi
    // the Gaussian has killed it.
    let t_lo = -50.0 / w.re;
    let mut t_hi = 1.0f64;
    while PI * (2.0 * t_hi).exp() - w.re * t_hi < 60.0 {
        t_hi += 0.25;
    }
    let panels = ((t_hi - t_lo) / 2.0).ceil().clamp(8.0, 2000.0) as usize;
    let positive = integrate_adaptive(integrand, t_lo, t_hi, panels, 1e-11);
    let negative = if (c1.parity() as u32 + c2.parity() as u32 + j).is_multiple_of(2) {
        positive
    } else {
        -positive
    };
    finite(positive + negative, s)
}

/// Closed form of the Tate integral: `Γ_R(s + s₁ + s₂ + j)` for even total
/// parity, 0 for odd.
pub fn tate_closed_form(
    s: Complex64,
    c1: &CharacterGL1,
    c2: &CharacterGL1,
    j: u32,
) -> Result<Complex64, NumericError> {
    if (c1.parity() as u32 + c2.parity() as u32 + j) % 2 == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let w = s + shift_to_complex(c1.exponent()) + shift_to_complex(c2.exponent()) + j as f64;
    gamma_r_eval(w)
}
