//! Exact calculus for archimedean Rankin–Selberg L-factors of pairs of
//! GL_n(ℝ) principal series.
//!
//! A principal series is a list of characters `sgn^ε |·|^s` of ℝ^× with
//! Gaussian-rational exponents. Everything symbolic (pair L-factors, pole
//! chains, exceptional poles, lcm of inverse Γ_R products) is exact; the
//! [`numeric`] module only cross-checks.
//!
//! ```
//! use rslab::{dsl::parse_principal_series, exceptional_poles, pair_l_function};
//!
//! let pi1 = parse_principal_series("ps[sgn^1 * |.|^(-4/3), sgn^1 * |.|^(1/2)]").unwrap();
//! let pi2 = parse_principal_series("ps[|.|^(1/3), sgn^1 * |.|^(-1/2)]").unwrap();
//! assert_eq!(
//!     pair_l_function(&pi1, &pi2).unwrap().to_string(),
//!     "Γ_R(s+11/6)·Γ_R(s)^2·Γ_R(s-11/6)"
//! );
//! assert_eq!(exceptional_poles(&pi1, &pi2).unwrap(), vec![0.into()]);
//! ```

// Errors carry exact values (points, spans) by design.
#![allow(clippy::result_large_err)]

pub mod arith;
pub mod character;
pub mod derivative;
pub mod dsl;
pub mod error;
pub mod gamma;
pub mod numeric;
pub mod rankin_selberg;
pub mod suite;

#[cfg(test)]
mod testing;

pub use arith::{qc_add, GaussianRational, Rational};
pub use character::{
    algebraic_twist, char_dual, char_mul, is_general_position, is_strong_general_position,
    l_factor, shared_pole_pair, CharacterGL1, GeneralPositionViolation, PrincipalSeries,
};
pub use derivative::{
    derivative, gl1_pole_membership, index_subsets, strong_gp_contributions, verify_theorem_1_2,
    Contribution, DerivativeComponent, DerivativeDecomposition, ShortcutCheck, Theorem12Report,
};
pub use dsl::{parse_character, parse_gaussian, parse_principal_series, ParseError, SourceSpan};
pub use error::{CertificateFailure, Error, NumericError, Result};
pub use gamma::{
    gp_inverse, gp_mul, lcm_inverse_products, ord_at, pole_chains, GammaProduct, PoleChain,
};
pub use numeric::{
    gamma_r_eval, gp_eval, symbolic_numeric_spotcheck, tate_closed_form, tate_integral_num,
    ComplexFloat,
};
pub use rankin_selberg::{
    enumerate_multi_indices, exceptional_certificate, exceptional_l_factor,
    exceptional_lattice_slice, exceptional_poles, pair_factor_table, pair_l_function,
    pole_order_witness, sympower_graded_series, validate_certificate, ExceptionalCertificate,
    MultiIndex, PairFactor, PoleWitness,
};
