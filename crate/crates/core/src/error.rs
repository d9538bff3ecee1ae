use num_complex::Complex64;
use thiserror::Error;

use crate::arith::GaussianRational;
use crate::character::GeneralPositionViolation;
use crate::dsl::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("principal series must have at least one character")]
    EmptyPrincipalSeries,

    #[error("length mismatch: {left} against {right} characters")]
    LengthMismatch { left: usize, right: usize },

    #[error("{which} is not in general position: {violation}")]
    NotGeneralPosition {
        which: &'static str,
        violation: GeneralPositionViolation,
    },

    #[error("pair is not in strong general position: {reason}")]
    NotStrongGeneralPosition { reason: String },

    #[error("{s0} is not in P_ex: {reason}")]
    NotExceptional {
        s0: GaussianRational,
        reason: CertificateFailure,
    },

    #[error("{s0} is not a pole of L(s, pi1 x pi2)")]
    NotAPole { s0: GaussianRational },

    #[error("derivative order {k} out of range for n = {n} (need 0 <= k < n)")]
    DerivativeOrder { k: usize, n: usize },

    #[error("lcm input {index} has a positive exponent at shift {shift}; only inverse products are allowed")]
    PositiveExponent {
        index: usize,
        shift: GaussianRational,
    },

    #[error("lcm of an empty family is undefined")]
    EmptyLcm,

    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Why a candidate point failed the multi-index matching test.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateFailure {
    #[error("no character of pi1 pairs with chi_{j} to sgn^l |.|^-(l+s0)", j = .j + 1)]
    NoMatch { j: usize },
    #[error("mu_{i} x chi_{j} would need level l = {level} < 0", i = .i + 1, j = .j + 1)]
    NegativeLevel { i: usize, j: usize, level: i64 },
    #[error("characters of pi1 matched twice; pairing is not a bijection")]
    NotBijective,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("evaluation point {point} lies within 1e-9 of the pole {pole}")]
    NearPole { point: Complex64, pole: Complex64 },
    #[error("Tate integral diverges: Re(s + s1 + s2 + j) = {0} <= 0")]
    Divergent(f64),
    #[error("non-finite value while evaluating at {0}")]
    NonFinite(Complex64),
}
