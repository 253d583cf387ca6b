//! Crate-wide error type for the math kernels.
//!
//! The expression language has its own error enum with source positions; see
//! [`crate::expr::ExprError`]. Everything else reports through [`Error`].

use thiserror::Error;

use crate::algebra::Signature;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Components must be finite; NaN and infinities are rejected at construction.
    #[error("non-finite components ({x}, {y})")]
    NonFinite { x: f64, y: f64 },

    /// `eps` outside {-1, 0, +1}.
    #[error("invalid signature eps = {eps}, expected -1, 0, or +1")]
    InvalidSignature { eps: i64 },

    /// Binary operations require both operands to share one signature.
    #[error("signature mismatch: {lhs:?} vs {rhs:?}")]
    SignatureMismatch { lhs: Signature, rhs: Signature },

    /// Determinant within the scale-aware singular cutoff of zero.
    #[error("singular element, det = {det:e}")]
    Singular { det: f64 },

    /// Operation defined for one signature only.
    #[error("{op} requires {required:?} signature, got {got:?}")]
    UnsupportedSignature {
        op: &'static str,
        required: Signature,
        got: Signature,
    },

    /// Argument outside the operation's domain.
    #[error("{op}: {message}")]
    Domain { op: &'static str, message: String },

    /// Principal argument is undefined at the origin.
    #[error("argument undefined at 0")]
    UndefinedArg,

    /// Zero-divisor partner requested for an element off the null cone.
    #[error("not a nonzero null-cone element, det = {det:e}")]
    NotNull { det: f64 },

    /// Ideal power requested off the lines y = x and y = -x.
    #[error("({x}, {y}) is not on a diagonal line y = x or y = -x")]
    NotOnDiagonal { x: f64, y: f64 },

    /// Geometric series limit requires 1-norm strictly below one.
    #[error("1-norm {norm} is not < 1, the series need not converge")]
    NormTooLarge { norm: f64 },

    /// Matrix does not match the representation shape for the signature.
    #[error("matrix does not match the {expected:?} representation shape")]
    ShapeError { expected: Signature },

    /// Operator signature and signal kind do not pair.
    #[error("kind mismatch: expected {expected}, got {got}")]
    KindMismatch {
        expected: &'static str,
        got: &'static str,
    },

    /// Difference quotient requested along a null direction of the signature.
    #[error("direction phi = {phi} is too close to a null direction")]
    NullDirection { phi: f64 },

    /// Closed-contour operation on an open contour.
    #[error("contour is not closed")]
    NotClosed,

    /// Integrand failed or produced a non-finite value during integration.
    #[error("integrand failed at parameter t = {t}: {message}")]
    Evaluation { t: f64, message: String },

    /// Signal construction rejected the sample vector.
    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    /// Grid construction rejected the geometry or component arrays.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Contour construction rejected the segment list.
    #[error("invalid contour: {0}")]
    InvalidContour(String),

    /// Quadrature parameters out of range.
    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),
}
