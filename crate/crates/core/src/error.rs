use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A Table-1 parameter constraint failed during case validation.
    #[error("sigma = {case}: constraint `{constraint}` violated (alpha = {alpha}, beta = {beta})")]
    ConstraintViolation {
        case: &'static str,
        constraint: &'static str,
        alpha: f64,
        beta: f64,
    },

    /// Evaluation point outside the open orthogonality interval.
    #[error("s = {s} is outside the open interval ({lo}, {hi})")]
    OutOfDomain { s: f64, lo: f64, hi: f64 },

    /// Degree or basis index beyond the admissible spectral range.
    #[error("index {index} out of range: {bound}")]
    IndexOutOfRange { index: usize, bound: String },

    /// The requested weighted moment does not converge.
    #[error("moment of degree {degree} diverges (case requires degree < {limit})")]
    DivergentMoment { degree: usize, limit: f64 },

    /// A floating-point route lost too much accuracy to be trusted.
    #[error("numerical instability in {what}: residual {residual:.3e} exceeds {threshold:.3e}")]
    NumericalInstability {
        what: &'static str,
        residual: f64,
        threshold: f64,
    },

    /// An operator was applied to an associated function with the wrong kappa power.
    #[error("operator expects kappa-power {expected}, found {found}")]
    PowerMismatch { expected: usize, found: usize },

    /// Matrix dimensions do not match the operation.
    #[error("dimension mismatch: {detail}")]
    DimensionError { detail: String },

    /// Argument beyond the supported evaluation range.
    #[error("{what} out of supported range: {value} (limit {limit})")]
    Overflow {
        what: &'static str,
        value: f64,
        limit: f64,
    },

    /// Adaptive quadrature stopped short of the requested tolerance.
    #[error("quadrature missed tolerance: value {value:.9e}, error estimate {err_est:.3e}, target {target:.3e}")]
    IntegrationFailure {
        value: f64,
        err_est: f64,
        target: f64,
    },

    /// A series evaluation exceeded its term budget.
    #[error("series for {what} did not converge within {max_terms} terms")]
    ConvergenceFailure { what: &'static str, max_terms: usize },

    /// A truncated state failed its tail certificate.
    #[error("truncation tail bound violated: {detail}")]
    TruncationError { detail: String },

    /// The operation is not defined for the given sigma case.
    #[error("operation not defined for sigma = {case}: {detail}")]
    UnsupportedCase {
        case: &'static str,
        detail: &'static str,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
