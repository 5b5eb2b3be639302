use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("antipodal degeneracy: |a + b| = {gap:e} (change the basepoint)")]
    AntipodalDegeneracy { gap: f64 },

    #[error("curve passes within {distance:e} of the pole (epsilon_pole = {epsilon:e})")]
    PoleProximity { distance: f64, epsilon: f64 },

    #[error("quadrature did not converge: residual {residual:e} > tol {tol:e} at max depth")]
    QuadratureNonConvergence { residual: f64, tol: f64 },

    #[error(
        "snap failure: raw value {raw} is {residual:e} from the nearest integer (tol {tol:e})"
    )]
    SnapFailure { raw: f64, residual: f64, tol: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected a tuple of {expected} words, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("holonomy images do not commute")]
    NotCommuting,

    #[error("bar complex too large: {size} tuples exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by a degenerate geometric configuration.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            Error::AntipodalDegeneracy { .. }
                | Error::PoleProximity { .. }
                | Error::QuadratureNonConvergence { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::AntipodalDegeneracy { .. } => "antipodal_degeneracy",
            Error::PoleProximity { .. } => "pole_proximity",
            Error::QuadratureNonConvergence { .. } => "quadrature_non_convergence",
            Error::SnapFailure { .. } => "snap_failure",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::NotACycle => "not_a_cycle",
            Error::NotCommuting => "not_commuting",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Invalid(_) => "invalid",
            Error::Parse(_) => "parse",
        }
    }
}
