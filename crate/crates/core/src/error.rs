use num_complex::Complex64;
use thiserror::Error;

use crate::Mat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("evaluation point {z} lies within {eps:e} of the pole {pole}")]
    PoleProximity { z: Complex64, pole: Complex64, eps: f64 },

    #[error("evaluation point {z} lies on the branch cut (-inf, 0]")]
    BranchCutViolation { z: Complex64 },

    #[error("model `{kind}` carries no continuation formula for the negative axis")]
    NoBoundaryFormula { kind: &'static str },

    #[error("pole {0} is real; poles must lie off the real axis")]
    RealPole(Complex64),

    #[error("quadrature did not reach tolerance (estimated error {error:e} after {intervals} subintervals)")]
    QuadratureFailure { error: f64, intervals: usize },

    #[error("Livsic matrix is singular at {0}: embedded stable eigenvalue")]
    SingularLivsic(Complex64),

    #[error("point {z} is closer to the real axis than the local node spacing {spacing:e}")]
    TooCloseToAxis { z: Complex64, spacing: f64 },

    #[error("vector has a pole in the upper half plane; it is not in H2+")]
    NotHardyPlus,

    #[error("vector has a pole in the lower half plane; it is not in H2-")]
    NotHardyMinus,

    #[error("finite section basis of {0} vectors is too small")]
    BasisTooSmall(usize),

    #[error("evolution time must be nonnegative, got {0}")]
    NegativeTime(f64),

    #[error("vector is not in the domain of the generator")]
    NotInDomain,

    #[error("contour passes through a zero or pole near {0}")]
    ContourThroughPole(Complex64),

    #[error("argument principle counted {counted} poles but refinement found {found}")]
    CountMismatch { counted: i64, found: usize },

    #[error("contour around {0} encloses another singularity")]
    ContourContamination(Complex64),

    #[error("pole at {zeta} has order {order}; the full principal part is attached")]
    HigherOrderPole {
        zeta: Complex64,
        order: usize,
        principal_part: Vec<Mat>,
    },

    #[error("model has no finite pole list in the searched region")]
    InfinitePoles,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid model description: {0}")]
    InvalidModel(String),

    #[error("operation `{op}` is not available for model `{kind}`")]
    Unsupported { op: &'static str, kind: &'static str },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
