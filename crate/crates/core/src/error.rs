use crate::classes::ClassLabel;

/// Errors produced by the library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A component list violates a minor or major index symmetry.
    #[error("asymmetric components: {identity}")]
    AsymmetricComponents { identity: String },

    /// A 6×6 matrix handed in as a Kelvin matrix is not symmetric.
    #[error("kelvin matrix asymmetric: |K[{row}][{col}] - K[{col}][{row}]| = {delta:e}")]
    AsymmetricKelvin { row: usize, col: usize, delta: f64 },

    /// A 3×3 matrix is not a proper rotation.
    #[error("not a rotation matrix: {reason}")]
    NotARotation { reason: String },

    /// Rotation axis with near-zero norm.
    #[error("degenerate rotation axis: |v| = {norm:e}")]
    DegenerateAxis { norm: f64 },

    /// Singular or ill-conditioned matrix; carries the smallest singular value.
    #[error("singular or ill-conditioned matrix: smallest singular value {smallest:e}")]
    Singular { smallest: f64 },

    /// A tensor fails a harmonic-type invariant by more than the scrub window.
    #[error("harmonic invariant violated ({what}): residual {residual:e}")]
    NotHarmonic { what: &'static str, residual: f64 },

    /// Symmetry detection could not decide between two candidate classes.
    #[error("ambiguous classification between {first} and {second}")]
    AmbiguousClass {
        first: ClassLabel,
        second: ClassLabel,
    },

    /// A class label outside the supported domain of an operation.
    #[error("unsupported class {0} for this operation")]
    UnsupportedClass(ClassLabel),

    /// A label not comparable within the elasticity poset.
    #[error("label {0} is outside the elasticity poset")]
    NotInPoset(ClassLabel),

    /// Malformed parameters (wrong count, non-finite values, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Orientation search exhausted its iteration budget on every start.
    #[error("optimisation did not converge; best residual {best:e}")]
    NoConvergence { best: f64 },

    /// Rejection sampling exhausted its budget.
    #[error("rejection sampling budget exhausted after {tries} tries")]
    RejectionBudget { tries: usize },

    /// A direction vector that must be unit length is not.
    #[error("not a unit vector: |n| = {0}")]
    NotUnit(f64),

    /// The quartic compliance form was non-positive along some direction.
    #[error("non-positive quartic form: value {0:e}")]
    IndefiniteCompliance(f64),
}

impl Error {
    /// True for errors caused by malformed input rather than numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::AsymmetricComponents { .. }
                | Error::AsymmetricKelvin { .. }
                | Error::NotARotation { .. }
                | Error::DegenerateAxis { .. }
                | Error::UnsupportedClass(_)
                | Error::NotInPoset(_)
                | Error::InvalidParameter(_)
                | Error::NotUnit(_)
        )
    }
}
