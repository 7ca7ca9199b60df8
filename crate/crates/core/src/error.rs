use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum FockError {
    /// Two objects that must live over the same space do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Two truncated objects that must share a truncation degree do not.
    #[error("truncation mismatch: expected {expected}, got {got}")]
    TruncationMismatch { expected: u32, got: u32 },

    /// A degree-raising operation would push coefficients past the
    /// truncation degree. Use the `_dropping` variant to clip instead.
    #[error("result exceeds truncation degree {trunc}")]
    TruncationOverflow { trunc: u32 },

    /// A requested truncation degree is out of the supported range.
    #[error("truncation degree {got} out of range (max {max})")]
    TruncationOutOfRange { got: u32, max: u32 },

    /// An empty or zero-dimensional space was requested.
    #[error("dimension must be at least 1")]
    ZeroDimension,

    /// A matrix that must be symmetric (as a matrix, entrywise) is not.
    #[error("matrix not symmetric: residual {residual:.3e} exceeds {tol:.3e}")]
    NotSymmetric { residual: f64, tol: f64 },

    /// A symmetric antilinear operator used as a Gaussian exponent must have
    /// operator norm strictly below one.
    #[error("operator norm {norm} is not strictly below 1")]
    NormTooLarge { norm: f64 },

    /// A map or matrix that must be invertible is singular.
    #[error("singular map: {context}")]
    Singular { context: &'static str },

    /// A map failed the symplectic (or antisymplectic) condition on Ω.
    #[error("map is not {kind}: Ω-residual {residual:.3e} exceeds {tol:.3e}")]
    NotSymplectic {
        kind: &'static str,
        residual: f64,
        tol: f64,
    },

    /// A functional that must be concentrated in one degree has support
    /// elsewhere.
    #[error("functional not concentrated in degree {degree}")]
    DegreeConcentration { degree: u32 },

    /// A quantity that must be real came out with a significant imaginary
    /// part; signals a symmetry violation upstream.
    #[error("value should be real: imaginary residue {imag:.3e}")]
    NotReal { imag: f64 },

    /// Operation requires the other kind of Ω-map (symplectic vs
    /// antisymplectic).
    #[error("operation requires a {expected} map")]
    WrongKind { expected: &'static str },

    /// Structural identity between derived quantities failed; signals
    /// inconsistent conventions and aborts the construction.
    #[error("internal consistency check failed: {context} (residual {residual:.3e})")]
    Inconsistent {
        context: &'static str,
        residual: f64,
    },
}

pub type FockResult<T> = Result<T, FockError>;
