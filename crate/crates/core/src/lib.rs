//! Truncated bosonic Fock-space calculus over a finite-dimensional complex
//! Hilbert space `V ≅ C^d`.
//!
//! The crate builds up, in layers:
//!
//! - [`hilbert`] — the base space: inner product, symplectic form
//!   `Ω = Im⟨·|·⟩`, real-linear maps split into complex-linear and antilinear
//!   parts, and symmetric antilinear operators.
//! - [`symalg`] — the symmetric algebra `SV` truncated at a total degree, its
//!   canonical (permanent-type) inner product, creation/annihilation
//!   operators, and antilinear functionals on `SV` with their convolution
//!   product.
//! - [`complexify`] — the complexification `V_C = V₊ ⊕ V₋` realized as
//!   `C^{2d}`, the `±` embeddings on vectors and polynomials, the star
//!   involution, and the doubling `V ⊕ V` used for antilinear maps.
//! - [`gaussian`] — quadratic functionals, Gaussian functionals `e^Z` built
//!   by moment recursion, and their closed-form norms.
//! - [`kernel`] — the correspondence between functionals on `SV_C` and
//!   operators `SV → SV′`, with adjoints, creator/annihilator composition
//!   rules, and the antilinear variant over `S(V ⊕ V)`.
//! - [`metaplectic`] — Gaussian kernels implementing symplectic and
//!   antisymplectic maps, Shale normalization, coherent-state matrix
//!   elements, and uniqueness of the implementing kernel.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to use concurrently without coordination.

pub mod complexify;
pub mod error;
pub mod gaussian;
pub mod hilbert;
pub mod kernel;
pub mod metaplectic;
pub mod sampling;
pub mod selftest;
pub mod symalg;

pub use error::{FockError, FockResult};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Default tolerance for structural checks (symmetry, symplecticity, the
/// block identities relating a map and its inverse).
pub const DEFAULT_TOL: f64 = 1e-10;

/// Hard cap on truncation degrees accepted by constructors that take one.
pub const MAX_TRUNC: u32 = 64;
