//! The complexification `V_C = V₊ ⊕ V₋` realized concretely as `C^{2d}`
//! (first block `V₊`, second block `V₋`), together with the doubling
//! `V ⊕ V` used by the antilinear kernel calculus.
//!
//! Coordinates are chosen so that all Gram matrices stay diagonal:
//! `plus(v)` carries the coordinates of `v` in the first block (isometric),
//! `minus(v)` carries the **conjugated** coordinates in the second block
//! (antiisometric). This is forced by `⟨x₊|y₊⟩ = ⟨x|y⟩`, `⟨x₋|y₋⟩ = ⟨y|x⟩`
//! and `V₊ ⊥ V₋`.

use nalgebra::DMatrix;

use crate::error::{FockError, FockResult};
use crate::hilbert::{HVector, SymAntilinear};
use crate::symalg::{DualTable, MultiIndex, PolyVector};
use crate::C64;

/// A monomial index over a doubled space, split into its two blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubledIndex {
    pub plus: MultiIndex,
    pub minus: MultiIndex,
}

impl DoubledIndex {
    pub fn new(plus: MultiIndex, minus: MultiIndex) -> Self {
        Self { plus, minus }
    }

    pub fn degree(&self) -> u32 {
        self.plus.degree() + self.minus.degree()
    }

    /// The flat `2d`-variable index.
    pub fn joined(&self) -> MultiIndex {
        self.plus.join(&self.minus)
    }

    pub fn from_joined(idx: &MultiIndex, d: usize) -> Self {
        let (plus, minus) = idx.split(d);
        Self { plus, minus }
    }
}

fn half_dim(nvars: usize) -> FockResult<usize> {
    if nvars == 0 || nvars % 2 != 0 {
        return Err(FockError::DimensionMismatch {
            expected: nvars + nvars % 2,
            got: nvars,
        });
    }
    Ok(nvars / 2)
}

/// `v ↦ v₊`: coordinates of `v` in the `+` block.
pub fn plus(v: &HVector) -> HVector {
    let d = v.dim();
    let mut entries = vec![C64::default(); 2 * d];
    for j in 0..d {
        entries[j] = v.get(j);
    }
    HVector::new(entries).expect("nonzero dimension")
}

/// `v ↦ v₋`: conjugated coordinates of `v` in the `−` block.
pub fn minus(v: &HVector) -> HVector {
    let d = v.dim();
    let mut entries = vec![C64::default(); 2 * d];
    for j in 0..d {
        entries[d + j] = v.get(j).conj();
    }
    HVector::new(entries).expect("nonzero dimension")
}

/// First inclusion `V → V ⊕ V` (linear, no conjugation).
pub fn inject1_vec(v: &HVector) -> HVector {
    plus(v)
}

/// Second inclusion `V → V ⊕ V` (linear, no conjugation).
pub fn inject2_vec(v: &HVector) -> HVector {
    let d = v.dim();
    let mut entries = vec![C64::default(); 2 * d];
    for j in 0..d {
        entries[d + j] = v.get(j);
    }
    HVector::new(entries).expect("nonzero dimension")
}

/// Isometric algebra embedding `SV → S(V₊)`: `e^α ↦ e₊^α`, coefficients
/// unchanged.
pub fn plus_poly(psi: &PolyVector) -> PolyVector {
    let d = psi.nvars();
    let mut out = PolyVector::new(2 * d, psi.trunc()).expect("valid source");
    let zero = MultiIndex::zero(d);
    for (a, c) in psi.iter() {
        out.set_coeff(a.join(&zero), *c).expect("degree preserved");
    }
    out
}

/// Antiisometric embedding `SV → S(V₋)`: `e^α ↦ e₋^α`, coefficients
/// conjugated.
pub fn minus_poly(phi: &PolyVector) -> PolyVector {
    let d = phi.nvars();
    let mut out = PolyVector::new(2 * d, phi.trunc()).expect("valid source");
    let zero = MultiIndex::zero(d);
    for (a, c) in phi.iter() {
        out.set_coeff(zero.join(a), c.conj()).expect("degree preserved");
    }
    out
}

/// First algebra embedding `SV → S(V ⊕ V)` (linear).
pub fn inject1(phi: &PolyVector) -> PolyVector {
    let d = phi.nvars();
    let mut out = PolyVector::new(2 * d, phi.trunc()).expect("valid source");
    let zero = MultiIndex::zero(d);
    for (a, c) in phi.iter() {
        out.set_coeff(a.join(&zero), *c).expect("degree preserved");
    }
    out
}

/// Second algebra embedding `SV → S(V ⊕ V)` (linear).
pub fn inject2(psi: &PolyVector) -> PolyVector {
    let d = psi.nvars();
    let mut out = PolyVector::new(2 * d, psi.trunc()).expect("valid source");
    let zero = MultiIndex::zero(d);
    for (a, c) in psi.iter() {
        out.set_coeff(zero.join(a), *c).expect("degree preserved");
    }
    out
}

/// The star involution on `SV_C`: conjugation swaps the blocks,
/// `e₊^α e₋^β ↦ e₊^β e₋^α`, with coefficient conjugation.
pub fn conj_star(theta: &PolyVector) -> FockResult<PolyVector> {
    let d = half_dim(theta.nvars())?;
    let mut out = PolyVector::new(theta.nvars(), theta.trunc())?;
    for (g, c) in theta.iter() {
        let (a, b) = g.split(d);
        out.add_to_coeff(b.join(&a), c.conj())?;
    }
    Ok(out)
}

/// The star involution passed to the antidual: `u*[(α,β)] = conj(u[(β,α)])`.
pub fn star_table(u: &DualTable) -> FockResult<DualTable> {
    let d = half_dim(u.nvars())?;
    let mut out = DualTable::new(u.nvars(), u.trunc())?;
    for (g, v) in u.iter() {
        let (a, b) = g.split(d);
        out.set_value(b.join(&a), v.conj())?;
    }
    Ok(out)
}

/// The canonical conjugation of `V_C` as a symmetric antilinear operator:
/// in the `{e₊, e₋}` coordinates its matrix (acting on the conjugated
/// coordinate vector) is the block swap `[[0, I], [I, 0]]`.
pub fn preferred_quadratic(d: usize) -> SymAntilinear {
    let m = DMatrix::from_fn(2 * d, 2 * d, |i, j| {
        if i + d == j || j + d == i {
            C64::new(1.0, 0.0)
        } else {
            C64::default()
        }
    });
    SymAntilinear::new(m, 0.0).expect("block swap is symmetric")
}
