//! The base space `V ≅ C^d`: inner product, symplectic form, real-linear
//! maps split into complex-linear and antilinear parts, and symmetric
//! antilinear operators.
//!
//! Conventions, fixed once for the whole crate:
//!
//! - the inner product is antilinear in the **first** slot,
//!   `⟨x|y⟩ = Σ_j conj(x_j) y_j`;
//! - the symplectic form is `Ω(x,y) = Im⟨x|y⟩`, so that
//!   `⟨x|y⟩ = Ω(x,Jy) + iΩ(x,y)` with `J` = multiplication by `i`;
//! - a real-linear map acts as `v ↦ C v + A conj(v)`; antilinear operators
//!   are stored as the matrix multiplying the conjugated coordinate vector,
//!   which turns the symmetry condition `⟨y|Zx⟩ = ⟨x|Zy⟩` into the literal
//!   matrix condition `M = Mᵀ`.

use nalgebra::{DMatrix, DVector};

use crate::error::{FockError, FockResult};
use crate::C64;

/// A vector in `V ≅ C^d`, coordinates in the fixed orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct HVector {
    entries: DVector<C64>,
}

impl HVector {
    pub fn new(entries: Vec<C64>) -> FockResult<Self> {
        if entries.is_empty() {
            return Err(FockError::ZeroDimension);
        }
        Ok(Self {
            entries: DVector::from_vec(entries),
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            entries: DVector::zeros(dim),
        }
    }

    /// The basis vector `e_j` (0-indexed).
    pub fn basis(dim: usize, j: usize) -> Self {
        let mut entries = DVector::zeros(dim);
        entries[j] = C64::new(1.0, 0.0);
        Self { entries }
    }

    pub fn from_vector(entries: DVector<C64>) -> Self {
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, j: usize) -> C64 {
        self.entries[j]
    }

    pub fn entries(&self) -> &DVector<C64> {
        &self.entries
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            entries: &self.entries * c,
        }
    }

    pub fn add(&self, other: &Self) -> FockResult<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self {
            entries: &self.entries + &other.entries,
        })
    }

    pub fn sub(&self, other: &Self) -> FockResult<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self {
            entries: &self.entries - &other.entries,
        })
    }

    pub fn conjugated(&self) -> Self {
        Self {
            entries: self.entries.map(|c| c.conj()),
        }
    }

    pub fn norm(&self) -> f64 {
        self.entries.norm()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.entries - &other.entries)
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

fn check_dim(expected: usize, got: usize) -> FockResult<()> {
    if expected == got {
        Ok(())
    } else {
        Err(FockError::DimensionMismatch { expected, got })
    }
}

/// `⟨x|y⟩ = Σ_j conj(x_j) y_j`, antilinear in the first slot.
pub fn inner(x: &HVector, y: &HVector) -> FockResult<C64> {
    check_dim(x.dim(), y.dim())?;
    Ok(x.entries
        .iter()
        .zip(y.entries.iter())
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Real symplectic form `Ω(x,y) = Im⟨x|y⟩`.
pub fn omega(x: &HVector, y: &HVector) -> FockResult<f64> {
    Ok(inner(x, y)?.im)
}

/// Whether a map preserves or negates `Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Symplectic,
    Antisymplectic,
}

impl MapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MapKind::Symplectic => "symplectic",
            MapKind::Antisymplectic => "antisymplectic",
        }
    }

    /// Sign of the Ω-condition: `Ω(gx, gy) = sign · Ω(x,y)`.
    pub fn sign(self) -> f64 {
        match self {
            MapKind::Symplectic => 1.0,
            MapKind::Antisymplectic => -1.0,
        }
    }
}

/// A real-linear operator on `V`, stored as its complex-linear part `C` and
/// antilinear part `A`; the action is `v ↦ C v + A conj(v)`.
///
/// For a map `g` these parts are `C_g = ½(g − JgJ)` and `A_g = ½(g + JgJ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealLinearMap {
    c: DMatrix<C64>,
    a: DMatrix<C64>,
}

impl RealLinearMap {
    pub fn new(c: DMatrix<C64>, a: DMatrix<C64>) -> FockResult<Self> {
        if c.nrows() == 0 {
            return Err(FockError::ZeroDimension);
        }
        if !c.is_square() || !a.is_square() {
            return Err(FockError::DimensionMismatch {
                expected: c.nrows(),
                got: c.ncols().max(a.ncols()),
            });
        }
        check_dim(c.nrows(), a.nrows())?;
        Ok(Self { c, a })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            c: DMatrix::identity(dim, dim),
            a: DMatrix::zeros(dim, dim),
        }
    }

    /// The canonical conjugation `v ↦ conj(v)` (antisymplectic).
    pub fn conjugation(dim: usize) -> Self {
        Self {
            c: DMatrix::zeros(dim, dim),
            a: DMatrix::identity(dim, dim),
        }
    }

    /// Mode-diagonal squeeze: `C = diag(cosh r_j)`, `A = diag(sinh r_j)`.
    pub fn squeeze(params: &[f64]) -> Self {
        let d = params.len();
        let c = DMatrix::from_fn(d, d, |i, j| {
            if i == j {
                C64::new(params[i].cosh(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let a = DMatrix::from_fn(d, d, |i, j| {
            if i == j {
                C64::new(params[i].sinh(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self { c, a }
    }

    /// A complex-linear map (`A = 0`); symplectic iff the matrix is unitary.
    pub fn from_complex(c: DMatrix<C64>) -> Self {
        let d = c.nrows();
        Self {
            c,
            a: DMatrix::zeros(d, d),
        }
    }

    pub fn dim(&self) -> usize {
        self.c.nrows()
    }

    /// The complex-linear part `C_g = ½(g − JgJ)` as a matrix.
    pub fn complex_part(&self) -> &DMatrix<C64> {
        &self.c
    }

    /// The antilinear part `A_g = ½(g + JgJ)` as the matrix multiplying the
    /// conjugated coordinate vector.
    pub fn antilinear_part(&self) -> &DMatrix<C64> {
        &self.a
    }

    pub fn apply(&self, v: &HVector) -> FockResult<HVector> {
        check_dim(self.dim(), v.dim())?;
        let conj_v = v.entries.map(|c| c.conj());
        Ok(HVector::from_vector(&self.c * v.entries() + &self.a * conj_v))
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> FockResult<Self> {
        check_dim(self.dim(), other.dim())?;
        let c = &self.c * &other.c + &self.a * other.a.map(|x| x.conj());
        let a = &self.c * &other.a + &self.a * other.c.map(|x| x.conj());
        Ok(Self { c, a })
    }

    /// Inverse as a real-linear map.
    ///
    /// Works through the 2d×2d complexification `[[C, A], [conj A, conj C]]`
    /// acting on `(v, conj v)`; that block form is closed under inversion.
    pub fn invert(&self) -> FockResult<Self> {
        let d = self.dim();
        let mut block = DMatrix::zeros(2 * d, 2 * d);
        block.view_mut((0, 0), (d, d)).copy_from(&self.c);
        block.view_mut((0, d), (d, d)).copy_from(&self.a);
        block
            .view_mut((d, 0), (d, d))
            .copy_from(&self.a.map(|x| x.conj()));
        block
            .view_mut((d, d), (d, d))
            .copy_from(&self.c.map(|x| x.conj()));
        let inv = block.lu().try_inverse().ok_or(FockError::Singular {
            context: "real-linear map has singular realification",
        })?;
        let c = inv.view((0, 0), (d, d)).into_owned();
        let a = inv.view((0, d), (d, d)).into_owned();
        Ok(Self { c, a })
    }

    /// Maximum deviation of `Ω(g e_a, g e_b)` from `sign · Ω(e_a, e_b)` over
    /// the real basis `{e_j, i·e_j}`.
    pub fn omega_residual(&self, kind: MapKind) -> f64 {
        let d = self.dim();
        let real_basis: Vec<HVector> = (0..d)
            .map(|j| HVector::basis(d, j))
            .chain((0..d).map(|j| HVector::basis(d, j).scale(C64::new(0.0, 1.0))))
            .collect();
        let images: Vec<HVector> = real_basis
            .iter()
            .map(|v| self.apply(v).expect("dimensions checked"))
            .collect();
        let mut worst: f64 = 0.0;
        for (x, gx) in real_basis.iter().zip(&images) {
            for (y, gy) in real_basis.iter().zip(&images) {
                let lhs = omega(gx, gy).expect("dimensions checked");
                let rhs = kind.sign() * omega(x, y).expect("dimensions checked");
                worst = worst.max((lhs - rhs).abs());
            }
        }
        worst
    }

    pub fn is_symplectic(&self, tol: f64) -> bool {
        self.omega_residual(MapKind::Symplectic) <= tol
    }

    pub fn is_antisymplectic(&self, tol: f64) -> bool {
        self.omega_residual(MapKind::Antisymplectic) <= tol
    }
}

/// A symmetric antilinear operator `Z` on `C^n`, acting as `Z v = M conj(v)`
/// with `M = Mᵀ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymAntilinear {
    m: DMatrix<C64>,
}

impl SymAntilinear {
    /// Wrap a matrix, enforcing symmetry to within `tol` (max entry of
    /// `M − Mᵀ`).
    pub fn new(m: DMatrix<C64>, tol: f64) -> FockResult<Self> {
        if m.nrows() == 0 {
            return Err(FockError::ZeroDimension);
        }
        if !m.is_square() {
            return Err(FockError::DimensionMismatch {
                expected: m.nrows(),
                got: m.ncols(),
            });
        }
        let residual = symmetry_residual(&m);
        if residual > tol {
            return Err(FockError::NotSymmetric { residual, tol });
        }
        Ok(Self { m })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            m: DMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn apply(&self, v: &HVector) -> FockResult<HVector> {
        check_dim(self.dim(), v.dim())?;
        Ok(HVector::from_vector(&self.m * v.entries().map(|c| c.conj())))
    }

    /// Antilinear operator norm = largest singular value of `M`.
    pub fn spectral_norm(&self) -> f64 {
        self.m
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }
}

/// Max-entry residual of `M − Mᵀ`.
pub fn symmetry_residual(m: &DMatrix<C64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..i {
            worst = worst.max((m[(i, j)] - m[(j, i)]).norm());
        }
    }
    worst
}

/// Max-entry absolute difference of two matrices.
pub fn matrix_residual(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// The symmetric antilinear operator `Z_g` associated with an
/// (anti)symplectic `g`:
///
/// - symplectic: `Z_g = C_g⁻¹ A_g`, matrix `C⁻¹ A`;
/// - antisymplectic: `Z_g = A_g⁻¹ C_g`, matrix `conj(A⁻¹ C)` (the inverse of
///   an antilinear operator is antilinear).
///
/// Verifies symmetry and, for the symplectic kind, the identities relating
/// `g` and `g⁻¹`:
/// `C_{g⁻¹}⁻¹ = Z_{g⁻¹} A_g + C_g` and `Z_{g⁻¹} C_g = −C_g Z_g`,
/// both as matrix identities to within `tol`.
pub fn z_of(g: &RealLinearMap, kind: MapKind, tol: f64) -> FockResult<SymAntilinear> {
    let omega_res = g.omega_residual(kind);
    if omega_res > tol {
        return Err(FockError::NotSymplectic {
            kind: kind.as_str(),
            residual: omega_res,
            tol,
        });
    }
    let z = z_matrix(g, kind)?;
    let sym = SymAntilinear::new(z, tol)?;

    if kind == MapKind::Symplectic {
        let g_inv = g.invert()?;
        let z_ginv = z_matrix(&g_inv, kind)?;
        let c_ginv_inv = g_inv
            .complex_part()
            .clone()
            .lu()
            .try_inverse()
            .ok_or(FockError::Singular {
                context: "complex-linear part of inverse map",
            })?;
        // C_{g⁻¹}⁻¹ = Z_{g⁻¹} A_g + C_g, where Z_{g⁻¹}∘A_g is complex-linear
        // with matrix M_{g⁻¹}·conj(A_g).
        let lhs = &c_ginv_inv;
        let rhs = &z_ginv * g.antilinear_part().map(|x| x.conj()) + g.complex_part();
        let r1 = matrix_residual(lhs, &rhs);
        if r1 > tol {
            return Err(FockError::Inconsistent {
                context: "C_{g⁻¹}⁻¹ = Z_{g⁻¹} A_g + C_g",
                residual: r1,
            });
        }
        // Z_{g⁻¹} C_g = −C_g Z_g: both sides antilinear, matrices
        // M_{g⁻¹}·conj(C_g) and −C_g·M_g.
        let lhs2 = &z_ginv * g.complex_part().map(|x| x.conj());
        let rhs2 = -(g.complex_part() * sym.matrix());
        let r2 = matrix_residual(&lhs2, &rhs2);
        if r2 > tol {
            return Err(FockError::Inconsistent {
                context: "Z_{g⁻¹} C_g = −C_g Z_g",
                residual: r2,
            });
        }
    }
    Ok(sym)
}

fn z_matrix(g: &RealLinearMap, kind: MapKind) -> FockResult<DMatrix<C64>> {
    match kind {
        MapKind::Symplectic => {
            let c_inv = g
                .complex_part()
                .clone()
                .lu()
                .try_inverse()
                .ok_or(FockError::Singular {
                    context: "complex-linear part of symplectic map",
                })?;
            Ok(c_inv * g.antilinear_part())
        }
        MapKind::Antisymplectic => {
            let a_inv = g
                .antilinear_part()
                .clone()
                .lu()
                .try_inverse()
                .ok_or(FockError::Singular {
                    context: "antilinear part of antisymplectic map",
                })?;
            Ok((a_inv * g.complex_part()).map(|x| x.conj()))
        }
    }
}
