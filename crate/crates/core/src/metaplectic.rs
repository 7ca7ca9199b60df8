//! Gaussian kernels implementing symplectic and antisymplectic maps.
//!
//! For symplectic `g` the implementing kernel is `u_g = e^Z` where the
//! symmetric antilinear `Z` on `V_C` acts by
//!
//! ```text
//! Z(v₊) = (C_g⁻¹ v)₋ + (Z_{g⁻¹} v)₊
//! Z(v₋) = (C_{g⁻¹}⁻¹ v)₊ + (Z_g v)₋
//! ```
//!
//! In the `{e₊, e₋}` coordinates (with antilinear operators stored as the
//! matrix on the conjugated coordinate vector) these two rules force the
//! block matrix
//!
//! ```text
//! M_Z = [ M_{g⁻¹}        C_{g⁻¹}⁻¹  ]
//!       [ conj(C_g⁻¹)    conj(M_g)  ]
//! ```
//!
//! whose symmetry encodes `C_{g⁻¹} = C_g†`. The assembly is re-verified at
//! runtime against the two displayed rules on sample vectors; coordinate
//! conventions are the one place a silent sign error could creep in.
//!
//! The antisymplectic variant lives over `V ⊕ V` with
//!
//! ```text
//! Z(v₁) = (Z_g v)₁ + (A_{g⁻¹}⁻¹ v)₂
//! Z(v₂) = (A_g⁻¹ v)₁ + (Z_{g⁻¹} v)₂
//! ```
//!
//! and block matrix `[[M_g, conj(A_g⁻¹)], [conj(A_{g⁻¹}⁻¹), M_{g⁻¹}]]`.
//!
//! Throughout, `C_g v` is the matrix-vector product `C·v` while `A_g v` is
//! the antilinear action `A·conj(v)`.

use nalgebra::DMatrix;

use crate::complexify::{inject1_vec, inject2_vec, minus, plus};
use crate::error::{FockError, FockResult};
use crate::gaussian::gaussian_table;
use crate::hilbert::{inner, symmetry_residual, z_of, HVector, MapKind, RealLinearMap, SymAntilinear};
use crate::kernel::{apply_kernel, AntiKernel, Kernel};
use crate::symalg::{
    annihilator, coherent, creator, dual_annihilator, dual_creator, factorial, indices_up_to,
    DualTable, MonomialBasis, MultiIndex, PolyVector,
};
use crate::C64;

/// A validated (anti)symplectic map with the derived data the kernel
/// construction needs: `g⁻¹`, `Z_g`, `Z_{g⁻¹}`, and the inverted
/// complex-linear (or antilinear) parts.
#[derive(Clone, Debug)]
pub struct SymplecticPack {
    g: RealLinearMap,
    g_inv: RealLinearMap,
    kind: MapKind,
    z_g: SymAntilinear,
    z_ginv: SymAntilinear,
    // symplectic kind: C_g⁻¹ and C_{g⁻¹}⁻¹
    c_inv: Option<DMatrix<C64>>,
    c_ginv_inv: Option<DMatrix<C64>>,
    // antisymplectic kind: A_g⁻¹ and A_{g⁻¹}⁻¹ (matrix inverses)
    a_inv: Option<DMatrix<C64>>,
    a_ginv_inv: Option<DMatrix<C64>>,
    tol: f64,
}

/// Validate `g` and populate the pack. Checks the Ω-condition, symmetry and
/// spectral norm of `Z_g` and `Z_{g⁻¹}`, and (symplectic kind) the block
/// identities `C_{g⁻¹}⁻¹ = Z_{g⁻¹}A_g + C_g` and `Z_{g⁻¹}C_g = −C_g Z_g`.
pub fn pack(g: &RealLinearMap, kind: MapKind, tol: f64) -> FockResult<SymplecticPack> {
    let residual = g.omega_residual(kind);
    if residual > tol {
        return Err(FockError::NotSymplectic {
            kind: kind.as_str(),
            residual,
            tol,
        });
    }
    let g_inv = g.invert()?;
    let z_g = z_of(g, kind, tol)?;
    let z_ginv = z_of(&g_inv, kind, tol)?;
    for z in [&z_g, &z_ginv] {
        let norm = z.spectral_norm();
        if norm >= 1.0 {
            return Err(FockError::NormTooLarge { norm });
        }
    }

    let invert = |m: &DMatrix<C64>, context: &'static str| -> FockResult<DMatrix<C64>> {
        m.clone()
            .lu()
            .try_inverse()
            .ok_or(FockError::Singular { context })
    };
    let (c_inv, c_ginv_inv, a_inv, a_ginv_inv) = match kind {
        MapKind::Symplectic => (
            Some(invert(g.complex_part(), "complex-linear part of g")?),
            Some(invert(g_inv.complex_part(), "complex-linear part of g⁻¹")?),
            None,
            None,
        ),
        MapKind::Antisymplectic => (
            None,
            None,
            Some(invert(g.antilinear_part(), "antilinear part of g")?),
            Some(invert(g_inv.antilinear_part(), "antilinear part of g⁻¹")?),
        ),
    };

    Ok(SymplecticPack {
        g: g.clone(),
        g_inv,
        kind,
        z_g,
        z_ginv,
        c_inv,
        c_ginv_inv,
        a_inv,
        a_ginv_inv,
        tol,
    })
}

impl SymplecticPack {
    pub fn g(&self) -> &RealLinearMap {
        &self.g
    }

    pub fn g_inv(&self) -> &RealLinearMap {
        &self.g_inv
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn z_g(&self) -> &SymAntilinear {
        &self.z_g
    }

    pub fn z_ginv(&self) -> &SymAntilinear {
        &self.z_ginv
    }

    fn require(&self, kind: MapKind) -> FockResult<()> {
        if self.kind != kind {
            return Err(FockError::WrongKind {
                expected: kind.as_str(),
            });
        }
        Ok(())
    }

    /// `C_g v` (matrix-vector product).
    fn c_apply(&self, v: &HVector) -> HVector {
        HVector::from_vector(self.g.complex_part() * v.entries())
    }

    /// `A_g v = A·conj(v)` (antilinear action).
    fn a_apply(&self, v: &HVector) -> HVector {
        HVector::from_vector(self.g.antilinear_part() * v.entries().map(|c| c.conj()))
    }
}

/// Pack with the crate default tolerance.
pub fn pack_default(g: &RealLinearMap, kind: MapKind) -> FockResult<SymplecticPack> {
    pack(g, kind, crate::DEFAULT_TOL)
}

fn sample_vectors(d: usize) -> Vec<HVector> {
    (0..3)
        .map(|k| {
            HVector::new(
                (0..d)
                    .map(|j| {
                        let t = 1.3 * j as f64 + 0.7 * k as f64 + 0.31;
                        C64::new(t.sin(), (2.1 * t).cos())
                    })
                    .collect(),
            )
            .expect("d ≥ 1")
        })
        .collect()
}

/// The symmetric antilinear `Z` on `V_C` whose Gaussian is the metaplectic
/// kernel of a symplectic `g`. For `g = 1` this is exactly the canonical
/// conjugation `Z_V` (block swap).
pub fn metaplectic_z(p: &SymplecticPack) -> FockResult<SymAntilinear> {
    p.require(MapKind::Symplectic)?;
    let d = p.dim();
    let m_ginv = p.z_ginv.matrix();
    let m_g = p.z_g.matrix();
    let c_inv = p.c_inv.as_ref().expect("symplectic pack");
    let c_ginv_inv = p.c_ginv_inv.as_ref().expect("symplectic pack");

    let mut m = DMatrix::<C64>::zeros(2 * d, 2 * d);
    m.view_mut((0, 0), (d, d)).copy_from(m_ginv);
    m.view_mut((0, d), (d, d)).copy_from(c_ginv_inv);
    m.view_mut((d, 0), (d, d))
        .copy_from(&c_inv.map(|c| c.conj()));
    m.view_mut((d, d), (d, d)).copy_from(&m_g.map(|c| c.conj()));

    let res = symmetry_residual(&m);
    if res > p.tol {
        return Err(FockError::Inconsistent {
            context: "metaplectic Z block matrix is not symmetric",
            residual: res,
        });
    }
    let z = SymAntilinear::new(m, p.tol)?;

    // double-entry bookkeeping: re-verify the two defining rules directly
    for v in sample_vectors(d) {
        let c_inv_v = HVector::from_vector(c_inv * v.entries());
        let c_ginv_inv_v = HVector::from_vector(c_ginv_inv * v.entries());
        let rule_plus = plus(&p.z_ginv.apply(&v)?).add(&minus(&c_inv_v))?;
        let got_plus = z.apply(&plus(&v))?;
        let rule_minus = plus(&c_ginv_inv_v).add(&minus(&p.z_g.apply(&v)?))?;
        let got_minus = z.apply(&minus(&v))?;
        let res = got_plus
            .max_abs_diff(&rule_plus)
            .max(got_minus.max_abs_diff(&rule_minus));
        if res > p.tol * 10.0 {
            return Err(FockError::Inconsistent {
                context: "metaplectic Z does not satisfy its defining rules",
                residual: res,
            });
        }
    }
    Ok(z)
}

/// The metaplectic kernel `u_g = e^Z`, built at doubled truncation
/// `2·vec_trunc`; normalized so the vacuum entry `(0,0)` is 1.
pub fn metaplectic_kernel(p: &SymplecticPack, vec_trunc: u32) -> FockResult<Kernel> {
    let z = metaplectic_z(p)?;
    Kernel::new(p.dim(), gaussian_table(&z, 2 * vec_trunc)?)
}

fn dual_creator_entry(w: &HVector, table: &DualTable, gamma: &MultiIndex) -> C64 {
    let mut acc = C64::default();
    for m in 0..w.dim() {
        if gamma.get(m) == 0 {
            continue;
        }
        let wm = w.get(m);
        if wm == C64::default() {
            continue;
        }
        acc += wm * (gamma.get(m) as f64) * table.value(&gamma.lowered(m).expect("nonzero"));
    }
    acc
}

fn dual_annihilator_entry(w: &HVector, table: &DualTable, gamma: &MultiIndex) -> C64 {
    let mut acc = C64::default();
    for m in 0..w.dim() {
        let wm = w.get(m);
        if wm == C64::default() {
            continue;
        }
        acc += wm.conj() * table.value(&gamma.bumped(m));
    }
    acc
}

/// Maximum residual of the two kernel-level intertwining relation families
///
/// ```text
/// a(v₋)u = c((C_g v)₊)u + a((A_g v)₊)u
/// c(v₋)u = c((A_g v)₊)u + a((C_g v)₊)u
/// ```
///
/// over all doubled indices of degree ≤ trunc(u) − 1, together with the
/// operator-level forms `U c(v) = {c(C_g v)+a(A_g v)} U` and
/// `U a(v) = {c(A_g v)+a(C_g v)} U` evaluated through `apply_kernel` on
/// monomials of degree < vec_trunc(u).
///
/// Residuals are measured against normalized monomials (deviation at the
/// index `γ` divided by `√γ!`), so the figure is meaningful uniformly in
/// the degree. Diagnostic: returns the residual.
pub fn verify_intertwine(p: &SymplecticPack, u: &Kernel, v: &HVector) -> FockResult<f64> {
    p.require(MapKind::Symplectic)?;
    if v.dim() != p.dim() {
        return Err(FockError::DimensionMismatch {
            expected: p.dim(),
            got: v.dim(),
        });
    }
    let table = u.table();
    let trunc = u.trunc();
    let cgv = p.c_apply(v);
    let agv = p.a_apply(v);
    let (v_m, cgv_p, agv_p) = (minus(v), plus(&cgv), plus(&agv));

    let mut worst: f64 = 0.0;
    if trunc > 0 {
        for gamma in indices_up_to(2 * p.dim(), trunc - 1) {
            let r1 = dual_annihilator_entry(&v_m, table, &gamma)
                - dual_creator_entry(&cgv_p, table, &gamma)
                - dual_annihilator_entry(&agv_p, table, &gamma);
            let r2 = dual_creator_entry(&v_m, table, &gamma)
                - dual_creator_entry(&agv_p, table, &gamma)
                - dual_annihilator_entry(&cgv_p, table, &gamma);
            let scale = gamma.factorial().sqrt();
            worst = worst.max(r1.norm() / scale).max(r2.norm() / scale);
        }
    }

    // operator-level cross-check on low-degree monomials
    let nv = u.vec_trunc();
    if nv > 0 {
        for b in indices_up_to(p.dim(), nv - 1) {
            let eb = PolyVector::monomial(b.clone(), C64::new(1.0, 0.0), nv)?;
            let img = apply_kernel(u, &eb)?;
            // U c(v) vs {c(C_g v) + a(A_g v)} U
            let lhs_c = apply_kernel(u, &creator(v, &eb)?)?;
            let rhs_c1 = dual_creator(&cgv, &img)?;
            let rhs_c2 = dual_annihilator(&agv, &img)?;
            // U a(v) vs {c(A_g v) + a(C_g v)} U
            let lhs_a = apply_kernel(u, &annihilator(v, &eb)?)?;
            let rhs_a1 = dual_creator(&agv, &img)?;
            let rhs_a2 = dual_annihilator(&cgv, &img)?;
            for a in indices_up_to(p.dim(), nv - 1) {
                let rc = lhs_c.value(&a) - rhs_c1.value(&a) - rhs_c2.value(&a);
                let ra = lhs_a.value(&a) - rhs_a1.value(&a) - rhs_a2.value(&a);
                let scale = (a.factorial() * b.factorial()).sqrt();
                worst = worst.max(rc.norm() / scale).max(ra.norm() / scale);
            }
        }
    }
    Ok(worst)
}

fn quarter_det(z: &SymAntilinear) -> FockResult<f64> {
    let m = z.matrix();
    let n = z.dim();
    let det = (DMatrix::<C64>::identity(n, n) - m * m.map(|c| c.conj()))
        .lu()
        .determinant();
    if det.im.abs() > 1e-10 * det.re.abs().max(1.0) {
        return Err(FockError::NotReal { imag: det.im });
    }
    Ok(det.re.powf(0.25))
}

/// The Shale normalization constant `det(I − Z_g²)^{1/4} ∈ (0, 1]`; the
/// scalar multiple making the extended metaplectic operator unitary.
pub fn shale_constant(p: &SymplecticPack) -> FockResult<f64> {
    p.require(MapKind::Symplectic)?;
    quarter_det(&p.z_g)
}

/// Closed-form coherent matrix element of the **unnormalized** `U_g`
/// (no Shale factor):
///
/// `⟨e^x|U_g e^y⟩ = exp ½{2⟨C_g⁻¹x|y⟩ + ⟨x|Z_{g⁻¹}x⟩ + ⟨Z_g y|y⟩}`.
pub fn coherent_element_closed(p: &SymplecticPack, x: &HVector, y: &HVector) -> FockResult<C64> {
    p.require(MapKind::Symplectic)?;
    let c_inv = p.c_inv.as_ref().expect("symplectic pack");
    let c_inv_x = HVector::from_vector(c_inv * x.entries());
    let t1 = inner(&c_inv_x, y)?;
    let t2 = inner(x, &p.z_ginv.apply(x)?)?;
    let t3 = inner(&p.z_g.apply(y)?, y)?;
    Ok((C64::new(0.5, 0.0) * (t1 * 2.0 + t2 + t3)).exp())
}

/// The same matrix element through the truncated pairing
/// `⟨e^x|U_g e^y⟩ = [U_g coherent(y)](coherent(x))` at the kernel's degree.
pub fn coherent_element_truncated(u: &Kernel, x: &HVector, y: &HVector) -> FockResult<C64> {
    let n = u.vec_trunc();
    let cx = coherent(x, n)?;
    let cy = coherent(y, n)?;
    apply_kernel(u, &cy)?.evaluate(&cx)
}

/// Tail bound `exp(|x||y|)·(|x||y|)^{N+1}/(N+1)!` for the coherent-series
/// truncation at degree `N`.
pub fn coherent_tail_bound(x: &HVector, y: &HVector, n: u32) -> f64 {
    let t = x.norm() * y.norm();
    t.exp() * t.powi(n as i32 + 1) / factorial(n + 1)
}

/// Number of independent kernel tables (up to total degree `trunc`)
/// satisfying both intertwining relation families for `g`.
///
/// Assembles the relations as a linear system on the table entries and
/// counts the numerical nullity (singular values below `rel_tol · σ_max`).
/// Works for arbitrary real-linear `g`, so non-symplectic inputs can be
/// probed: they admit only the zero solution.
pub fn intertwine_nullity(g: &RealLinearMap, trunc: u32, rel_tol: f64) -> FockResult<usize> {
    let d = g.dim();
    let unknowns = MonomialBasis::new(2 * d, trunc);
    if trunc == 0 {
        return Ok(1);
    }
    let targets = indices_up_to(2 * d, trunc - 1);
    let real_basis: Vec<HVector> = (0..d)
        .map(|j| HVector::basis(d, j))
        .chain((0..d).map(|j| HVector::basis(d, j).scale(C64::new(0.0, 1.0))))
        .collect();

    let nrows = 2 * real_basis.len() * targets.len();
    let mut mat = DMatrix::<C64>::zeros(nrows, unknowns.len());
    let mut row = 0;
    for v in &real_basis {
        let cgv = HVector::from_vector(g.complex_part() * v.entries());
        let agv = HVector::from_vector(g.antilinear_part() * v.entries().map(|c| c.conj()));
        for gamma in &targets {
            let (alpha, beta) = gamma.split(d);
            // family 1: a(v₋)u − c((C_g v)₊)u − a((A_g v)₊)u = 0
            // family 2: c(v₋)u − c((A_g v)₊)u − a((C_g v)₊)u = 0
            for j in 0..d {
                let col_bump_minus = unknowns
                    .position(&alpha.join(&beta.bumped(j)))
                    .expect("within truncation");
                mat[(row, col_bump_minus)] += v.get(j);
                let col_bump_plus = unknowns
                    .position(&alpha.bumped(j).join(&beta))
                    .expect("within truncation");
                mat[(row, col_bump_plus)] -= agv.get(j).conj();
                mat[(row + 1, col_bump_plus)] -= cgv.get(j).conj();
                if let Some(low) = alpha.lowered(j) {
                    let col = unknowns.position(&low.join(&beta)).expect("within truncation");
                    let weight = alpha.get(j) as f64;
                    mat[(row, col)] -= cgv.get(j) * weight;
                    mat[(row + 1, col)] -= agv.get(j) * weight;
                }
                if let Some(low) = beta.lowered(j) {
                    let col = unknowns.position(&alpha.join(&low)).expect("within truncation");
                    mat[(row + 1, col)] += v.get(j).conj() * (beta.get(j) as f64);
                }
            }
            row += 2;
        }
    }

    let sv = mat.svd(false, false).singular_values;
    let sigma_max = sv.iter().copied().fold(0.0f64, f64::max);
    if sigma_max == 0.0 {
        return Ok(unknowns.len());
    }
    let rank = sv.iter().filter(|s| **s > rel_tol * sigma_max).count();
    Ok(unknowns.len() - rank)
}

/// Whether the intertwining relations pin the kernel down to a line
/// (nullity exactly one) at the given truncation.
pub fn uniqueness_check(p: &SymplecticPack, trunc: u32) -> FockResult<bool> {
    p.require(MapKind::Symplectic)?;
    Ok(intertwine_nullity(&p.g, trunc, 1e-8)? == 1)
}

/// The symmetric antilinear `Z` on `V ⊕ V` whose Gaussian implements an
/// antisymplectic `g`.
pub fn anti_z(p: &SymplecticPack) -> FockResult<SymAntilinear> {
    p.require(MapKind::Antisymplectic)?;
    let d = p.dim();
    let a_inv = p.a_inv.as_ref().expect("antisymplectic pack");
    let a_ginv_inv = p.a_ginv_inv.as_ref().expect("antisymplectic pack");

    let mut m = DMatrix::<C64>::zeros(2 * d, 2 * d);
    m.view_mut((0, 0), (d, d)).copy_from(p.z_g.matrix());
    m.view_mut((0, d), (d, d))
        .copy_from(&a_inv.map(|c| c.conj()));
    m.view_mut((d, 0), (d, d))
        .copy_from(&a_ginv_inv.map(|c| c.conj()));
    m.view_mut((d, d), (d, d)).copy_from(p.z_ginv.matrix());

    let res = symmetry_residual(&m);
    if res > p.tol {
        return Err(FockError::Inconsistent {
            context: "antisymplectic Z block matrix is not symmetric",
            residual: res,
        });
    }
    let z = SymAntilinear::new(m, p.tol)?;

    for v in sample_vectors(d) {
        let conj_v = v.conjugated();
        // A_g⁻¹ v = conj(A⁻¹)·conj(v); same shape for g⁻¹
        let ag_inv_v = HVector::from_vector(a_inv.map(|c| c.conj()) * conj_v.entries());
        let aginv_inv_v = HVector::from_vector(a_ginv_inv.map(|c| c.conj()) * conj_v.entries());
        let rule_1 = inject1_vec(&p.z_g.apply(&v)?).add(&inject2_vec(&aginv_inv_v))?;
        let got_1 = z.apply(&inject1_vec(&v))?;
        let rule_2 = inject1_vec(&ag_inv_v).add(&inject2_vec(&p.z_ginv.apply(&v)?))?;
        let got_2 = z.apply(&inject2_vec(&v))?;
        let res = got_1.max_abs_diff(&rule_1).max(got_2.max_abs_diff(&rule_2));
        if res > p.tol * 10.0 {
            return Err(FockError::Inconsistent {
                context: "antisymplectic Z does not satisfy its defining rules",
                residual: res,
            });
        }
    }
    Ok(z)
}

/// Kernel of the antilinear weak metaplectic operator for antisymplectic
/// `g`, built at doubled truncation `2·vec_trunc`.
pub fn anti_kernel(p: &SymplecticPack, vec_trunc: u32) -> FockResult<AntiKernel> {
    let z = anti_z(p)?;
    AntiKernel::new(p.dim(), gaussian_table(&z, 2 * vec_trunc)?)
}

/// Maximum residual of the antisymplectic kernel-level relations
///
/// ```text
/// a(v₁)u = a((C_g v)₂)u + c((A_g v)₂)u      (from U c(v) = {a(C_g v)+c(A_g v)}U)
/// c(v₁)u = a((A_g v)₂)u + c((C_g v)₂)u      (from U a(v) = {a(A_g v)+c(C_g v)}U)
/// ```
///
/// over all doubled indices of degree ≤ trunc(u) − 1, measured against
/// normalized monomials as in [`verify_intertwine`].
pub fn verify_anti_intertwine(p: &SymplecticPack, u: &AntiKernel, v: &HVector) -> FockResult<f64> {
    p.require(MapKind::Antisymplectic)?;
    if v.dim() != p.dim() {
        return Err(FockError::DimensionMismatch {
            expected: p.dim(),
            got: v.dim(),
        });
    }
    let table = u.table();
    let trunc = u.trunc();
    let cgv = p.c_apply(v);
    let agv = p.a_apply(v);
    let (v_1, cgv_2, agv_2) = (inject1_vec(v), inject2_vec(&cgv), inject2_vec(&agv));

    let mut worst: f64 = 0.0;
    if trunc > 0 {
        for gamma in indices_up_to(2 * p.dim(), trunc - 1) {
            let r1 = dual_annihilator_entry(&v_1, table, &gamma)
                - dual_annihilator_entry(&cgv_2, table, &gamma)
                - dual_creator_entry(&agv_2, table, &gamma);
            let r2 = dual_creator_entry(&v_1, table, &gamma)
                - dual_annihilator_entry(&agv_2, table, &gamma)
                - dual_creator_entry(&cgv_2, table, &gamma);
            let scale = gamma.factorial().sqrt();
            worst = worst.max(r1.norm() / scale).max(r2.norm() / scale);
        }
    }
    Ok(worst)
}

/// `det(I − Z_g²)^{1/4}` for antisymplectic `g` (with `Z_g = A_g⁻¹C_g`);
/// the scalar making the extended antilinear operator antiunitary.
pub fn anti_shale_constant(p: &SymplecticPack) -> FockResult<f64> {
    p.require(MapKind::Antisymplectic)?;
    quarter_det(&p.z_g)
}

/// Gram matrix of the images `U e^β` for `|β| ≤ deg`, under the
/// `α!`-weighted pairing, summing the first index through
/// `trunc(u) − deg`: `B[β,β′] = Σ_α conj(u[(α,β)]) u[(α,β′)] / α!`.
pub fn image_gram(u: &Kernel, deg: u32) -> (MonomialBasis, DMatrix<C64>) {
    let basis = MonomialBasis::new(u.d(), deg);
    let alphas = indices_up_to(u.d(), u.trunc().saturating_sub(deg));
    let m = DMatrix::from_fn(basis.len(), basis.len(), |i, j| {
        let (b1, b2) = (basis.index(i), basis.index(j));
        alphas
            .iter()
            .map(|a| u.entry(a, b1).conj() * u.entry(a, b2) / a.factorial())
            .sum()
    });
    (basis, m)
}

/// Gram matrix of the images `U e^α` of an antilinear kernel, summing the
/// second index: `B[α,α′] = Σ_β conj(u[(α,β)]) u[(α′,β)] / β!`.
pub fn anti_image_gram(u: &AntiKernel, deg: u32) -> (MonomialBasis, DMatrix<C64>) {
    let basis = MonomialBasis::new(u.d(), deg);
    let betas = indices_up_to(u.d(), u.trunc().saturating_sub(deg));
    let m = DMatrix::from_fn(basis.len(), basis.len(), |i, j| {
        let (a1, a2) = (basis.index(i), basis.index(j));
        betas
            .iter()
            .map(|b| u.entry(a1, b).conj() * u.entry(a2, b) / b.factorial())
            .sum()
    });
    (basis, m)
}

/// The canonical Gram matrix `⟨e^α|e^β⟩ = δ_{αβ} α!` on the same basis.
pub fn canonical_gram(d: usize, deg: u32) -> (MonomialBasis, DMatrix<C64>) {
    let basis = MonomialBasis::new(d, deg);
    let m = DMatrix::from_fn(basis.len(), basis.len(), |i, j| {
        if i == j {
            C64::new(basis.index(i).factorial(), 0.0)
        } else {
            C64::default()
        }
    });
    (basis, m)
}

/// Matrix of the field operator `π(v) = (c(v) + a(v))/√2` on the truncated
/// monomial basis (creator compressed at the truncation degree).
pub fn field_operator(v: &HVector, trunc: u32) -> FockResult<(MonomialBasis, DMatrix<C64>)> {
    let d = v.dim();
    let basis = MonomialBasis::new(d, trunc);
    let mut m = DMatrix::<C64>::zeros(basis.len(), basis.len());
    let scale = C64::new(1.0 / 2f64.sqrt(), 0.0);
    for (col, b) in basis.iter().enumerate() {
        let eb = PolyVector::monomial(b.clone(), C64::new(1.0, 0.0), trunc)?;
        let img = crate::symalg::creator_dropping(v, &eb)
            .add(&annihilator(v, &eb)?)?
            .scale(scale);
        for (a, c) in img.iter() {
            m[(basis.position(a).expect("within truncation"), col)] = *c;
        }
    }
    Ok((basis, m))
}
