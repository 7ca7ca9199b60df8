//! The kernel↔operator correspondence: an antilinear functional `u` on
//! `SV_C` is the kernel of the linear map `U: SV → SV′` through
//! `[Uφ](ψ) = u(ψ₊ φ₋)`, and on monomials the kernel entry **is** the
//! evaluation matrix element: `u(e₊^α e₋^β) = [U e^β](e^α)`, with no
//! weights folded in. Composition with creators and annihilators becomes
//! index-shift recursions on the table:
//!
//! ```text
//! c(v) U ↔ c(v₊) u          U c(v) ↔ a(v₋) u
//! a(v) U ↔ a(v₊) u          U a(v) ↔ c(v₋) u
//! ```
//!
//! The antilinear variant stores kernels over `S(V ⊕ V)` with
//! `[Uφ](ψ) = u(φ₁ ψ₂)` and the corresponding rules
//! `Uc(v) ↔ a(v₁)u`, `Ua(v) ↔ c(v₁)u`, `c(v)U ↔ c(v₂)u`, `a(v)U ↔ a(v₂)u`.

use std::collections::BTreeMap;

use crate::complexify::{inject1_vec, inject2_vec, minus, plus, preferred_quadratic, star_table};
use crate::error::{FockError, FockResult};
use crate::gaussian::{gaussian_table, quadratic_of};
use crate::hilbert::HVector;
use crate::symalg::{
    dual_annihilator, dual_creator, functional_product, indices_up_to, DualTable, MultiIndex,
    PolyVector,
};
use crate::C64;

/// Kernel of a linear map `SV → SV′`: an evaluation table over the doubled
/// index set, entry `(α, β) = u(e₊^α e₋^β) = [U e^β](e^α)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    d: usize,
    table: DualTable,
}

impl Kernel {
    pub fn new(d: usize, table: DualTable) -> FockResult<Self> {
        if table.nvars() != 2 * d {
            return Err(FockError::DimensionMismatch {
                expected: 2 * d,
                got: table.nvars(),
            });
        }
        Ok(Self { d, table })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn table(&self) -> &DualTable {
        &self.table
    }

    /// Total-degree bound of the stored table (doubled degree).
    pub fn trunc(&self) -> u32 {
        self.table.trunc()
    }

    /// Polynomial degree served exactly by a kernel built at doubled
    /// truncation.
    pub fn vec_trunc(&self) -> u32 {
        self.table.trunc() / 2
    }

    pub fn entry(&self, alpha: &MultiIndex, beta: &MultiIndex) -> C64 {
        self.table.value(&alpha.join(beta))
    }

    pub fn set_entry(&mut self, alpha: &MultiIndex, beta: &MultiIndex, v: C64) -> FockResult<()> {
        self.table.set_value(alpha.join(beta), v)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.table.max_abs_diff(&other.table)
    }

    /// Entry deviations in the orthonormal scale, `|Δu(α,β)|/√(α!β!)` —
    /// the operator matrix elements between normalized monomials.
    pub fn max_normalized_diff(&self, other: &Self) -> f64 {
        self.table
            .max_normalized_diff_up_to(&other.table, self.trunc().min(other.trunc()))
    }
}

/// `[Uφ](e^α) = Σ_β φ[β] u[(α,β)]` — linear in `φ` (the conjugation in
/// `minus_poly` cancels against the antilinearity of the table).
///
/// The result is exact for `|α| ≤ trunc(u) − deg(φ)` and truncated there.
pub fn apply_kernel(u: &Kernel, phi: &PolyVector) -> FockResult<DualTable> {
    if phi.nvars() != u.d() {
        return Err(FockError::DimensionMismatch {
            expected: u.d(),
            got: phi.nvars(),
        });
    }
    if phi.degree() > u.trunc() {
        return Err(FockError::TruncationMismatch {
            expected: u.trunc(),
            got: phi.degree(),
        });
    }
    let out_trunc = u.trunc() - phi.degree();
    let mut out = DualTable::new(u.d(), out_trunc)?;
    for alpha in indices_up_to(u.d(), out_trunc) {
        let mut acc = C64::default();
        for (beta, c) in phi.iter() {
            acc += c * u.entry(&alpha, beta);
        }
        if acc != C64::default() {
            out.set_value(alpha, acc)?;
        }
    }
    Ok(out)
}

/// The kernel as the evaluation matrix of its operator, keyed by
/// `(α, β) ↦ [U e^β](e^α)`; identity-shaped by construction.
pub fn matrix_of_kernel(u: &Kernel) -> BTreeMap<(MultiIndex, MultiIndex), C64> {
    u.table
        .iter()
        .map(|(g, v)| {
            let (a, b) = g.split(u.d());
            ((a, b), *v)
        })
        .collect()
}

/// Rebuild a kernel from an evaluation matrix.
pub fn kernel_of_matrix(
    d: usize,
    trunc: u32,
    entries: &BTreeMap<(MultiIndex, MultiIndex), C64>,
) -> FockResult<Kernel> {
    let mut table = DualTable::new(2 * d, trunc)?;
    for ((a, b), v) in entries {
        table.set_value(a.join(b), *v)?;
    }
    Kernel::new(d, table)
}

/// Kernel of the adjoint: `u*[(α,β)] = conj(u[(β,α)])`.
pub fn adjoint_kernel(u: &Kernel) -> Kernel {
    Kernel {
        d: u.d,
        table: star_table(&u.table).expect("doubled table"),
    }
}

/// Kernel of `c(v) ∘ U`, i.e. `c(v₊) u`.
pub fn compose_creator_left(v: &HVector, u: &Kernel) -> FockResult<Kernel> {
    check_vec(u, v)?;
    Kernel::new(u.d, dual_creator(&plus(v), &u.table)?)
}

/// Kernel of `a(v) ∘ U`, i.e. `a(v₊) u`.
pub fn compose_annihilator_left(v: &HVector, u: &Kernel) -> FockResult<Kernel> {
    check_vec(u, v)?;
    Kernel::new(u.d, dual_annihilator(&plus(v), &u.table)?)
}

/// Kernel of `U ∘ c(v)`, i.e. `a(v₋) u`.
pub fn compose_creator_right(u: &Kernel, v: &HVector) -> FockResult<Kernel> {
    check_vec(u, v)?;
    Kernel::new(u.d, dual_annihilator(&minus(v), &u.table)?)
}

/// Kernel of `U ∘ a(v)`, i.e. `c(v₋) u`.
pub fn compose_annihilator_right(u: &Kernel, v: &HVector) -> FockResult<Kernel> {
    check_vec(u, v)?;
    Kernel::new(u.d, dual_creator(&minus(v), &u.table)?)
}

fn check_vec(u: &Kernel, v: &HVector) -> FockResult<()> {
    if v.dim() != u.d() {
        return Err(FockError::DimensionMismatch {
            expected: u.d(),
            got: v.dim(),
        });
    }
    Ok(())
}

/// Kernel of the identity operator: the Gaussian of the canonical
/// conjugation, with entries `δ_{αβ} α!`. Built at doubled truncation
/// `2·vec_trunc` so the operator is exact on degrees ≤ `vec_trunc`.
pub fn identity_kernel(d: usize, vec_trunc: u32) -> FockResult<Kernel> {
    let table = gaussian_table(&preferred_quadratic(d), 2 * vec_trunc)?;
    Kernel::new(d, table)
}

/// Kernel of the number operator, `ζ_V e^{Z_V}`; evaluation matrix
/// `δ_{αβ} |α| α!`.
pub fn number_kernel(d: usize, vec_trunc: u32) -> FockResult<Kernel> {
    let id = identity_kernel(d, vec_trunc)?;
    let zeta = quadratic_of(&preferred_quadratic(d))
        .table()
        .with_trunc(2 * vec_trunc)?;
    Kernel::new(d, functional_product(&zeta, id.table())?)
}

/// Kernel `Ψ₊ Φ₋` of the rank-one operator `φ ↦ conj(Φ(φ)) Ψ`:
/// `u[(α,β)] = Ψ[α]·conj(Φ[β])`.
pub fn rank_one(psi: &DualTable, phi: &DualTable) -> FockResult<Kernel> {
    if psi.nvars() != phi.nvars() {
        return Err(FockError::DimensionMismatch {
            expected: psi.nvars(),
            got: phi.nvars(),
        });
    }
    let d = psi.nvars();
    let mut table = DualTable::new(2 * d, psi.trunc() + phi.trunc())?;
    for (a, va) in psi.iter() {
        for (b, vb) in phi.iter() {
            let w = va * vb.conj();
            if w != C64::default() {
                table.set_value(a.join(b), w)?;
            }
        }
    }
    Kernel::new(d, table)
}

/// Kernel of an antilinear map `SV → SV′` over `S(V ⊕ V)`:
/// entry `(α, β) = u(e₁^α e₂^β) = [U e^α](e^β)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntiKernel {
    d: usize,
    table: DualTable,
}

impl AntiKernel {
    pub fn new(d: usize, table: DualTable) -> FockResult<Self> {
        if table.nvars() != 2 * d {
            return Err(FockError::DimensionMismatch {
                expected: 2 * d,
                got: table.nvars(),
            });
        }
        Ok(Self { d, table })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn table(&self) -> &DualTable {
        &self.table
    }

    pub fn trunc(&self) -> u32 {
        self.table.trunc()
    }

    pub fn entry(&self, alpha: &MultiIndex, beta: &MultiIndex) -> C64 {
        self.table.value(&alpha.join(beta))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.table.max_abs_diff(&other.table)
    }
}

/// `[Uφ](e^β) = Σ_α conj(φ[α]) u[(α,β)]` — antilinear in `φ`.
pub fn apply_antikernel(u: &AntiKernel, phi: &PolyVector) -> FockResult<DualTable> {
    if phi.nvars() != u.d() {
        return Err(FockError::DimensionMismatch {
            expected: u.d(),
            got: phi.nvars(),
        });
    }
    if phi.degree() > u.trunc() {
        return Err(FockError::TruncationMismatch {
            expected: u.trunc(),
            got: phi.degree(),
        });
    }
    let out_trunc = u.trunc() - phi.degree();
    let mut out = DualTable::new(u.d(), out_trunc)?;
    for beta in indices_up_to(u.d(), out_trunc) {
        let mut acc = C64::default();
        for (alpha, c) in phi.iter() {
            acc += c.conj() * u.entry(alpha, &beta);
        }
        if acc != C64::default() {
            out.set_value(beta, acc)?;
        }
    }
    Ok(out)
}

/// Kernel of `U ∘ c(v)` for antilinear `U`, i.e. `a(v₁) u`.
pub fn anti_compose_creator_right(u: &AntiKernel, v: &HVector) -> FockResult<AntiKernel> {
    check_anti_vec(u, v)?;
    AntiKernel::new(u.d, dual_annihilator(&inject1_vec(v), &u.table)?)
}

/// Kernel of `U ∘ a(v)` for antilinear `U`, i.e. `c(v₁) u`.
pub fn anti_compose_annihilator_right(u: &AntiKernel, v: &HVector) -> FockResult<AntiKernel> {
    check_anti_vec(u, v)?;
    AntiKernel::new(u.d, dual_creator(&inject1_vec(v), &u.table)?)
}

/// Kernel of `c(v) ∘ U` for antilinear `U`, i.e. `c(v₂) u`.
pub fn anti_compose_creator_left(v: &HVector, u: &AntiKernel) -> FockResult<AntiKernel> {
    check_anti_vec(u, v)?;
    AntiKernel::new(u.d, dual_creator(&inject2_vec(v), &u.table)?)
}

/// Kernel of `a(v) ∘ U` for antilinear `U`, i.e. `a(v₂) u`.
pub fn anti_compose_annihilator_left(v: &HVector, u: &AntiKernel) -> FockResult<AntiKernel> {
    check_anti_vec(u, v)?;
    AntiKernel::new(u.d, dual_annihilator(&inject2_vec(v), &u.table)?)
}

fn check_anti_vec(u: &AntiKernel, v: &HVector) -> FockResult<()> {
    if v.dim() != u.d() {
        return Err(FockError::DimensionMismatch {
            expected: u.d(),
            got: v.dim(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexify::{minus_poly, plus_poly};
    use crate::symalg::{annihilator, canonical_inner, creator_dropping, embed};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sample_poly(d: usize, trunc: u32, phase: f64) -> PolyVector {
        let mut p = PolyVector::new(d, trunc).unwrap();
        for (k, a) in indices_up_to(d, trunc).into_iter().enumerate() {
            let t = phase + 0.7 * k as f64;
            let w = c(t.sin(), (1.3 * t).cos()) / (1.0 + a.factorial()).sqrt();
            p.set_coeff(a, w).unwrap();
        }
        p
    }

    fn sample_kernel(d: usize, trunc: u32, phase: f64) -> Kernel {
        let mut table = DualTable::new(2 * d, trunc).unwrap();
        for (k, g) in indices_up_to(2 * d, trunc).into_iter().enumerate() {
            let t = phase + 0.41 * k as f64;
            table.set_value(g, c((2.1 * t).cos(), (0.9 * t).sin())).unwrap();
        }
        Kernel::new(d, table).unwrap()
    }

    #[test]
    fn identity_kernel_entries() {
        let u = identity_kernel(1, 3).unwrap();
        let z = MultiIndex::zero(1);
        let two = MultiIndex::new(vec![2]);
        assert_eq!(u.entry(&z, &z), c(1.0, 0.0));
        assert_eq!(u.entry(&two, &two), c(2.0, 0.0));
        // off-diagonal entries vanish
        assert_eq!(u.entry(&two, &z), c(0.0, 0.0));

        let u2 = identity_kernel(2, 3).unwrap();
        for ((a, b), v) in matrix_of_kernel(&u2) {
            let expect = if a == b { c(a.factorial(), 0.0) } else { c(0.0, 0.0) };
            assert!((v - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn identity_kernel_reproduces_inner_product() {
        // e^{Z_V}(ψ₊φ₋) = ⟨ψ|φ⟩
        let d = 2;
        let trunc = 4;
        let u = identity_kernel(d, trunc).unwrap();
        let psi = sample_poly(d, trunc, 0.3);
        let phi = sample_poly(d, trunc, 1.9);
        let prod = plus_poly(&psi)
            .with_trunc(2 * trunc)
            .unwrap()
            .mul(&minus_poly(&phi).with_trunc(2 * trunc).unwrap())
            .unwrap();
        let lhs = u.table().evaluate(&prod).unwrap();
        let rhs = canonical_inner(&psi, &phi).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn apply_identity_is_embedding() {
        let d = 2;
        let u = identity_kernel(d, 4).unwrap();
        let phi = sample_poly(d, 4, 0.8);
        let got = apply_kernel(&u, &phi).unwrap();
        let expect = embed(&phi);
        assert!(got.max_abs_diff_up_to(&expect, 4) < 1e-12);

        let zero_kernel = Kernel::new(d, DualTable::new(2 * d, 8).unwrap()).unwrap();
        assert_eq!(apply_kernel(&zero_kernel, &phi).unwrap().support_len(), 0);
    }

    #[test]
    fn number_kernel_matrix() {
        let d = 1;
        let u = number_kernel(d, 3).unwrap();
        let z = MultiIndex::zero(1);
        let one = MultiIndex::new(vec![1]);
        assert_eq!(u.entry(&z, &z), c(0.0, 0.0));
        assert_eq!(u.entry(&one, &one), c(1.0, 0.0));

        let u2 = number_kernel(2, 3).unwrap();
        for ((a, b), v) in matrix_of_kernel(&u2) {
            let expect = if a == b {
                c(a.degree() as f64 * a.factorial(), 0.0)
            } else {
                c(0.0, 0.0)
            };
            assert!((v - expect).norm() < 1e-12);
        }

        // [N e^α] = |α|·embed(e^α)
        let alpha = MultiIndex::new(vec![2, 1]);
        let p = PolyVector::monomial(alpha.clone(), c(1.0, 0.0), 3).unwrap();
        let img = apply_kernel(&u2, &p).unwrap();
        let expect = embed(&p).scale(c(3.0, 0.0));
        assert!(img.max_abs_diff_up_to(&expect, 3) < 1e-12);
    }

    #[test]
    fn round_trip_matrix() {
        let u = sample_kernel(2, 3, 0.2);
        let m = matrix_of_kernel(&u);
        let back = kernel_of_matrix(2, 3, &m).unwrap();
        assert_eq!(back.max_abs_diff(&u), 0.0);
    }

    #[test]
    fn adjoint_examples() {
        let d = 2;
        let id = identity_kernel(d, 3).unwrap();
        assert_eq!(adjoint_kernel(&id).max_abs_diff(&id), 0.0);

        let u = sample_kernel(d, 3, 1.4);
        assert_eq!(adjoint_kernel(&adjoint_kernel(&u)).max_abs_diff(&u), 0.0);

        // adjoint of the creator kernel is the annihilator kernel
        let v = HVector::new(vec![c(0.4, -0.7), c(0.9, 0.3)]).unwrap();
        let c_kernel = compose_creator_left(&v, &id).unwrap();
        let a_kernel = compose_annihilator_right(&id, &v).unwrap();
        assert!(adjoint_kernel(&c_kernel).max_abs_diff(&a_kernel) < 1e-12);
    }

    #[test]
    fn adjoint_defining_property() {
        // [U*φ](ψ) = conj([Uψ](φ)) on random polynomials
        let d = 2;
        let trunc = 3;
        let u = sample_kernel(d, 2 * trunc, 0.55);
        let ustar = adjoint_kernel(&u);
        let phi = sample_poly(d, trunc, 0.9);
        let psi = sample_poly(d, trunc, 2.2);
        let lhs = apply_kernel(&ustar, &phi)
            .unwrap()
            .evaluate(&psi.with_trunc(2 * trunc - phi.degree()).unwrap())
            .unwrap();
        let rhs = apply_kernel(&u, &psi)
            .unwrap()
            .evaluate(&phi.with_trunc(2 * trunc - psi.degree()).unwrap())
            .unwrap();
        assert!((lhs - rhs.conj()).norm() < 1e-12);
    }

    #[test]
    fn creator_kernel_entries() {
        // kernel of c(e_1) against the identity: entry (α+δ₁, α) = (α₁+1)!·Π_{j≠1} α_j!
        let d = 2;
        let e1 = HVector::basis(d, 0);
        let id = identity_kernel(d, 3).unwrap();
        let ck = compose_creator_left(&e1, &id).unwrap();
        for a in indices_up_to(d, 3) {
            let up = a.bumped(0);
            let expect = up.factorial();
            assert!((ck.entry(&up, &a) - c(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn compose_rules_match_operator_side() {
        // all four rules against direct operator composition
        let d = 2;
        let trunc = 3;
        let u = sample_kernel(d, 2 * trunc, 3.1);
        let v = HVector::new(vec![c(0.6, 0.2), c(-0.3, 0.8)]).unwrap();

        let cl = compose_creator_left(&v, &u).unwrap();
        let al = compose_annihilator_left(&v, &u).unwrap();
        let cr = compose_creator_right(&u, &v).unwrap();
        let ar = compose_annihilator_right(&u, &v).unwrap();

        for b in indices_up_to(d, trunc) {
            let eb = PolyVector::monomial(b.clone(), c(1.0, 0.0), trunc).unwrap();
            let u_eb = apply_kernel(&u, &eb).unwrap();

            // c(v)∘U and a(v)∘U act on the output functional
            let cv_u = dual_creator(&v, &u_eb).unwrap();
            let av_u = dual_annihilator(&v, &u_eb).unwrap();

            // U∘c(v) and U∘a(v) act on the input monomial
            let u_cv = apply_kernel(&u, &creator_dropping(&v, &eb)).unwrap();
            let u_av = apply_kernel(&u, &annihilator(&v, &eb).unwrap()).unwrap();

            for a in indices_up_to(d, trunc) {
                assert!((cl.entry(&a, &b) - cv_u.value(&a)).norm() < 1e-12);
                assert!((al.entry(&a, &b) - av_u.value(&a)).norm() < 1e-12);
                if b.degree() < trunc {
                    assert!((cr.entry(&a, &b) - u_cv.value(&a)).norm() < 1e-12);
                }
                assert!((ar.entry(&a, &b) - u_av.value(&a)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn annihilator_kernel_via_identity() {
        // a(v) has kernel (v₋)e^{Z_V}: compare its action with the direct one
        let d = 2;
        let trunc = 3;
        let v = HVector::new(vec![c(0.2, -0.5), c(0.7, 0.1)]).unwrap();
        let ak = compose_annihilator_right(&identity_kernel(d, trunc).unwrap(), &v).unwrap();
        let phi = sample_poly(d, trunc, 1.1);
        let got = apply_kernel(&ak, &phi).unwrap();
        let expect = embed(&annihilator(&v, &phi).unwrap());
        assert!(got.max_abs_diff_up_to(&expect, trunc) < 1e-12);
    }

    #[test]
    fn rank_one_examples() {
        let d = 2;
        let trunc = 3;
        let psi_p = sample_poly(d, trunc, 0.25);
        let phi_p = sample_poly(d, trunc, 1.75);
        let psi = embed(&psi_p);
        let phi = embed(&phi_p);

        let unit = DualTable::unit(d, trunc).unwrap();
        let u0 = rank_one(&unit, &unit).unwrap();
        assert_eq!(u0.entry(&MultiIndex::zero(d), &MultiIndex::zero(d)), c(1.0, 0.0));
        assert_eq!(u0.table().support_len(), 1);

        let u = rank_one(&psi, &phi).unwrap();
        let test = sample_poly(d, trunc, 2.9);
        let got = apply_kernel(&u, &test).unwrap();
        let weight = phi.evaluate(&test).unwrap().conj();
        let expect = psi.scale(weight);
        assert!(got.max_abs_diff_up_to(&expect, trunc) < 1e-12);

        let adj = adjoint_kernel(&u);
        let expect_adj = rank_one(&phi, &psi).unwrap();
        assert!(adj.max_abs_diff(&expect_adj) < 1e-12);
    }

    #[test]
    fn antikernel_basics() {
        let d = 1;
        let mut table = DualTable::new(2, 4).unwrap();
        table.set_value(MultiIndex::zero(2), c(1.0, 0.0)).unwrap();
        let u = AntiKernel::new(d, table).unwrap();

        let phi = sample_poly(d, 2, 0.4);
        let got = apply_antikernel(&u, &phi).unwrap();
        // Uφ = conj(φ[0])·⟨·|1⟩
        assert_eq!(got.value(&MultiIndex::zero(1)), phi.coeff(&MultiIndex::zero(1)).conj());

        // antilinearity: U(iφ) = −i·U(φ)
        let i_phi = phi.scale(c(0.0, 1.0));
        let got_i = apply_antikernel(&u, &i_phi).unwrap();
        let expect = got.scale(c(0.0, -1.0));
        assert!(got_i.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn anti_compose_rules_match_operator_side() {
        let d = 2;
        let trunc = 3;
        let mut table = DualTable::new(2 * d, 2 * trunc).unwrap();
        for (k, g) in indices_up_to(2 * d, 2 * trunc).into_iter().enumerate() {
            let t = 0.37 * k as f64;
            table.set_value(g, c((1.7 * t).sin(), (0.6 * t).cos())).unwrap();
        }
        let u = AntiKernel::new(d, table).unwrap();
        let v = HVector::new(vec![c(0.5, -0.1), c(0.2, 0.9)]).unwrap();

        let ucv = anti_compose_creator_right(&u, &v).unwrap();
        let uav = anti_compose_annihilator_right(&u, &v).unwrap();
        let cvu = anti_compose_creator_left(&v, &u).unwrap();
        let avu = anti_compose_annihilator_left(&v, &u).unwrap();

        for a in indices_up_to(d, trunc) {
            let ea = PolyVector::monomial(a.clone(), c(1.0, 0.0), trunc).unwrap();
            let u_ea = apply_antikernel(&u, &ea).unwrap();

            let u_cv = apply_antikernel(&u, &creator_dropping(&v, &ea)).unwrap();
            let u_av = apply_antikernel(&u, &annihilator(&v, &ea).unwrap()).unwrap();
            let cv_u = dual_creator(&v, &u_ea).unwrap();
            let av_u = dual_annihilator(&v, &u_ea).unwrap();

            for b in indices_up_to(d, trunc) {
                if a.degree() < trunc {
                    assert!((ucv.entry(&a, &b) - u_cv.value(&b)).norm() < 1e-12);
                }
                assert!((uav.entry(&a, &b) - u_av.value(&b)).norm() < 1e-12);
                assert!((cvu.entry(&a, &b) - cv_u.value(&b)).norm() < 1e-12);
                assert!((avu.entry(&a, &b) - av_u.value(&b)).norm() < 1e-12);
            }
        }
    }
}
