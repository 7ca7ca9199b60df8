//! Quadratic functionals, the correspondence `ζ ↔ Z` with symmetric
//! antilinear operators, Gaussian functionals `e^Z` as evaluation tables,
//! and closed-form Gaussian norms.
//!
//! Gaussian tables are built by the annihilator recursion
//! `G[α+δ_j] = Σ_k M_{kj} α_k G[α−δ_k]` (a hafnian-style moment recursion,
//! `O(entries·d)`); the direct power series `Σ ζⁿ/n!` is kept as an
//! independent route for cross-checks.

use nalgebra::DMatrix;

use crate::error::{FockError, FockResult};
use crate::hilbert::{HVector, SymAntilinear};
use crate::symalg::{binomial, functional_product, indices_of_degree, DualTable, MultiIndex};
use crate::C64;

/// An antilinear functional concentrated in degree 2.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic {
    table: DualTable,
}

impl Quadratic {
    /// Wrap a table, enforcing that all values sit in degree 2.
    pub fn new(table: DualTable) -> FockResult<Self> {
        if table.iter().any(|(a, _)| a.degree() != 2) {
            return Err(FockError::DegreeConcentration { degree: 2 });
        }
        Ok(Self { table })
    }

    pub fn table(&self) -> &DualTable {
        &self.table
    }

    pub fn nvars(&self) -> usize {
        self.table.nvars()
    }

    /// `ζ(e^α)` for `|α| = 2`.
    pub fn value(&self, idx: &MultiIndex) -> C64 {
        self.table.value(idx)
    }

    /// Canonical norm of the functional under the `α!`-weighted pairing.
    pub fn norm(&self) -> f64 {
        self.table.norm_sq().sqrt()
    }
}

/// The quadratic `ζ` with `ζ(xy) = ⟨y|Zx⟩`; on basis monomials
/// `ζ(e_j e_k) = M_{kj}`.
pub fn quadratic_of(z: &SymAntilinear) -> Quadratic {
    let n = z.dim();
    let m = z.matrix();
    let mut table = DualTable::new(n, 2).expect("valid dimensions");
    for j in 0..n {
        for k in j..n {
            let idx = MultiIndex::unit(n, j).join_add(&MultiIndex::unit(n, k));
            table.set_value(idx, m[(k, j)]).expect("degree 2");
        }
    }
    Quadratic { table }
}

/// Inverse of [`quadratic_of`]: read the symmetric matrix off the degree-2
/// table, `M_{jj} = ζ(e_j²)`, `M_{jk} = ζ(e_j e_k)`.
pub fn z_of_quadratic(zeta: &Quadratic) -> SymAntilinear {
    let n = zeta.nvars();
    let m = DMatrix::from_fn(n, n, |j, k| {
        zeta.value(&MultiIndex::unit(n, j).join_add(&MultiIndex::unit(n, k)))
    });
    SymAntilinear::new(m, 0.0).expect("monomial table is unordered, matrix symmetric")
}

/// The degree-1 functional `⟨·|w⟩` as a table with the given truncation
/// (values `w_k` at `δ_k`).
pub fn degree_one_table(w: &HVector, trunc: u32) -> FockResult<DualTable> {
    let mut t = DualTable::new(w.dim(), trunc)?;
    for k in 0..w.dim() {
        t.set_value(MultiIndex::unit(w.dim(), k), w.get(k))?;
    }
    Ok(t)
}

/// The Gaussian `e^Z` as an evaluation table up to total degree `trunc`,
/// built by the moment recursion `G[α+δ_j] = Σ_k M_{kj} α_k G[α−δ_k]`
/// (from `a(v)e^Z = (Zv)e^Z`). Vanishes on odd degrees.
pub fn gaussian_table(z: &SymAntilinear, trunc: u32) -> FockResult<DualTable> {
    let n = z.dim();
    let m = z.matrix();
    let mut g = DualTable::new(n, trunc)?;
    g.set_value(MultiIndex::zero(n), C64::new(1.0, 0.0))?;
    let mut deg = 2;
    while deg <= trunc {
        for gamma in indices_of_degree(n, deg) {
            let j = (0..n).find(|&j| gamma.get(j) > 0).expect("positive degree");
            let alpha = gamma.lowered(j).expect("nonzero exponent");
            let mut acc = C64::default();
            for k in 0..n {
                let ak = alpha.get(k);
                if ak == 0 {
                    continue;
                }
                let mkj = m[(k, j)];
                if mkj == C64::default() {
                    continue;
                }
                acc += mkj * (ak as f64) * g.value(&alpha.lowered(k).expect("nonzero"));
            }
            if acc != C64::default() {
                g.set_value(gamma, acc)?;
            }
        }
        deg += 2;
    }
    Ok(g)
}

/// The Gaussian by direct summation of the power series `Σ_n ζⁿ/n!`
/// (truncated); independent of the recursion, retained for cross-checks.
pub fn gaussian_table_series(z: &SymAntilinear, trunc: u32) -> FockResult<DualTable> {
    let n = z.dim();
    let zeta = quadratic_of(z).table().with_trunc(trunc)?;
    let mut sum = DualTable::unit(n, trunc)?;
    let mut term = DualTable::unit(n, trunc)?;
    let mut k = 0u32;
    while 2 * (k + 1) <= trunc {
        k += 1;
        term = functional_product(&term, &zeta)?.scale(C64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

/// Closed-form squared norm `⟨e^Z|e^Z⟩ = det(I − M conj(M))^{−1/2}`.
///
/// Requires `‖Z‖ < 1`; the determinant must come out real positive
/// (imaginary residue beyond 1e−10 signals a symmetry violation upstream).
pub fn gaussian_norm_sq_closed(z: &SymAntilinear) -> FockResult<f64> {
    let norm = z.spectral_norm();
    if norm >= 1.0 {
        return Err(FockError::NormTooLarge { norm });
    }
    let m = z.matrix();
    let prod = m * m.map(|c| c.conj());
    let n = z.dim();
    let det = (DMatrix::<C64>::identity(n, n) - prod).lu().determinant();
    if det.im.abs() > 1e-10 * det.re.abs().max(1.0) {
        return Err(FockError::NotReal { imag: det.im });
    }
    Ok(det.re.powf(-0.5))
}

/// Squared norm of a truncated Gaussian table, `Σ_α |G[α]|²/α!`.
pub fn gaussian_norm_sq_truncated(table: &DualTable) -> f64 {
    table.norm_sq()
}

/// Exact tail of the norm series past the truncation degree: the degree-2K
/// slice of `⟨e^Z|e^Z⟩` is the K-th coefficient of
/// `Π_i (1 − σ_i² x)^{−1/2}` in the singular values σ_i of `M`, so the tail
/// is the closed-form total minus the partial sum through `K = trunc/2`.
pub fn gaussian_norm_tail_bound(z: &SymAntilinear, trunc: u32) -> FockResult<f64> {
    let total = gaussian_norm_sq_closed(z)?;
    let kmax = (trunc / 2) as usize;
    let sigmas = z.matrix().clone().svd(false, false).singular_values;
    // convolve the per-mode series Σ_k binom(2k,k)(σ²/4)^k x^k
    let mut conv = vec![0.0f64; kmax + 1];
    conv[0] = 1.0;
    for s in sigmas.iter() {
        let s2 = s * s;
        let mut mode = vec![0.0f64; kmax + 1];
        for (k, slot) in mode.iter_mut().enumerate() {
            *slot = binomial(2 * k as u32, k as u32) * (s2 / 4.0).powi(k as i32);
        }
        let mut next = vec![0.0f64; kmax + 1];
        for (i, ci) in conv.iter().enumerate() {
            for (j, mj) in mode.iter().enumerate() {
                if i + j <= kmax {
                    next[i + j] += ci * mj;
                }
            }
        }
        conv = next;
    }
    let partial: f64 = conv.iter().sum();
    Ok((total - partial).max(0.0))
}

/// Hilbert-Schmidt norm of the antilinear operator = Frobenius norm of `M`.
pub fn hs_norm(z: &SymAntilinear) -> f64 {
    z.matrix().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::{dual_annihilator, DualTable};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sym(entries: &[&[(f64, f64)]]) -> SymAntilinear {
        let n = entries.len();
        let m = DMatrix::from_fn(n, n, |i, j| {
            let (re, im) = entries[i][j];
            c(re, im)
        });
        SymAntilinear::new(m, 1e-12).unwrap()
    }

    #[test]
    fn quadratic_round_trip() {
        let z = sym(&[&[(0.3, 0.1), (-0.2, 0.4)], &[(-0.2, 0.4), (0.0, -0.6)]]);
        let zeta = quadratic_of(&z);
        let back = z_of_quadratic(&zeta);
        assert_eq!(back.matrix(), z.matrix());
        let again = quadratic_of(&back);
        assert_eq!(again.table().max_abs_diff(zeta.table()), 0.0);

        let zero = SymAntilinear::zero(2);
        assert_eq!(quadratic_of(&zero).table().support_len(), 0);
    }

    #[test]
    fn quadratic_rejects_wrong_degrees() {
        let mut t = DualTable::new(2, 3).unwrap();
        t.set_value(MultiIndex::new(vec![1, 0]), c(1.0, 0.0)).unwrap();
        assert!(matches!(
            Quadratic::new(t),
            Err(FockError::DegreeConcentration { degree: 2 })
        ));
    }

    #[test]
    fn annihilator_reads_z() {
        // a(e_j) ζ is the degree-1 functional e_k ↦ M_{kj}
        let z = sym(&[&[(0.5, -0.3), (0.2, 0.7)], &[(0.2, 0.7), (-0.4, 0.1)]]);
        let zeta = quadratic_of(&z);
        for j in 0..2 {
            let ej = HVector::basis(2, j);
            let av = dual_annihilator(&ej, zeta.table()).unwrap();
            for k in 0..2 {
                let got = av.value(&MultiIndex::unit(2, k));
                assert!((got - z.matrix()[(k, j)]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn gaussian_of_zero_is_unit() {
        let g = gaussian_table(&SymAntilinear::zero(2), 6).unwrap();
        assert_eq!(g.support_len(), 1);
        assert_eq!(g.value(&MultiIndex::zero(2)), c(1.0, 0.0));
    }

    #[test]
    fn gaussian_single_mode_moments() {
        // d=1: G[2n] = (2n)! mⁿ / (2ⁿ n!)
        let m = c(0.35, -0.2);
        let z = SymAntilinear::new(DMatrix::from_element(1, 1, m), 0.0).unwrap();
        let g = gaussian_table(&z, 8).unwrap();
        for n in 0..=4u32 {
            let expect = m.powu(n) * crate::symalg::factorial(2 * n)
                / (2f64.powi(n as i32) * crate::symalg::factorial(n));
            let got = g.value(&MultiIndex::new(vec![2 * n]));
            assert!((got - expect).norm() < 1e-12, "n = {n}");
        }
        // odd degrees vanish
        assert_eq!(g.value(&MultiIndex::new(vec![3])), c(0.0, 0.0));
    }

    #[test]
    fn recursion_matches_series() {
        let z = sym(&[
            &[(0.31, 0.12), (-0.22, 0.05), (0.1, -0.3)],
            &[(-0.22, 0.05), (0.09, -0.17), (0.02, 0.2)],
            &[(0.1, -0.3), (0.02, 0.2), (-0.25, 0.08)],
        ]);
        let a = gaussian_table(&z, 8).unwrap();
        let b = gaussian_table_series(&z, 8).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn norm_closed_form() {
        assert_abs_diff_eq!(
            gaussian_norm_sq_closed(&SymAntilinear::zero(3)).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        let m = c(0.4, 0.3);
        let z = SymAntilinear::new(DMatrix::from_element(1, 1, m), 0.0).unwrap();
        let expect = (1.0 - m.norm_sqr()).powf(-0.5);
        assert_abs_diff_eq!(gaussian_norm_sq_closed(&z).unwrap(), expect, epsilon = 1e-14);
    }

    #[test]
    fn norm_rejects_large_z() {
        let z = SymAntilinear::new(DMatrix::from_element(1, 1, c(1.0, 0.0)), 0.0).unwrap();
        assert!(matches!(
            gaussian_norm_sq_closed(&z),
            Err(FockError::NormTooLarge { .. })
        ));
    }

    #[test]
    fn truncated_norm_within_tail() {
        let z = sym(&[&[(0.30, 0.10), (0.05, -0.12)], &[(0.05, -0.12), (-0.2, 0.25)]]);
        assert!(z.spectral_norm() <= 0.5);
        let trunc = 16;
        let g = gaussian_table(&z, trunc).unwrap();
        let truncated = gaussian_norm_sq_truncated(&g);
        let closed = gaussian_norm_sq_closed(&z).unwrap();
        let tail = gaussian_norm_tail_bound(&z, trunc).unwrap();
        let diff = (closed - truncated).abs();
        assert!(diff <= tail + 1e-9, "diff {diff} vs tail {tail}");
        assert!(diff <= 1e-6);
    }

    #[test]
    fn hs_norm_relation() {
        // ‖Z‖_HS = √2 ‖ζ‖
        let z = sym(&[
            &[(0.6, -0.2), (0.3, 0.9), (-0.5, 0.0)],
            &[(0.3, 0.9), (0.1, 0.4), (0.7, -0.6)],
            &[(-0.5, 0.0), (0.7, -0.6), (-0.8, 0.2)],
        ]);
        let zeta = quadratic_of(&z);
        assert_abs_diff_eq!(
            hs_norm(&z),
            2f64.sqrt() * zeta.norm(),
            epsilon = 1e-12
        );

        let zero = SymAntilinear::zero(2);
        assert_eq!(hs_norm(&zero), 0.0);
        assert_eq!(quadratic_of(&zero).norm(), 0.0);

        // d=1: ‖Z‖_HS = |m| while ‖ζ‖ = |m|/√2
        let m = c(0.3, -0.4);
        let z1 = SymAntilinear::new(DMatrix::from_element(1, 1, m), 0.0).unwrap();
        assert_abs_diff_eq!(hs_norm(&z1), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(quadratic_of(&z1).norm(), 0.5 / 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn annihilator_acts_as_creator_on_gaussian() {
        // a(v) e^Z = (Zv) e^Z
        let z = sym(&[&[(0.25, 0.15), (-0.1, 0.3)], &[(-0.1, 0.3), (0.2, -0.1)]]);
        let trunc = 8;
        let g = gaussian_table(&z, trunc).unwrap();
        let v = HVector::new(vec![c(0.7, -0.2), c(-0.4, 0.5)]).unwrap();
        let lhs = dual_annihilator(&v, &g).unwrap();
        let zv = z.apply(&v).unwrap();
        let rhs = functional_product(&degree_one_table(&zv, trunc).unwrap(), &g).unwrap();
        assert!(lhs.max_abs_diff_up_to(&rhs, trunc - 1) < 1e-12);
    }
}
