//! A named invariant suite over seeded random inputs, covering every layer
//! of the crate; the CLI `selftest` subcommand reports these results as
//! JSON. Each check produces a residual and the tolerance it was held to.

use crate::complexify::{minus, minus_poly, plus, plus_poly};
use crate::error::FockResult;
use crate::gaussian::{
    degree_one_table, gaussian_norm_sq_closed, gaussian_norm_sq_truncated,
    gaussian_norm_tail_bound, gaussian_table, gaussian_table_series, hs_norm, quadratic_of,
};
use crate::hilbert::{
    inner, matrix_residual, omega, symmetry_residual, z_of, HVector, MapKind,
};
use crate::kernel::{adjoint_kernel, apply_kernel, identity_kernel, number_kernel, Kernel};
use crate::metaplectic::{
    anti_image_gram, anti_kernel, anti_shale_constant, canonical_gram, coherent_element_closed,
    coherent_element_truncated, coherent_tail_bound, field_operator, image_gram,
    metaplectic_kernel, pack, uniqueness_check, verify_anti_intertwine, verify_intertwine,
};
use crate::sampling::{
    random_antisymplectic, random_hvector, random_polyvector, random_sym_antilinear,
    random_symplectic, rng_from_seed,
};
use crate::symalg::{
    annihilator, canonical_inner, creator, dual_annihilator, dual_creator, indices_up_to,
    inner_permanent_oracle, product_of_vectors, DualTable, PolyVector,
};
use crate::{C64, DEFAULT_TOL};

/// Outcome of one named invariant check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(name: &'static str, residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

/// Run the whole suite at dimension `d`, truncation `trunc` (≥ 4), and
/// seed. With `perturb` set, an asymmetric perturbation is injected into
/// the symmetry check, which must then fail — a negative control for the
/// reporting pipeline itself.
pub fn run(d: usize, trunc: u32, seed: u64, perturb: bool) -> FockResult<Vec<CheckResult>> {
    let trunc = trunc.max(4);
    let mut out = Vec::new();

    out.push(check_inner_omega(d, seed)?);
    out.push(check_compose_apply(d, seed)?);
    out.push(check_symplectic_identities(d, seed)?);
    out.push(check_z_symmetry(d, seed, perturb));
    out.push(check_ccr(d, trunc, seed)?);
    out.push(check_adjointness(d, trunc, seed)?);
    out.push(check_permanent_oracle(d, trunc, seed)?);
    out.push(check_complexify(d, trunc, seed)?);
    out.push(check_gaussian_recursion(d, trunc, seed)?);
    out.push(check_gaussian_norm(d, seed)?);
    out.push(check_hs_norm(d, seed)?);
    out.push(check_identity_kernel(d, trunc, seed)?);
    out.push(check_number_kernel(d, trunc)?);
    out.push(check_kernel_compose(d, trunc, seed)?);
    out.push(check_kernel_adjoint(d, trunc, seed)?);
    out.push(check_metaplectic_intertwine(d, trunc, seed)?);
    out.push(check_metaplectic_vacuum(d, trunc, seed)?);
    out.push(check_metaplectic_adjoint(d, trunc, seed)?);
    out.push(check_uniqueness(d, seed)?);
    out.push(check_scaled_isometry(d, trunc, seed)?);
    out.push(check_coherent_formula(d, trunc, seed)?);
    out.push(check_anti_intertwine(d, trunc, seed)?);
    out.push(check_anti_unitarity(d, trunc, seed)?);
    out.push(check_field_ccr(d, trunc, seed)?);

    Ok(out)
}

fn check_inner_omega(d: usize, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x11);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let x = random_hvector(&mut rng, d, 1.0);
        let y = random_hvector(&mut rng, d, 1.0);
        let jy = y.scale(C64::new(0.0, 1.0));
        let lhs = inner(&x, &y)?;
        let rhs = C64::new(omega(&x, &jy)?, omega(&x, &y)?);
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(CheckResult::new("inner-omega-compatibility", worst, 1e-14))
}

fn check_compose_apply(d: usize, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x22);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let s = random_symplectic(&mut rng, d, 0.7);
        let t = random_antisymplectic(&mut rng, d, 0.7);
        let v = random_hvector(&mut rng, d, 1.0);
        let lhs = s.compose(&t)?.apply(&v)?;
        let rhs = s.apply(&t.apply(&v)?)?;
        worst = worst.max(lhs.max_abs_diff(&rhs));
        let inv = s.invert()?;
        let round = s.compose(&inv)?.apply(&v)?;
        worst = worst.max(round.max_abs_diff(&v));
    }
    Ok(CheckResult::new("compose-apply-consistency", worst, 1e-12))
}

fn check_symplectic_identities(d: usize, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x33);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let g = random_symplectic(&mut rng, d, 0.6);
        let g_inv = g.invert()?;
        let z_g = z_of(&g, MapKind::Symplectic, DEFAULT_TOL)?;
        let z_ginv = z_of(&g_inv, MapKind::Symplectic, DEFAULT_TOL)?;
        worst = worst.max(symmetry_residual(z_g.matrix()));
        if z_g.spectral_norm() >= 1.0 {
            worst = worst.max(1.0);
        }
        let c_ginv_inv = g_inv
            .complex_part()
            .clone()
            .lu()
            .try_inverse()
            .expect("invertible");
        let rhs = z_ginv.matrix() * g.antilinear_part().map(|c| c.conj()) + g.complex_part();
        worst = worst.max(matrix_residual(&c_ginv_inv, &rhs));
        let lhs2 = z_ginv.matrix() * g.complex_part().map(|c| c.conj());
        let rhs2 = -(g.complex_part() * z_g.matrix());
        worst = worst.max(matrix_residual(&lhs2, &rhs2));
    }
    Ok(CheckResult::new("symplectic-z-identities", worst, DEFAULT_TOL))
}

fn check_z_symmetry(d: usize, seed: u64, perturb: bool) -> CheckResult {
    let mut rng = rng_from_seed(seed ^ 0x44);
    let z = random_sym_antilinear(&mut rng, d.max(2), 0.5);
    let mut m = z.matrix().clone();
    if perturb {
        m[(0, 1)] += C64::new(1e-3, 0.0);
    }
    CheckResult::new("z-symmetry", symmetry_residual(&m), DEFAULT_TOL)
}

fn check_ccr(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x55);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let x = random_hvector(&mut rng, d, 1.0);
        let y = random_hvector(&mut rng, d, 1.0);
        let psi = random_polyvector(&mut rng, d, trunc - 2);
        let psi = psi.with_trunc(trunc)?;
        let ip = inner(&x, &y)?;

        let mixed = annihilator(&x, &creator(&y, &psi)?)?
            .sub(&creator(&y, &annihilator(&x, &psi)?)?)?
            .sub(&psi.scale(ip))?;
        worst = worst.max(mixed.max_abs());

        let aa = annihilator(&x, &annihilator(&y, &psi)?)?
            .sub(&annihilator(&y, &annihilator(&x, &psi)?)?)?;
        worst = worst.max(aa.max_abs());

        let cc = creator(&x, &creator(&y, &psi)?)?
            .sub(&creator(&y, &creator(&x, &psi)?)?)?;
        worst = worst.max(cc.max_abs());
    }
    Ok(CheckResult::new("ccr-polynomials", worst, 1e-12))
}

fn check_adjointness(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x66);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let v = random_hvector(&mut rng, d, 1.0);
        let psi = random_polyvector(&mut rng, d, trunc);
        let phi = random_polyvector(&mut rng, d, trunc - 1).with_trunc(trunc)?;
        let lhs = canonical_inner(&psi, &creator(&v, &phi)?)?;
        let rhs = canonical_inner(&annihilator(&v, &psi)?, &phi)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(CheckResult::new("creator-annihilator-adjointness", worst, 1e-12))
}

fn check_permanent_oracle(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x77);
    let mut worst: f64 = 0.0;
    let n_max = (trunc.min(4)) as usize;
    for _ in 0..10 {
        for n in 1..=n_max {
            let xs: Vec<HVector> = (0..n).map(|_| random_hvector(&mut rng, d, 0.8)).collect();
            let ys: Vec<HVector> = (0..n).map(|_| random_hvector(&mut rng, d, 0.8)).collect();
            let oracle = inner_permanent_oracle(&xs, &ys)?;
            let lhs = canonical_inner(
                &product_of_vectors(&xs, d, trunc)?,
                &product_of_vectors(&ys, d, trunc)?,
            )?;
            worst = worst.max((lhs - oracle).norm());
        }
    }
    Ok(CheckResult::new("permanent-oracle", worst, 1e-10))
}

fn check_complexify(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x88);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let x = random_hvector(&mut rng, d, 1.0);
        let y = random_hvector(&mut rng, d, 1.0);
        let ip = inner(&x, &y)?;
        worst = worst.max((inner(&plus(&x), &plus(&y))? - ip).norm());
        worst = worst.max((inner(&minus(&x), &minus(&y))? - ip.conj()).norm());
        worst = worst.max(inner(&plus(&x), &minus(&y))?.norm());

        let psi = random_polyvector(&mut rng, d, trunc);
        let phi = random_polyvector(&mut rng, d, trunc);
        let pp = canonical_inner(&plus_poly(&psi), &plus_poly(&phi))?;
        let mm = canonical_inner(&minus_poly(&psi), &minus_poly(&phi))?;
        let ip = canonical_inner(&psi, &phi)?;
        worst = worst.max((pp - ip).norm()).max((mm - ip.conj()).norm());
    }
    Ok(CheckResult::new("complexify-isometries", worst, 1e-12))
}

fn check_gaussian_recursion(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x99);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let z = random_sym_antilinear(&mut rng, d, 0.6);
        let rec = gaussian_table(&z, trunc)?;
        let ser = gaussian_table_series(&z, trunc)?;
        worst = worst.max(rec.max_abs_diff(&ser));

        // a(v)e^Z = (Zv)e^Z
        let v = random_hvector(&mut rng, d, 1.0);
        let lhs = dual_annihilator(&v, &rec)?;
        let rhs = crate::symalg::functional_product(
            &degree_one_table(&z.apply(&v)?, trunc)?,
            &rec,
        )?;
        worst = worst.max(lhs.max_abs_diff_up_to(&rhs, trunc - 1));
    }
    Ok(CheckResult::new("gaussian-recursion-vs-series", worst, 1e-12))
}

fn check_gaussian_norm(d: usize, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0xaa);
    let trunc = 16;
    // per-draw gate (tail bound, capped at 1e−6); report the worst ratio
    let mut worst_ratio: f64 = 0.0;
    for _ in 0..5 {
        let z = random_sym_antilinear(&mut rng, d, 0.45);
        let table = gaussian_table(&z, trunc)?;
        let truncated = gaussian_norm_sq_truncated(&table);
        let closed = gaussian_norm_sq_closed(&z)?;
        let tail = gaussian_norm_tail_bound(&z, trunc)?;
        let gate = (tail + 1e-9).min(1e-6);
        worst_ratio = worst_ratio.max((closed - truncated).abs() / gate);
    }
    Ok(CheckResult::new("gaussian-norm-closed-form", worst_ratio, 1.0))
}

fn check_hs_norm(d: usize, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0xbb);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let z = random_sym_antilinear(&mut rng, d, 0.8);
        let lhs = hs_norm(&z);
        let rhs = 2f64.sqrt() * quadratic_of(&z).norm();
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(CheckResult::new("hs-quadratic-norm", worst, 1e-12))
}

fn check_identity_kernel(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0xcc);
    let u = identity_kernel(d, trunc)?;
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let psi = random_polyvector(&mut rng, d, trunc);
        let phi = random_polyvector(&mut rng, d, trunc);
        let prod = plus_poly(&psi)
            .with_trunc(2 * trunc)?
            .mul(&minus_poly(&phi).with_trunc(2 * trunc)?)?;
        let lhs = u.table().evaluate(&prod)?;
        let rhs = canonical_inner(&psi, &phi)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(CheckResult::new("identity-kernel-theorem", worst, DEFAULT_TOL))
}

fn check_number_kernel(d: usize, trunc: u32) -> FockResult<CheckResult> {
    let u = number_kernel(d, trunc)?;
    let mut worst: f64 = 0.0;
    for a in indices_up_to(d, trunc) {
        for b in indices_up_to(d, trunc) {
            let expect = if a == b {
                C64::new(a.degree() as f64 * a.factorial(), 0.0)
            } else {
                C64::default()
            };
            worst = worst.max((u.entry(&a, &b) - expect).norm());
        }
    }
    Ok(CheckResult::new("number-kernel", worst, 1e-12))
}

fn random_kernel<R: rand::Rng>(rng: &mut R, d: usize, trunc: u32) -> Kernel {
    let mut table = DualTable::new(2 * d, trunc).expect("valid workspace");
    for g in indices_up_to(2 * d, trunc) {
        let w = crate::sampling::random_c64(rng) / (1.0 + g.factorial()).sqrt();
        table.set_value(g, w).expect("within truncation");
    }
    Kernel::new(d, table).expect("matching dimensions")
}

fn check_kernel_compose(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0xdd);
    let half = trunc / 2;
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let u = random_kernel(&mut rng, d, trunc);
        let v = random_hvector(&mut rng, d, 1.0);
        let cl = crate::kernel::compose_creator_left(&v, &u)?;
        let al = crate::kernel::compose_annihilator_left(&v, &u)?;
        let cr = crate::kernel::compose_creator_right(&u, &v)?;
        let ar = crate::kernel::compose_annihilator_right(&u, &v)?;
        for b in indices_up_to(d, half) {
            let eb = PolyVector::monomial(b.clone(), C64::new(1.0, 0.0), half)?;
            let img = apply_kernel(&u, &eb)?;
            let cv_u = dual_creator(&v, &img)?;
            let av_u = dual_annihilator(&v, &img)?;
            let u_cv = apply_kernel(&u, &crate::symalg::creator_dropping(&v, &eb))?;
            let u_av = apply_kernel(&u, &annihilator(&v, &eb)?)?;
            for a in indices_up_to(d, half) {
                worst = worst.max((cl.entry(&a, &b) - cv_u.value(&a)).norm());
                worst = worst.max((al.entry(&a, &b) - av_u.value(&a)).norm());
                if b.degree() < half {
                    worst = worst.max((cr.entry(&a, &b) - u_cv.value(&a)).norm());
                }
                worst = worst.max((ar.entry(&a, &b) - u_av.value(&a)).norm());
            }
        }
    }
    Ok(CheckResult::new("kernel-compose-rules", worst, 1e-12))
}

fn check_kernel_adjoint(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0xee);
    let half = trunc / 2;
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let u = random_kernel(&mut rng, d, trunc);
        let ustar = adjoint_kernel(&u);
        let phi = random_polyvector(&mut rng, d, half);
        let psi = random_polyvector(&mut rng, d, half);
        let lhs = apply_kernel(&ustar, &phi)?.evaluate(&psi)?;
        let rhs = apply_kernel(&u, &psi)?.evaluate(&phi)?;
        worst = worst.max((lhs - rhs.conj()).norm());
        worst = worst.max(adjoint_kernel(&ustar).max_abs_diff(&u));
    }
    Ok(CheckResult::new("kernel-adjoint", worst, 1e-12))
}

fn check_metaplectic_intertwine(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0xff);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let g = random_symplectic(&mut rng, d, 0.6);
        let p = pack(&g, MapKind::Symplectic, DEFAULT_TOL)?;
        let u = metaplectic_kernel(&p, trunc)?;
        for j in 0..d {
            let v = HVector::basis(d, j);
            worst = worst.max(verify_intertwine(&p, &u, &v)?);
            let iv = v.scale(C64::new(0.0, 1.0));
            worst = worst.max(verify_intertwine(&p, &u, &iv)?);
        }
    }
    Ok(CheckResult::new("metaplectic-intertwine", worst, 1e-9))
}

fn check_metaplectic_vacuum(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x101);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let g = random_symplectic(&mut rng, d, 0.6);
        let p = pack(&g, MapKind::Symplectic, DEFAULT_TOL)?;
        let u = metaplectic_kernel(&p, trunc)?;
        let one = PolyVector::one(d, trunc)?;
        let got = apply_kernel(&u, &one)?;
        let expect = gaussian_table(p.z_ginv(), 2 * trunc)?;
        worst = worst.max(got.max_normalized_diff_up_to(&expect, 2 * trunc));
    }
    Ok(CheckResult::new("metaplectic-vacuum", worst, DEFAULT_TOL))
}

fn check_metaplectic_adjoint(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x102);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let g = random_symplectic(&mut rng, d, 0.6);
        let p = pack(&g, MapKind::Symplectic, DEFAULT_TOL)?;
        let p_inv = pack(&g.invert()?, MapKind::Symplectic, DEFAULT_TOL)?;
        let u = metaplectic_kernel(&p, trunc)?;
        let u_inv = metaplectic_kernel(&p_inv, trunc)?;
        worst = worst.max(adjoint_kernel(&u).max_normalized_diff(&u_inv));
    }
    Ok(CheckResult::new("metaplectic-adjoint-inverse", worst, DEFAULT_TOL))
}

fn check_uniqueness(d: usize, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x103);
    let g = random_symplectic(&mut rng, d, 0.6);
    let p = pack(&g, MapKind::Symplectic, DEFAULT_TOL)?;
    let ok = uniqueness_check(&p, 4)?;
    Ok(CheckResult::new(
        "metaplectic-uniqueness",
        if ok { 0.0 } else { 1.0 },
        0.5,
    ))
}

fn check_scaled_isometry(d: usize, _trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x104);
    // run at the degree/truncation where the Gaussian tail sits below 1e−4
    let (vec_trunc, deg) = (12, 4);
    let mut worst: f64 = 0.0;
    for _ in 0..2 {
        let g = random_symplectic(&mut rng, d, 0.3);
        let p = pack(&g, MapKind::Symplectic, DEFAULT_TOL)?;
        let u = metaplectic_kernel(&p, vec_trunc)?;
        let scale = gaussian_norm_sq_closed(p.z_g())?;
        let (basis, gram) = image_gram(&u, deg);
        let (_, canon) = canonical_gram(d, deg);
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                worst = worst.max((gram[(i, j)] - canon[(i, j)] * scale).norm());
            }
        }
    }
    Ok(CheckResult::new("scaled-isometry", worst, 1e-4))
}

fn check_coherent_formula(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x105);
    let vec_trunc = trunc.max(12);
    let mut worst_ratio: f64 = 0.0;
    for _ in 0..3 {
        let g = random_symplectic(&mut rng, d, 0.6);
        let p = pack(&g, MapKind::Symplectic, DEFAULT_TOL)?;
        let u = metaplectic_kernel(&p, vec_trunc)?;
        let x = random_hvector(&mut rng, d, 0.3);
        let y = random_hvector(&mut rng, d, 0.3);
        let closed = coherent_element_closed(&p, &x, &y)?;
        let truncated = coherent_element_truncated(&u, &x, &y)?;
        let gate = 1e-8f64.max(coherent_tail_bound(&x, &y, vec_trunc));
        worst_ratio = worst_ratio.max((closed - truncated).norm() / gate);
    }
    Ok(CheckResult::new("coherent-formula", worst_ratio, 1.0))
}

fn check_anti_intertwine(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x106);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let g = random_antisymplectic(&mut rng, d, 0.6);
        let p = pack(&g, MapKind::Antisymplectic, DEFAULT_TOL)?;
        let u = anti_kernel(&p, trunc)?;
        for j in 0..d {
            let v = HVector::basis(d, j);
            worst = worst.max(verify_anti_intertwine(&p, &u, &v)?);
            let iv = v.scale(C64::new(0.0, 1.0));
            worst = worst.max(verify_anti_intertwine(&p, &u, &iv)?);
        }
    }
    Ok(CheckResult::new("anti-intertwine", worst, 1e-9))
}

fn check_anti_unitarity(d: usize, _trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x107);
    let (vec_trunc, deg) = (10, 4);
    let mut worst: f64 = 0.0;
    for _ in 0..2 {
        let g = random_antisymplectic(&mut rng, d, 0.25);
        let p = pack(&g, MapKind::Antisymplectic, DEFAULT_TOL)?;
        let u = anti_kernel(&p, vec_trunc)?;
        let scale = anti_shale_constant(&p)?.powi(-2);
        // antiunitarity reverses the pairing: ⟨Ue^α|Ue^α′⟩ = scale·⟨e^α′|e^α⟩
        let (basis, gram) = anti_image_gram(&u, deg);
        let (_, canon) = canonical_gram(d, deg);
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let expect = canon[(j, i)] * scale;
                worst = worst.max((gram[(i, j)] - expect).norm());
            }
        }
    }
    Ok(CheckResult::new("anti-unitarity", worst, 1e-4))
}

fn check_field_ccr(d: usize, trunc: u32, seed: u64) -> FockResult<CheckResult> {
    let mut rng = rng_from_seed(seed ^ 0x108);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let x = random_hvector(&mut rng, d, 1.0);
        let y = random_hvector(&mut rng, d, 1.0);
        let (basis, px) = field_operator(&x, trunc)?;
        let (_, py) = field_operator(&y, trunc)?;
        let comm = &px * &py - &py * &px;
        let expect = C64::new(0.0, omega(&x, &y)?);
        for i in 0..basis.len() {
            if basis.index(i).degree() + 2 > trunc {
                continue;
            }
            for j in 0..basis.len() {
                if basis.index(j).degree() + 2 > trunc {
                    continue;
                }
                let target = if i == j { expect } else { C64::default() };
                worst = worst.max((comm[(i, j)] - target).norm());
            }
        }
    }
    Ok(CheckResult::new("field-ccr", worst, 1e-12))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_on_seeded_inputs() {
        for (d, trunc, seed) in [(1, 8, 1u64), (2, 6, 7u64)] {
            let results = run(d, trunc, seed, false).unwrap();
            for r in &results {
                assert!(
                    r.pass,
                    "({d},{trunc},{seed}) {} residual {:.3e} tol {:.3e}",
                    r.name, r.residual, r.tolerance
                );
            }
        }
    }

    #[test]
    fn perturbation_fails_named_check() {
        let results = run(1, 6, 3, true).unwrap();
        let sym = results.iter().find(|r| r.name == "z-symmetry").unwrap();
        assert!(!sym.pass);
        assert!(results.iter().filter(|r| !r.pass).count() == 1);
    }
}
