//! Seeded random generators for vectors, polynomials, symmetric antilinear
//! operators, and (anti)symplectic maps.
//!
//! Random symplectics are produced as `U₁ ∘ S ∘ U₂` with Haar-ish unitaries
//! `U_i` and a mode-diagonal squeeze `S`; this spans the symplectic group in
//! finite dimension, and the spectral norm of `Z_g` for such a product is
//! exactly `max_j |tanh r_j|`, so the squeeze parameters give direct control
//! over `‖Z_g‖`. Antisymplectics are the canonical conjugation composed with
//! a random symplectic.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hilbert::{HVector, RealLinearMap, SymAntilinear};
use crate::symalg::{indices_up_to, PolyVector};
use crate::C64;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian (Box-Muller).
pub fn random_c64<R: Rng>(rng: &mut R) -> C64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (-2.0 * u1.ln()).sqrt();
    C64::new(r * u2.cos(), r * u2.sin()) / 2f64.sqrt()
}

pub fn random_hvector<R: Rng>(rng: &mut R, d: usize, scale: f64) -> HVector {
    HVector::new((0..d).map(|_| random_c64(rng) * scale).collect()).expect("d ≥ 1")
}

/// Random element of the truncated algebra with unit canonical norm.
pub fn random_polyvector<R: Rng>(rng: &mut R, nvars: usize, trunc: u32) -> PolyVector {
    let mut p = PolyVector::new(nvars, trunc).expect("valid workspace");
    for a in indices_up_to(nvars, trunc) {
        let w = random_c64(rng) / a.factorial().sqrt();
        p.set_coeff(a, w).expect("within truncation");
    }
    let norm = p.canonical_norm_sq().sqrt();
    p.scale(C64::new(1.0 / norm, 0.0))
}

/// Haar-distributed unitary matrix (QR of a complex Ginibre matrix with the
/// usual phase correction).
pub fn random_unitary<R: Rng>(rng: &mut R, d: usize) -> DMatrix<C64> {
    let g = DMatrix::from_fn(d, d, |_, _| random_c64(rng));
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let phases = DMatrix::from_fn(d, d, |i, j| {
        if i == j {
            let rii = r[(i, i)];
            if rii.norm() > 0.0 {
                rii / rii.norm()
            } else {
                C64::new(1.0, 0.0)
            }
        } else {
            C64::default()
        }
    });
    q * phases
}

/// Random symplectic map with `‖Z_g‖ ≤ max_tanh`.
pub fn random_symplectic<R: Rng>(rng: &mut R, d: usize, max_tanh: f64) -> RealLinearMap {
    let params: Vec<f64> = (0..d)
        .map(|_| {
            let t = rng.gen_range(-max_tanh..max_tanh);
            t.atanh()
        })
        .collect();
    let u1 = RealLinearMap::from_complex(random_unitary(rng, d));
    let u2 = RealLinearMap::from_complex(random_unitary(rng, d));
    u1.compose(&RealLinearMap::squeeze(&params))
        .and_then(|m| m.compose(&u2))
        .expect("matching dimensions")
}

/// Random antisymplectic map: conjugation composed with a random symplectic.
pub fn random_antisymplectic<R: Rng>(rng: &mut R, d: usize, max_tanh: f64) -> RealLinearMap {
    RealLinearMap::conjugation(d)
        .compose(&random_symplectic(rng, d, max_tanh))
        .expect("matching dimensions")
}

/// Random symmetric antilinear operator scaled to the given spectral norm.
pub fn random_sym_antilinear<R: Rng>(rng: &mut R, n: usize, target_norm: f64) -> SymAntilinear {
    let g = DMatrix::from_fn(n, n, |_, _| random_c64(rng));
    let sym = (&g + g.transpose()).scale(0.5);
    let z = SymAntilinear::new(sym, 1e-12).expect("symmetrized");
    let norm = z.spectral_norm();
    if norm == 0.0 {
        return z;
    }
    SymAntilinear::new(z.matrix().scale(target_norm / norm), 1e-12).expect("scaling keeps symmetry")
}
