use fockcalc::hilbert::{HVector, MapKind};
use fockcalc::metaplectic::{
    anti_kernel, metaplectic_kernel, pack, verify_anti_intertwine, verify_intertwine,
};
use fockcalc::kernel::adjoint_kernel;
use fockcalc::sampling::{random_antisymplectic, random_symplectic, rng_from_seed};
use fockcalc::{C64, DEFAULT_TOL};

#[test]
fn residual_scales() {
    let mut rng = rng_from_seed(99);
    // criterion 7 shape: d ≤ 2, N = 8, tanh ≤ 0.6
    for d in [1usize, 2] {
        let mut worst: f64 = 0.0;
        let mut worst_adj: f64 = 0.0;
        for _ in 0..5 {
            let g = random_symplectic(&mut rng, d, 0.6);
            let p = pack(&g, MapKind::Symplectic, DEFAULT_TOL).unwrap();
            let u = metaplectic_kernel(&p, 8).unwrap();
            for j in 0..d {
                let v = HVector::basis(d, j);
                worst = worst.max(verify_intertwine(&p, &u, &v).unwrap());
                let iv = v.scale(C64::new(0.0, 1.0));
                worst = worst.max(verify_intertwine(&p, &u, &iv).unwrap());
            }
            let p_inv = pack(&g.invert().unwrap(), MapKind::Symplectic, DEFAULT_TOL).unwrap();
            let u_inv = metaplectic_kernel(&p_inv, 8).unwrap();
            worst_adj = worst_adj.max(adjoint_kernel(&u).max_abs_diff(&u_inv));
        }
        println!("d={d} N=8 intertwine worst: {worst:.3e}  adjoint-vs-inverse worst: {worst_adj:.3e}");
    }
    // criterion 11 shape: N = 10, antisymplectic
    for d in [1usize, 2] {
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let g = random_antisymplectic(&mut rng, d, 0.5);
            let p = pack(&g, MapKind::Antisymplectic, DEFAULT_TOL).unwrap();
            let u = anti_kernel(&p, 10).unwrap();
            for j in 0..d {
                let v = HVector::basis(d, j);
                worst = worst.max(verify_anti_intertwine(&p, &u, &v).unwrap());
                let iv = v.scale(C64::new(0.0, 1.0));
                worst = worst.max(verify_anti_intertwine(&p, &u, &iv).unwrap());
            }
        }
        println!("d={d} N=10 anti-intertwine worst: {worst:.3e}");
    }
}
