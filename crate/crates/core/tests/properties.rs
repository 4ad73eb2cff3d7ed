use osslab::generators::random_orthonormal_frame;
use osslab::model_file::{read_model, write_model};
use osslab::{
    canonical_osserman, eigh, hodge_star, perturb, random_curvature, weyl, Curvature, Operator,
    Vec64,
};
use proptest::prelude::*;

fn unit(coords: &[f64]) -> Option<Vec64> {
    Vec64::from_f64(coords)
        .normalized()
        .ok()
        .filter(|v| v.norm() > 0.5)
}

fn tensor() -> impl Strategy<Value = Curvature> {
    (2usize..=6, any::<u64>(), 0.1f64..10.0)
        .prop_map(|(n, seed, scale)| random_curvature(n, seed, scale).unwrap())
}

fn tensor_and_vector() -> impl Strategy<Value = (Curvature, Vec<f64>)> {
    tensor().prop_flat_map(|r| {
        let n = r.dim();
        (Just(r), prop::collection::vec(-1.0f64..1.0, n))
    })
}

fn symmetric_matrix() -> impl Strategy<Value = Operator> {
    (2usize..=8).prop_flat_map(|n| {
        prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |d| Operator::new(n, d).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetries_are_exact(r in tensor()) {
        let n = r.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = r.get(i, j, k, l);
                        prop_assert_eq!(v, -r.get(j, i, k, l));
                        prop_assert_eq!(v, r.get(k, l, i, j));
                    }
                }
            }
        }
        prop_assert!(r.bianchi_residual().0 <= 1e-12 * r.norm_inf().max(1.0));
    }

    #[test]
    fn projection_is_idempotent(r in tensor()) {
        let again = Curvature::project(r.dim(), r.components()).unwrap();
        for (a, b) in again.components().iter().zip(r.components()) {
            prop_assert!((a - b).abs() <= 1e-14 * r.norm_inf().max(1.0));
        }
    }

    #[test]
    fn jacobi_is_symmetric_and_kills_x((r, raw) in tensor_and_vector()) {
        let Some(x) = unit(&raw) else { return Ok(()) };
        let j = r.jacobi(&x).unwrap();
        let n = r.dim();
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(j.get(a, b), j.get(b, a));
            }
        }
        prop_assert!(j.apply(&x).norm() <= 1e-13 * r.norm_inf().max(1.0));
        // tr 𝒥(x) = ρ(x, x)
        prop_assert!((j.trace() - r.ricci().form(&x, &x)).abs() <= 1e-12 * r.norm_inf().max(1.0));
    }

    #[test]
    fn jacobi_is_linear_in_tensor(seed in any::<u64>(), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let r = random_curvature::<f64>(4, seed, 1.0).unwrap();
        let s = random_curvature::<f64>(4, seed ^ 0xff, 1.0).unwrap();
        let x = Vec64::from_f64(&[0.5, -0.5, 0.5, 0.5]);
        let lhs = r.lin_comb(a, &s, b).unwrap().jacobi(&x).unwrap();
        let (jr, js) = (r.jacobi(&x).unwrap(), s.jacobi(&x).unwrap());
        for i in 0..4 {
            for k in 0..4 {
                let rhs = a * jr.get(i, k) + b * js.get(i, k);
                prop_assert!((lhs.get(i, k) - rhs).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn jacobi_expansion_holds(seed in any::<u64>(), n in 2usize..=6, theta in 0.0f64..std::f64::consts::TAU) {
        let r = random_curvature::<f64>(n, seed, 1.0).unwrap();
        let frame = random_orthonormal_frame::<f64>(n, seed.wrapping_add(1));
        let res = r.jacobi_expansion_residual(&frame[0], &frame[1], theta).unwrap();
        prop_assert!(res <= 1e-12);
    }

    #[test]
    fn eigh_reconstructs(m in symmetric_matrix()) {
        let dec = eigh(&m).unwrap();
        let scale = m.norm_inf().max(1.0);
        prop_assert!(dec.reconstruct().max_diff(&m) <= 1e-10 * scale);
        prop_assert!(dec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        for (i, u) in dec.eigenvectors.iter().enumerate() {
            for (j, v) in dec.eigenvectors.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                prop_assert!((u.dot(v) - expected).abs() <= 1e-12);
            }
            // largest-magnitude coordinate is positive
            let k = (0..u.dim()).fold(0, |k, c| if u[c].abs() > u[k].abs() { c } else { k });
            prop_assert!(u[k] > 0.0);
        }
    }

    #[test]
    fn frame_change_preserves_spectra(seed in any::<u64>(), raw in prop::collection::vec(-1.0f64..1.0, 4)) {
        let Some(x) = unit(&raw) else { return Ok(()) };
        let r = random_curvature::<f64>(4, seed, 1.0).unwrap();
        let frame = random_orthonormal_frame::<f64>(4, seed ^ 0x5a5a);
        let moved = r.in_frame(&frame).unwrap();
        // x in the new frame is Σ x_a f_a in the old one
        let old = frame
            .iter()
            .enumerate()
            .fold(Vec64::zeros(4), |acc, (a, f)| acc.add_scaled(x[a], f));
        let a = eigh(&moved.jacobi(&x).unwrap()).unwrap().eigenvalues;
        let b = eigh(&r.jacobi(&old).unwrap()).unwrap().eigenvalues;
        for (p, q) in a.iter().zip(&b) {
            prop_assert!((p - q).abs() <= 1e-12);
        }
    }

    #[test]
    fn weyl_is_trace_free(seed in any::<u64>()) {
        let w = weyl(&random_curvature::<f64>(4, seed, 1.0).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let tr: f64 = (0..4).map(|k| w.get(k, i, j, k)).sum();
                prop_assert!(tr.abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn perturbation_stays_valid(seed in any::<u64>(), eps in 0.0f64..1.0) {
        let base = canonical_osserman(1.0, 2.0, 3.0).unwrap();
        let p = perturb(&base, seed, eps).unwrap();
        prop_assert!(p.bianchi_residual().0 <= 1e-12 * p.norm_inf().max(1.0));
        prop_assert!(p.norm_inf() > 0.0);
    }

    #[test]
    fn model_file_round_trip_is_exact(r in tensor()) {
        let back: Curvature = read_model(&write_model(&r, None)).unwrap();
        for (a, b) in back.components().iter().zip(r.components()) {
            prop_assert!(a == b || (a.abs() <= 1e-15 && b.abs() <= 1e-15));
        }
    }
}

#[test]
fn hodge_star_is_an_involution() {
    let star = hodge_star::<f64>();
    for i in 0..6 {
        let e = Vec64::basis(6, i);
        assert_eq!(star.apply(&star.apply(&e)), e);
    }
}
