//! The duality/Osserman equivalence and its supporting structure, exercised
//! on positive and negative models.

use osslab::checkers::{perp_spectrum, sampled_spectra};
use osslab::generators::{fuzz_corpus, random_orthonormal_frame};
use osslab::{
    adapted_basis, canonical_osserman, classify_structure, equivalence_experiment,
    osserman_check_exact, osserman_check_sampled, perturb, rakic_duality_check, random_curvature,
    run_fuzz, sample_unit_vectors, self_dual_check, space_form, weyl_pm, CorpusMix, Curvature,
    Curvature32, Duality, EigStructureCase, Error, Orientation, SampleConfig, Vec64,
};

const TOL: f64 = 1e-8;

fn cfg(count: usize, seed: u64) -> SampleConfig {
    SampleConfig::new(count, seed)
}

#[test]
fn canonical_spectrum_is_constant() {
    let r = canonical_osserman(1.0, 2.0, 3.0).unwrap();
    let dirs = sample_unit_vectors::<f64>(4, &cfg(300, 1)).unwrap();
    for s in sampled_spectra(&r, &dirs).unwrap() {
        for (a, b) in s.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() <= 1e-9);
        }
    }
}

#[test]
fn repeated_eigenvalue_pattern_holds_everywhere() {
    let r = canonical_osserman(4.0, 1.0, 1.0).unwrap();
    let c = cfg(1000, 9);
    let dirs = sample_unit_vectors::<f64>(4, &c).unwrap();
    for s in sampled_spectra(&r, &dirs).unwrap() {
        for (a, b) in s.iter().zip([1.0, 1.0, 4.0]) {
            assert!((a - b).abs() <= 1e-9);
        }
    }
    assert!(osserman_check_sampled(&r, &c, TOL).unwrap().passed());
    assert!(rakic_duality_check(&r, &cfg(200, 9), TOL, 3)
        .unwrap()
        .passed());
}

#[test]
fn canonical_with_equal_eigenvalues_is_a_space_form() {
    let r = canonical_osserman(1.0, 1.0, 1.0).unwrap();
    assert_eq!(r, space_form(4, 1.0).unwrap());
}

#[test]
fn positives_pass_every_check() {
    let models = [
        canonical_osserman(1.0, 2.0, 3.0).unwrap(),
        canonical_osserman(2.0, 2.0, 5.0).unwrap(),
        canonical_osserman(-1.0, 0.0, 3.0)
            .unwrap()
            .in_frame(&random_orthonormal_frame(4, 3))
            .unwrap(),
        space_form(4, -0.5).unwrap(),
        Curvature::zero(4).unwrap(),
    ];
    for r in &models {
        let rep = equivalence_experiment(r, &cfg(200, 0), TOL).unwrap();
        assert!(rep.duality.passed() && rep.osserman.passed());
        assert_eq!(rep.exact.as_ref().map(|e| e.passed()), Some(true));
        assert!(rep.consistent());
        assert!(rep.duality.witness.is_none());
    }
}

#[test]
fn random_tensors_fail_both_checks() {
    for seed in 0..20 {
        let r = random_curvature::<f64>(4, seed, 1.0).unwrap();
        let c = cfg(100, seed);
        assert!(
            !rakic_duality_check(&r, &c, TOL, 2).unwrap().passed(),
            "seed {seed}"
        );
        assert!(
            !osserman_check_sampled(&r, &c, TOL).unwrap().passed(),
            "seed {seed}"
        );
        assert!(
            !osserman_check_exact(&r, TOL).unwrap().passed(),
            "seed {seed}"
        );
        assert_eq!(
            self_dual_check(&r, TOL).unwrap().verdict,
            Duality::Neither,
            "seed {seed}"
        );
        assert!(matches!(
            adapted_basis(&r, &Vec64::basis(4, 0), TOL),
            Err(Error::NotAdapted { .. })
        ));
    }
}

#[test]
fn perturbed_canonical_fails_with_witness() {
    let base = canonical_osserman(1.0, 2.0, 3.0).unwrap();
    for seed in 0..20 {
        let r = perturb(&base, seed, 0.05).unwrap();
        let c = cfg(100, seed);
        let osserman = osserman_check_sampled(&r, &c, TOL).unwrap();
        let duality = rakic_duality_check(&r, &c, TOL, 2).unwrap();
        assert!(!osserman.passed() && !duality.passed(), "seed {seed}");
        assert!(
            !osserman_check_exact(&r, TOL).unwrap().passed(),
            "seed {seed}"
        );
        let w = osserman.witness.expect("failing report has a witness");
        assert!((w.direction.norm() - 1.0).abs() < 1e-12);
        assert!(w.residual > TOL);
    }
}

#[test]
fn residuals_grow_with_perturbation_size() {
    let base = canonical_osserman(1.0, 2.0, 3.0).unwrap();
    let c = cfg(50, 4);
    let mut last = 0.0;
    for eps in [1e-6, 1e-4, 1e-2, 1e-1] {
        let r = perturb(&base, 11, eps).unwrap();
        let res = rakic_duality_check(&r, &c, TOL, 2).unwrap().max_residual;
        assert!(res > last, "eps {eps}: {res} <= {last}");
        last = res;
    }
}

fn ricci_form(r: &Curvature, v: &Vec64) -> f64 {
    r.ricci().form(v, v)
}

#[test]
fn adapted_basis_identities() {
    let mut models: Vec<Curvature> = Vec::new();
    for (i, l) in [
        [1.0, 2.0, 3.0],
        [2.0, 2.0, 5.0],
        [-1.0, 3.0, 3.0],
        [0.0, 0.0, 0.0],
    ]
    .iter()
    .enumerate()
    {
        let r = canonical_osserman(l[0], l[1], l[2]).unwrap();
        models.push(r.in_frame(&random_orthonormal_frame(4, i as u64)).unwrap());
        models.push(r);
    }
    models.push(space_form(4, 2.0).unwrap());
    let dirs = sample_unit_vectors::<f64>(4, &cfg(100, 5)).unwrap();
    for r in &models {
        let scale = r.norm_inf().max(1.0);
        for x in &dirs {
            let b = adapted_basis(r, x, TOL).unwrap();
            let [l1, l2, l3, l4, l5, l6] = b.lambdas;
            // defining relations, checked from scratch
            let pairs = [
                (&b.x, &b.y, l1),
                (&b.x, &b.z, l2),
                (&b.x, &b.w, l3),
                (&b.y, &b.z, l4),
                (&b.y, &b.w, l5),
                (&b.z, &b.w, l6),
            ];
            for (u, v, l) in pairs {
                let jv = r.jacobi(u).unwrap().apply(v);
                assert!(jv.add_scaled(-l, v).norm() <= 1e-8 * scale);
            }
            assert!((l2 + l3 - l4 - l5).abs() <= 1e-8 * scale);
            let rho_x = ricci_form(r, &b.x);
            assert!((rho_x - (l1 + l2 + l3)).abs() <= 1e-8 * scale);
            assert!((ricci_form(r, &b.y) - (l1 + l4 + l5)).abs() <= 1e-8 * scale);
            assert!((ricci_form(r, &b.z) - (l2 + l4 + l6)).abs() <= 1e-8 * scale);
            assert!((ricci_form(r, &b.w) - (l3 + l5 + l6)).abs() <= 1e-8 * scale);
            assert!(((l1 + l4 + l5) - rho_x).abs() <= 1e-8 * scale);
            assert!(((l2 + l4 + l6) - rho_x).abs() <= 1e-8 * scale);
            assert!(((l3 + l5 + l6) - rho_x).abs() <= 1e-8 * scale);
            assert_ne!(classify_structure(&b.lambdas, TOL), EigStructureCase::None);
        }
    }
}

#[test]
fn canonical_adapted_basis_at_e1() {
    let r = canonical_osserman(1.0, 2.0, 3.0).unwrap();
    let b = adapted_basis(&r, &Vec64::basis(4, 0), TOL).unwrap();
    for (got, want) in b.lambdas.iter().zip([1.0, 2.0, 3.0, 3.0, 2.0, 1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
    for (k, v) in b.vectors().iter().enumerate() {
        assert!((v[k].abs() - 1.0).abs() < 1e-12);
    }
    assert_eq!(classify_structure(&b.lambdas, TOL), EigStructureCase::E);
    let sf = space_form(4, -3.0).unwrap();
    let b = adapted_basis(&sf, &Vec64::from_f64(&[1.0, 2.0, -1.0, 0.5]), TOL).unwrap();
    assert!(b.lambdas.iter().all(|l| (l + 3.0).abs() < 1e-12));
    assert_eq!(classify_structure(&b.lambdas, TOL), EigStructureCase::A);
}

#[test]
fn orientation_flip_swaps_blocks() {
    // e₃ ↔ e₄ reverses orientation
    let swap = [
        Vec64::basis(4, 0),
        Vec64::basis(4, 1),
        Vec64::basis(4, 3),
        Vec64::basis(4, 2),
    ];
    for seed in 0..10 {
        let r = random_curvature::<f64>(4, seed, 1.0).unwrap();
        let pos = weyl_pm(&r, Orientation::Positive).unwrap();
        let neg = weyl_pm(&r, Orientation::Negative).unwrap();
        assert_eq!(pos.weyl_plus, neg.weyl_minus);
        assert_eq!(pos.weyl_minus, neg.weyl_plus);

        let flipped = weyl_pm(&r.in_frame(&swap).unwrap(), Orientation::Positive).unwrap();
        // the reflection maps E₁⁺, E₂⁺, E₃⁺ to E₁⁻, E₃⁻, E₂⁻
        let perm = [0, 2, 1];
        for i in 0..3 {
            for j in 0..3 {
                let a = flipped.weyl_plus.get(i, j);
                let b = pos.weyl_minus.get(perm[i], perm[j]);
                assert!((a - b).abs() <= 1e-12);
                let a = flipped.weyl_minus.get(i, j);
                let b = pos.weyl_plus.get(perm[i], perm[j]);
                assert!((a - b).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn canonical_is_anti_self_dual_not_flat() {
    let r = canonical_osserman(1.0f64, 2.0, 3.0).unwrap();
    let split = weyl_pm(&r, Orientation::Positive).unwrap();
    assert!(split.weyl_plus.norm_inf() <= 1e-12);
    assert!(split.weyl_minus.norm_inf() > 0.1);
    assert!(split.weyl_minus.trace().abs() <= 1e-12);
    assert_eq!(
        self_dual_check(&r, TOL).unwrap().verdict,
        Duality::AntiSelfDual
    );
    assert_eq!(
        self_dual_check(&space_form(4, 1.0).unwrap(), TOL)
            .unwrap()
            .verdict,
        Duality::Both
    );
}

#[test]
fn three_dimensional_models() {
    for c in [-2.0, 0.0, 0.5, 2.0] {
        let r = space_form(3, c).unwrap();
        let rep = equivalence_experiment(&r, &cfg(100, 2), TOL).unwrap();
        assert!(rep.duality.passed() && rep.osserman.passed());
        assert!(rep.duality.max_residual <= 1e-12);
        assert!(rep.exact.is_none());
        let x = Vec64::from_f64(&[0.3, -0.4, 1.2]);
        let s = perp_spectrum(&r, &x).unwrap().eigenvalues;
        assert!(s.iter().all(|l| (l - c).abs() <= 1e-12));
    }
    for seed in 0..10 {
        let r = random_curvature::<f64>(3, seed, 1.0).unwrap();
        let rep = equivalence_experiment(&r, &cfg(100, seed), TOL).unwrap();
        assert!(!rep.duality.passed() && !rep.osserman.passed());
    }
}

#[test]
fn fuzz_is_deterministic_and_ordered() {
    let corpus = fuzz_corpus(4, 24, 3, CorpusMix::Mixed).unwrap();
    assert_eq!(corpus, fuzz_corpus(4, 24, 3, CorpusMix::Mixed).unwrap());
    let c = cfg(60, 3);
    let a = run_fuzz(&corpus, &c, TOL).unwrap();
    let b = run_fuzz(&corpus, &c, TOL).unwrap();
    assert_eq!(a, b);
    for (t, spec) in a.trials.iter().zip(&corpus) {
        let rep = equivalence_experiment(&spec.build::<f64>().unwrap(), &c, TOL).unwrap();
        assert_eq!(t.duality, rep.duality.passed());
        assert_eq!(t.osserman, rep.osserman.passed());
    }
    assert_eq!(a.hard_disagreements(), 0);
}

#[test]
fn reports_are_reproducible() {
    let r = perturb(&canonical_osserman(1.0, 2.0, 3.0).unwrap(), 1, 0.05).unwrap();
    let c = cfg(80, 17);
    assert_eq!(
        rakic_duality_check(&r, &c, TOL, 2).unwrap(),
        rakic_duality_check(&r, &c, TOL, 2).unwrap()
    );
    assert_eq!(
        osserman_check_sampled(&r, &c, TOL).unwrap(),
        osserman_check_sampled(&r, &c, TOL).unwrap()
    );
}

#[test]
fn single_precision_smoke() {
    let tol = 1e-3f32;
    let r: Curvature32 = canonical_osserman(1.0f32, 2.0, 3.0).unwrap();
    let c = cfg(100, 0);
    assert!(osserman_check_sampled(&r, &c, tol).unwrap().passed());
    assert!(rakic_duality_check(&r, &c, tol, 2).unwrap().passed());
    assert!(osserman_check_exact(&r, tol).unwrap().passed());
    let bad = random_curvature::<f32>(4, 1, 1.0).unwrap();
    assert!(!osserman_check_sampled(&bad, &c, tol).unwrap().passed());
    assert!(!rakic_duality_check(&bad, &c, tol, 2).unwrap().passed());
}
