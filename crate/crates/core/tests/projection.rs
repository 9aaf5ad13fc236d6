use mkaf_core::kernels::gram;
use mkaf_core::rkhs::{project_onto_span, select_subset};
use mkaf_core::{Dictionary, KernelSpec, SymmetricMatrix};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Dictionary grown the way the filters grow it: a candidate enters only
/// while its coherence stays below `delta`.
fn coherent_dictionary(spec: KernelSpec, candidates: &[Vec<f64>], delta: f64) -> Dictionary {
    let mut dict = Dictionary::new(spec);
    for (t, c) in candidates.iter().enumerate() {
        if dict.coherence(c).unwrap() < delta {
            dict.admit(c, t).unwrap();
        }
    }
    dict
}

fn instance() -> impl Strategy<Value = (KernelSpec, Vec<Vec<f64>>, Vec<f64>, f64)> {
    (1usize..=10, 1usize..=30, 0.4f64..1.5, 0.1f64..1.0, 0.5f64..0.95).prop_flat_map(|(l, r, sigma, w, delta)| {
        let point = || prop::collection::vec(-2.0f64..2.0, l);
        (
            Just(KernelSpec::gaussian(sigma, w, l).unwrap()),
            prop::collection::vec(point(), r),
            point(),
            Just(delta),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_properties((spec, candidates, u, delta) in instance()) {
        let dict = coherent_dictionary(spec.clone(), &candidates, delta);
        prop_assume!(!dict.is_empty());
        let kuu = spec.eval(&u, &u).unwrap();

        let mut previous = 0.0;
        for s in 1..=dict.len() {
            let subset = select_subset(&dict, &u, s).unwrap();
            let p = project_onto_span(&dict, &subset, &u).unwrap();
            let b: Vec<f64> = subset.indices.iter().map(|&j| spec.eval(&dict.centers()[j], &u).unwrap()).collect();
            let ka = subset.sub_gram.mul_vec(&p.coefficients);
            let residual: Vec<f64> = ka.iter().zip(&b).map(|(x, y)| x - y).collect();

            // normal equation; its residual is also the orthogonality defect
            prop_assert!(sup(&residual) < 1e-10 * sup(&b), "residual {} vs {}", sup(&residual), sup(&b));
            prop_assert!(sup(&residual) <= 1e-9 * sup(&b));

            // reprojecting the projection returns its own coefficients
            let reproject = mkaf_core::numerics::spd_solve(&subset.sub_gram, &ka).unwrap();
            let drift: Vec<f64> = reproject.iter().zip(&p.coefficients).map(|(x, y)| x - y).collect();
            prop_assert!(sup(&drift) <= 1e-9 * sup(&p.coefficients).max(1.0), "drift {}", sup(&drift));

            prop_assert!(p.norm_sq <= kuu * (1.0 + 1e-9));
            prop_assert!(p.norm_sq + 1e-9 >= previous, "s={s}: {} < {previous}", p.norm_sq);
            previous = p.norm_sq;
        }
    }

    #[test]
    fn projection_of_a_center_is_exact((spec, candidates, _u, delta) in instance()) {
        let dict = coherent_dictionary(spec.clone(), &candidates, delta);
        prop_assume!(!dict.is_empty());
        let u = dict.centers()[dict.len() - 1].clone();
        let subset = select_subset(&dict, &u, dict.len()).unwrap();
        let p = project_onto_span(&dict, &subset, &u).unwrap();
        prop_assert!((p.norm_sq - spec.eval(&u, &u).unwrap()).abs() <= 1e-12 * p.norm_sq);
    }

    #[test]
    fn gram_is_positive_semidefinite(
        l in 1usize..=6,
        centers in prop::collection::vec(prop::collection::vec(-3.0f64..3.0, 6), 1..=20),
        sigma in 0.05f64..3.0,
        c in 0.0f64..2.0,
        degree in 1u32..=4,
    ) {
        let centers: Vec<Vec<f64>> = centers.into_iter().map(|v| v[..l].to_vec()).collect();
        for spec in [
            KernelSpec::gaussian(sigma, 0.7, l).unwrap(),
            KernelSpec::linear(c, 1.3, l).unwrap(),
            KernelSpec::polynomial(c, degree, 0.2, l).unwrap(),
        ] {
            let g = gram(&spec, &centers).unwrap();
            let min_eig = min_eigenvalue(&g);
            let max_diag = g.diagonal().into_iter().fold(0.0, f64::max);
            prop_assert!(min_eig >= -1e-10 * max_diag, "{spec:?}: {min_eig}");
        }
    }
}

fn min_eigenvalue(g: &SymmetricMatrix) -> f64 {
    let n = g.order();
    let m = DMatrix::from_fn(n, n, |i, j| g.get(i, j));
    m.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

#[test]
fn five_gaussian_centers_are_psd() {
    let centers = [[0.1, -0.4], [1.2, 0.3], [-0.7, 0.9], [0.15, -0.35], [2.0, -1.0]];
    let spec = KernelSpec::gaussian(0.8, 1.0, 2).unwrap();
    let g = gram(&spec, &centers).unwrap();
    assert!(min_eigenvalue(&g) >= -1e-12);
}

#[test]
fn cached_gram_matches_recomputation() {
    let spec = KernelSpec::gaussian(0.3, 0.5, 3).unwrap();
    let candidates: Vec<Vec<f64>> = (0..40)
        .map(|i| {
            let t = i as f64 * 0.37;
            vec![t.sin(), (1.3 * t).cos(), (0.7 * t).sin()]
        })
        .collect();
    let dict = coherent_dictionary(spec, &candidates, 0.9);
    assert!(dict.len() > 5);
    let cached = dict.gram();
    let fresh = dict.recomputed_gram();
    for i in 0..dict.len() {
        for j in 0..dict.len() {
            assert_eq!(cached.get(i, j), fresh.get(i, j));
        }
    }
}
