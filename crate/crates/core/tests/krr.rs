use mkaf_core::batch::ridge_objective;
use mkaf_core::{fit_krr, krr_predict, KernelSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn specs() -> Vec<KernelSpec> {
    vec![KernelSpec::linear(1.0, 0.5, 1).unwrap(), KernelSpec::gaussian(0.5, 0.5, 1).unwrap()]
}

fn samples(n: usize, seed: u64) -> Vec<(Vec<f64>, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.random_range(-2.0..2.0);
            (vec![u], u + (-(u - 0.5) * (u - 0.5) / 0.5).exp())
        })
        .collect()
}

#[test]
fn normal_equation_residual() {
    let data = samples(40, 1);
    let eta = 1e-3;
    let model = fit_krr(&specs(), &data, eta).unwrap();
    let k = mkaf_core::batch::sum_gram(&specs(), &model.centers);
    let mut lhs = k.mul_vec(&model.alpha);
    for (v, a) in lhs.iter_mut().zip(&model.alpha) {
        *v += eta * 40.0 * a;
    }
    let scale = data.iter().fold(0.0f64, |m, (_, d)| m.max(d.abs()));
    for (l, (_, d)) in lhs.iter().zip(&data) {
        assert!((l - d).abs() <= 1e-9 * scale);
    }
}

#[test]
fn small_eta_interpolates() {
    let data: Vec<(Vec<f64>, f64)> = [-1.5f64, -0.4, 0.3, 1.1, 1.9].iter().map(|&u| (vec![u], (2.0 * u).sin())).collect();
    let model = fit_krr(&specs(), &data, 1e-8).unwrap();
    for (u, d) in &data {
        assert!((krr_predict(&model, u).unwrap() - d).abs() < 1e-3);
    }
}

#[test]
fn perturbations_never_lower_the_objective() {
    let data = samples(20, 2);
    let eta = 1e-3;
    let model = fit_krr(&specs(), &data, eta).unwrap();
    let best = ridge_objective(&specs(), &data, &model.alpha, eta);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let dir: Vec<f64> = (0..20).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        let alpha: Vec<f64> = model.alpha.iter().zip(&dir).map(|(a, v)| a + 1e-3 * v / norm).collect();
        assert!(ridge_objective(&specs(), &data, &alpha, eta) >= best);
    }
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(fit_krr(&specs(), &samples(5, 0), 0.0).is_err());
    assert!(fit_krr::<Vec<f64>>(&specs(), &[], 1e-3).is_err());
    assert!(fit_krr(&specs(), &[(vec![0.0, 1.0], 1.0)], 1e-3).is_err());
}
