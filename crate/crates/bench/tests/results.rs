use mkaf_bench::{format_results, parse_results, RunResult};
use proptest::prelude::*;

fn run(mse: Vec<f64>, q: usize) -> RunResult {
    let n = mse.len();
    let curves: Vec<Vec<f64>> = (0..q).map(|k| (0..n).map(|i| (i * (k + 1)) as f64 / 3.0).collect()).collect();
    RunResult {
        label: "p".into(),
        trials: 1,
        dict_curve: (0..n).map(|i| curves.iter().map(|c| c[i]).sum()).collect(),
        mse_curve: mse,
        kernel_dict_curves: curves,
        mean_dict_size: 0.0,
        mean_kernel_sizes: vec![0.0; q],
        final_dict_size: 0.0,
        final_kernel_sizes: vec![0.0; q],
        complexity_estimate: None,
        skipped: 0,
        degenerate: 0,
        admissions: vec![0; q],
    }
}

proptest! {
    #[test]
    fn values_round_trip_exactly(mse in prop::collection::vec(prop::num::f64::POSITIVE | prop::num::f64::ZERO | prop::num::f64::SUBNORMAL, 0..60), q in 1usize..4) {
        let r = run(mse, q);
        let text = format_results(&r);
        prop_assert!(!text.contains('\r'));
        let table = parse_results(&text).unwrap();
        prop_assert_eq!(&table.mse, &r.mse_curve);
        prop_assert_eq!(&table.dict_total, &r.dict_curve);
        prop_assert_eq!(&table.dict_per_kernel, &r.kernel_dict_curves);
    }

    #[test]
    fn parser_never_panics(text in ".{0,400}") {
        let _ = parse_results(&text);
    }
}
