#![no_main]

use libfuzzer_sys::fuzz_target;
use mkaf_bench::rng::{stream, Role};
use mkaf_bench::timeseries::prepare_series;

fuzz_target!(|data: &[u8]| {
    let Some((&lags, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let mut rng = stream(0, 0, Role::Noise);
    if let Ok(pairs) = prepare_series(text, usize::from(lags % 24) + 1, 0.01, 2, &mut rng) {
        assert!(pairs.iter().all(|p| p.input.len() == usize::from(lags % 24) + 1));
    }
});
