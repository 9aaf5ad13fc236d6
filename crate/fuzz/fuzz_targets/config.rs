#![no_main]

use libfuzzer_sys::fuzz_target;
use mkaf_bench::config::{parse_config, ExperimentConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(layer) = parse_config(text) {
        let _ = ExperimentConfig::resolve(&layer);
    }
});
