#![no_main]

use libfuzzer_sys::fuzz_target;
use mkaf_bench::parse_results;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(table) = parse_results(text) {
        assert_eq!(table.mse.len(), table.iterations.len());
        assert!(table.dict_per_kernel.iter().all(|c| c.len() == table.iterations.len()));
    }
});
