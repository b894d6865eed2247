#![no_main]

use hypercert::io::{matrix_from_csv, matrix_to_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = matrix_from_csv(s) {
        assert_eq!(matrix_from_csv(&matrix_to_csv(&m)).unwrap(), m);
    }
});
