#![no_main]

use hypercert::io::{polymatrix_from_json, polymatrix_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = polymatrix_from_json(s) {
        assert_eq!(polymatrix_from_json(&polymatrix_to_json(&m)).unwrap(), m);
    }
});
