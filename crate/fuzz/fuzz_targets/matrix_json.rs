#![no_main]

use hypercert::io::{matrix_from_json, matrix_to_json};
use hypercert::ldl_psd_check;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = matrix_from_json(s) {
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        if m.is_square() && m.is_symmetric() && m.rows() <= 8 {
            let cert = ldl_psd_check(&m).unwrap();
            assert!(cert.verify(&m));
        }
    }
});
