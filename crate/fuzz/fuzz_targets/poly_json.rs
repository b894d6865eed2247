#![no_main]

use hypercert::io::{parse_poly_file, poly_from_json, poly_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(file) = parse_poly_file(s) {
        let p = file.poly.to_poly().expect("validated by the parser");
        assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
        let _ = file.direction();
    }
});
