#![no_main]

use hypercert::certificates::certificate_from_file;
use hypercert::io::parse_certificate;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(file) = parse_certificate(s) {
        let text = serde_json::to_string(&file).unwrap();
        assert_eq!(parse_certificate(&text).unwrap(), file);
        let _ = certificate_from_file(&file);
    }
});
