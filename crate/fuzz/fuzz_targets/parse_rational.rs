#![no_main]

use hypercert::rational::{fmt_q, parse_q};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_q(s) {
        assert_eq!(parse_q(&fmt_q(&v)).unwrap(), v);
    }
});
