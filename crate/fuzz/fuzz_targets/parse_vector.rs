#![no_main]

use hypercert::io::{parse_vector, vector_to_strings};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // first byte picks the length, the rest is the literal
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(s) = std::str::from_utf8(rest) else { return };
    let n = usize::from(n % 64);
    if let Ok(v) = parse_vector(s, n) {
        assert_eq!(v.len(), n);
        if n > 0 {
            assert_eq!(parse_vector(&vector_to_strings(&v).join(","), n).unwrap(), v);
        }
    }
});
