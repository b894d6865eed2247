#![no_main]

use hypercert::Graph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = Graph::from_json(s) {
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }
});
