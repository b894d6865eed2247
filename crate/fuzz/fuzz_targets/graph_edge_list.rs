#![no_main]

use hypercert::Graph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = Graph::parse_edge_list(s) {
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        let (omega, clique) = g.clique_number();
        assert_eq!(clique.len(), omega);
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                assert!(g.has_edge(a, b));
            }
        }
    }
});
