#![no_main]

use libfuzzer_sys::fuzz_target;
use mbg::Graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = Graph::from_edge_list(text) {
        let sum: usize = g.vertices().map(|v| g.neighbors(v).len()).sum();
        assert_eq!(sum, 2 * g.edge_count());
        let again = Graph::from_edge_list(&g.to_edge_list()).expect("written edge list parses");
        assert_eq!(again.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
});
