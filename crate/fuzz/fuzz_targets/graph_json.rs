#![no_main]

use libfuzzer_sys::fuzz_target;
use mbg::Graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = Graph::from_json(text) {
        let again = Graph::from_json(&g.to_json()).expect("serialized graph parses");
        assert_eq!(again.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert_eq!(again.labels(), g.labels());
    }
});
