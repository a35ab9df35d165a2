#![no_main]

use libfuzzer_sys::fuzz_target;
use mbg::VertexLabel;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(label) = text.parse::<VertexLabel>() {
        let shown = label.to_string();
        assert_eq!(shown.parse::<VertexLabel>().expect("displayed label parses"), label);
    }
});
