#![no_main]

use libfuzzer_sys::fuzz_target;
use mbg::primitives::Hypercube;
use mbg::verify::check_schedule;
use mbg::Schedule;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = Schedule::from_json(text) {
        let g = Hypercube::new(3).graph();
        if let Ok(round) = check_schedule(&g, &s) {
            assert!(round >= 3 && round <= s.rounds.len());
        }
        let again = Schedule::from_json(&s.to_json()).expect("serialized schedule parses");
        assert_eq!(again, s);
    }
});
