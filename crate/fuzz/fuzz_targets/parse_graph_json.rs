#![no_main]

use libfuzzer_sys::fuzz_target;
use rigidity_core::graph::{parse_json, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_json(text) {
        let again = parse_json(&to_json(&g)).expect("own output parses");
        assert_eq!(g, again);
    }
});
