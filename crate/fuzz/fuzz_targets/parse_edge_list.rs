#![no_main]

use libfuzzer_sys::fuzz_target;
use rigidity_core::graph::{parse_edge_list, to_edge_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // must never panic; on success the printed form must parse back to the
    // same graph
    if let Ok(g) = parse_edge_list(text) {
        let again = parse_edge_list(&to_edge_list(&g)).expect("own output parses");
        assert_eq!(g, again);
    }
});
