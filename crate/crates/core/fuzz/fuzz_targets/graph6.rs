#![no_main]

use libfuzzer_sys::fuzz_target;
use stablegraph::io::{parse_graph6, parse_graph6_all, to_graph6};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph6(text) {
        let encoded = to_graph6(&g).expect("decoded graphs are simple");
        assert_eq!(parse_graph6(&encoded).expect("re-decodes"), g);
    }
    let _ = parse_graph6_all(text);
});
