#![no_main]

use libfuzzer_sys::fuzz_target;
use stablegraph::io::{parse_edgelist, to_edgelist};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_edgelist(text) {
        let encoded = to_edgelist(&g).expect("decoded graphs are simple");
        assert_eq!(parse_edgelist(&encoded).expect("re-decodes"), g);
    }
});
