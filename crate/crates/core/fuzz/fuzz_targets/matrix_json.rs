#![no_main]

use libfuzzer_sys::fuzz_target;
use stablegraph::io::{parse_directed_matrix_json, parse_matrix_json, to_matrix_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_matrix_json(text) {
        assert_eq!(parse_matrix_json(&to_matrix_json(&g)).expect("re-decodes"), g);
    }
    if let Ok(g) = parse_directed_matrix_json(text) {
        assert_eq!(parse_directed_matrix_json(&to_matrix_json(&g)).expect("re-decodes"), g);
    }
});
