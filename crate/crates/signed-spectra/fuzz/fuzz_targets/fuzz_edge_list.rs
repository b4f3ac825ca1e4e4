//! Fuzzes the edge-list parser: arbitrary text must parse or error without
//! panicking, and a successful parse must be stable under rendering the
//! pairs back to `u-v,u-v` form and parsing again.

#![no_main]

use libfuzzer_sys::fuzz_target;
use signed_spectra::graph::parse_edge_list;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(pairs) = parse_edge_list(text) {
        let rendered: Vec<String> = pairs.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        let again = parse_edge_list(&rendered.join(",")).expect("canonical list reparses");
        assert_eq!(again, pairs, "round trip changed the pairs");
    }
});
