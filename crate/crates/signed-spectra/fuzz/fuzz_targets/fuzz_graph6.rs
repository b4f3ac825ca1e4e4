//! Fuzzes the graph6 decoder: arbitrary text must decode or error without
//! panicking, and every successful decode must re-encode to a string that
//! decodes back to the same graph.

#![no_main]

use libfuzzer_sys::fuzz_target;
use signed_spectra::graph6;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(graph) = graph6::decode(text) {
        let encoded = graph6::encode(&graph).expect("decoded graphs fit the format");
        let again = graph6::decode(&encoded).expect("canonical encoding decodes");
        assert_eq!(again, graph, "round trip changed the graph");
    }
});
