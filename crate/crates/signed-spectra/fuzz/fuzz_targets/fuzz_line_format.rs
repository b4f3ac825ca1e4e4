//! Fuzzes the line-format parser: arbitrary text must either parse into a
//! valid graph or fail cleanly, and anything that parses must survive a
//! print-and-reparse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;
use signed_spectra::SignedGraph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(graph) = text.parse::<SignedGraph>() {
        let printed = graph.to_string();
        let again: SignedGraph = printed.parse().expect("canonical output reparses");
        assert_eq!(again, graph, "round trip changed the graph");
    }
});
