//! graph6 encoding of underlying (unsigned) graphs, for orders up to 62.
//!
//! The format packs the upper triangle of the adjacency matrix column by
//! column into 6-bit groups, most significant bit first, each group offset
//! by 63 into printable ASCII. Decoding is strict: every byte must be in
//! range, the data must be exactly the right length, and padding bits must
//! be zero.

use thiserror::Error;

use crate::graph::{Sign, SignedGraph};

/// Only the single-byte size form is supported.
pub const GRAPH6_MAX_ORDER: usize = 62;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at position {position} is outside the graph6 alphabet")]
    InvalidChar { byte: u8, position: usize },
    #[error("order {order} exceeds the single-byte graph6 cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("input ends after {found} data bytes, {expected} are required")]
    Truncated { expected: usize, found: usize },
    #[error("{extra} extra bytes after the adjacency data")]
    TrailingData { extra: usize },
    #[error("padding bits are not zero")]
    NonzeroPadding,
    #[error("order zero graphs are not representable here")]
    ZeroOrder,
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decode a graph6 string into an all-positive signed graph.
///
/// An optional `>>graph6<<` header is accepted and stripped.
pub fn decode(input: &str) -> Result<SignedGraph, Graph6Error> {
    let text = input
        .strip_prefix(">>graph6<<")
        .unwrap_or(input)
        .trim_end_matches(['\n', '\r']);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (position, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::InvalidChar { byte, position });
        }
    }
    if bytes[0] == 126 {
        // Multi-byte size forms encode orders above 62.
        return Err(Graph6Error::TooLarge {
            order: 63,
            cap: GRAPH6_MAX_ORDER,
        });
    }
    let n = (bytes[0] - 63) as usize;
    let expected = data_len(n);
    let found = bytes.len() - 1;
    if found < expected {
        return Err(Graph6Error::Truncated { expected, found });
    }
    if found > expected {
        return Err(Graph6Error::TrailingData {
            extra: found - expected,
        });
    }
    if n == 0 {
        // A valid graph6 string, but the graph model keeps order >= 1.
        return Err(Graph6Error::ZeroOrder);
    }

    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    for j in 1..n {
        for i in 0..j {
            let group = bytes[1 + bit_index / 6] - 63;
            let bit = group >> (5 - bit_index % 6) & 1;
            if bit == 1 {
                edges.push((i, j, Sign::Plus));
            }
            bit_index += 1;
        }
    }
    // Remaining bits of the final group must be zero padding.
    while bit_index % 6 != 0 {
        let group = bytes[1 + bit_index / 6] - 63;
        if group >> (5 - bit_index % 6) & 1 == 1 {
            return Err(Graph6Error::NonzeroPadding);
        }
        bit_index += 1;
    }
    Ok(SignedGraph::new(n, &edges).expect("decoded edges are valid"))
}

/// Encode the underlying graph of `g`; signs are not representable and are
/// dropped.
pub fn encode(g: &SignedGraph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Graph6Error::TooLarge {
            order: n,
            cap: GRAPH6_MAX_ORDER,
        });
    }
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + 63);
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.has_edge(i, j) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push(group + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_vectors_round_trip() {
        // Hand-checked vectors: K2, K3, the empty graph on two vertices, and
        // a 5-vertex graph with edges 0-2, 0-4, 1-3, 3-4.
        let cases = [
            ("A_", "2 1 0 1 +"),
            ("Bw", "3 3 0 1 + 0 2 + 1 2 +"),
            ("A?", "2 0"),
            ("DQc", "5 4 0 2 + 0 4 + 1 3 + 3 4 +"),
        ];
        for (code, line) in cases {
            let g = decode(code).unwrap();
            assert_eq!(g.to_string(), line, "decoding {code}");
            assert_eq!(encode(&g).unwrap(), code, "re-encoding {code}");
        }
    }

    #[test]
    fn header_is_stripped() {
        let g = decode(">>graph6<<Bw").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn strict_errors() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(
            decode("B\u{7f}"),
            Err(Graph6Error::InvalidChar { byte: 0x7f, position: 1 })
        );
        assert_eq!(
            decode("B:"),
            Err(Graph6Error::InvalidChar { byte: b':', position: 1 })
        );
        assert_eq!(decode("B"), Err(Graph6Error::Truncated { expected: 1, found: 0 }));
        assert_eq!(decode("Bww"), Err(Graph6Error::TrailingData { extra: 1 }));
        assert!(matches!(decode("~??"), Err(Graph6Error::TooLarge { .. })));
        assert_eq!(decode("?"), Err(Graph6Error::ZeroOrder));
        // K3 sets the top three bits; any bit below them is padding.
        assert_eq!(decode("B{"), Err(Graph6Error::NonzeroPadding));
    }

    #[test]
    fn encode_rejects_large_orders() {
        let edges: Vec<_> = (0..62).map(|i| (i, i + 1, Sign::Plus)).collect();
        let g = SignedGraph::new(63, &edges).unwrap();
        assert_eq!(
            encode(&g),
            Err(Graph6Error::TooLarge { order: 63, cap: 62 })
        );
    }

    #[test]
    fn random_graphs_round_trip() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in [1usize, 2, 5, 13, 30, 62] {
            let g = crate::rand_graphs::random_signed_graph(n, 0.4, 0.0, &mut rng);
            let code = encode(&g).unwrap();
            let back = decode(&code).unwrap();
            assert_eq!(back, g.underlying());
        }
    }
}
