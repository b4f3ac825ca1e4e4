//! Random signed graphs for audits and search restarts.

use rand::Rng;

use crate::cycles::is_balanced;
use crate::graph::{Sign, SignedGraph};

/// Erdos-Renyi signed graph: each pair becomes an edge with probability
/// `edge_p`, each edge negative with probability `neg_p`.
pub fn random_signed_graph<R: Rng>(n: usize, edge_p: f64, neg_p: f64, rng: &mut R) -> SignedGraph {
    assert!(n >= 1, "graphs need at least one vertex");
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(edge_p) {
                let sign = if rng.gen_bool(neg_p) {
                    Sign::Minus
                } else {
                    Sign::Plus
                };
                edges.push((u, v, sign));
            }
        }
    }
    SignedGraph::new(n, &edges).expect("sampled edges are valid")
}

/// Resample until connected; after enough failures, patch connectivity by
/// joining consecutive components with positive edges so the call is total.
pub fn random_connected_signed_graph<R: Rng>(
    n: usize,
    edge_p: f64,
    neg_p: f64,
    rng: &mut R,
) -> SignedGraph {
    const ATTEMPTS: usize = 1_000;
    let mut g = random_signed_graph(n, edge_p, neg_p, rng);
    for _ in 0..ATTEMPTS {
        if g.is_connected() {
            return g;
        }
        g = random_signed_graph(n, edge_p, neg_p, rng);
    }
    let comps = g.components();
    let mut edges: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.sign)).collect();
    for pair in comps.windows(2) {
        edges.push((pair[0][0], pair[1][0], Sign::Plus));
    }
    SignedGraph::new(n, &edges).expect("patched edges are valid")
}

/// Connected and unbalanced; needs `n >= 3`. If a sample comes out balanced,
/// one sign flip on an edge lying in a cycle makes that cycle negative.
pub fn random_unbalanced_connected<R: Rng>(
    n: usize,
    edge_p: f64,
    neg_p: f64,
    rng: &mut R,
) -> SignedGraph {
    assert!(n >= 3, "unbalanced graphs need at least three vertices");
    loop {
        let g = random_connected_signed_graph(n, edge_p, neg_p, rng);
        if !is_balanced(&g) {
            return g;
        }
        // Flip one cotree edge: that makes exactly one fundamental cycle
        // negative. Trees have no cotree edge, so resample those.
        if g.edge_count() >= g.order() {
            if let Some(flipped) = flip_some_cycle_edge(&g, rng) {
                return flipped;
            }
        }
    }
}

/// Flip the sign of a uniformly chosen edge that lies on a cycle.
fn flip_some_cycle_edge<R: Rng>(g: &SignedGraph, rng: &mut R) -> Option<SignedGraph> {
    let candidates: Vec<_> = g
        .edges()
        .iter()
        .filter(|e| {
            // An edge lies on a cycle iff removing it keeps its endpoints
            // connected.
            let cut = g.with_edge_removed(e.u, e.v).expect("edge exists");
            cut.components()
                .iter()
                .any(|c| c.contains(&e.u) && c.contains(&e.v))
        })
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let e = candidates[rng.gen_range(0..candidates.len())];
    let flipped = g.with_sign_flipped(e.u, e.v).expect("edge exists");
    // Flipping a cycle edge of a balanced graph unbalances that cycle.
    debug_assert!(!is_balanced(g) || !is_balanced(&flipped));
    Some(flipped)
}
