//! Cycle signs, balance, negative girth, fixed-length negative cycles, and
//! the frustration index.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{forest_potentials, normalized_sign, Sign, SignedGraph, SwitchSet};

/// Extension budget for the fixed-length cycle search; one unit per path
/// extension attempted.
pub const PATH_EXTENSION_CAP: u64 = 100_000_000;

/// Largest order for which the frustration index is computed exactly by
/// switching enumeration (`2^(n-1)` candidate sets).
pub const FRUSTRATION_MAX_ORDER: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("vertex sequence is not a cycle: {reason}")]
    NotACycle { reason: String },
    #[error("cycle search exceeded the extension budget of {cap}")]
    CapExceeded { cap: u64 },
    #[error("order {order} exceeds the exact frustration cap of {cap}")]
    TooLargeForExact { order: usize, cap: usize },
}

/// A cycle given by its vertex sequence, together with its sign.
///
/// The sequence lists each vertex once; consecutive vertices and the wrap
/// pair are edges. Witnesses are stored rotated so the smallest vertex comes
/// first, with the smaller neighbor second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
    pub sign: Sign,
}

impl CycleWitness {
    /// Build and validate a witness from a vertex sequence, computing its sign.
    pub fn from_vertices(g: &SignedGraph, vertices: &[usize]) -> Result<CycleWitness, CycleError> {
        let sign = cycle_sign(g, vertices)?;
        let mut w = CycleWitness {
            vertices: vertices.to_vec(),
            sign,
        };
        w.canonicalize();
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Check the witness against a graph: distinct vertices, every hop an
    /// edge, and the stored sign equal to the product of edge signs.
    pub fn validate(&self, g: &SignedGraph) -> Result<(), CycleError> {
        let sign = cycle_sign(g, &self.vertices)?;
        if sign != self.sign {
            return Err(CycleError::NotACycle {
                reason: format!("stored sign {} but edge product is {}", self.sign, sign),
            });
        }
        Ok(())
    }

    /// Rotate/reflect to the lexicographically smallest vertex sequence.
    fn canonicalize(&mut self) {
        let len = self.vertices.len();
        let start = (0..len)
            .min_by_key(|&i| self.vertices[i])
            .expect("cycles are nonempty");
        self.vertices.rotate_left(start);
        if len > 2 && self.vertices[len - 1] < self.vertices[1] {
            self.vertices[1..].reverse();
        }
    }
}

/// Product of edge signs around a cycle given as a vertex sequence.
pub fn cycle_sign(g: &SignedGraph, vertices: &[usize]) -> Result<Sign, CycleError> {
    let len = vertices.len();
    if len < 3 {
        return Err(CycleError::NotACycle {
            reason: format!("length {len} is below 3"),
        });
    }
    let mut seen = vec![false; g.order()];
    for &v in vertices {
        if v >= g.order() {
            return Err(CycleError::NotACycle {
                reason: format!("vertex {v} out of range"),
            });
        }
        if seen[v] {
            return Err(CycleError::NotACycle {
                reason: format!("vertex {v} repeats"),
            });
        }
        seen[v] = true;
    }
    let mut sign = Sign::Plus;
    for i in 0..len {
        let u = vertices[i];
        let v = vertices[(i + 1) % len];
        match g.sign(u, v) {
            Some(s) => sign = sign * s,
            None => {
                return Err(CycleError::NotACycle {
                    reason: format!("missing edge {u}-{v}"),
                })
            }
        }
    }
    Ok(sign)
}

/// A graph is balanced iff every cycle is positive, iff some switching makes
/// all edges positive. Detected by sign propagation over a spanning forest.
pub fn is_balanced(g: &SignedGraph) -> bool {
    balancing_switch_set(g).is_some()
}

/// The switching that removes all negative edges, when one exists.
pub fn balancing_switch_set(g: &SignedGraph) -> Option<SwitchSet> {
    let pot = forest_potentials(g);
    for e in g.edges() {
        if normalized_sign(e.sign, &pot, e.u, e.v).is_negative() {
            return None;
        }
    }
    let members = (0..g.order()).filter(|&v| pot[v]);
    Some(SwitchSet::from_members(g.order(), members).expect("potentials are in range"))
}

/// Adjacency of the signed double cover: vertex `v` lifts to `v` and `v + n`;
/// positive edges stay within a layer, negative edges cross.
fn double_cover_adjacency(g: &SignedGraph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut adj = vec![Vec::new(); 2 * n];
    for e in g.edges() {
        let (u, v) = (e.u, e.v);
        if e.sign.is_negative() {
            adj[u].push(v + n);
            adj[v + n].push(u);
            adj[v].push(u + n);
            adj[u + n].push(v);
        } else {
            adj[u].push(v);
            adj[v].push(u);
            adj[u + n].push(v + n);
            adj[v + n].push(u + n);
        }
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    adj
}

/// BFS in the double cover from `start`, bounded below `bound`; returns the
/// distance to the opposite lift and the parent array for reconstruction.
fn cover_distance(
    cover: &[Vec<usize>],
    start: usize,
    n: usize,
    bound: usize,
) -> (usize, Vec<usize>) {
    let mut dist = vec![usize::MAX; 2 * n];
    let mut parent = vec![usize::MAX; 2 * n];
    dist[start] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        if dist[x] + 1 >= bound {
            continue;
        }
        for &y in &cover[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    (dist[start + n], parent)
}

/// Shortest negative cycle, or `None` when the graph is balanced.
///
/// A negative closed walk through `v` corresponds to a path between the two
/// lifts of `v` in the double cover. A walk of minimum length over all `v`
/// must be a simple cycle: a repeated vertex would split it into two shorter
/// closed walks, one of them negative, contradicting minimality. Ties are
/// broken toward the smallest starting vertex.
pub fn negative_girth(g: &SignedGraph) -> Option<CycleWitness> {
    let n = g.order();
    let cover = double_cover_adjacency(g);
    let mut best: Option<(usize, usize)> = None; // (length, start vertex)
    for start in 0..n {
        let bound = best.map_or(usize::MAX, |(len, _)| len);
        let (d, _) = cover_distance(&cover, start, n, bound);
        if d != usize::MAX && best.map_or(true, |(len, _)| d < len) {
            best = Some((d, start));
        }
    }
    let (len, start) = best?;
    let (d, parent) = cover_distance(&cover, start, n, usize::MAX);
    debug_assert_eq!(d, len);
    // Project the lift path back down to a vertex sequence; at the global
    // minimum it is simple, and `from_vertices` re-verifies that.
    let mut walk = Vec::with_capacity(len + 1);
    let mut x = start + n;
    while x != usize::MAX {
        walk.push(x % n);
        x = parent[x];
    }
    debug_assert_eq!(walk.len(), len + 1);
    walk.pop(); // both lifts of `start` project to the same vertex
    let witness = CycleWitness::from_vertices(g, &walk)
        .expect("minimal double-cover path projects to a simple cycle");
    debug_assert!(witness.sign.is_negative());
    Some(witness)
}

/// Find a negative cycle of length exactly `r`, if any.
///
/// DFS over paths anchored at their smallest vertex, pruned by distance to
/// the anchor; lengths outside `3..=n` trivially have no cycles and return
/// `None`. Work is capped at [`PATH_EXTENSION_CAP`] extensions per call.
pub fn negative_cycle_of_length(
    g: &SignedGraph,
    r: usize,
) -> Result<Option<CycleWitness>, CycleError> {
    let n = g.order();
    if r < 3 || r > n {
        return Ok(None);
    }
    let mut budget = PATH_EXTENSION_CAP;
    for anchor in 0..n {
        if let Some(cycle) = cycle_search_from(g, anchor, r, &mut budget)? {
            let witness = CycleWitness::from_vertices(g, &cycle)
                .expect("search emits only verified cycles");
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// True when `g` contains no negative cycle of length exactly `r`.
pub fn is_negative_cycle_free(g: &SignedGraph, r: usize) -> Result<bool, CycleError> {
    Ok(negative_cycle_of_length(g, r)?.is_none())
}

/// BFS distances from `src` within the subgraph induced on vertices `>= floor`.
fn induced_distances(g: &SignedGraph, src: usize, floor: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.order()];
    dist[src] = 0;
    let mut queue = VecDeque::new();
    queue.push_back(src);
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.neighbors(v) {
            if w >= floor && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// DFS for a negative `r`-cycle whose smallest vertex is `anchor`.
fn cycle_search_from(
    g: &SignedGraph,
    anchor: usize,
    r: usize,
    budget: &mut u64,
) -> Result<Option<Vec<usize>>, CycleError> {
    if g.degree(anchor) < 2 {
        return Ok(None);
    }
    let dist = induced_distances(g, anchor, anchor);
    let mut path = Vec::with_capacity(r);
    path.push(anchor);
    let mut on_path = vec![false; g.order()];
    on_path[anchor] = true;
    let found = extend_cycle(g, anchor, r, &dist, &mut path, &mut on_path, Sign::Plus, budget)?;
    Ok(found.then_some(path))
}

#[allow(clippy::too_many_arguments)]
fn extend_cycle(
    g: &SignedGraph,
    anchor: usize,
    r: usize,
    dist: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    sign: Sign,
    budget: &mut u64,
) -> Result<bool, CycleError> {
    let last = *path.last().expect("path holds at least the anchor");
    if path.len() == r {
        // Close the cycle; skip the reversed duplicate of each traversal.
        if path[1] > path[r - 1] {
            return Ok(false);
        }
        if let Some(s) = g.sign(last, anchor) {
            if (sign * s).is_negative() {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let remaining = r - path.len();
    for &(w, s) in g.neighbors(last) {
        if w <= anchor || on_path[w] || dist[w] > remaining {
            continue;
        }
        if *budget == 0 {
            return Err(CycleError::CapExceeded {
                cap: PATH_EXTENSION_CAP,
            });
        }
        *budget -= 1;
        path.push(w);
        on_path[w] = true;
        if extend_cycle(g, anchor, r, dist, path, on_path, sign * s, budget)? {
            return Ok(true);
        }
        on_path[w] = false;
        path.pop();
    }
    Ok(false)
}

/// Like [`negative_cycle_of_length`], but only for cycles through the edge
/// `u-v`. Cheap feasibility probe for single-edge modifications.
pub(crate) fn negative_cycle_through_edge(
    g: &SignedGraph,
    u: usize,
    v: usize,
    r: usize,
) -> Result<bool, CycleError> {
    let n = g.order();
    if r < 3 || r > n {
        return Ok(false);
    }
    let edge_sign = match g.sign(u, v) {
        Some(s) => s,
        None => return Ok(false),
    };
    // Search for a path u -> v of length r-1 avoiding the edge itself, whose
    // sign makes the closed cycle negative.
    let dist_v = induced_distances(g, v, 0);
    let mut budget = PATH_EXTENSION_CAP;
    let mut path = vec![u];
    let mut on_path = vec![false; n];
    on_path[u] = true;
    extend_to_target(g, v, r, edge_sign, &dist_v, &mut path, &mut on_path, Sign::Plus, &mut budget)
}

#[allow(clippy::too_many_arguments)]
fn extend_to_target(
    g: &SignedGraph,
    target: usize,
    r: usize,
    closing_sign: Sign,
    dist_to_target: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    sign: Sign,
    budget: &mut u64,
) -> Result<bool, CycleError> {
    let last = *path.last().expect("path holds at least the start");
    if path.len() == r {
        return Ok(last == target && (sign * closing_sign).is_negative());
    }
    let remaining = r - path.len();
    for &(w, s) in g.neighbors(last) {
        if on_path[w] || dist_to_target[w] > remaining - 1 {
            continue;
        }
        // Stepping onto the target is only allowed as the final hop.
        if w == target && remaining != 1 {
            continue;
        }
        if *budget == 0 {
            return Err(CycleError::CapExceeded {
                cap: PATH_EXTENSION_CAP,
            });
        }
        *budget -= 1;
        path.push(w);
        on_path[w] = true;
        if extend_to_target(g, target, r, closing_sign, dist_to_target, path, on_path, sign * s, budget)? {
            return Ok(true);
        }
        on_path[w] = false;
        path.pop();
    }
    Ok(false)
}

/// Exact frustration index with an optimal switching witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrustrationResult {
    /// Minimum number of negative edges over the switching class.
    pub epsilon: usize,
    /// A switch set achieving that minimum on the input graph.
    pub witness: SwitchSet,
}

/// Frustration index `epsilon(g)`: the minimum number of negative edges over
/// all switchings, equivalently the minimum number of edge deletions that
/// leave a balanced graph.
///
/// Balanced graphs and graphs that already show a single negative edge are
/// answered directly; otherwise all `2^(n-1)` switchings are enumerated in
/// Gray-code order with incremental updates, capped at
/// [`FRUSTRATION_MAX_ORDER`] vertices.
pub fn frustration_index(g: &SignedGraph) -> Result<FrustrationResult, CycleError> {
    if let Some(witness) = balancing_switch_set(g) {
        return Ok(FrustrationResult {
            epsilon: 0,
            witness: witness.normalized(),
        });
    }
    if g.negative_edge_count() == 1 {
        // Unbalanced, so epsilon >= 1, and one negative edge attains it.
        return Ok(FrustrationResult {
            epsilon: 1,
            witness: SwitchSet::new(g.order()),
        });
    }
    let n = g.order();
    if n > FRUSTRATION_MAX_ORDER {
        return Err(CycleError::TooLargeForExact {
            order: n,
            cap: FRUSTRATION_MAX_ORDER,
        });
    }

    // Gray-code walk over subsets of {1, .., n-1}; vertex 0 stays fixed since
    // complementary sets act identically.
    let mut in_set = vec![false; n];
    let mut current = g.negative_edge_count();
    let mut best = current;
    let mut best_mask: u64 = 0;
    let mut mask: u64 = 0;
    for step in 1u64..1 << (n - 1) {
        let v = step.trailing_zeros() as usize + 1;
        let negative_at_v = g
            .neighbors(v)
            .iter()
            .filter(|&&(w, s)| s.is_negative() ^ in_set[w] ^ in_set[v])
            .count();
        current = current + g.degree(v) - 2 * negative_at_v;
        in_set[v] = !in_set[v];
        mask ^= 1 << v;
        if current < best {
            best = current;
            best_mask = mask;
        }
    }
    let members = (0..n).filter(|&v| best_mask >> v & 1 == 1);
    let witness = SwitchSet::from_members(n, members).expect("mask covers 0..n");
    Ok(FrustrationResult {
        epsilon: best,
        witness: witness.normalized(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign::{Minus, Plus};

    fn graph(n: usize, edges: &[(usize, usize, Sign)]) -> SignedGraph {
        SignedGraph::new(n, edges).unwrap()
    }

    #[test]
    fn cycle_sign_multiplies_edges() {
        let g = graph(4, &[(0, 1, Minus), (1, 2, Plus), (2, 3, Minus), (0, 3, Plus)]);
        assert_eq!(cycle_sign(&g, &[0, 1, 2, 3]), Ok(Plus));
        let g2 = g.with_sign_flipped(2, 3).unwrap();
        assert_eq!(cycle_sign(&g2, &[0, 1, 2, 3]), Ok(Minus));
    }

    #[test]
    fn cycle_sign_rejects_non_cycles() {
        let g = graph(4, &[(0, 1, Plus), (1, 2, Plus), (2, 3, Plus), (0, 3, Plus)]);
        assert!(cycle_sign(&g, &[0, 1]).is_err());
        assert!(cycle_sign(&g, &[0, 1, 3]).is_err());
        assert!(cycle_sign(&g, &[0, 1, 2, 1]).is_err());
        assert!(cycle_sign(&g, &[0, 1, 2, 9]).is_err());
    }

    #[test]
    fn balance_matches_cycle_parity() {
        // Two negative edges on a 4-cycle: every cycle positive, balanced.
        let even = graph(4, &[(0, 1, Minus), (1, 2, Plus), (2, 3, Minus), (0, 3, Plus)]);
        assert!(is_balanced(&even));
        let witness = balancing_switch_set(&even).unwrap();
        assert_eq!(even.switch(&witness).unwrap().negative_edge_count(), 0);

        let odd = even.with_sign_flipped(0, 1).unwrap();
        assert!(!is_balanced(&odd));
        assert!(balancing_switch_set(&odd).is_none());
    }

    #[test]
    fn negative_girth_on_a_balanced_graph_is_none() {
        let g = graph(4, &[(0, 1, Minus), (1, 2, Minus), (2, 3, Plus), (0, 3, Plus)]);
        assert!(is_balanced(&g));
        assert!(negative_girth(&g).is_none());
    }

    #[test]
    fn negative_girth_finds_the_short_cycle() {
        // A negative triangle 0-1-2 plus a longer negative 5-cycle region.
        let g = graph(
            6,
            &[
                (0, 1, Minus),
                (0, 2, Plus),
                (1, 2, Plus),
                (2, 3, Plus),
                (3, 4, Minus),
                (4, 5, Plus),
                (2, 5, Plus),
            ],
        );
        let w = negative_girth(&g).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.vertices, vec![0, 1, 2]);
        assert!(w.sign.is_negative());
        w.validate(&g).unwrap();
    }

    #[test]
    fn negative_girth_skips_positive_short_cycles() {
        // Positive triangle and a negative 4-cycle; girth must report 4.
        let g = graph(
            5,
            &[
                (0, 1, Plus),
                (0, 2, Plus),
                (1, 2, Plus),
                (1, 3, Plus),
                (3, 4, Minus),
                (2, 4, Plus),
            ],
        );
        let w = negative_girth(&g).unwrap();
        assert_eq!(w.len(), 4);
        w.validate(&g).unwrap();
        assert!(w.sign.is_negative());
    }

    #[test]
    fn fixed_length_search_hits_exact_lengths_only() {
        // Negative 5-cycle: negative cycles exist at length 5 and nowhere else.
        let g = graph(
            5,
            &[
                (0, 1, Minus),
                (1, 2, Plus),
                (2, 3, Plus),
                (3, 4, Plus),
                (0, 4, Plus),
            ],
        );
        for r in 0..=6 {
            let hit = negative_cycle_of_length(&g, r).unwrap();
            if r == 5 {
                let w = hit.expect("the 5-cycle itself is negative");
                assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
                w.validate(&g).unwrap();
            } else {
                assert!(hit.is_none(), "unexpected negative {r}-cycle");
            }
        }
    }

    #[test]
    fn fixed_length_search_respects_sign_not_just_length() {
        // K4 all positive except one negative edge: triangles through the
        // negative edge are negative, the opposite triangle is positive.
        let g = graph(
            4,
            &[
                (0, 1, Minus),
                (0, 2, Plus),
                (0, 3, Plus),
                (1, 2, Plus),
                (1, 3, Plus),
                (2, 3, Plus),
            ],
        );
        let w3 = negative_cycle_of_length(&g, 3).unwrap().unwrap();
        assert!(w3.vertices.contains(&0) && w3.vertices.contains(&1));
        let w4 = negative_cycle_of_length(&g, 4).unwrap().unwrap();
        assert_eq!(w4.len(), 4);
        w4.validate(&g).unwrap();
    }

    #[test]
    fn through_edge_probe_agrees_with_full_search() {
        let g = graph(
            4,
            &[
                (0, 1, Minus),
                (0, 2, Plus),
                (0, 3, Plus),
                (1, 2, Plus),
                (1, 3, Plus),
                (2, 3, Plus),
            ],
        );
        // Negative triangles exist through 0-1 but not through 2-3.
        assert!(negative_cycle_through_edge(&g, 0, 1, 3).unwrap());
        assert!(!negative_cycle_through_edge(&g, 2, 3, 3).unwrap());
        // Negative 4-cycles pass through every edge of this graph.
        for e in g.edges() {
            assert!(negative_cycle_through_edge(&g, e.u, e.v, 4).unwrap());
        }
    }

    #[test]
    fn frustration_of_balanced_graph_is_zero() {
        let g = graph(4, &[(0, 1, Minus), (1, 2, Minus), (2, 3, Plus), (0, 3, Plus)]);
        let r = frustration_index(&g).unwrap();
        assert_eq!(r.epsilon, 0);
        assert_eq!(g.switch(&r.witness).unwrap().negative_edge_count(), 0);
    }

    #[test]
    fn frustration_single_negative_triangle() {
        let g = graph(3, &[(0, 1, Minus), (0, 2, Plus), (1, 2, Plus)]);
        let r = frustration_index(&g).unwrap();
        assert_eq!(r.epsilon, 1);
        assert_eq!(g.switch(&r.witness).unwrap().negative_edge_count(), 1);
    }

    #[test]
    fn frustration_witness_attains_the_minimum() {
        // All-negative K4 has frustration 2 (switching at one vertex leaves
        // the opposite negative triangle; two disjoint negative edges remain).
        let edges: Vec<_> = (0..4)
            .flat_map(|u| ((u + 1)..4).map(move |v| (u, v, Minus)))
            .collect();
        let g = graph(4, &edges);
        let r = frustration_index(&g).unwrap();
        assert_eq!(r.epsilon, 2);
        assert_eq!(g.switch(&r.witness).unwrap().negative_edge_count(), 2);
    }

    #[test]
    fn frustration_cap_is_enforced() {
        let edges: Vec<_> = (0..25).map(|i| (i, (i + 1) % 25, Minus)).collect();
        let g = graph(25, &edges);
        assert_eq!(
            frustration_index(&g).unwrap_err(),
            CycleError::TooLargeForExact { order: 25, cap: 24 }
        );
    }

    #[test]
    fn frustration_fast_path_handles_large_orders() {
        // Balanced and one-negative-edge graphs bypass the cap.
        let mut edges: Vec<_> = (0..39).map(|i| (i, i + 1, Plus)).collect();
        edges.push((0, 39, Minus));
        let g = graph(40, &edges);
        let r = frustration_index(&g).unwrap();
        assert_eq!(r.epsilon, 1);
    }
}
