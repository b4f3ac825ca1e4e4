//! Exhaustive enumeration of small connected graphs and of the switching
//! classes over a fixed underlying graph.
//!
//! Switching classes are represented through spanning-tree normalization:
//! with a spanning tree forced all-positive, the sign pattern on the cotree
//! edges is a complete invariant, so the classes over a connected graph with
//! `e` edges are exactly the `2^(e - n + 1)` cotree patterns.

use thiserror::Error;

use crate::graph::{Sign, SignedGraph};
use crate::spectra::SpectralError;

/// Connected-graph enumeration walks all `2^C(n,2)` edge subsets, so it is
/// capped here.
pub const ENUMERATION_MAX_ORDER: usize = 7;

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("order {order} exceeds the enumeration cap of {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("underlying graph {index} is not connected")]
    DisconnectedUnderlying { index: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Number of vertex pairs of an order-`n` graph.
fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Bit position of pair `(i, j)`, `i < j`, in colex order.
fn pair_bit(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

fn mask_is_connected(n: usize, mask: u32) -> bool {
    let mut adj = [0u32; 8];
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_bit(i, j) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let mut reached: u32 = 1;
    loop {
        let mut next = reached;
        let mut bits = reached;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v];
        }
        if next == reached {
            break;
        }
        reached = next;
    }
    reached == (1 << n) - 1
}

/// Color refinement: iterate (color, sorted neighbor colors) signatures to a
/// fixed point; the resulting classes confine the isomorphism search.
fn refine_colors(n: usize, adj: &[u32; 8]) -> Vec<usize> {
    let mut colors: Vec<usize> = (0..n).map(|v| adj[v].count_ones() as usize).collect();
    for _ in 0..n {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut neigh: Vec<usize> = (0..n)
                    .filter(|&w| adj[v] >> w & 1 == 1)
                    .map(|w| colors[w])
                    .collect();
                neigh.sort_unstable();
                (colors[v], neigh, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0usize; n];
        let mut id = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                id += 1;
            }
            next[sigs[i].2] = id;
        }
        if next == colors {
            break;
        }
        colors = next;
    }
    colors
}

/// Canonical form of an underlying graph given as a pair bitmask: the
/// minimum mask over all permutations that respect the refined coloring.
fn canonical_mask(n: usize, mask: u32) -> u32 {
    let mut adj = [0u32; 8];
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_bit(i, j) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let colors = refine_colors(n, &adj);

    // Vertices ordered by (color, index); permutations permute only within
    // color classes, since canonical labels must respect the invariant.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));

    let mut best = u32::MAX;
    let mut perm = vec![0usize; n]; // perm[original] = new label
    permute_classes(n, &order, &colors, 0, &mut perm, &mut |perm| {
        let mut relabeled: u32 = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> pair_bit(i, j) & 1 == 1 {
                    let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                    relabeled |= 1 << pair_bit(a, b);
                }
            }
        }
        if relabeled < best {
            best = relabeled;
        }
    });
    best
}

/// Enumerate assignments of new labels `0..n` to vertices, walking color
/// classes in order and permuting freely within each class.
fn permute_classes(
    n: usize,
    order: &[usize],
    colors: &[usize],
    pos: usize,
    perm: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if pos == n {
        visit(perm);
        return;
    }
    // The block of positions sharing this color.
    let color = colors[order[pos]];
    let end = (pos..n)
        .take_while(|&i| colors[order[i]] == color)
        .last()
        .unwrap()
        + 1;
    let mut members: Vec<usize> = order[pos..end].to_vec();
    permute_block(&mut members, 0, order, colors, pos, end, n, perm, visit);
}

#[allow(clippy::too_many_arguments)]
fn permute_block(
    members: &mut Vec<usize>,
    k: usize,
    order: &[usize],
    colors: &[usize],
    pos: usize,
    end: usize,
    n: usize,
    perm: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if k == members.len() {
        permute_classes(n, order, colors, end, perm, visit);
        return;
    }
    for i in k..members.len() {
        members.swap(k, i);
        perm[members[k]] = pos + k;
        permute_block(members, k + 1, order, colors, pos, end, n, perm, visit);
        members.swap(k, i);
    }
}

/// All connected graphs on `n` labeled-as-canonical vertices, one
/// all-positive representative per isomorphism class, in ascending order of
/// canonical bitmask. Counts for `n = 1..7`: 1, 1, 2, 6, 21, 112, 853.
pub fn connected_underlying_graphs(n: usize) -> Result<Vec<SignedGraph>, EnumerateError> {
    if n == 0 || n > ENUMERATION_MAX_ORDER {
        return Err(EnumerateError::OrderCap {
            order: n,
            cap: ENUMERATION_MAX_ORDER,
        });
    }
    let bits = pair_count(n);
    let mut canon_seen = std::collections::BTreeSet::new();
    for mask in 0..(1u32 << bits) {
        if !mask_is_connected(n, mask) {
            continue;
        }
        canon_seen.insert(canonical_mask(n, mask));
    }
    let mut out = Vec::with_capacity(canon_seen.len());
    for mask in canon_seen {
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if mask >> pair_bit(i, j) & 1 == 1 {
                    edges.push((i, j, Sign::Plus));
                }
            }
        }
        out.push(SignedGraph::new(n, &edges).expect("mask edges are valid"));
    }
    Ok(out)
}

/// Spanning-tree edge indices (BFS from vertex 0) of a connected graph,
/// returned as a boolean marker per edge position.
pub(crate) fn spanning_tree_marks(g: &SignedGraph) -> Vec<bool> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut marks = vec![false; g.edge_count()];
    let mut queue = std::collections::VecDeque::new();
    seen[0] = true;
    queue.push_back(0);
    // Edge position lookup by endpoints.
    let mut position = std::collections::HashMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        position.insert((e.u, e.v), i);
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                marks[position[&(v.min(w), v.max(w))]] = true;
                queue.push_back(w);
            }
        }
    }
    marks
}

/// One switching-class representative per cotree sign pattern: the tree
/// edges positive, the cotree edges signed by the bits of `pattern`.
pub(crate) fn class_representative(
    underlying: &SignedGraph,
    tree_marks: &[bool],
    cotree_positions: &[usize],
    pattern: u64,
) -> SignedGraph {
    debug_assert_eq!(tree_marks.len(), underlying.edge_count());
    let mut edges: Vec<(usize, usize, Sign)> = underlying
        .edges()
        .iter()
        .map(|e| (e.u, e.v, Sign::Plus))
        .collect();
    for (bit, &pos) in cotree_positions.iter().enumerate() {
        if pattern >> bit & 1 == 1 {
            edges[pos].2 = Sign::Minus;
        }
    }
    SignedGraph::new(underlying.order(), &edges).expect("representative edges are valid")
}

/// Visit every switching class over each connected underlying graph exactly
/// once; returns the total number of classes visited.
///
/// The visitor receives the underlying graph's position, the cotree pattern,
/// and the representative. The pattern is zero exactly for the balanced
/// class.
pub fn enumerate_switching_classes<F>(
    underlying: &[SignedGraph],
    mut visit: F,
) -> Result<u64, EnumerateError>
where
    F: FnMut(usize, u64, &SignedGraph),
{
    let mut total = 0u64;
    for (gi, g) in underlying.iter().enumerate() {
        if !g.is_connected() {
            return Err(EnumerateError::DisconnectedUnderlying { index: gi });
        }
        let marks = spanning_tree_marks(g);
        let cotree: Vec<usize> = (0..g.edge_count()).filter(|&i| !marks[i]).collect();
        let k = cotree.len();
        debug_assert_eq!(k, g.edge_count() + 1 - g.order());
        for pattern in 0..(1u64 << k) {
            let rep = class_representative(g, &marks, &cotree, pattern);
            debug_assert_eq!(pattern == 0, crate::cycles::is_balanced(&rep));
            visit(gi, pattern, &rep);
            total += 1;
        }
    }
    Ok(total)
}

/// `sum over graphs of 2^(e - n + 1)`: the class count the enumeration must
/// reproduce exactly.
pub fn expected_class_count(underlying: &[SignedGraph]) -> u64 {
    underlying
        .iter()
        .map(|g| 1u64 << (g.edge_count() + 1 - g.order()))
        .sum()
}
