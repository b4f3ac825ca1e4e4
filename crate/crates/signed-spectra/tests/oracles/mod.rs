//! Independent reference implementations used by the integration tests.
//!
//! Everything here recomputes a quantity the library already provides, but by
//! a deliberately different method: cycles by subset-and-permutation
//! enumeration instead of the double cover, balance by a parity union-find
//! instead of spanning-forest potentials, frustration by edge-deletion subsets
//! instead of switching enumeration, and eigenvalues by characteristic
//! polynomial root bracketing instead of Jacobi rotations. Agreement between
//! the two sides is what the test suites assert.

// Shared by several test binaries; not every binary uses every oracle.
#![allow(dead_code)]

use std::collections::BTreeSet;

use signed_spectra::{Sign, SignedGraph};

/// All simple-cycle lengths of a graph, split by cycle sign.
#[derive(Debug, Default)]
pub struct CycleCensus {
    pub negative_lengths: BTreeSet<usize>,
    pub positive_lengths: BTreeSet<usize>,
}

impl CycleCensus {
    pub fn shortest_negative(&self) -> Option<usize> {
        self.negative_lengths.iter().next().copied()
    }

    pub fn has_negative_of_length(&self, r: usize) -> bool {
        self.negative_lengths.contains(&r)
    }
}

/// Enumerates every simple cycle by brute force: for each vertex subset,
/// walk all cyclic orders anchored at the subset's smallest vertex, pruning
/// on missing edges. Only sane for `n <= 10` or so.
pub fn cycle_census(g: &SignedGraph) -> CycleCensus {
    let n = g.order();
    assert!(n <= 10, "cycle census is exponential; got n = {n}");
    let mut census = CycleCensus::default();
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) < 3 {
            continue;
        }
        let verts: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let anchor = verts[0];
        let mut used = vec![false; verts.len()];
        used[0] = true;
        let mut path = vec![anchor];
        walk_orders(g, &verts, anchor, &mut used, &mut path, Sign::Plus, &mut census);
    }
    census
}

/// Depth-first over the remaining subset members; extends only along existing
/// edges and closes back to the anchor at full depth. Each undirected cycle
/// is visited once: the anchor is the minimum vertex and the two traversal
/// directions are collapsed by requiring `path[1] < path.last()`.
fn walk_orders(
    g: &SignedGraph,
    verts: &[usize],
    anchor: usize,
    used: &mut [bool],
    path: &mut Vec<usize>,
    sign_so_far: Sign,
    census: &mut CycleCensus,
) {
    let last = *path.last().unwrap();
    if path.len() == verts.len() {
        if path[1] < last {
            if let Some(closing) = g.sign(last, anchor) {
                let total = sign_so_far * closing;
                let set = match total {
                    Sign::Minus => &mut census.negative_lengths,
                    Sign::Plus => &mut census.positive_lengths,
                };
                set.insert(path.len());
            }
        }
        return;
    }
    for (i, &v) in verts.iter().enumerate() {
        if used[i] {
            continue;
        }
        if let Some(s) = g.sign(last, v) {
            used[i] = true;
            path.push(v);
            walk_orders(g, verts, anchor, used, path, sign_so_far * s, census);
            path.pop();
            used[i] = false;
        }
    }
}

/// Union-find with parity: tracks, for each vertex, the product of edge
/// signs along its path to the set root.
struct ParityDsu {
    parent: Vec<usize>,
    /// true = the path to the root has negative total sign.
    negative_to_root: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> ParityDsu {
        ParityDsu {
            parent: (0..n).collect(),
            negative_to_root: vec![false; n],
        }
    }

    fn find(&mut self, v: usize) -> (usize, bool) {
        if self.parent[v] == v {
            return (v, false);
        }
        let (root, above) = self.find(self.parent[v]);
        self.parent[v] = root;
        self.negative_to_root[v] ^= above;
        (root, self.negative_to_root[v])
    }

    /// Joins `u` and `v` with an edge of the given parity. Returns false when
    /// the edge closes a cycle whose total sign would be negative.
    fn union(&mut self, u: usize, v: usize, edge_negative: bool) -> bool {
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        if ru == rv {
            return pu ^ pv == edge_negative;
        }
        self.parent[ru] = rv;
        self.negative_to_root[ru] = pu ^ pv ^ edge_negative;
        true
    }
}

/// Balance check that shares no code with the library: every edge is fed to
/// a parity union-find, and balance means no negative cycle ever closes.
pub fn balanced_by_union_find(g: &SignedGraph) -> bool {
    let mut dsu = ParityDsu::new(g.order());
    g.edges()
        .iter()
        .all(|e| dsu.union(e.u, e.v, e.sign == Sign::Minus))
}

/// Frustration as literally defined: the fewest edge deletions that leave a
/// balanced graph, found by trying all `2^e` deletion subsets.
pub fn frustration_by_edge_deletion(g: &SignedGraph) -> usize {
    let edges = g.edges();
    let e = edges.len();
    assert!(e <= 20, "edge-deletion frustration is exponential; got e = {e}");
    let mut best = usize::MAX;
    for mask in 0u32..(1 << e) {
        let deleted = mask.count_ones() as usize;
        if deleted >= best {
            continue;
        }
        let mut dsu = ParityDsu::new(g.order());
        let balanced = edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 0)
            .all(|(_, edge)| dsu.union(edge.u, edge.v, edge.sign == Sign::Minus));
        if balanced {
            best = deleted;
        }
    }
    best
}

/// Characteristic polynomial of the signed adjacency matrix, by the
/// Faddeev-LeVerrier recurrence in exact integer arithmetic. Returns the
/// monic coefficients `[1, c_1, ..., c_n]` of
/// `x^n + c_1 x^(n-1) + ... + c_n`.
pub fn charpoly_coefficients(g: &SignedGraph) -> Vec<i64> {
    let n = g.order();
    assert!(n <= 8, "integer charpoly kept small on purpose; got n = {n}");
    let mut a = vec![vec![0i64; n]; n];
    for edge in g.edges() {
        let v = edge.sign.value() as i64;
        a[edge.u][edge.v] = v;
        a[edge.v][edge.u] = v;
    }
    let mut coeffs = vec![1i64];
    // m starts as A; at step k, c_k = -tr(m)/k and m <- A (m + c_k I).
    let mut m = a.clone();
    for k in 1..=n {
        let trace: i64 = (0..n).map(|i| m[i][i]).sum();
        assert_eq!(trace % k as i64, 0, "Faddeev-LeVerrier trace must divide");
        let c = -trace / k as i64;
        coeffs.push(c);
        if k == n {
            break;
        }
        for i in 0..n {
            m[i][i] += c;
        }
        let mut next = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i64;
                for (l, row) in m.iter().enumerate() {
                    acc += a[i][l] * row[j];
                }
                next[i][j] = acc;
            }
        }
        m = next;
    }
    coeffs
}

/// All real roots of a real-rooted polynomial (multiplicities included),
/// sorted descending. Works by recursion on the derivative: the roots of
/// `p'` split the line into intervals where `p` is strictly monotone, so each
/// interval holds at most one root, found by bisection; roots sitting exactly
/// on a critical point are multiple roots and inherit the critical point's
/// multiplicity plus one. Panics if the recovered root count does not match
/// the degree, which is the oracle's own soundness check.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let roots = real_roots_rec(coeffs);
    assert_eq!(
        roots.len(),
        coeffs.len() - 1,
        "root bracketing lost a root of {coeffs:?}"
    );
    let mut sorted = roots;
    sorted.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sorted
}

/// Eigenvalues of the signed adjacency matrix via the two oracles above,
/// sorted descending.
pub fn eigenvalues_by_charpoly(g: &SignedGraph) -> Vec<f64> {
    let coeffs: Vec<f64> = charpoly_coefficients(g).iter().map(|&c| c as f64).collect();
    real_roots(&coeffs)
}

fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

fn real_roots_rec(coeffs: &[f64]) -> Vec<f64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![-coeffs[1] / coeffs[0]];
    }
    let derivative: Vec<f64> = coeffs[..deg]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (deg - i) as f64)
        .collect();
    let mut critical = real_roots_rec(&derivative);
    critical.sort_by(|x, y| x.partial_cmp(y).unwrap());

    // Cauchy bound: all roots lie strictly inside [-bound, bound].
    let bound = 1.0
        + coeffs[1..]
            .iter()
            .map(|c| (c / coeffs[0]).abs())
            .fold(0.0, f64::max);
    let scale = coeffs.iter().fold(1.0f64, |m, c| m.max(c.abs()));
    let root_tol = 1e-9 * scale;

    // Cluster the critical points (they arrive with multiplicity) and decide
    // which are themselves roots of p.
    let mut roots: Vec<f64> = Vec::new();
    let mut breakpoints = vec![-bound];
    let mut i = 0;
    while i < critical.len() {
        let c = critical[i];
        let mut multiplicity = 1;
        while i + multiplicity < critical.len() && critical[i + multiplicity] - c < 1e-7 {
            multiplicity += 1;
        }
        if eval(coeffs, c).abs() <= root_tol {
            // A root of both p and p': multiplicity in p is one higher.
            for _ in 0..=multiplicity {
                roots.push(c);
            }
        }
        breakpoints.push(c);
        i += multiplicity;
    }
    breakpoints.push(bound);

    // One bisection per monotone interval whose endpoints are not roots.
    for pair in breakpoints.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if roots.iter().any(|&r| (r - lo).abs() < 1e-7 || (r - hi).abs() < 1e-7) {
            // p vanishes at an endpoint and is strictly monotone inside, so
            // the interval has no further root.
            continue;
        }
        let (flo, fhi) = (eval(coeffs, lo), eval(coeffs, hi));
        if flo * fhi < 0.0 {
            roots.push(bisect(coeffs, lo, hi, flo));
        }
    }
    roots
}

fn bisect(coeffs: &[f64], mut lo: f64, mut hi: f64, flo: f64) -> f64 {
    let lo_negative = flo < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (eval(coeffs, mid) < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Deterministic generator shared by the test binaries, so trial corpora are
/// reproducible without threading RNG state through every helper.
pub fn trial_rng(stream: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED_0000u64 ^ stream)
}
