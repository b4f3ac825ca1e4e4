//! Core signed-graph model: vertices `0..n`, simple undirected edges carrying
//! a sign, switching at vertex sets, and switching equivalence/isomorphism.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest order accepted by the backtracking switching-isomorphism search.
pub const ISOMORPHISM_MAX_ORDER: usize = 10;

/// Edge sign, written `+`/`-` in the text format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Numeric value used in adjacency matrices: `+1` or `-1`.
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    /// Flip the sign when `flip` is true; switching is repeated use of this.
    pub fn xor(self, flip: bool) -> Sign {
        if flip {
            self.flipped()
        } else {
            self
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        self.xor(rhs.is_negative())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Errors from graph construction and the switching operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    EmptyOrder,
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop at vertex {0} is not allowed")]
    LoopEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),
    #[error("edge {0}-{1} already present")]
    EdgeExists(usize, usize),
    #[error("switch set is over order {set_order}, graph has order {order}")]
    SwitchSetMismatch { set_order: usize, order: usize },
    #[error("order {order} exceeds the isomorphism search cap of {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("permutation is not a bijection on 0..{order}")]
    BadPermutation { order: usize },
}

/// A signed edge with endpoints stored as `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedEdge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

/// A set of vertices to switch at, over a fixed order `n`.
///
/// Switching at `S` negates exactly the edges with one endpoint in `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SwitchSet {
    n: usize,
    words: Vec<u64>,
}

impl SwitchSet {
    pub fn new(n: usize) -> SwitchSet {
        SwitchSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn from_members<I>(n: usize, members: I) -> Result<SwitchSet, GraphError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = SwitchSet::new(n);
        for v in members {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn toggle(&mut self, v: usize) {
        self.words[v / 64] ^= 1 << (v % 64);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&v| self.contains(v))
    }

    /// Switching at `S` and then at `T` equals switching at the symmetric
    /// difference, so composition of switchings is this operation.
    pub fn symmetric_difference(&self, other: &SwitchSet) -> Result<SwitchSet, GraphError> {
        if self.n != other.n {
            return Err(GraphError::SwitchSetMismatch {
                set_order: other.n,
                order: self.n,
            });
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(SwitchSet { n: self.n, words })
    }

    /// Switching at `S` and at its complement produce the same graph; the
    /// smaller of the two is the canonical witness.
    pub fn normalized(&self) -> SwitchSet {
        let complement_len = self.n - self.len();
        if self.len() < complement_len || (self.len() == complement_len && !self.contains(0)) {
            return self.clone();
        }
        let mut out = SwitchSet::new(self.n);
        for v in 0..self.n {
            if !self.contains(v) {
                out.insert(v);
            }
        }
        out
    }
}

impl fmt::Display for SwitchSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SwitchSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members())
    }
}

/// A signed simple graph on vertices `0..n`.
///
/// Edges are kept sorted by `(u, v)` with `u < v`; this canonical order is
/// what [`fmt::Display`] emits and what all enumeration code iterates in.
#[derive(Clone, Debug)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<SignedEdge>,
    adj: Vec<Vec<(usize, Sign)>>,
}

impl PartialEq for SignedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for SignedGraph {}

impl std::hash::Hash for SignedGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl SignedGraph {
    /// Build a signed graph, rejecting loops, duplicate edges (regardless of
    /// endpoint order or sign), and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize, Sign)]) -> Result<SignedGraph, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyOrder);
        }
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b, sign) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, order: n });
                }
            }
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            list.push(SignedEdge {
                u: a.min(b),
                v: a.max(b),
                sign,
            });
        }
        list.sort_unstable_by_key(|e| (e.u, e.v));
        for pair in list.windows(2) {
            if (pair[0].u, pair[0].v) == (pair[1].u, pair[1].v) {
                return Err(GraphError::DuplicateEdge(pair[0].u, pair[0].v));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for e in &list {
            adj[e.u].push((e.v, e.sign));
            adj[e.v].push((e.u, e.sign));
        }
        for row in &mut adj {
            row.sort_unstable_by_key(|&(w, _)| w);
        }
        Ok(SignedGraph {
            n,
            edges: list,
            adj,
        })
    }

    /// All-positive graph on the same vertex set and edge set.
    pub fn underlying(&self) -> SignedGraph {
        let edges: Vec<_> = self.edges.iter().map(|e| (e.u, e.v, Sign::Plus)).collect();
        SignedGraph::new(self.n, &edges).expect("underlying copy of a valid graph is valid")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical `(u, v)` order.
    pub fn edges(&self) -> &[SignedEdge] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order, with the sign of each edge.
    pub fn neighbors(&self, v: usize) -> &[(usize, Sign)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sign of edge `u-v`, or `None` when the edge is absent.
    pub fn sign(&self, u: usize, v: usize) -> Option<Sign> {
        if u >= self.n || v >= self.n || u == v {
            return None;
        }
        self.adj[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.sign(u, v).is_some()
    }

    pub fn negative_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.sign.is_negative()).count()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Connected components of the underlying graph, each sorted, listed by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Switch at `set`: negate every edge with exactly one endpoint in `set`.
    pub fn switch(&self, set: &SwitchSet) -> Result<SignedGraph, GraphError> {
        if set.order() != self.n {
            return Err(GraphError::SwitchSetMismatch {
                set_order: set.order(),
                order: self.n,
            });
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                (
                    e.u,
                    e.v,
                    e.sign.xor(set.contains(e.u) != set.contains(e.v)),
                )
            })
            .collect();
        SignedGraph::new(self.n, &edges)
    }

    /// Copy with the sign of one existing edge negated.
    pub fn with_sign_flipped(&self, u: usize, v: usize) -> Result<SignedGraph, GraphError> {
        let (u, v) = (u.min(v), u.max(v));
        if self.sign(u, v).is_none() {
            return Err(GraphError::MissingEdge(u, v));
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let sign = if (e.u, e.v) == (u, v) {
                    e.sign.flipped()
                } else {
                    e.sign
                };
                (e.u, e.v, sign)
            })
            .collect();
        SignedGraph::new(self.n, &edges)
    }

    /// Copy with one new edge added.
    pub fn with_edge_added(&self, u: usize, v: usize, sign: Sign) -> Result<SignedGraph, GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    order: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        let (u, v) = (u.min(v), u.max(v));
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeExists(u, v));
        }
        let mut edges: Vec<_> = self.edges.iter().map(|e| (e.u, e.v, e.sign)).collect();
        edges.push((u, v, sign));
        SignedGraph::new(self.n, &edges)
    }

    /// Copy with one existing edge deleted.
    pub fn with_edge_removed(&self, u: usize, v: usize) -> Result<SignedGraph, GraphError> {
        let (u, v) = (u.min(v), u.max(v));
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|e| (e.u, e.v) != (u, v))
            .map(|e| (e.u, e.v, e.sign))
            .collect();
        SignedGraph::new(self.n, &edges)
    }

    /// Relabel vertices: vertex `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<SignedGraph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::BadPermutation { order: self.n });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(GraphError::BadPermutation { order: self.n });
            }
            seen[p] = true;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| (perm[e.u], perm[e.v], e.sign))
            .collect();
        SignedGraph::new(self.n, &edges)
    }
}

impl Serialize for SignedGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Per-component potential assignment from a BFS spanning forest: tree edges
/// become positive after switching at `{v : potential(v)}`. The cotree signs
/// that remain are a complete switching invariant.
pub(crate) fn forest_potentials(g: &SignedGraph) -> Vec<bool> {
    let n = g.order();
    let mut pot = vec![false; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &(w, sign) in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    pot[w] = pot[v] ^ sign.is_negative();
                    queue.push_back(w);
                }
            }
        }
    }
    pot
}

/// Sign of `u-v` after switching at the potential set: negative entries here
/// are exactly the frustrated cotree edges.
pub(crate) fn normalized_sign(sign: Sign, pot: &[bool], u: usize, v: usize) -> Sign {
    sign.xor(pot[u] != pot[v])
}

/// Outcome of a switching-equivalence test between two signed graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SwitchingEquivalence {
    /// The second graph is the first switched at the witness set.
    Equivalent(SwitchSet),
    /// Same underlying graph, but no switching maps one to the other.
    Inequivalent,
    /// Different vertex count or different underlying edge set.
    UnderlyingMismatch,
}

impl SwitchingEquivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, SwitchingEquivalence::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&SwitchSet> {
        match self {
            SwitchingEquivalence::Equivalent(s) => Some(s),
            _ => None,
        }
    }
}

/// Decide whether `h` is a switching of `g`, producing a witness set.
///
/// Both graphs are normalized over the same BFS spanning forest; they are
/// equivalent iff the normalized signs agree edge by edge, and the witness is
/// the set of vertices where the two potential assignments differ.
pub fn switching_equivalence(g: &SignedGraph, h: &SignedGraph) -> SwitchingEquivalence {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return SwitchingEquivalence::UnderlyingMismatch;
    }
    if g.edges()
        .iter()
        .zip(h.edges())
        .any(|(a, b)| (a.u, a.v) != (b.u, b.v))
    {
        return SwitchingEquivalence::UnderlyingMismatch;
    }
    let pot_g = forest_potentials(g);
    let pot_h = forest_potentials(h);
    for (a, b) in g.edges().iter().zip(h.edges()) {
        if normalized_sign(a.sign, &pot_g, a.u, a.v) != normalized_sign(b.sign, &pot_h, b.u, b.v) {
            return SwitchingEquivalence::Inequivalent;
        }
    }
    let members = (0..g.order()).filter(|&v| pot_g[v] != pot_h[v]);
    let set = SwitchSet::from_members(g.order(), members).expect("members are in range");
    debug_assert_eq!(&g.switch(&set).unwrap(), h);
    SwitchingEquivalence::Equivalent(set.normalized())
}

pub fn is_switching_equivalent(g: &SignedGraph, h: &SignedGraph) -> bool {
    switching_equivalence(g, h).is_equivalent()
}

/// Decide whether some relabeling of `g` is switching-equivalent to `h`.
///
/// Backtracking over vertex bijections with degree and adjacency pruning;
/// capped at order [`ISOMORPHISM_MAX_ORDER`] because the search is factorial.
pub fn is_switching_isomorphic(g: &SignedGraph, h: &SignedGraph) -> Result<bool, GraphError> {
    let n = g.order();
    if n > ISOMORPHISM_MAX_ORDER || h.order() > ISOMORPHISM_MAX_ORDER {
        return Err(GraphError::TooLarge {
            order: n.max(h.order()),
            cap: ISOMORPHISM_MAX_ORDER,
        });
    }
    if n != h.order() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut deg_g: Vec<_> = (0..n).map(|v| g.degree(v)).collect();
    let mut deg_h: Vec<_> = (0..n).map(|v| h.degree(v)).collect();
    deg_g.sort_unstable();
    deg_h.sort_unstable();
    if deg_g != deg_h {
        return Ok(false);
    }

    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_isomorphism(g, h, 0, &mut perm, &mut used))
}

fn extend_isomorphism(
    g: &SignedGraph,
    h: &SignedGraph,
    i: usize,
    perm: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = g.order();
    if i == n {
        let mapped = g.permuted(perm).expect("backtracking builds a bijection");
        return switching_equivalence(&mapped, h).is_equivalent();
    }
    for target in 0..n {
        if used[target] || g.degree(i) != h.degree(target) {
            continue;
        }
        // The underlying adjacency must match against every vertex placed so far.
        let consistent = (0..i).all(|j| g.has_edge(i, j) == h.has_edge(target, perm[j]));
        if !consistent {
            continue;
        }
        perm[i] = target;
        used[target] = true;
        if extend_isomorphism(g, h, i + 1, perm, used) {
            return true;
        }
        used[target] = false;
        perm[i] = usize::MAX;
    }
    false
}

/// Errors from the line text format (`n m u v s ...`).
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("expected {expected}, found end of input")]
    MissingToken { expected: &'static str },
    #[error("invalid integer token {0:?}")]
    InvalidInteger(String),
    #[error("invalid sign token {0:?} (expected + or -)")]
    InvalidSign(String),
    #[error("unexpected trailing token {0:?}")]
    TrailingToken(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl FromStr for SignedGraph {
    type Err = ParseError;

    /// Parse the line format `n m u1 v1 s1 ... um vm sm` with whitespace
    /// separators, e.g. `3 3 0 1 - 0 2 + 1 2 +`.
    fn from_str(s: &str) -> Result<SignedGraph, ParseError> {
        let mut tokens = s.split_whitespace();
        let next_int = |expected: &'static str, tokens: &mut dyn Iterator<Item = &str>| {
            let tok = tokens.next().ok_or(ParseError::MissingToken { expected })?;
            tok.parse::<usize>()
                .map_err(|_| ParseError::InvalidInteger(tok.to_string()))
        };
        let n = next_int("vertex count", &mut tokens)?;
        let m = next_int("edge count", &mut tokens)?;
        let mut edges = Vec::with_capacity(m.min(4096));
        for _ in 0..m {
            let u = next_int("edge endpoint", &mut tokens)?;
            let v = next_int("edge endpoint", &mut tokens)?;
            let sign = match tokens.next() {
                Some("+") => Sign::Plus,
                Some("-") => Sign::Minus,
                Some(tok) => return Err(ParseError::InvalidSign(tok.to_string())),
                None => return Err(ParseError::MissingToken { expected: "edge sign" }),
            };
            edges.push((u, v, sign));
        }
        if let Some(tok) = tokens.next() {
            return Err(ParseError::TrailingToken(tok.to_string()));
        }
        Ok(SignedGraph::new(n, &edges)?)
    }
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.n, self.edges.len())?;
        for e in &self.edges {
            write!(f, " {} {} {}", e.u, e.v, e.sign)?;
        }
        Ok(())
    }
}

/// Parse a comma-separated list of vertex pairs such as `0-1,2-4`.
///
/// Used for naming the negative edges of a construction on the command line.
pub fn parse_edge_list(s: &str) -> Result<Vec<(usize, usize)>, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let (a, b) = part
            .split_once('-')
            .ok_or_else(|| ParseError::TrailingToken(part.to_string()))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| ParseError::InvalidInteger(t.trim().to_string()))
        };
        out.push((parse(a)?, parse(b)?));
    }
    Ok(out)
}
