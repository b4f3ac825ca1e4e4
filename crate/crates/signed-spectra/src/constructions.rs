//! Named constructions: signed cycles, signed complete graphs, and the
//! extremal family consisting of a negative triangle sharing a vertex pair
//! path into an all-positive clique.

use thiserror::Error;

use crate::graph::{Sign, SignedGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("order {order} is below the minimum {min} for this construction")]
    TooSmall { order: usize, min: usize },
    #[error("pair {u}-{v} is not an edge of the construction")]
    InvalidEdge { u: usize, v: usize },
}

/// The extremal graph `Gamma_1(n)`: vertices `0` and `1` joined by the only
/// negative edge, both joined positively to vertex `2`, and `2..n` an
/// all-positive complete graph. Defined for `n >= 5`.
///
/// Equivalently: take the one-negative-edge triangle on `{0, 1, 2}` and glue
/// `K_{n-2}` at vertex `2`, then note vertices `0, 1` attach only there.
pub fn gamma1(n: usize) -> Result<SignedGraph, ConstructionError> {
    if n < 5 {
        return Err(ConstructionError::TooSmall { order: n, min: 5 });
    }
    let mut edges = vec![
        (0, 1, Sign::Minus),
        (0, 2, Sign::Plus),
        (1, 2, Sign::Plus),
    ];
    for u in 2..n {
        for v in (u + 1)..n {
            edges.push((u, v, Sign::Plus));
        }
    }
    Ok(SignedGraph::new(n, &edges).expect("construction edges are valid"))
}

/// Cycle `0-1-...-(len-1)-0` with the listed edges negative.
pub fn signed_cycle(len: usize, negative: &[(usize, usize)]) -> Result<SignedGraph, ConstructionError> {
    if len < 3 {
        return Err(ConstructionError::TooSmall { order: len, min: 3 });
    }
    let negative = normalize_pairs(negative);
    let mut edges = Vec::with_capacity(len);
    for i in 0..len {
        let (u, v) = ordered(i, (i + 1) % len);
        let sign = if negative.contains(&(u, v)) {
            Sign::Minus
        } else {
            Sign::Plus
        };
        edges.push((u, v, sign));
    }
    check_all_used(&negative, &edges)?;
    Ok(SignedGraph::new(len, &edges).expect("cycle edges are valid"))
}

/// Complete graph on `n` vertices with the listed edges negative.
pub fn signed_complete(n: usize, negative: &[(usize, usize)]) -> Result<SignedGraph, ConstructionError> {
    if n < 1 {
        return Err(ConstructionError::TooSmall { order: n, min: 1 });
    }
    let negative = normalize_pairs(negative);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            let sign = if negative.contains(&(u, v)) {
                Sign::Minus
            } else {
                Sign::Plus
            };
            edges.push((u, v, sign));
        }
    }
    check_all_used(&negative, &edges)?;
    Ok(SignedGraph::new(n, &edges).expect("complete-graph edges are valid"))
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn normalize_pairs(pairs: &[(usize, usize)]) -> std::collections::BTreeSet<(usize, usize)> {
    pairs.iter().map(|&(a, b)| ordered(a, b)).collect()
}

fn check_all_used(
    negative: &std::collections::BTreeSet<(usize, usize)>,
    edges: &[(usize, usize, Sign)],
) -> Result<(), ConstructionError> {
    for &(u, v) in negative {
        if !edges.iter().any(|&(a, b, _)| (a, b) == (u, v)) {
            return Err(ConstructionError::InvalidEdge { u, v });
        }
    }
    Ok(())
}
