//! Closed-form upper bounds on the index and the edge-budget bookkeeping
//! used when auditing extremal candidates.

use serde::Serialize;
use thiserror::Error;

use crate::cycles::{frustration_index, CycleError};
use crate::spectra::{index, SpectralError};
use crate::util::round_sig;
use crate::SignedGraph;

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("bound requires a connected graph")]
    Disconnected,
    #[error("bound is undefined: radicand {radicand} is negative")]
    NegativeRadicand { radicand: i64 },
    #[error(transparent)]
    Frustration(#[from] CycleError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Construction(#[from] crate::constructions::ConstructionError),
}

/// Classical bound for a connected graph: `lambda1 <= sqrt(2e - n + 1)`.
///
/// The sign pattern never enters; only the edge count does.
pub fn hong_bound(g: &SignedGraph) -> Result<f64, BoundError> {
    if !g.is_connected() {
        return Err(BoundError::Disconnected);
    }
    let radicand = 2 * g.edge_count() as i64 - g.order() as i64 + 1;
    if radicand < 0 {
        return Err(BoundError::NegativeRadicand { radicand });
    }
    Ok((radicand as f64).sqrt())
}

/// Frustration-aware sharpening: `lambda1 <= sqrt(2(e - eps) - n + 1)`,
/// never above [`hong_bound`] since `eps >= 0`.
pub fn stanic_bound(g: &SignedGraph) -> Result<f64, BoundError> {
    if !g.is_connected() {
        return Err(BoundError::Disconnected);
    }
    let eps = frustration_index(g)?.epsilon;
    let radicand = 2 * (g.edge_count() as i64 - eps as i64) - g.order() as i64 + 1;
    if radicand < 0 {
        return Err(BoundError::NegativeRadicand { radicand });
    }
    Ok((radicand as f64).sqrt())
}

/// One audited graph: its index against both bounds.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    /// Caller-chosen identifier (line-format string, corpus position, ...).
    pub graph_id: String,
    pub lambda1: f64,
    pub hong: f64,
    pub stanic: f64,
    /// `hong - lambda1`; negative means the bound was violated.
    pub slack_hong: f64,
    /// `stanic - lambda1`.
    pub slack_stanic: f64,
}

impl BoundReport {
    pub fn for_graph(graph_id: String, g: &SignedGraph) -> Result<BoundReport, BoundError> {
        let lambda1 = index(g)?.lambda1;
        let hong = hong_bound(g)?;
        let stanic = stanic_bound(g)?;
        Ok(BoundReport {
            graph_id,
            lambda1,
            hong,
            stanic,
            slack_hong: hong - lambda1,
            slack_stanic: stanic - lambda1,
        })
    }

    /// True when the graph respects `lambda1 <= stanic <= hong` up to `tol`.
    pub fn respects_bounds(&self, tol: f64) -> bool {
        self.slack_stanic >= -tol && self.slack_hong >= -tol && self.stanic <= self.hong + tol
    }

    pub fn csv_header() -> &'static str {
        "graph_id,lambda1,hong,stanic,slack_hong,slack_stanic"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            csv_field(&self.graph_id),
            round_sig(self.lambda1),
            round_sig(self.hong),
            round_sig(self.stanic),
            round_sig(self.slack_hong),
            round_sig(self.slack_stanic),
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// How far the extremal family sits above the `n - 3` threshold:
/// `lambda1(Gamma_1(n)) - (n - 3)`, which is positive for every `n >= 5`.
pub fn gamma1_margin(n: usize) -> Result<f64, BoundError> {
    let g = crate::constructions::gamma1(n)?;
    Ok(index(&g)?.lambda1 - (n as f64 - 3.0))
}

/// Missing-edge budget relative to the complete graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeBudget {
    /// `C(n, 2) - e`: how many edges short of complete.
    pub missing: i64,
    /// Whether `missing <= 2n - 6`, the room an extremal graph can afford.
    pub within: bool,
}

pub fn edge_budget_check(g: &SignedGraph) -> EdgeBudget {
    let n = g.order() as i64;
    let missing = n * (n - 1) / 2 - g.edge_count() as i64;
    EdgeBudget {
        missing,
        within: missing <= 2 * n - 6,
    }
}
