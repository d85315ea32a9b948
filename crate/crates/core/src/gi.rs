//! The wing/binding-graph isomorphism procedure.
//!
//! Whether this procedure is a correct isomorphism test is an open claim. The
//! verdict is a report of what the refinement saw, not a certificate; the
//! oracle module is the ground truth for small orders.

use std::fmt;

use serde::Serialize;

use crate::binding::{binding_order, wing_graph, BindingGraph};
use crate::error::{Error, Result};
use crate::graph::{LabelMatrix, LabeledGraph};
use crate::partition::{vertex_partition, Partition};
use crate::refine::{sas_stabilize, wl_stabilize};

/// Binding graphs above this order are refused by default.
pub const DEFAULT_MAX_BINDING_ORDER: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "YES")]
    Yes,
    #[serde(rename = "NO")]
    No,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GiProcess {
    Sas,
    Wl,
}

#[derive(Clone, Copy, Debug)]
pub struct GiOptions {
    pub process: GiProcess,
    pub max_binding_order: usize,
}

impl Default for GiOptions {
    fn default() -> Self {
        GiOptions { process: GiProcess::Sas, max_binding_order: DEFAULT_MAX_BINDING_ORDER }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GiOutcome {
    pub verdict: Verdict,
    pub rounds: usize,
    pub dims: Vec<usize>,
    /// Stable vertex partition of the binding graph of the wing graph.
    #[serde(rename = "cells", serialize_with = "cells_only")]
    pub partition: Partition,
}

fn cells_only<S: serde::Serializer>(p: &Partition, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.cells().serialize(s)
}

fn check_input(g: &LabeledGraph) -> Result<LabeledGraph> {
    let g = g.to_simple01()?;
    if g.order() < 2 {
        return Err(Error::OrderTooSmall { n: g.order(), min: 2 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(g)
}

/// Runs the procedure on two connected simple graphs of equal order `n > 1`:
/// wing graph, its binding graph, stabilization, then YES iff every stable cell
/// holding basic vertices other than the apex meets both copies.
pub fn gi_decide(first: &LabeledGraph, second: &LabeledGraph, opts: GiOptions) -> Result<GiOutcome> {
    let (first, second) = (check_input(first)?, check_input(second)?);
    let n = first.order();
    if second.order() != n {
        return Err(Error::OrderMismatch { left: n, right: second.order() });
    }
    let wing_order = 2 * n + 1;
    let total = binding_order(wing_order);
    if total > opts.max_binding_order {
        return Err(Error::OrderTooLarge { n: total, limit: opts.max_binding_order });
    }
    let wing = wing_graph(&first, &second)?;
    let binding = BindingGraph::over(&wing)?;
    let (partition, rounds, dims) = match opts.process {
        GiProcess::Sas => {
            let t = sas_stabilize(binding.graph());
            (vertex_partition(&t.stable), t.rounds, t.dims)
        }
        GiProcess::Wl => {
            let t = wl_stabilize(binding.graph());
            (vertex_partition(&t.stable), t.rounds, t.dims)
        }
    };
    let shared = partition.cells().iter().all(|cell| {
        let mut basic = cell.iter().filter(|&&v| v < 2 * n).peekable();
        basic.peek().is_none() || {
            let (left, right): (Vec<usize>, Vec<usize>) = basic.partition(|&&v| v < n);
            !left.is_empty() && !right.is_empty()
        }
    });
    let verdict = if shared { Verdict::Yes } else { Verdict::No };
    Ok(GiOutcome { verdict, rounds, dims, partition })
}

impl GiOutcome {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("outcome serializes")
    }
}
