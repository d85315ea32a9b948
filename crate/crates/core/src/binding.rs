//! Binding graphs, wing graphs, and the graphs derived from a stabilized binding graph.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{LabelId, LabelMatrix, LabeledGraph};
use crate::partition::Partition;

/// Edge label of plain binding graphs; binding-vertex labelings must avoid it.
pub const PLAIN_EDGE_LABEL: LabelId = LabelId(1);

/// A graph on `n` basic vertices plus one degree-2 binding vertex per basic pair.
///
/// Vertices `0..n` are basic and `n..n(n+1)/2` are binding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BindingGraph {
    graph: LabeledGraph,
    basic_n: usize,
    pairs: Vec<(usize, usize)>,
    binder: Vec<usize>,
}

pub fn binding_order(basic_n: usize) -> usize {
    basic_n * (basic_n + 1) / 2
}

impl BindingGraph {
    /// Binding graph over any simple graph with more than two vertices;
    /// [`binding_graph`] additionally requires connectivity.
    pub fn over(a: &LabeledGraph) -> Result<Self> {
        if !a.is_simple() {
            return Err(Error::NotSimple);
        }
        let n = a.order();
        if n <= 2 {
            return Err(Error::OrderTooSmall { n, min: 3 });
        }
        let edge = a.edges().first().map_or(LabelId(1), |&(u, v)| a.label(u, v));
        Ok(Self::assemble(a, edge))
    }

    fn assemble(a: &LabeledGraph, edge: LabelId) -> Self {
        let n = a.order();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut graph = LabeledGraph::empty(binding_order(n)).expect("order >= 1");
        for u in 0..n {
            for v in u + 1..n {
                graph.set(u, v, a.label(u, v));
            }
        }
        for (i, &(u, v)) in pairs.iter().enumerate() {
            graph.set(n + i, u, edge);
            graph.set(n + i, v, edge);
        }
        Self::with_pairs(graph, n, pairs)
    }

    fn with_pairs(graph: LabeledGraph, basic_n: usize, pairs: Vec<(usize, usize)>) -> Self {
        let mut binder = vec![usize::MAX; basic_n * basic_n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            binder[u * basic_n + v] = basic_n + i;
            binder[v * basic_n + u] = basic_n + i;
        }
        BindingGraph { graph, basic_n, pairs, binder }
    }

    /// Recognizes an existing binding graph whose first `basic_n` vertices are
    /// basic, whatever the order of its binding vertices.
    pub fn from_graph(graph: LabeledGraph, basic_n: usize) -> Result<Self> {
        if !graph.is_simple() {
            return Err(Error::NotSimple);
        }
        let total = binding_order(basic_n);
        if graph.order() != total {
            return Err(Error::NotBindingGraph(format!(
                "order {} but {basic_n} basic vertices need {total}",
                graph.order()
            )));
        }
        let mut seen = vec![false; basic_n * basic_n];
        let mut pairs = Vec::with_capacity(total - basic_n);
        for p in basic_n..total {
            let nb: Vec<usize> = graph.neighbors(p).collect();
            let &[u, v] = nb.as_slice() else {
                return Err(Error::NotBindingGraph(format!("vertex {p} has degree {}", nb.len())));
            };
            if v >= basic_n {
                return Err(Error::NotBindingGraph(format!("vertex {p} is adjacent to binding vertex {v}")));
            }
            if std::mem::replace(&mut seen[u * basic_n + v], true) {
                return Err(Error::NotBindingGraph(format!("pair ({u}, {v}) is bound twice")));
            }
            pairs.push((u, v));
        }
        Ok(Self::with_pairs(graph, basic_n, pairs))
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.graph
    }

    pub fn basic_n(&self) -> usize {
        self.basic_n
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn is_basic(&self, v: usize) -> bool {
        v < self.basic_n
    }

    /// Binding vertex of the basic pair `{u, v}`.
    pub fn binder(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.basic_n || v >= self.basic_n || u == v {
            return None;
        }
        Some(self.binder[u * self.basic_n + v])
    }

    /// Basic pair `(u, v)`, `u < v`, bound by binding vertex `p`.
    pub fn bound_pair(&self, p: usize) -> Option<(usize, usize)> {
        p.checked_sub(self.basic_n).and_then(|i| self.pairs.get(i)).copied()
    }

    /// Basic subgraph.
    pub fn basic_graph(&self) -> LabeledGraph {
        self.graph.induced(&(0..self.basic_n).collect::<Vec<_>>()).expect("basic_n >= 1")
    }
}

/// Binding graph of a connected simple graph of order above two, with binding
/// vertices in lexicographic order of their pairs.
pub fn binding_graph(a: &LabeledGraph) -> Result<BindingGraph> {
    if a.order() > 2 && a.is_simple() && !a.is_connected() {
        return Err(Error::Disconnected);
    }
    BindingGraph::over(a)
}

/// Binding graph over the edgeless graph on `n` vertices; binding edges carry
/// [`PLAIN_EDGE_LABEL`].
pub fn plain_binding_graph(n: usize) -> Result<BindingGraph> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    Ok(BindingGraph::assemble(&LabeledGraph::empty(n)?, PLAIN_EDGE_LABEL))
}

/// Both graphs side by side plus an apex `2n` adjacent to all `2n` vertices.
pub fn wing_graph(first: &LabeledGraph, second: &LabeledGraph) -> Result<LabeledGraph> {
    let (n, m) = (first.order(), second.order());
    if n != m {
        return Err(Error::OrderMismatch { left: n, right: m });
    }
    let (first, second) = (first.to_simple01()?, second.to_simple01()?);
    if !first.is_connected() || !second.is_connected() {
        return Err(Error::Disconnected);
    }
    let apex = 2 * n;
    LabeledGraph::from_fn(2 * n + 1, |u, v| match (u, v) {
        (u, v) if u == v => LabelId::BLANK,
        (u, v) if v == apex || u == apex => LabelId(1),
        (u, v) if u < n && v < n => first.label(u, v),
        (u, v) if u >= n && v >= n => second.label(u - n, v - n),
        _ => LabelId::BLANK,
    })
}

fn check_order(b: &BindingGraph, g: &LabeledGraph) -> Result<()> {
    if b.order() != g.order() {
        return Err(Error::OrderMismatch { left: b.order(), right: g.order() });
    }
    Ok(())
}

/// Keeps the stable labels on the diagonal and over the edges of `b`; blank elsewhere.
pub fn build_psi(b: &BindingGraph, stable: &LabeledGraph) -> Result<LabeledGraph> {
    check_order(b, stable)?;
    let g = b.graph();
    LabeledGraph::from_fn(b.order(), |i, j| {
        if i != j && g.label(i, j).is_blank() {
            LabelId::BLANK
        } else {
            stable.label(i, j)
        }
    })
}

/// As [`build_psi`] with every off-diagonal basic–basic entry blanked.
pub fn build_phi(b: &BindingGraph, stable: &LabeledGraph) -> Result<LabeledGraph> {
    let mut phi = build_psi(b, stable)?;
    for u in 0..b.basic_n() {
        for v in u + 1..b.basic_n() {
            phi.set(u, v, LabelId::BLANK);
        }
    }
    Ok(phi)
}

/// Binding-vertex labels of `phi`, one fresh label on every binding edge, blank elsewhere.
pub fn build_theta(phi: &LabeledGraph, b: &BindingGraph) -> Result<LabeledGraph> {
    check_order(b, phi)?;
    let fresh = LabelId(phi.max_label().0 + 1);
    let g = b.graph();
    LabeledGraph::from_fn(b.order(), |i, j| {
        if i == j {
            if b.is_basic(i) {
                LabelId::BLANK
            } else {
                phi.label(i, i)
            }
        } else if !g.label(i, j).is_blank() && (!b.is_basic(i) || !b.is_basic(j)) {
            fresh
        } else {
            LabelId::BLANK
        }
    })
}

/// Outcome of checking a binding-vertex labeling of a plain binding graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BvLabelingReport {
    /// Every binding cell sees a constant number of bound vertices in every basic cell.
    pub stable: bool,
    /// Basic vertices grouped by the multiset of labels on their binding vertices.
    pub basic_partition: Partition,
    /// Binding vertices grouped by label, indexed by pair rank `0..n(n-1)/2`.
    pub binding_partition: Partition,
    /// `degree_table[d][c]`: bound vertices of a binding vertex of cell `d` lying
    /// in basic cell `c`, or `None` where that count varies within `d`.
    pub degree_table: Vec<Vec<Option<usize>>>,
}

/// Size of a binding cell with the sorted `(basic cell size, degree)` pairs of its row.
pub type BindingProfile = (usize, Vec<(usize, Option<usize>)>);

/// Size and degree profile of a labeling, invariant under renaming labels and
/// reordering cells. Equal statistics are necessary for two labelings to be similar.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CellStatistics {
    pub basic_sizes: Vec<usize>,
    pub binding_profiles: Vec<BindingProfile>,
}

impl BvLabelingReport {
    pub fn statistics(&self) -> CellStatistics {
        let mut basic_sizes: Vec<usize> = self.basic_partition.cells().iter().map(Vec::len).collect();
        basic_sizes.sort_unstable();
        let basic = self.basic_partition.cells();
        let mut binding_profiles: Vec<_> = self
            .binding_partition
            .cells()
            .iter()
            .zip(&self.degree_table)
            .map(|(d, row)| {
                let mut profile: Vec<(usize, Option<usize>)> =
                    basic.iter().zip(row).map(|(c, &deg)| (c.len(), deg)).collect();
                profile.sort_unstable();
                (d.len(), profile)
            })
            .collect();
        binding_profiles.sort_unstable();
        CellStatistics { basic_sizes, binding_profiles }
    }
}

/// Checks whether `labels` (labels of the binding vertices of Π_n in pair-rank
/// order) is a stable binding-vertex labeling.
pub fn check_stable_bv_labeling(labels: &[LabelId], n: usize) -> Result<BvLabelingReport> {
    let plain = plain_binding_graph(n)?;
    let expected = binding_order(n) - n;
    if labels.len() != expected {
        return Err(Error::LabelCount { expected, got: labels.len() });
    }
    if let Some(&l) = labels.iter().find(|&&l| l.is_blank() || l == PLAIN_EDGE_LABEL) {
        return Err(Error::ReservedLabel(l));
    }
    let types: Vec<Vec<LabelId>> = (0..n)
        .map(|u| {
            let mut t: Vec<LabelId> =
                (0..n).filter(|&v| v != u).map(|v| labels[plain.binder(u, v).expect("distinct") - n]).collect();
            t.sort_unstable();
            t
        })
        .collect();
    let basic_partition = Partition::from_keys(&types);
    let binding_partition = Partition::from_keys(labels);
    let basic_cell = basic_partition.cell_index();
    let degree_table: Vec<Vec<Option<usize>>> = binding_partition
        .cells()
        .iter()
        .map(|d| {
            let mut counts: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); basic_partition.len()];
            for &i in d {
                let (u, v) = plain.bound_pair(n + i).expect("binding vertex");
                for (c, seen) in counts.iter_mut().enumerate() {
                    let deg = usize::from(basic_cell[u] == c) + usize::from(basic_cell[v] == c);
                    seen.insert(deg);
                }
            }
            counts.iter().map(|s| if s.len() == 1 { s.first().copied() } else { None }).collect()
        })
        .collect();
    let stable = degree_table.iter().flatten().all(Option::is_some);
    Ok(BvLabelingReport { stable, basic_partition, binding_partition, degree_table })
}
