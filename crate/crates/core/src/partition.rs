use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LabelId, LabelMatrix, Permutation};

/// Ordered list of disjoint sorted cells covering `0..n`.
///
/// Cells are kept sorted and ordered by their smallest vertex, so two partitions
/// with the same cells compare equal regardless of how they were built.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(mut cells: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for cell in &mut cells {
            if cell.is_empty() {
                return Err(Error::NotAPartition { n, reason: "empty cell".into() });
            }
            for &v in cell.iter() {
                if v >= n {
                    return Err(Error::NotAPartition { n, reason: format!("vertex {v} out of range") });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::NotAPartition { n, reason: format!("vertex {v} in two cells") });
                }
            }
            cell.sort_unstable();
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::NotAPartition { n, reason: format!("vertex {v} not covered") });
        }
        cells.sort_unstable_by_key(|c| c[0]);
        Ok(Partition { cells })
    }

    /// Groups vertices by key; cells ordered by smallest member.
    pub fn from_keys<K: Hash + Eq>(keys: &[K]) -> Self {
        let mut index: HashMap<&K, usize> = HashMap::new();
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for (v, k) in keys.iter().enumerate() {
            let i = *index.entry(k).or_insert_with(|| {
                cells.push(Vec::new());
                cells.len() - 1
            });
            cells[i].push(v);
        }
        Partition { cells }
    }

    pub fn discrete(n: usize) -> Self {
        Partition { cells: (0..n).map(|v| vec![v]).collect() }
    }

    pub fn unit(n: usize) -> Self {
        Partition { cells: if n == 0 { vec![] } else { vec![(0..n).collect()] } }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn order(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Cell index of every vertex.
    pub fn cell_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for (i, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                idx[v] = i;
            }
        }
        idx
    }

    /// Every cell of `self` lies inside a cell of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.order() != coarser.order() {
            return false;
        }
        let idx = coarser.cell_index();
        self.cells.iter().all(|c| c.iter().all(|&v| idx[v] == idx[c[0]]))
    }

    /// The partition restricted to `vertices`, dropping cells that become empty.
    pub fn restricted(&self, keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        self.cells
            .iter()
            .map(|c| c.iter().copied().filter(|&v| keep(v)).collect::<Vec<_>>())
            .filter(|c| !c.is_empty())
            .collect()
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|c| c.iter().map(|v| v + 1).collect()).collect()
    }
}

/// Serialized form `{"cells": [[…]], "labels": […]}`; `labels[i]` is the diagonal label of cell `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDump {
    pub cells: Vec<Vec<usize>>,
    pub labels: Vec<LabelId>,
}

impl PartitionDump {
    pub fn of<G: LabelMatrix + ?Sized>(g: &G) -> Self {
        let p = vertex_partition(g);
        let labels = p.cells().iter().map(|c| g.label(c[0], c[0])).collect();
        PartitionDump { cells: p.cells, labels }
    }
}

/// Vertices grouped by diagonal label.
pub fn vertex_partition<G: LabelMatrix + ?Sized>(g: &G) -> Partition {
    Partition::from_keys(&g.diagonal())
}

fn check_partition<G: LabelMatrix + ?Sized>(g: &G, p: &Partition) -> Result<()> {
    if p.order() != g.order() {
        return Err(Error::NotAPartition { n: g.order(), reason: format!("covers {} vertices", p.order()) });
    }
    Partition::new(p.cells.clone(), g.order()).map(|_| ())
}

/// Sorted labels from `u` into `cell` along rows, and along columns.
fn block_profile<G: LabelMatrix + ?Sized>(g: &G, u: usize, cell: &[usize]) -> (Vec<LabelId>, Vec<LabelId>) {
    let mut out: Vec<LabelId> = cell.iter().map(|&v| g.label(u, v)).collect();
    let mut inc: Vec<LabelId> = cell.iter().map(|&v| g.label(v, u)).collect();
    out.sort_unstable();
    inc.sort_unstable();
    (out, inc)
}

/// The label multiset from a vertex of one cell into another cell depends only on the cells.
pub fn is_equitable<G: LabelMatrix + Sync + ?Sized>(g: &G, p: &Partition) -> Result<bool> {
    check_partition(g, p)?;
    let pairs: Vec<(usize, usize)> = (0..p.len()).flat_map(|i| (0..p.len()).map(move |j| (i, j))).collect();
    Ok(pairs.par_iter().all(|&(i, j)| {
        let src = &p.cells[i];
        let first = block_profile(g, src[0], &p.cells[j]);
        src[1..].iter().all(|&u| block_profile(g, u, &p.cells[j]) == first)
    }))
}

/// Equitable, and the label sets of blocks over different unordered cell pairs are disjoint.
pub fn is_strongly_equitable<G: LabelMatrix + Sync + ?Sized>(g: &G, p: &Partition) -> Result<bool> {
    if !is_equitable(g, p)? {
        return Ok(false);
    }
    let idx = p.cell_index();
    let mut owner: HashMap<LabelId, (usize, usize)> = HashMap::new();
    let n = g.order();
    for u in 0..n {
        for v in 0..n {
            let (a, b) = (idx[u], idx[v]);
            let block = (a.min(b), a.max(b));
            if *owner.entry(g.label(u, v)).or_insert(block) != block {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// If `perm` preserves every label of `y`, it must map each cell of `y`'s vertex
/// partition onto itself. Returns whether that implication holds.
pub fn block_commutant_check<G: LabelMatrix + ?Sized>(y: &G, perm: &Permutation) -> bool {
    let n = y.order();
    if perm.len() != n {
        return false;
    }
    let automorphism = (0..n).all(|i| (0..n).all(|j| y.label(perm.image(i), perm.image(j)) == y.label(i, j)));
    if !automorphism {
        return true;
    }
    let idx = vertex_partition(y).cell_index();
    (0..n).all(|i| idx[perm.image(i)] == idx[i])
}

/// For every singleton cell `{u}`, labels from `u` into each cell are constant.
pub fn singleton_rule_holds<G: LabelMatrix + ?Sized>(g: &G, p: &Partition) -> bool {
    p.cells.iter().filter(|c| c.len() == 1).all(|c| {
        let u = c[0];
        p.cells.iter().all(|d| {
            let l = g.label(u, d[0]);
            d.iter().all(|&v| g.label(u, v) == l) && d.iter().all(|&v| g.label(v, u) == g.label(d[0], u))
        })
    })
}

/// Two diagonal labels agree exactly when the two rows carry the same label multiset.
pub fn row_equality_rule_holds<G: LabelMatrix + ?Sized>(g: &G) -> bool {
    let n = g.order();
    let rows: Vec<Vec<LabelId>> = (0..n)
        .map(|u| {
            let mut r = g.row(u).to_vec();
            r.sort_unstable();
            r
        })
        .collect();
    let mut by_diag: HashMap<LabelId, &Vec<LabelId>> = HashMap::new();
    let mut seen_rows: HashSet<&Vec<LabelId>> = HashSet::new();
    for u in 0..n {
        let d = g.label(u, u);
        match by_diag.get(&d) {
            Some(r) if *r != &rows[u] => return false,
            Some(_) => {}
            None => {
                if !seen_rows.insert(&rows[u]) {
                    return false;
                }
                by_diag.insert(d, &rows[u]);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledGraph;

    fn cycle(n: usize) -> LabeledGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        LabeledGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![vec![0], vec![0, 1]], 2).is_err());
        assert!(Partition::new(vec![vec![0]], 2).is_err());
        assert!(Partition::new(vec![vec![], vec![0, 1]], 2).is_err());
        let p = Partition::new(vec![vec![2, 1], vec![0]], 3).unwrap();
        assert_eq!(p.cells(), &[vec![0], vec![1, 2]]);
    }

    #[test]
    fn partition_equality_ignores_construction_order() {
        let a = Partition::new(vec![vec![3, 1], vec![0, 2]], 4).unwrap();
        let b = Partition::from_keys(&['x', 'y', 'x', 'y']);
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_diagonal_gives_discrete_partition() {
        let g = LabeledGraph::from_fn(4, |u, v| if u == v { LabelId(10 + u as u32) } else { LabelId(1) }).unwrap();
        assert!(vertex_partition(&g).is_discrete());
    }

    #[test]
    fn p3_single_cell_is_not_equitable() {
        let p3 = LabeledGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_equitable(&p3, &Partition::unit(3)).unwrap());
        let orbits = Partition::new(vec![vec![0, 2], vec![1]], 3).unwrap();
        assert!(is_equitable(&p3, &orbits).unwrap());
    }

    #[test]
    fn regular_cycle_single_cell() {
        let c6 = cycle(6);
        assert!(is_equitable(&c6, &Partition::unit(6)).unwrap());
        assert!(is_strongly_equitable(&c6, &Partition::unit(6)).unwrap());
    }

    #[test]
    fn shared_label_across_blocks_breaks_strong_equitability() {
        // Star K1,2 with centre labeled 5 and leaves 6: blocks {centre,leaf} use 1,
        // {leaf,leaf} uses 2. Reusing 1 between the leaves merges two blocks.
        let mut g = LabeledGraph::from_rows(vec![vec![5, 1, 1], vec![1, 6, 2], vec![1, 2, 6]]).unwrap();
        let p = vertex_partition(&g);
        assert!(is_strongly_equitable(&g, &p).unwrap());
        g.set(1, 2, LabelId(1));
        assert!(is_equitable(&g, &p).unwrap());
        assert!(!is_strongly_equitable(&g, &p).unwrap());
    }

    #[test]
    fn non_partition_is_an_error() {
        let c4 = cycle(4);
        let bad = Partition::unit(3);
        assert!(is_equitable(&c4, &bad).is_err());
    }

    #[test]
    fn block_commutant_on_path() {
        let g = LabeledGraph::from_rows(vec![vec![5, 1, 0], vec![1, 6, 1], vec![0, 1, 5]]).unwrap();
        assert!(block_commutant_check(&g, &Permutation::identity(3)));
        assert!(block_commutant_check(&g, &Permutation::new(vec![2, 1, 0]).unwrap()));
        // Not an automorphism, so the implication holds vacuously.
        assert!(block_commutant_check(&g, &Permutation::new(vec![1, 0, 2]).unwrap()));
        assert!(!block_commutant_check(&g, &Permutation::identity(2)));
    }

    #[test]
    fn row_equality_rule_detects_mismatch() {
        let ok = LabeledGraph::from_rows(vec![vec![5, 1, 0], vec![1, 6, 1], vec![0, 1, 5]]).unwrap();
        assert!(row_equality_rule_holds(&ok));
        let bad = LabeledGraph::from_rows(vec![vec![5, 1, 0], vec![1, 5, 1], vec![0, 1, 5]]).unwrap();
        assert!(!row_equality_rule_holds(&bad));
    }

    #[test]
    fn singleton_rule() {
        let ok = LabeledGraph::from_rows(vec![vec![5, 1, 1], vec![1, 6, 2], vec![1, 2, 6]]).unwrap();
        assert!(singleton_rule_holds(&ok, &vertex_partition(&ok)));
        let bad = LabeledGraph::from_rows(vec![vec![5, 1, 3], vec![1, 6, 2], vec![3, 2, 6]]).unwrap();
        assert!(!singleton_rule_holds(&bad, &vertex_partition(&bad)));
    }

    #[test]
    fn dump_lists_cell_labels() {
        let g = LabeledGraph::from_rows(vec![vec![5, 1, 0], vec![1, 6, 1], vec![0, 1, 5]]).unwrap();
        let dump = PartitionDump::of(&g);
        assert_eq!(dump.cells, vec![vec![0, 2], vec![1]]);
        assert_eq!(dump.labels, vec![LabelId(5), LabelId(6)]);
        let json = serde_json::to_string(&dump).unwrap();
        assert_eq!(json, r#"{"cells":[[0,2],[1]],"labels":[5,6]}"#);
    }
}
