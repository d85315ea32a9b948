//! Named graphs, random graphs, and exhaustive enumeration of small graphs.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{LabelId, LabelMatrix, LabeledGraph, Permutation};

fn from_edges(n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
    LabeledGraph::from_edges(n, edges).expect("generated edges are valid")
}

pub fn complete(n: usize) -> LabeledGraph {
    LabeledGraph::from_fn(n, |u, v| LabelId(u32::from(u != v))).expect("n >= 1")
}

pub fn path(n: usize) -> LabeledGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    from_edges(n, &edges)
}

pub fn cycle(n: usize) -> LabeledGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_edges(n, &edges)
}

pub fn star(leaves: usize) -> LabeledGraph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    from_edges(leaves + 1, &edges)
}

pub fn petersen() -> LabeledGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    from_edges(10, &edges)
}

/// Cayley graph of Z4 × Z4 with connection set ±(0,1), ±(1,0), ±(1,1).
pub fn shrikhande() -> LabeledGraph {
    let steps = [(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)];
    LabeledGraph::from_fn(16, |u, v| {
        let (du, dv) = ((4 + v / 4 - u / 4) % 4, (4 + v % 4 - u % 4) % 4);
        LabelId(u32::from(steps.contains(&(du, dv))))
    })
    .expect("order 16")
}

/// Cartesian product of two complete graphs: vertices share a row or a column.
pub fn rook(rows: usize, cols: usize) -> LabeledGraph {
    LabeledGraph::from_fn(rows * cols, |u, v| {
        let same_row = u / cols == v / cols;
        let same_col = u % cols == v % cols;
        LabelId(u32::from(same_row != same_col))
    })
    .expect("non-empty")
}

/// Erdős–Rényi graph.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> LabeledGraph {
    let mut g = LabeledGraph::empty(n).expect("n >= 1");
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.set(u, v, LabelId(1));
            }
        }
    }
    g
}

/// Uniformly shuffled random recursive tree.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LabeledGraph {
    let mut names: Vec<usize> = (0..n).collect();
    names.shuffle(rng);
    let edges: Vec<_> = (1..n).map(|i| (names[rng.random_range(0..i)], names[i])).collect();
    from_edges(n, &edges)
}

/// A random spanning tree plus independent extra edges with probability `p`.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> LabeledGraph {
    let mut g = random_tree(n, rng);
    for u in 0..n {
        for v in u + 1..n {
            if g.label(u, v).is_blank() && rng.random_bool(p) {
                g.set(u, v, LabelId(1));
            }
        }
    }
    g
}

/// Random relabeling of `g`.
pub fn shuffled<R: Rng + ?Sized>(g: &LabeledGraph, rng: &mut R) -> LabeledGraph {
    g.permuted(&Permutation::random(g.order(), rng))
}

/// Cai–Fürer–Immerman gadget graphs over a simple base graph: the untwisted
/// graph and the one with a single twisted edge.
pub fn cfi_pair(base: &LabeledGraph) -> (LabeledGraph, LabeledGraph) {
    let edges = base.edges();
    let first = edges.first().copied();
    (cfi_graph(base, None), cfi_graph(base, first))
}

fn cfi_graph(base: &LabeledGraph, twist: Option<(usize, usize)>) -> LabeledGraph {
    let edges = base.edges();
    let n = base.order();
    let incident: Vec<Vec<usize>> = (0..n)
        .map(|v| edges.iter().enumerate().filter(|(_, &(a, b))| a == v || b == v).map(|(i, _)| i).collect())
        .collect();
    let mut count = 0;
    // Endpoint vertices a(v, e, bit), keyed by (v, edge index).
    let mut ends = std::collections::HashMap::new();
    for (v, inc) in incident.iter().enumerate() {
        for &e in inc {
            ends.insert((v, e), [count, count + 1]);
            count += 2;
        }
    }
    let mut out = Vec::new();
    for (v, inc) in incident.iter().enumerate() {
        let d = inc.len();
        for mask in 0u32..(1 << d) {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            let m = count;
            count += 1;
            for (k, &e) in inc.iter().enumerate() {
                out.push((m, ends[&(v, e)][((mask >> k) & 1) as usize]));
            }
        }
    }
    for (e, &(a, b)) in edges.iter().enumerate() {
        let twisted = twist == Some((a, b));
        for bit in 0..2 {
            let other = if twisted { 1 - bit } else { bit };
            out.push((ends[&(a, e)][bit], ends[&(b, e)][other]));
        }
    }
    from_edges(count, &out)
}

/// Every labeled simple graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = LabeledGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        from_edges(n, &edges)
    })
}

/// Smallest adjacency bit string over all vertex orders.
fn canonical_bits(g: &LabeledGraph) -> Vec<bool> {
    let n = g.order();
    let mut best: Option<Vec<bool>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let bits: Vec<bool> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .map(|(u, v)| !g.label(p[u], p[v]).is_blank())
            .collect();
        if best.as_ref().is_none_or(|b| bits < *b) {
            best = Some(bits);
        }
    });
    best.unwrap_or_default()
}

fn permutations(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// One representative per isomorphism class of simple graphs on `n` vertices.
pub fn graphs_up_to_iso(n: usize) -> Vec<LabeledGraph> {
    let mut seen = HashSet::new();
    all_graphs(n).filter(|g| seen.insert(canonical_bits(g))).collect()
}

pub fn connected_graphs_up_to_iso(n: usize) -> Vec<LabeledGraph> {
    graphs_up_to_iso(n).into_iter().filter(LabeledGraph::is_connected).collect()
}
