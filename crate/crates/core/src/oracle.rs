//! Exhaustive isomorphism and automorphism search for small graphs.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{LabelId, LabelMatrix, LabeledGraph, Permutation};
use crate::partition::Partition;
use crate::refine::sas_stabilize;

/// Default order limit without pruning.
pub const DENSE_BOUND: usize = 10;
/// Default order limit with stable-cell pruning.
pub const PRUNED_BOUND: usize = 16;
/// Up to this order `Pruning::Auto` searches without pruning.
pub const AUDIT_BOUND: usize = 8;

const PARALLEL_FROM: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pruning {
    /// Unpruned up to [`AUDIT_BOUND`] vertices, pruned above.
    Auto,
    /// Candidates restricted only by the vertex's own label.
    Off,
    /// Candidates restricted to the vertex's stable cell.
    StableCells,
}

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Overrides the default order limit.
    pub max_n: Option<usize>,
    pub pruning: Pruning,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_n: None, pruning: Pruning::Auto }
    }
}

impl OracleOptions {
    pub fn unpruned() -> Self {
        OracleOptions { max_n: None, pruning: Pruning::Off }
    }

    pub fn pruned() -> Self {
        OracleOptions { max_n: None, pruning: Pruning::StableCells }
    }

    pub fn with_max_n(self, max_n: usize) -> Self {
        OracleOptions { max_n: Some(max_n), ..self }
    }

    fn resolve(&self, n: usize) -> Result<bool> {
        let pruned = match self.pruning {
            Pruning::Auto => n > AUDIT_BOUND,
            Pruning::Off => false,
            Pruning::StableCells => true,
        };
        let limit = self.max_n.unwrap_or(if pruned { PRUNED_BOUND } else { DENSE_BOUND });
        if n > limit {
            return Err(Error::OrderTooLarge { n, limit });
        }
        Ok(pruned)
    }
}

/// Backtracking for `σ` with `a[σ(i)][σ(j)] == b[i][j]`, assigning `b`'s
/// vertices in `order`.
struct Search<'a> {
    a: &'a LabeledGraph,
    b: &'a LabeledGraph,
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl Search<'_> {
    fn fits(&self, image: &[usize], depth: usize, x: usize) -> bool {
        let i = self.order[depth];
        self.a.label(x, x) == self.b.label(i, i)
            && self.order[..depth].iter().all(|&j| self.a.label(x, image[j]) == self.b.label(i, j))
    }

    fn extend(&self, image: &mut [usize], used: &mut [bool], depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let i = self.order[depth];
        for &x in &self.candidates[i] {
            if used[x] || !self.fits(image, depth, x) {
                continue;
            }
            image[i] = x;
            used[x] = true;
            if self.extend(image, used, depth + 1) {
                return true;
            }
            used[x] = false;
        }
        false
    }

    fn start_from(&self, x: usize) -> Option<Vec<usize>> {
        let n = self.order.len();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if !self.fits(&image, 0, x) {
            return None;
        }
        image[self.order[0]] = x;
        used[x] = true;
        self.extend(&mut image, &mut used, 1).then_some(image)
    }

    /// First solution in candidate order; with the natural vertex order this is
    /// the lexicographically least one.
    fn first(&self) -> Option<Vec<usize>> {
        let Some(&root) = self.order.first() else {
            return Some(Vec::new());
        };
        let firsts = &self.candidates[root];
        if self.order.len() >= PARALLEL_FROM {
            firsts.par_iter().find_map_first(|&x| self.start_from(x))
        } else {
            firsts.iter().find_map(|&x| self.start_from(x))
        }
    }
}

fn diagonal_candidates(a: &LabeledGraph, b: &LabeledGraph) -> Vec<Vec<usize>> {
    (0..b.order()).map(|i| (0..a.order()).filter(|&x| a.label(x, x) == b.label(i, i)).collect()).collect()
}

/// Candidates from the stable diagonal of `a ⊕ b`: an isomorphism extends to
/// an automorphism of the union, so it never crosses stable cells.
fn stable_candidates(a: &LabeledGraph, b: &LabeledGraph) -> Vec<Vec<usize>> {
    let (na, nb) = (a.order(), b.order());
    let union = LabeledGraph::from_fn(na + nb, |u, v| match (u < na, v < na) {
        (true, true) => a.label(u, v),
        (false, false) => b.label(u - na, v - na),
        _ => LabelId::BLANK,
    })
    .expect("non-empty");
    let stable = sas_stabilize(&union).stable;
    (0..nb).map(|i| (0..na).filter(|&x| stable.label(x, x) == stable.label(na + i, na + i)).collect()).collect()
}

fn verify(a: &LabeledGraph, b: &LabeledGraph, image: Vec<usize>) -> Result<Permutation> {
    let perm = Permutation::new(image)?;
    let n = b.order();
    let ok = (0..n).all(|i| (0..n).all(|j| a.label(perm.image(i), perm.image(j)) == b.label(i, j)));
    if !ok {
        return Err(Error::NotAPermutation("search produced a map that does not preserve labels".into()));
    }
    Ok(perm)
}

/// Lexicographically least `σ` with `a[σ(i)][σ(j)] == b[i][j]`, or `None`.
pub fn is_isomorphic_bruteforce(
    a: &LabeledGraph,
    b: &LabeledGraph,
    opts: OracleOptions,
) -> Result<Option<Permutation>> {
    let n = a.order();
    let pruned = opts.resolve(n.max(b.order()))?;
    if n != b.order() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let mut sa: Vec<LabelId> = a.entries().to_vec();
    let mut sb: Vec<LabelId> = b.entries().to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let candidates = if pruned { stable_candidates(a, b) } else { diagonal_candidates(a, b) };
    let search = Search { a, b, candidates, order: (0..n).collect() };
    search.first().map(|image| verify(a, b, image)).transpose()
}

/// Orbits of the automorphism group.
pub fn automorphism_orbits(g: &LabeledGraph, opts: OracleOptions) -> Result<Partition> {
    automorphism_orbits_with_witnesses(g, opts).map(|(p, _)| p)
}

/// Orbits together with the automorphisms found while merging them.
pub fn automorphism_orbits_with_witnesses(
    g: &LabeledGraph,
    opts: OracleOptions,
) -> Result<(Partition, Vec<Permutation>)> {
    let n = g.order();
    let pruned = opts.resolve(n)?;
    let candidates = if pruned { stable_candidates(g, g) } else { diagonal_candidates(g, g) };
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut witnesses = Vec::new();
    for u in 0..n {
        if find(&mut parent, u) != u {
            continue;
        }
        for &v in &candidates[u] {
            if v <= u || find(&mut parent, v) == find(&mut parent, u) {
                continue;
            }
            let mut cands = candidates.clone();
            cands[u] = vec![v];
            let order = std::iter::once(u).chain((0..n).filter(|&x| x != u)).collect();
            let search = Search { a: g, b: g, candidates: cands, order };
            if let Some(image) = search.first() {
                let perm = verify(g, g, image)?;
                for i in 0..n {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, perm.image(i)));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
                witnesses.push(perm);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Ok((Partition::from_keys(&roots), witnesses))
}
