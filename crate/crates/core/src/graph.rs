use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifier of an entry label. `LabelId::BLANK` marks non-edges and unlabeled vertices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabelId(pub u32);

impl LabelId {
    pub const BLANK: LabelId = LabelId(0);

    pub fn is_blank(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for LabelId {
    fn from(v: u32) -> Self {
        LabelId(v)
    }
}

/// Read access shared by symmetric and directed label matrices.
pub trait LabelMatrix {
    fn order(&self) -> usize;

    /// Row-major entries, `order() * order()` long.
    fn entries(&self) -> &[LabelId];

    fn label(&self, u: usize, v: usize) -> LabelId {
        self.entries()[u * self.order() + v]
    }

    fn row(&self, u: usize) -> &[LabelId] {
        let n = self.order();
        &self.entries()[u * n..(u + 1) * n]
    }

    fn diagonal(&self) -> Vec<LabelId> {
        (0..self.order()).map(|u| self.label(u, u)).collect()
    }

    fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.order()).map(|u| self.row(u).iter().map(|l| l.0).collect()).collect()
    }
}

fn check_square(rows: &[Vec<u32>]) -> Result<usize> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare { row, len: r.len(), expected: n });
        }
    }
    Ok(n)
}

/// Complete labeled graph stored as a symmetric matrix of labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    labels: Vec<LabelId>,
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabeledGraph").field("n", &self.n).field("rows", &self.to_rows()).finish()
    }
}

impl LabelMatrix for LabeledGraph {
    fn order(&self) -> usize {
        self.n
    }

    fn entries(&self) -> &[LabelId] {
        &self.labels
    }
}

impl LabeledGraph {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = check_square(&rows)?;
        for u in 0..n {
            for v in u + 1..n {
                if rows[u][v] != rows[v][u] {
                    return Err(Error::NotSymmetric { u, v });
                }
            }
        }
        let labels = rows.into_iter().flatten().map(LabelId).collect();
        Ok(LabeledGraph { n, labels })
    }

    /// Builds a graph by evaluating `f` on the upper triangle and mirroring it.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> LabelId) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut labels = vec![LabelId::BLANK; n * n];
        for u in 0..n {
            for v in u..n {
                let l = f(u, v);
                labels[u * n + v] = l;
                labels[v * n + u] = l;
            }
        }
        Ok(LabeledGraph { n, labels })
    }

    /// Simple 0/1 graph: edges get label 1, everything else is blank.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut labels = vec![LabelId::BLANK; n * n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::NotSimple);
            }
            labels[u * n + v] = LabelId(1);
            labels[v * n + u] = LabelId(1);
        }
        Ok(LabeledGraph { n, labels })
    }

    /// Caller guarantees `labels` is a symmetric n×n row-major matrix.
    pub(crate) fn from_raw(n: usize, labels: Vec<LabelId>) -> Self {
        debug_assert_eq!(labels.len(), n * n);
        debug_assert!((0..n).all(|u| (0..n).all(|v| labels[u * n + v] == labels[v * n + u])));
        LabeledGraph { n, labels }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| LabelId::BLANK)
    }

    /// Sets both `(u, v)` and `(v, u)`.
    pub fn set(&mut self, u: usize, v: usize, label: LabelId) {
        self.labels[u * self.n + v] = label;
        self.labels[v * self.n + u] = label;
    }

    /// Blank diagonal and at most one non-blank label off the diagonal.
    pub fn is_simple(&self) -> bool {
        let mut edge_label = None;
        for u in 0..self.n {
            if !self.label(u, u).is_blank() {
                return false;
            }
            for v in u + 1..self.n {
                let l = self.label(u, v);
                if l.is_blank() {
                    continue;
                }
                match edge_label {
                    None => edge_label = Some(l),
                    Some(e) if e != l => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// The same simple graph with its edge label normalized to 1.
    pub fn to_simple01(&self) -> Result<Self> {
        if !self.is_simple() {
            return Err(Error::NotSimple);
        }
        let labels = self.labels.iter().map(|l| if l.is_blank() { LabelId::BLANK } else { LabelId(1) }).collect();
        Ok(LabeledGraph { n: self.n, labels })
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().filter(move |&(v, l)| v != u && !l.is_blank()).map(|(v, _)| v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.label(u, v).is_blank() {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connectivity over non-blank off-diagonal entries.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// Graph `h` with `h[σ(i)][σ(j)] = self[i][j]`.
    pub fn permuted(&self, perm: &Permutation) -> Self {
        assert_eq!(perm.len(), self.n, "permutation order differs from graph order");
        let n = self.n;
        let mut labels = vec![LabelId::BLANK; n * n];
        for i in 0..n {
            for j in 0..n {
                labels[perm.image(i) * n + perm.image(j)] = self.labels[i * n + j];
            }
        }
        LabeledGraph { n, labels }
    }

    /// Subgraph induced on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        Self::from_fn(vertices.len(), |i, j| self.label(vertices[i], vertices[j]))
    }

    pub fn max_label(&self) -> LabelId {
        self.labels.iter().copied().max().unwrap_or_default()
    }
}

/// Complete labeled graph without a symmetry requirement.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DirectedLabeledGraph {
    n: usize,
    labels: Vec<LabelId>,
}

impl fmt::Debug for DirectedLabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirectedLabeledGraph").field("n", &self.n).field("rows", &self.to_rows()).finish()
    }
}

impl LabelMatrix for DirectedLabeledGraph {
    fn order(&self) -> usize {
        self.n
    }

    fn entries(&self) -> &[LabelId] {
        &self.labels
    }
}

impl DirectedLabeledGraph {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = check_square(&rows)?;
        let labels = rows.into_iter().flatten().map(LabelId).collect();
        Ok(DirectedLabeledGraph { n, labels })
    }

    pub(crate) fn from_raw(n: usize, labels: Vec<LabelId>) -> Self {
        debug_assert_eq!(labels.len(), n * n);
        DirectedLabeledGraph { n, labels }
    }

    /// `g[u][v] == g[r][s]` exactly when `g[v][u] == g[s][r]`.
    pub fn is_converse_equivalent(&self) -> bool {
        let n = self.n;
        let mut converse: HashMap<LabelId, LabelId> = HashMap::new();
        for u in 0..n {
            for v in 0..n {
                let l = self.labels[u * n + v];
                let t = self.labels[v * n + u];
                if *converse.entry(l).or_insert(t) != t {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_symmetric(&self) -> Result<LabeledGraph> {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.label(u, v) != self.label(v, u) {
                    return Err(Error::NotSymmetric { u, v });
                }
            }
        }
        Ok(LabeledGraph { n: self.n, labels: self.labels.clone() })
    }

    pub fn permuted(&self, perm: &Permutation) -> Self {
        assert_eq!(perm.len(), self.n, "permutation order differs from graph order");
        let n = self.n;
        let mut labels = vec![LabelId::BLANK; n * n];
        for i in 0..n {
            for j in 0..n {
                labels[perm.image(i) * n + perm.image(j)] = self.labels[i * n + j];
            }
        }
        DirectedLabeledGraph { n, labels }
    }
}

impl From<LabeledGraph> for DirectedLabeledGraph {
    fn from(g: LabeledGraph) -> Self {
        DirectedLabeledGraph { n: g.n, labels: g.labels }
    }
}

impl From<&LabeledGraph> for DirectedLabeledGraph {
    fn from(g: &LabeledGraph) -> Self {
        DirectedLabeledGraph { n: g.n, labels: g.labels.clone() }
    }
}

/// Bijection on `0..n`, stored as the image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::NotAPermutation(format!("image {i} out of range 0..{n}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotAPermutation(format!("image {i} repeated")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Permutation(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// `a ↣ b`: every label of `b` sits only over a single label of `a`.
pub fn is_imbedded<A, B>(a: &A, b: &B) -> bool
where
    A: LabelMatrix + ?Sized,
    B: LabelMatrix + ?Sized,
{
    if a.order() != b.order() {
        return false;
    }
    let mut over: HashMap<LabelId, LabelId> = HashMap::new();
    a.entries().iter().zip(b.entries()).all(|(&la, &lb)| *over.entry(lb).or_insert(la) == la)
}

/// Mutual imbedding: both matrices have the same equality pattern.
pub fn is_equivalent<A, B>(a: &A, b: &B) -> bool
where
    A: LabelMatrix + ?Sized,
    B: LabelMatrix + ?Sized,
{
    is_imbedded(a, b) && is_imbedded(b, a)
}

/// Number of distinct labels.
pub fn dim<G: LabelMatrix + ?Sized>(g: &G) -> usize {
    g.entries().iter().collect::<HashSet<_>>().len()
}

/// Diagonal labels never occur off the diagonal.
pub fn recognizes_vertices<G: LabelMatrix + ?Sized>(g: &G) -> bool {
    first_vertex_clash(g).is_none()
}

pub(crate) fn first_vertex_clash<G: LabelMatrix + ?Sized>(g: &G) -> Option<LabelId> {
    let diagonal: HashSet<LabelId> = g.diagonal().into_iter().collect();
    let n = g.order();
    (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .map(|(u, v)| g.label(u, v))
        .find(|l| diagonal.contains(l))
}

/// Labels of `refined` over the non-blank edges of `original` never occur over its blank pairs.
pub fn recognizes_edges<G: LabelMatrix + ?Sized>(original: &LabeledGraph, refined: &G) -> bool {
    let n = original.order();
    if refined.order() != n {
        return false;
    }
    let mut over_edges = HashSet::new();
    let mut over_blanks = HashSet::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            if original.label(u, v).is_blank() {
                over_blanks.insert(refined.label(u, v));
            } else {
                over_edges.insert(refined.label(u, v));
            }
        }
    }
    over_edges.is_disjoint(&over_blanks)
}
