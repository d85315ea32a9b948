use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DirectedLabeledGraph, LabelId, LabeledGraph};

/// Rows at least this long compute their codes in parallel.
const PARALLEL_ROW: usize = 48;

/// Interning table from canonical codes to label ids.
///
/// Fresh ids start at 1 and follow first-encounter order. A code registered as
/// blank maps to `LabelId::BLANK` instead of consuming an id.
#[derive(Debug)]
pub struct CodeBook<C = Box<[u32]>> {
    entries: HashMap<C, LabelId>,
    blank: Option<C>,
    next: u32,
}

impl<C: Hash + Eq> Default for CodeBook<C> {
    fn default() -> Self {
        CodeBook { entries: HashMap::new(), blank: None, next: 1 }
    }
}

impl<C: Hash + Eq> CodeBook<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_blank(blank: C) -> Self {
        CodeBook { blank: Some(blank), ..Self::default() }
    }

    pub fn get<Q>(&self, code: &Q) -> Option<LabelId>
    where
        C: std::borrow::Borrow<Q>,
        Q: Hash + Eq + ?Sized,
    {
        if self.blank.as_ref().is_some_and(|b| b.borrow() == code) {
            return Some(LabelId::BLANK);
        }
        self.entries.get(code).copied()
    }

    /// Id for `code`, issuing the next fresh id if it is new.
    pub fn intern(&mut self, code: C) -> LabelId {
        if self.blank.as_ref() == Some(&code) {
            return LabelId::BLANK;
        }
        let next = &mut self.next;
        *self.entries.entry(code).or_insert_with(|| {
            let id = LabelId(*next);
            *next += 1;
            id
        })
    }

    /// Number of fresh ids issued.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Replaces each entry of a symmetric code matrix by a fresh label so that
/// equal codes get equal labels and distinct codes distinct ones.
pub fn equivalent_variable_substitution<C: Hash + Eq>(codes: &[Vec<C>]) -> Result<LabeledGraph> {
    let n = check_code_matrix(codes)?;
    for u in 0..n {
        for v in u + 1..n {
            if codes[u][v] != codes[v][u] {
                return Err(Error::NotSymmetric { u, v });
            }
        }
    }
    let mut book = CodeBook::new();
    let mut labels = vec![LabelId::BLANK; n * n];
    for u in 0..n {
        for v in u..n {
            let id = book.intern(&codes[u][v]);
            labels[u * n + v] = id;
            labels[v * n + u] = id;
        }
    }
    Ok(LabeledGraph::from_raw(n, labels))
}

/// Substitution without the symmetry requirement.
pub fn directed_substitution<C: Hash + Eq>(codes: &[Vec<C>]) -> Result<DirectedLabeledGraph> {
    let n = check_code_matrix(codes)?;
    let mut book = CodeBook::new();
    let labels = codes.iter().flatten().map(|c| book.intern(c)).collect();
    Ok(DirectedLabeledGraph::from_raw(n, labels))
}

fn check_code_matrix<C>(codes: &[Vec<C>]) -> Result<usize> {
    let n = codes.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    if let Some((row, r)) = codes.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::NotSquare { row, len: r.len(), expected: n });
    }
    Ok(n)
}

/// Row-major substitution of word codes produced on the fly.
///
/// Codes of one row are computed (in parallel for long rows) and interned before
/// the next row starts, so only distinct codes are retained. With `symmetric`,
/// only `v >= u` is evaluated and mirrored, which matches full row-major
/// first-encounter order for symmetric code matrices.
pub(crate) fn substitute_rows<S, I, F>(n: usize, symmetric: bool, init: I, code: F) -> Vec<LabelId>
where
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, usize) -> Vec<u32> + Sync + Send,
{
    let mut book: CodeBook = CodeBook::new();
    let mut labels = vec![LabelId::BLANK; n * n];
    let mut scratch = init();
    for u in 0..n {
        let start = if symmetric { u } else { 0 };
        let row: Vec<Vec<u32>> = if n - start >= PARALLEL_ROW {
            (start..n).into_par_iter().map_init(&init, |s, v| code(s, u, v)).collect()
        } else {
            (start..n).map(|v| code(&mut scratch, u, v)).collect()
        };
        for (v, c) in (start..n).zip(row) {
            let id = book.intern(c.into_boxed_slice());
            labels[u * n + v] = id;
            if symmetric {
                labels[v * n + u] = id;
            }
        }
    }
    labels
}

/// Canonical word encoding of a multiset of packed label pairs: the number of
/// distinct pairs, then `(first, second, multiplicity)` triples in ascending order.
pub(crate) fn encode_pair_multiset(pairs: &mut [u64]) -> Vec<u32> {
    pairs.sort_unstable();
    let mut out = Vec::with_capacity(1 + 3 * pairs.len().min(16));
    out.push(0);
    let mut distinct = 0u32;
    let mut i = 0;
    while i < pairs.len() {
        let p = pairs[i];
        let mut j = i + 1;
        while j < pairs.len() && pairs[j] == p {
            j += 1;
        }
        out.push((p >> 32) as u32);
        out.push(p as u32);
        out.push((j - i) as u32);
        distinct += 1;
        i = j;
    }
    out[0] = distinct;
    out
}

pub(crate) fn pack_pair(a: LabelId, b: LabelId) -> u64 {
    (u64::from(a.0) << 32) | u64::from(b.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_equivalent, LabelMatrix};

    #[test]
    fn equal_codes_share_a_label() {
        let codes = vec![vec!["c5", "c5"], vec!["c5", "c7"]];
        let g = equivalent_variable_substitution(&codes).unwrap();
        assert_eq!(g.to_rows(), vec![vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn constant_matrix_becomes_all_ones() {
        let codes = vec![vec![9u8; 4]; 4];
        let g = equivalent_variable_substitution(&codes).unwrap();
        assert!(g.entries().iter().all(|&l| l == LabelId(1)));
    }

    #[test]
    fn asymmetric_codes_are_rejected() {
        let codes = vec![vec![1, 2], vec![3, 1]];
        assert!(matches!(equivalent_variable_substitution(&codes), Err(Error::NotSymmetric { .. })));
        let d = directed_substitution(&codes).unwrap();
        assert_eq!(d.to_rows(), vec![vec![1, 2], vec![3, 1]]);
    }

    #[test]
    fn blank_code_maps_to_zero() {
        let mut book = CodeBook::with_blank(vec![0u32]);
        assert_eq!(book.intern(vec![4]), LabelId(1));
        assert_eq!(book.intern(vec![0]), LabelId::BLANK);
        assert_eq!(book.intern(vec![5]), LabelId(2));
        assert_eq!(book.intern(vec![4]), LabelId(1));
        assert_eq!(book.len(), 2);
        assert_eq!(book.get(&vec![5]), Some(LabelId(2)));
    }

    #[test]
    fn row_driver_matches_generic_substitution() {
        let n = 60;
        let code = |u: usize, v: usize| ((u * v) % 7 + (u + v) % 3) as u32;
        let rows: Vec<Vec<u32>> = (0..n).map(|u| (0..n).map(|v| code(u, v)).collect()).collect();
        let generic = equivalent_variable_substitution(&rows).unwrap();
        let driven = substitute_rows(n, true, || (), |_, u, v| vec![code(u, v)]);
        assert_eq!(generic.entries(), &driven[..]);
        assert!(is_equivalent(&generic, &LabeledGraph::from_rows(rows).unwrap()));
    }

    #[test]
    fn pair_multiset_encoding_is_order_free() {
        let mut a = vec![
            pack_pair(LabelId(1), LabelId(2)),
            pack_pair(LabelId(0), LabelId(3)),
            pack_pair(LabelId(1), LabelId(2)),
        ];
        let mut b = vec![
            pack_pair(LabelId(1), LabelId(2)),
            pack_pair(LabelId(1), LabelId(2)),
            pack_pair(LabelId(0), LabelId(3)),
        ];
        assert_eq!(encode_pair_multiset(&mut a), encode_pair_multiset(&mut b));
        assert_eq!(encode_pair_multiset(&mut a), vec![2, 0, 3, 1, 1, 2, 2]);
    }
}
