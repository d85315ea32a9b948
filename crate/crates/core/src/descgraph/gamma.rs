use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::codebook::equivalent_variable_substitution;
use crate::error::{Error, Result};
use crate::graph::{LabelId, LabelMatrix, LabeledGraph};

/// Default cap on the total number of stored walk-polynomial terms.
pub const DEFAULT_TERM_BUDGET: usize = 20_000_000;

/// Exact entry of a symbolic matrix power: sorted label multiset ↦ number of walks.
/// The empty monomial is the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WalkPolynomial {
    terms: BTreeMap<Vec<LabelId>, u128>,
}

impl WalkPolynomial {
    pub fn terms(&self) -> &BTreeMap<Vec<LabelId>, u128> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> u128 {
        self.terms.get(&Vec::new()).copied().unwrap_or(0)
    }

    /// Sum of all coefficients: the number of walks regardless of sort.
    pub fn walk_count(&self) -> u128 {
        self.terms.values().sum()
    }
}

/// How many powers of the adjacency matrix to include.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Powers `0..=n-1`.
    Auto,
    /// Powers `0..=t`.
    Length(usize),
}

impl Truncation {
    fn resolve(self, n: usize) -> usize {
        match self {
            Truncation::Auto => n.saturating_sub(1),
            Truncation::Length(t) => t,
        }
    }
}

/// `Σ_{k=0..t} λ^k A^k` kept as one walk polynomial per power and entry.
#[derive(Clone, Debug)]
pub struct GammaMatrix {
    n: usize,
    t: usize,
    entries: Vec<Vec<WalkPolynomial>>,
}

impl GammaMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> usize {
        self.t
    }

    /// Coefficients of `λ^0..=λ^t` at `(u, v)`.
    pub fn entry(&self, u: usize, v: usize) -> &[WalkPolynomial] {
        &self.entries[u * self.n + v]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.entry(u, v) == self.entry(v, u)))
    }
}

pub fn gamma_matrix(a: &LabeledGraph, t: Truncation, budget: usize) -> Result<GammaMatrix> {
    let n = a.order();
    let t = t.resolve(n);
    let rows: Vec<Vec<Vec<WalkPolynomial>>> =
        (0..n).into_par_iter().map(|u| gamma_row(a, u, t, budget)).collect::<Result<_>>()?;
    let total: usize = rows.iter().flatten().flatten().map(|p| p.terms.len()).sum();
    if total > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    Ok(GammaMatrix { n, t, entries: rows.into_iter().flatten().collect() })
}

fn gamma_row(a: &LabeledGraph, u: usize, t: usize, budget: usize) -> Result<Vec<Vec<WalkPolynomial>>> {
    let n = a.order();
    let mut out: Vec<Vec<WalkPolynomial>> = vec![Vec::with_capacity(t + 1); n];
    let mut current: Vec<HashMap<Vec<LabelId>, u128>> = vec![HashMap::new(); n];
    current[u].insert(Vec::new(), 1);
    let mut stored = 0usize;
    for k in 0..=t {
        if k > 0 {
            let mut next: Vec<HashMap<Vec<LabelId>, u128>> = vec![HashMap::new(); n];
            for (w, terms) in current.iter().enumerate() {
                if terms.is_empty() {
                    continue;
                }
                for (v, slot) in next.iter_mut().enumerate() {
                    let l = a.label(w, v);
                    if l.is_blank() {
                        continue;
                    }
                    for (mono, &c) in terms {
                        let mut m = mono.clone();
                        let at = m.partition_point(|&x| x <= l);
                        m.insert(at, l);
                        let e = slot.entry(m).or_insert(0);
                        *e = e.checked_add(c).ok_or(Error::Overflow)?;
                    }
                }
            }
            current = next;
        }
        for (v, terms) in current.iter().enumerate() {
            stored += terms.len();
            out[v].push(WalkPolynomial { terms: terms.iter().map(|(m, &c)| (m.clone(), c)).collect() });
        }
        if stored > budget {
            return Err(Error::BudgetExceeded(budget));
        }
    }
    Ok(out)
}

/// Substituted `Γ(a, t)`: two positions share a label iff their walk
/// polynomials agree for every length `0..=t`.
pub fn gamma_description_graph(a: &LabeledGraph, t: Truncation) -> Result<LabeledGraph> {
    let gamma = gamma_matrix(a, t, DEFAULT_TERM_BUDGET)?;
    let n = gamma.n;
    let codes: Vec<Vec<&[WalkPolynomial]>> = (0..n).map(|u| (0..n).map(|v| gamma.entry(u, v)).collect()).collect();
    equivalent_variable_substitution(&codes)
}
