//! Square-and-substitute (SaS), ordered-pair (WL), walk-power, and numeric
//! first-come-first-served refinement rounds.

use std::collections::HashMap;

use serde::Serialize;

use crate::codebook::{encode_pair_multiset, pack_pair, substitute_rows};
use crate::error::{Error, Result};
use crate::graph::{dim, first_vertex_clash, is_equivalent, DirectedLabeledGraph, LabelId, LabelMatrix, LabeledGraph};
use crate::partition::{vertex_partition, Partition};

/// Result of iterating a refinement step to its fixpoint.
///
/// `dims[0]` is the dimension of the seeded graph and `dims[i]` that of round `i`;
/// the last two entries are equal. `rounds` counts every step performed,
/// including the final one that confirmed stability.
#[derive(Clone, Debug)]
pub struct StabilizationTrace<G> {
    pub stable: G,
    pub rounds: usize,
    pub dims: Vec<usize>,
}

impl<G: LabelMatrix> StabilizationTrace<G> {
    pub fn partition(&self) -> Partition {
        vertex_partition(&self.stable)
    }

    pub fn summary(&self) -> TraceSummary {
        TraceSummary { rounds: self.rounds, dims: self.dims.clone(), cells: self.partition().cells().to_vec() }
    }
}

/// Serializable `{rounds, dims, cells}` view of a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceSummary {
    pub rounds: usize,
    pub dims: Vec<usize>,
    pub cells: Vec<Vec<usize>>,
}

/// Which step drives a stabilization loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Process {
    Sas,
    Wl,
    KPower(usize),
}

/// Relabels the diagonal with fresh labels above every off-diagonal label,
/// keeping equal diagonal entries equal. Off-diagonal labels are untouched.
pub fn seed_recognize_vertices(g: &LabeledGraph) -> LabeledGraph {
    let n = g.order();
    let base = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .map(|(u, v)| g.label(u, v).0)
        .max()
        .map_or(1, |m| m + 1);
    let mut fresh: HashMap<LabelId, LabelId> = HashMap::new();
    let mut out = g.clone();
    for u in 0..n {
        let next = LabelId(base + fresh.len() as u32);
        let l = *fresh.entry(g.label(u, u)).or_insert(next);
        out.set(u, u, l);
    }
    out
}

fn require_vertex_recognition<G: LabelMatrix + ?Sized>(g: &G) -> Result<()> {
    match first_vertex_clash(g) {
        Some(l) => Err(Error::NotRecognizingVertices(l)),
        None => Ok(()),
    }
}

/// One SaS round: entry `(u, v)` becomes the multiset of unordered pairs
/// `{g[u][k], g[k][v]}` over all `k`, substituted by fresh labels.
pub fn sas_step(g: &LabeledGraph) -> Result<LabeledGraph> {
    require_vertex_recognition(g)?;
    Ok(sas_step_unchecked(g))
}

fn sas_step_unchecked(g: &LabeledGraph) -> LabeledGraph {
    let n = g.order();
    let labels = substitute_rows(n, true, Vec::new, |pairs: &mut Vec<u64>, u, v| {
        pairs.clear();
        pairs.extend(g.row(u).iter().zip(g.row(v)).map(|(&a, &b)| pack_pair(a.min(b), a.max(b))));
        encode_pair_multiset(pairs)
    });
    LabeledGraph::from_raw(n, labels)
}

/// One WL round (diamond product): entry `(u, v)` becomes the multiset of
/// ordered pairs `(g[u][k], g[k][v])`, substituted over the full matrix.
pub fn wl_step(g: &DirectedLabeledGraph) -> Result<DirectedLabeledGraph> {
    require_vertex_recognition(g)?;
    if !g.is_converse_equivalent() {
        return Err(Error::NotConverseEquivalent);
    }
    Ok(wl_step_unchecked(g))
}

fn wl_step_unchecked(g: &DirectedLabeledGraph) -> DirectedLabeledGraph {
    let n = g.order();
    let columns: Vec<Vec<LabelId>> = (0..n).map(|v| (0..n).map(|k| g.label(k, v)).collect()).collect();
    let labels = substitute_rows(n, false, Vec::new, |pairs: &mut Vec<u64>, u, v| {
        pairs.clear();
        pairs.extend(g.row(u).iter().zip(&columns[v]).map(|(&a, &b)| pack_pair(a, b)));
        encode_pair_multiset(pairs)
    });
    DirectedLabeledGraph::from_raw(n, labels)
}

pub const MAX_POWER: usize = 4;

/// One walk-power round: entry `(u, v)` becomes the map from each sorted
/// label multiset of a `k`-step walk `u → v` to the number of such walks.
/// `k = 2` is exactly the SaS round.
pub fn kpower_step(g: &LabeledGraph, k: usize) -> Result<LabeledGraph> {
    if !(2..=MAX_POWER).contains(&k) {
        return Err(Error::UnsupportedPower(k));
    }
    require_vertex_recognition(g)?;
    let n = g.order();
    let rows: Vec<Vec<HashMap<Vec<u32>, u64>>> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(|u| walk_row(g, u, k)).collect()
    };
    let labels = substitute_rows(
        n,
        true,
        || (),
        |_, u, v| {
            let mut terms: Vec<(&Vec<u32>, &u64)> = rows[u][v].iter().collect();
            terms.sort_unstable();
            let mut code = Vec::with_capacity(1 + terms.len() * (k + 2));
            code.push(terms.len() as u32);
            for (mono, &count) in terms {
                code.extend_from_slice(mono);
                code.push((count >> 32) as u32);
                code.push(count as u32);
            }
            code
        },
    );
    Ok(LabeledGraph::from_raw(n, labels))
}

/// Label-multiset counts of all `k`-step walks leaving `u`, per end vertex.
fn walk_row(g: &LabeledGraph, u: usize, k: usize) -> Vec<HashMap<Vec<u32>, u64>> {
    let n = g.order();
    let mut current: Vec<HashMap<Vec<u32>, u64>> =
        (0..n).map(|v| HashMap::from([(vec![g.label(u, v).0], 1)])).collect();
    for _ in 1..k {
        let mut next: Vec<HashMap<Vec<u32>, u64>> = vec![HashMap::new(); n];
        for (w, terms) in current.iter().enumerate() {
            for (v, slot) in next.iter_mut().enumerate() {
                let l = g.label(w, v).0;
                for (mono, &c) in terms {
                    let mut m = mono.clone();
                    let at = m.partition_point(|&x| x <= l);
                    m.insert(at, l);
                    *slot.entry(m).or_insert(0) += c;
                }
            }
        }
        current = next;
    }
    current
}

/// Seeds and repeats SaS rounds until the dimension stops growing.
pub fn sas_stabilize(g: &LabeledGraph) -> StabilizationTrace<LabeledGraph> {
    sas_stabilize_observed(g, |_| {})
}

/// As [`sas_stabilize`], handing the seeded graph and every round to `observe`.
pub fn sas_stabilize_observed(
    g: &LabeledGraph,
    mut observe: impl FnMut(&LabeledGraph),
) -> StabilizationTrace<LabeledGraph> {
    let seeded = seed_recognize_vertices(g);
    observe(&seeded);
    iterate(seeded, |x| {
        let next = sas_step_unchecked(x);
        observe(&next);
        next
    })
}

/// Seeds and repeats WL rounds until the dimension stops growing.
pub fn wl_stabilize(g: &LabeledGraph) -> StabilizationTrace<DirectedLabeledGraph> {
    let seeded = DirectedLabeledGraph::from(seed_recognize_vertices(g));
    iterate(seeded, wl_step_unchecked)
}

/// Seeds and repeats walk-power rounds until the dimension stops growing.
pub fn kpower_stabilize(g: &LabeledGraph, k: usize) -> Result<StabilizationTrace<LabeledGraph>> {
    if !(2..=MAX_POWER).contains(&k) {
        return Err(Error::UnsupportedPower(k));
    }
    let seeded = seed_recognize_vertices(g);
    Ok(iterate(seeded, |x| kpower_step(x, k).expect("rounds keep vertex recognition")))
}

fn iterate<G: LabelMatrix>(seed: G, mut step: impl FnMut(&G) -> G) -> StabilizationTrace<G> {
    let mut dims = vec![dim(&seed)];
    let mut current = seed;
    loop {
        let next = step(&current);
        let d = dim(&next);
        dims.push(d);
        if d == dims[dims.len() - 2] {
            debug_assert!(is_equivalent(&current, &next));
            return StabilizationTrace { stable: next, rounds: dims.len() - 1, dims };
        }
        current = next;
    }
}

/// Integer squaring with first-come-first-served renumbering of the values,
/// starting from the 0/1 matrix with its diagonal set to 2. Equal sums of
/// different products collapse, so the fixpoint can be coarser than the
/// symbolic one; this exists to demonstrate that failure.
pub fn numeric_ff_stabilize(g: &LabeledGraph) -> Result<StabilizationTrace<LabeledGraph>> {
    if !g.is_simple() {
        return Err(Error::NotSimple);
    }
    let n = g.order();
    let mut current: Vec<u128> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .map(|(u, v)| if u == v { 2 } else { u128::from(!g.label(u, v).is_blank()) })
        .collect();
    let mut dims = vec![distinct(&current)];
    loop {
        let mut square = vec![0u128; n * n];
        for u in 0..n {
            for v in u..n {
                let mut acc = 0u128;
                for k in 0..n {
                    let prod = current[u * n + k].checked_mul(current[k * n + v]).ok_or(Error::Overflow)?;
                    acc = acc.checked_add(prod).ok_or(Error::Overflow)?;
                }
                square[u * n + v] = acc;
                square[v * n + u] = acc;
            }
        }
        let renumbered = first_come_first_served(&square);
        let d = distinct(&renumbered);
        dims.push(d);
        if d == dims[dims.len() - 2] {
            let labels = renumbered.iter().map(|&x| LabelId(x as u32)).collect();
            let stable = LabeledGraph::from_raw(n, labels);
            return Ok(StabilizationTrace { stable, rounds: dims.len() - 1, dims });
        }
        current = renumbered;
    }
}

fn first_come_first_served(values: &[u128]) -> Vec<u128> {
    let mut ids: HashMap<u128, u128> = HashMap::new();
    values
        .iter()
        .map(|&x| {
            let next = ids.len() as u128 + 1;
            *ids.entry(x).or_insert(next)
        })
        .collect()
}

fn distinct(values: &[u128]) -> usize {
    values.iter().collect::<std::collections::HashSet<_>>().len()
}

/// Outcome of running the numeric and symbolic procedures side by side.
#[derive(Clone, Debug)]
pub struct FfComparison {
    pub numeric: StabilizationTrace<LabeledGraph>,
    pub symbolic: StabilizationTrace<LabeledGraph>,
    /// The numeric fixpoint is not equivalent to the symbolic stable graph.
    pub faulty: bool,
}

pub fn compare_ff_with_symbolic(g: &LabeledGraph) -> Result<FfComparison> {
    let numeric = numeric_ff_stabilize(g)?;
    let symbolic = sas_stabilize(g);
    let faulty = !is_equivalent(&numeric.stable, &symbolic.stable);
    Ok(FfComparison { numeric, symbolic, faulty })
}
