//! Corpus-wide validation and timing.
//!
//! Violations are data: every failed check keeps the offending graphs (graph6
//! when simple, matrix-json otherwise) so the instance can be replayed.

use std::collections::HashSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binding::{binding_graph, check_stable_bv_labeling};
use crate::codebook::equivalent_variable_substitution;
use crate::descgraph::{
    adjoint_description_graph, gamma_description_graph, minimal_polynomial_degree, spectral_description_graph,
    Truncation, DEFAULT_PRIME, DEFAULT_TOLERANCE,
};
use crate::fixtures;
use crate::generators::{
    all_graphs, cfi_pair, complete, cycle, path, petersen, random_connected_graph, random_graph, rook, shrikhande,
    shuffled,
};
use crate::gi::{gi_decide, GiOptions, Verdict};
use crate::graph::{
    is_equivalent, is_imbedded, recognizes_edges, recognizes_vertices, LabelId, LabelMatrix, LabeledGraph, Permutation,
};
use crate::io::{to_graph6, to_matrix_json};
use crate::oracle::{automorphism_orbits, automorphism_orbits_with_witnesses, is_isomorphic_bruteforce, OracleOptions};
use crate::partition::{
    block_commutant_check, is_strongly_equitable, row_equality_rule_holds, singleton_rule_holds, vertex_partition,
    Partition,
};
use crate::refine::{
    compare_ff_with_symbolic, kpower_step, sas_stabilize, sas_stabilize_observed, sas_step, wl_stabilize,
};

/// Which graphs [`validate_suite`] runs over.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusSpec {
    /// Every labeled simple graph up to this order.
    pub exhaustive_max_n: usize,
    pub random_count: usize,
    pub random_max_n: usize,
    pub seed: u64,
    /// Petersen, Shrikhande, rook 4×4, a CFI pair and the worked examples.
    pub named: bool,
    /// Largest order for oracle-backed checks.
    pub oracle_max_n: usize,
    /// Largest order for the three description-graph processes.
    pub description_max_n: usize,
    /// Largest basic order for binding-graph checks.
    pub binding_max_n: usize,
    /// Largest order for invariance checks of the decision procedure.
    pub gi_max_n: usize,
    /// Order of the exhaustive procedure-versus-oracle comparison; 0 skips it.
    pub gi_exhaustive_n: usize,
    /// Random simple graphs used to measure numeric/symbolic agreement.
    pub ff_random: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            exhaustive_max_n: 5,
            random_count: 200,
            random_max_n: 12,
            seed: 0,
            named: true,
            oracle_max_n: 8,
            description_max_n: 7,
            binding_max_n: 5,
            gi_max_n: 7,
            gi_exhaustive_n: 4,
            ff_random: 100,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    /// Follows from the definitions; a violation is a bug.
    Implementation,
    /// A claimed result; a violation is a finding about the claim.
    Claim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Check {
    Substitution,
    Chain,
    Fixpoint,
    VertexRecognition,
    EdgeRecognition,
    Equivariance,
    StrongEquitability,
    CellRules,
    OrbitCoarsening,
    PrunedOracle,
    BlockCommutant,
    DescriptionChain,
    DiagonalExclusivity,
    SasWlPartition,
    SasWlRounds,
    ThreeWay,
    Truncation,
    StronglyRegular,
    BindingBlankness,
    BindingSeparation,
    BindingOrbits,
    BindingVertexLabels,
    BindingOrderedPairs,
    BindingLabeling,
    GiRelabeling,
    GiSymmetry,
    GiOracle,
    FfPitfall,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Substitution => "substitution-equivalence",
            Check::Chain => "refinement-chain-imbedding",
            Check::Fixpoint => "fixpoint-idempotence",
            Check::VertexRecognition => "recognizes-vertices",
            Check::EdgeRecognition => "recognizes-edges",
            Check::Equivariance => "isomorphism-equivariance",
            Check::StrongEquitability => "strong-equitability",
            Check::CellRules => "singleton-and-row-rules",
            Check::OrbitCoarsening => "orbits-inside-stable-cells",
            Check::PrunedOracle => "pruned-oracle-matches-unpruned",
            Check::BlockCommutant => "automorphisms-fix-stable-cells",
            Check::DescriptionChain => "description-graph-imbeddings",
            Check::DiagonalExclusivity => "description-diagonal-exclusive",
            Check::SasWlPartition => "sas-wl-vertex-partition",
            Check::SasWlRounds => "sas-wl-round-count",
            Check::ThreeWay => "gamma-adjoint-spectral",
            Check::Truncation => "minimal-polynomial-truncation",
            Check::StronglyRegular => "strongly-regular-one-round",
            Check::BindingBlankness => "binding-edge-blankness",
            Check::BindingSeparation => "binding-basic-separation",
            Check::BindingOrbits => "binding-basic-orbits",
            Check::BindingVertexLabels => "binding-vertex-labels",
            Check::BindingOrderedPairs => "binding-ordered-pairs",
            Check::BindingLabeling => "stable-bv-labeling",
            Check::GiRelabeling => "procedure-accepts-relabeling",
            Check::GiSymmetry => "procedure-symmetric",
            Check::GiOracle => "procedure-matches-oracle",
            Check::FfPitfall => "numeric-pitfall-reproduced",
        }
    }

    fn category(self) -> Category {
        match self {
            Check::SasWlPartition
            | Check::SasWlRounds
            | Check::ThreeWay
            | Check::Truncation
            | Check::StronglyRegular
            | Check::BindingBlankness
            | Check::BindingSeparation
            | Check::BindingOrbits
            | Check::BindingVertexLabels
            | Check::BindingOrderedPairs
            | Check::BindingLabeling
            | Check::GiRelabeling
            | Check::GiSymmetry
            | Check::GiOracle => Category::Claim,
            _ => Category::Implementation,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub graphs: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub category: Category,
    pub instances: usize,
    pub violations: usize,
    /// The first few violations.
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FfAgreement {
    pub agree: usize,
    pub total: usize,
    pub rate: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub corpus_size: usize,
    pub checks: Vec<CheckReport>,
    pub ff_agreement: FfAgreement,
    /// Numeric renumbering on the 21-vertex example disagrees with the symbolic result.
    pub ff_pitfall_faulty: bool,
}

impl AuditReport {
    pub fn violations(&self, category: Category) -> usize {
        self.checks.iter().filter(|c| c.category == category).map(|c| c.violations).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.checks.iter().all(|c| c.violations == 0)
    }
}

const KEPT_COUNTEREXAMPLES: usize = 5;

fn encode(g: &LabeledGraph) -> String {
    to_graph6(g).unwrap_or_else(|_| to_matrix_json(g))
}

/// Outcomes of one unit of work: `(check, None)` for a pass.
#[derive(Default)]
struct Findings(Vec<(Check, Option<Counterexample>)>);

impl Findings {
    fn record(&mut self, check: Check, ok: bool, graphs: &[&LabeledGraph], detail: impl FnOnce() -> String) {
        let cx = (!ok).then(|| Counterexample { graphs: graphs.iter().map(|g| encode(g)).collect(), detail: detail() });
        self.0.push((check, cx));
    }
}

fn corpus(spec: &CorpusSpec) -> Vec<LabeledGraph> {
    let mut out: Vec<LabeledGraph> = (1..=spec.exhaustive_max_n).flat_map(all_graphs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.random_count {
        let n = rng.random_range(1..=spec.random_max_n.max(1));
        let p = rng.random_range(0.05..0.95);
        out.push(random_graph(n, p, &mut rng));
    }
    if spec.named {
        out.extend(named_graphs());
    }
    out
}

fn named_graphs() -> Vec<LabeledGraph> {
    let (cfi_a, cfi_b) = cfi_pair(&complete(4));
    vec![
        petersen(),
        shrikhande(),
        rook(4, 4),
        cfi_a,
        cfi_b,
        cycle(6),
        path(7),
        fixtures::a21(),
        fixtures::x24(),
        fixtures::x8(),
    ]
}

fn same_classes<A: Eq + std::hash::Hash, B: Eq + std::hash::Hash>(a: &[A], b: &[B]) -> bool {
    let mut fwd = std::collections::HashMap::new();
    let mut back = std::collections::HashMap::new();
    a.iter().zip(b).all(|(x, y)| *fwd.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x)
}

fn refinement_checks(g: &LabeledGraph, spec: &CorpusSpec, rng: &mut ChaCha8Rng, f: &mut Findings) {
    let n = g.order();
    let rows: Vec<Vec<u32>> = g.to_rows();
    let relabeled = equivalent_variable_substitution(&rows).expect("square symmetric input");
    f.record(Check::Substitution, is_equivalent(g, &relabeled), &[g], String::new);

    let mut rounds: Vec<LabeledGraph> = Vec::new();
    let sas = sas_stabilize_observed(g, |x| rounds.push(x.clone()));
    let chain = is_imbedded(g, &rounds[0]) && rounds.windows(2).all(|w| is_imbedded(&w[0], &w[1]));
    f.record(Check::Chain, chain, &[g], || format!("dims {:?}", sas.dims));

    let stable = &sas.stable;
    let step = sas_step(stable).expect("stable graphs recognize vertices");
    let mut fix = is_equivalent(stable, &step);
    if n <= 12 {
        fix &= kpower_step(stable, 3).is_ok_and(|k| is_equivalent(stable, &k));
    }
    f.record(Check::Fixpoint, fix, &[g], String::new);
    f.record(Check::VertexRecognition, rounds.iter().all(recognizes_vertices), &[g], String::new);
    f.record(Check::EdgeRecognition, recognizes_edges(g, stable), &[g], String::new);

    let perm = Permutation::random(n, rng);
    let moved = sas_stabilize(&g.permuted(&perm)).stable;
    f.record(
        Check::Equivariance,
        moved == stable.permuted(&perm) || is_equivalent(&moved, &stable.permuted(&perm)),
        &[g],
        || format!("permutation {:?}", perm.images()),
    );

    let wl = wl_stabilize(g);
    let (ps, pw) = (vertex_partition(stable), vertex_partition(&wl.stable));
    let strong =
        is_strongly_equitable(stable, &ps).unwrap_or(false) && is_strongly_equitable(&wl.stable, &pw).unwrap_or(false);
    f.record(Check::StrongEquitability, strong, &[g], String::new);
    f.record(Check::CellRules, singleton_rule_holds(stable, &ps) && row_equality_rule_holds(stable), &[g], String::new);
    f.record(Check::SasWlPartition, ps == pw, &[g], || format!("{} vs {} cells", ps.len(), pw.len()));
    f.record(Check::SasWlRounds, sas.rounds == wl.rounds, &[g], || {
        format!("SaS dims {:?}, WL dims {:?}", sas.dims, wl.dims)
    });

    if n <= spec.oracle_max_n {
        oracle_checks(g, stable, &ps, f);
    }
    if n <= spec.description_max_n {
        description_checks(g, stable, rng, f);
    }
}

fn oracle_checks(g: &LabeledGraph, stable: &LabeledGraph, cells: &Partition, f: &mut Findings) {
    let Ok((orbits, witnesses)) = automorphism_orbits_with_witnesses(g, OracleOptions::unpruned()) else { return };
    f.record(Check::OrbitCoarsening, orbits.refines(cells), &[g], || format!("orbits {:?}", orbits.cells()));
    let pruned = automorphism_orbits(g, OracleOptions::pruned());
    f.record(Check::PrunedOracle, pruned.as_ref().is_ok_and(|p| *p == orbits), &[g], String::new);
    f.record(Check::BlockCommutant, witnesses.iter().all(|w| block_commutant_check(stable, w)), &[g], String::new);
}

fn description_checks(g: &LabeledGraph, stable: &LabeledGraph, rng: &mut ChaCha8Rng, f: &mut Findings) {
    let n = g.order();
    let Ok(gamma) = gamma_description_graph(g, Truncation::Auto) else { return };
    f.record(Check::DescriptionChain, is_imbedded(g, &gamma) && is_imbedded(&gamma, stable), &[g], String::new);
    let diag: HashSet<LabelId> = gamma.diagonal().into_iter().collect();
    let exclusive = (0..n).all(|u| (0..n).all(|v| u == v || !diag.contains(&gamma.label(u, v))));
    f.record(Check::DiagonalExclusivity, exclusive, &[g], String::new);

    let spectral = spectral_description_graph(g, DEFAULT_TOLERANCE);
    let adjoint_ok = (0..3)
        .any(|_| adjoint_description_graph(g, 3, DEFAULT_PRIME, rng).is_ok_and(|adj| is_equivalent(&adj, &gamma)));
    let spectral_ok = spectral.as_ref().is_ok_and(|s| is_equivalent(&s.graph, &gamma));
    f.record(Check::ThreeWay, adjoint_ok && spectral_ok, &[g], || {
        format!("adjoint agrees: {adjoint_ok}, spectral agrees: {spectral_ok}")
    });

    if n <= 8 {
        if let Ok(m) = minimal_polynomial_degree(g, DEFAULT_TOLERANCE) {
            let short = gamma_description_graph(g, Truncation::Length(m.saturating_sub(1)));
            f.record(Check::Truncation, short.is_ok_and(|s| is_equivalent(&s, &gamma)), &[g], || {
                format!("minimal polynomial degree {m}")
            });
        }
    }
}

fn binding_checks(a: &LabeledGraph, f: &mut Findings) {
    let n = a.order();
    let Ok(b) = binding_graph(a) else { return };
    let refined = sas_stabilize(b.graph()).stable;
    let wl = wl_stabilize(b.graph()).stable;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let binder = |u: usize, v: usize| b.binder(u, v).expect("distinct basic vertices");

    let (mut over_edges, mut over_blanks) = (HashSet::new(), HashSet::new());
    for &(u, v) in &pairs {
        let p = binder(u, v);
        let set = if a.label(u, v).is_blank() { &mut over_blanks } else { &mut over_edges };
        set.extend([refined.label(u, p), refined.label(v, p)]);
    }
    f.record(Check::BindingBlankness, over_edges.is_disjoint(&over_blanks), &[a], String::new);

    let basic_diag: HashSet<LabelId> = (0..n).map(|u| refined.label(u, u)).collect();
    let separated = (n..b.order()).all(|p| !basic_diag.contains(&refined.label(p, p)));
    f.record(Check::BindingSeparation, separated, &[a], String::new);

    let opts = OracleOptions::pruned().with_max_n(b.order());
    if let (Ok(bo), Ok(ao)) = (automorphism_orbits(b.graph(), opts), automorphism_orbits(a, OracleOptions::default())) {
        let basic: Vec<Vec<usize>> = bo.cells().iter().filter(|c| c[0] < n).cloned().collect();
        f.record(Check::BindingOrbits, basic == ao.cells(), &[a], String::new);
    }

    let off: Vec<LabelId> = pairs.iter().map(|&(u, v)| refined.label(u, v)).collect();
    let bv: Vec<LabelId> = pairs.iter().map(|&(u, v)| refined.label(binder(u, v), binder(u, v))).collect();
    f.record(Check::BindingVertexLabels, same_classes(&off, &bv), &[a], String::new);

    let ordered: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    let wl_keys: Vec<LabelId> = ordered.iter().map(|&(u, v)| wl.label(u, v)).collect();
    let sas_keys: Vec<(LabelId, LabelId)> =
        ordered.iter().map(|&(u, v)| (refined.label(u, binder(u, v)), refined.label(v, binder(u, v)))).collect();
    f.record(Check::BindingOrderedPairs, same_classes(&wl_keys, &sas_keys), &[a], String::new);

    // Binding-vertex labels of the stable graph, shifted clear of the reserved labels.
    let labels: Vec<LabelId> =
        pairs.iter().map(|&(u, v)| LabelId(refined.label(binder(u, v), binder(u, v)).0 + 2)).collect();
    let stable_labeling = check_stable_bv_labeling(&labels, n).is_ok_and(|r| r.stable);
    f.record(Check::BindingLabeling, stable_labeling, &[a], String::new);
}

fn gi_checks(a: &LabeledGraph, rng: &mut ChaCha8Rng, f: &mut Findings) {
    let relabeled = shuffled(a, rng);
    let Ok(out) = gi_decide(a, &relabeled, GiOptions::default()) else { return };
    f.record(Check::GiRelabeling, out.verdict == Verdict::Yes, &[a, &relabeled], String::new);
    let other = random_connected_graph(a.order(), 0.3, rng);
    if let (Ok(x), Ok(y)) = (gi_decide(a, &other, GiOptions::default()), gi_decide(&other, a, GiOptions::default())) {
        f.record(Check::GiSymmetry, x.verdict == y.verdict, &[a, &other], || format!("{} vs {}", x.verdict, y.verdict));
    }
}

fn gi_oracle_pair(a: &LabeledGraph, b: &LabeledGraph, f: &mut Findings) {
    let (Ok(out), Ok(truth)) =
        (gi_decide(a, b, GiOptions::default()), is_isomorphic_bruteforce(a, b, OracleOptions::default()))
    else {
        return;
    };
    f.record(Check::GiOracle, (out.verdict == Verdict::Yes) == truth.is_some(), &[a, b], || {
        format!("procedure {} but oracle isomorphic={}", out.verdict, truth.is_some())
    });
}

/// Runs every check over the corpus described by `spec`.
pub fn validate_suite(spec: &CorpusSpec) -> AuditReport {
    let graphs = corpus(spec);
    let mut findings: Vec<(Check, Option<Counterexample>)> = graphs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, g)| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut f = Findings::default();
            refinement_checks(g, spec, &mut rng, &mut f);
            if g.is_connected() && g.order() >= 3 && g.order() <= spec.binding_max_n {
                binding_checks(g, &mut f);
            }
            if g.is_connected() && g.order() >= 2 && g.order() <= spec.gi_max_n {
                gi_checks(g, &mut rng, &mut f);
            }
            f.0
        })
        .collect();

    if spec.gi_exhaustive_n >= 2 {
        let connected: Vec<LabeledGraph> =
            all_graphs(spec.gi_exhaustive_n).filter(LabeledGraph::is_connected).collect();
        let pairs: Vec<(usize, usize)> =
            (0..connected.len()).flat_map(|i| (0..connected.len()).map(move |j| (i, j))).collect();
        findings.par_extend(pairs.par_iter().flat_map_iter(|&(i, j)| {
            let mut f = Findings::default();
            gi_oracle_pair(&connected[i], &connected[j], &mut f);
            f.0
        }));
    }
    if spec.named {
        let mut f = Findings::default();
        for g in [petersen(), shrikhande(), rook(4, 4)] {
            let t = sas_stabilize(&g);
            let one_round = t.rounds == 1;
            let described = gamma_description_graph(&g, Truncation::Auto).is_ok_and(|d| is_equivalent(&d, &t.stable));
            f.record(Check::StronglyRegular, one_round && described, &[&g], || format!("dims {:?}", t.dims));
        }
        findings.extend(f.0);
    }

    let ff_pitfall_faulty = compare_ff_with_symbolic(&fixtures::a21()).is_ok_and(|c| c.faulty);
    let mut f = Findings::default();
    f.record(Check::FfPitfall, ff_pitfall_faulty, &[&fixtures::a21()], || "numeric result equals symbolic".into());
    findings.extend(f.0);

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.wrapping_add(1));
    let agree = (0..spec.ff_random)
        .filter(|_| {
            let n = rng.random_range(2..=10);
            let g = random_graph(n, rng.random_range(0.1..0.9), &mut rng);
            compare_ff_with_symbolic(&g).is_ok_and(|c| !c.faulty)
        })
        .count();
    let total = spec.ff_random;
    let ff_agreement = FfAgreement { agree, total, rate: if total == 0 { 1.0 } else { agree as f64 / total as f64 } };

    findings.sort_by_key(|(c, _)| *c);
    let mut checks: Vec<CheckReport> = Vec::new();
    for (check, cx) in findings {
        if checks.last().is_none_or(|r| r.name != check.name()) {
            checks.push(CheckReport {
                name: check.name(),
                category: check.category(),
                instances: 0,
                violations: 0,
                counterexamples: Vec::new(),
            });
        }
        let report = checks.last_mut().expect("just pushed");
        report.instances += 1;
        if let Some(cx) = cx {
            report.violations += 1;
            if report.counterexamples.len() < KEPT_COUNTEREXAMPLES {
                report.counterexamples.push(cx);
            }
        }
    }
    AuditReport { corpus_size: graphs.len(), checks, ff_agreement, ff_pitfall_faulty }
}

/// Which families [`bench`] times.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchSpec {
    pub random_sizes: Vec<usize>,
    pub per_size: usize,
    /// Basic orders of the binding graphs to stabilize.
    pub binding_sizes: Vec<usize>,
    pub seed: u64,
}

impl Default for BenchSpec {
    fn default() -> Self {
        BenchSpec { random_sizes: vec![8, 12, 16, 20], per_size: 5, binding_sizes: vec![6, 8, 10], seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub family: String,
    /// Order of the graph handed to the stabilizer.
    pub order: usize,
    pub rounds: usize,
    pub final_dim: usize,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of log time against log order, per family.
    pub slopes: Vec<(String, f64)>,
    /// Every random graph stabilized within `n` rounds.
    pub rounds_within_order: bool,
}

fn time_sas(family: &str, g: &LabeledGraph) -> BenchRow {
    let start = Instant::now();
    let t = sas_stabilize(g);
    let millis = start.elapsed().as_secs_f64() * 1e3;
    BenchRow { family: family.into(), order: g.order(), rounds: t.rounds, final_dim: t.dims[t.dims.len() - 1], millis }
}

fn log_log_slope(rows: &[&BenchRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        rows.iter().filter(|r| r.millis > 0.0).map(|r| ((r.order as f64).ln(), r.millis.ln())).collect();
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / k, sy / k);
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / sxx)
}

/// Times SaS stabilization on random graphs, Petersen, and binding graphs.
pub fn bench(spec: &BenchSpec) -> BenchReport {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut rows = Vec::new();
    for &n in &spec.random_sizes {
        for _ in 0..spec.per_size {
            let g = random_graph(n, 0.5, &mut rng);
            rows.push(time_sas("random", &g));
        }
    }
    rows.push(time_sas("petersen", &petersen()));
    for &n in &spec.binding_sizes {
        if let Ok(b) = binding_graph(&random_connected_graph(n, 0.4, &mut rng)) {
            rows.push(time_sas("binding", b.graph()));
        }
    }
    let rounds_within_order = rows.iter().filter(|r| r.family == "random").all(|r| r.rounds <= r.order);
    let mut families: Vec<String> = rows.iter().map(|r| r.family.clone()).collect();
    families.dedup();
    let slopes = families
        .into_iter()
        .filter_map(|fam| {
            let of: Vec<&BenchRow> = rows.iter().filter(|r| r.family == fam).collect();
            log_log_slope(&of).map(|s| (fam, s))
        })
        .collect();
    BenchReport { rows, slopes, rounds_within_order }
}
