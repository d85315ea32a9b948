//! End-to-end acceptance run: one line per criterion, non-zero exit on failure.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stablegraph::binding::{binding_graph, build_phi, build_theta, BindingGraph};
use stablegraph::descgraph::{
    adjoint_description_graph, gamma_description_graph, spectral_description_graph, Truncation, DEFAULT_PRIME,
    DEFAULT_TOLERANCE,
};
use stablegraph::fixtures;
use stablegraph::generators::{
    all_graphs, cfi_pair, complete, graphs_up_to_iso, petersen, random_connected_graph, random_graph, rook, shrikhande,
    shuffled,
};
use stablegraph::gi::{gi_decide, GiOptions, Verdict};
use stablegraph::io::to_graph6;
use stablegraph::refine::numeric_ff_stabilize;
use stablegraph::{is_equivalent, sas_stabilize, wl_stabilize, LabelMatrix, LabeledGraph};

use common::{diagonal_cells, find_iso, orbits, same_pattern, strongly_equitable};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn check(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn run(id: u32, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = took <= budget;
    let pass = out.pass && in_time;
    let timing = if in_time { String::new() } else { format!(" (over budget {budget:?})") };
    println!("[{}] {id:>2}. {title}: {} in {:.2?}{timing}", if pass { "PASS" } else { "FAIL" }, out.detail, took);
    pass
}

fn cells_of(g: &LabeledGraph) -> Vec<Vec<usize>> {
    diagonal_cells(g)
}

fn one_based_cells(cells: &[&[usize]]) -> Vec<Vec<usize>> {
    cells.iter().map(|c| c.iter().map(|v| v - 1).collect()).collect()
}

/// Same set of cells regardless of order.
fn same_cells(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let norm = |p: &[Vec<usize>]| {
        let mut p: Vec<Vec<usize>> = p
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        p.sort();
        p
    };
    norm(a) == norm(b)
}

fn worked_examples() -> Outcome {
    let mut failures = Vec::new();
    let a21 = fixtures::a21();
    let want21 = one_based_cells(&[
        &[1, 14],
        &[2, 19],
        &[3, 8],
        &[4],
        &[5, 15],
        &[6, 18],
        &[7, 12],
        &[9],
        &[10],
        &[11, 17],
        &[13, 20],
        &[16],
        &[21],
    ]);
    let s21 = sas_stabilize(&a21).stable;
    if !same_cells(&cells_of(&s21), &want21) {
        failures.push("21-vertex partition");
    }
    if !is_equivalent(&s21, &fixtures::a21_stable()) {
        failures.push("21-vertex stable matrix");
    }

    let x24 = fixtures::x24();
    let want24: Vec<Vec<usize>> =
        [1..=8, 9..=16, 17..=20, 21..=24].into_iter().map(|r| r.map(|v| v - 1).collect()).collect();
    let s24 = sas_stabilize(&x24).stable;
    if !same_cells(&cells_of(&s24), &want24) {
        failures.push("24-vertex partition");
    }
    if !is_equivalent(&s24, &fixtures::x24_stable()) {
        failures.push("24-vertex stable matrix");
    }

    let b24 = binding_graph(&x24).expect("connected");
    let sb24 = sas_stabilize(b24.graph()).stable;
    let basic: Vec<Vec<usize>> = cells_of(&sb24).into_iter().filter(|c| c[0] < 24).collect();
    let want_orbits: Vec<Vec<usize>> = (0..6).map(|c| (4 * c..4 * c + 4).collect()).collect();
    if !same_cells(&basic, &want_orbits) || basic.iter().flatten().any(|&v| v >= 24) {
        failures.push("24-vertex binding basic cells");
    }
    let restricted = sb24.induced(&(0..24).collect::<Vec<_>>()).expect("basic block");
    if !is_equivalent(&restricted, &fixtures::x24_binding_basic()) {
        failures.push("24-vertex binding basic block");
    }

    let bi = BindingGraph::from_graph(fixtures::bi_x8(), 8).expect("binding graph of the 8-vertex graph");
    if !is_equivalent(&bi.basic_graph(), &fixtures::x8()) {
        failures.push("8-vertex basic graph");
    }
    let bhat = sas_stabilize(bi.graph()).stable;
    if !is_equivalent(&bhat, &fixtures::bi_x8_stable()) {
        failures.push("binding stable matrix");
    }
    let phi = build_phi(&bi, &bhat).expect("phi");
    let theta = build_theta(&phi, &bi).expect("theta");
    if !is_equivalent(&phi, &fixtures::bi_x8_phi()) {
        failures.push("phi");
    }
    if !is_equivalent(&theta, &fixtures::bi_x8_theta()) {
        failures.push("theta");
    }
    Outcome::check(
        failures.is_empty(),
        if failures.is_empty() {
            "all examples match".to_string()
        } else {
            format!("mismatch: {}", failures.join(", "))
        },
    )
}

fn ff_pitfall() -> Outcome {
    let a = fixtures::a21();
    let trace = numeric_ff_stabilize(&a).expect("simple graph");
    let pseudo_stable = trace.dims.ends_with(&[trace.dims[trace.dims.len() - 1]; 2]);
    let numeric = trace.stable;
    let symbolic = sas_stabilize(&a).stable;
    let faulty = !is_equivalent(&numeric, &symbolic);
    let matches_listing = is_equivalent(&numeric, &fixtures::a21_ff());
    Outcome::check(
        faulty && matches_listing && pseudo_stable,
        format!(
            "numeric dim {} vs symbolic dim {}, faulty={faulty}, matches listed matrix={matches_listing}",
            stablegraph::dim(&numeric),
            stablegraph::dim(&symbolic)
        ),
    )
}

fn write_counterexample(tag: &str, a: &LabeledGraph, b: &LabeledGraph, note: &str) -> String {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("counterexamples");
    std::fs::create_dir_all(&dir).expect("artifact directory");
    let path = dir.join(format!("{tag}.json"));
    let body = serde_json::json!({
        "a": to_graph6(a).expect("simple"),
        "b": to_graph6(b).expect("simple"),
        "note": note,
    });
    std::fs::write(&path, body.to_string()).expect("write artifact");
    path.display().to_string()
}

fn oracle_equivalence() -> Outcome {
    let order4: Vec<LabeledGraph> = all_graphs(4).filter(LabeledGraph::is_connected).collect();
    let mut pairs: Vec<(LabeledGraph, LabeledGraph)> = Vec::new();
    for a in &order4 {
        for b in &order4 {
            pairs.push((a.clone(), b.clone()));
        }
    }
    let exhaustive = pairs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..500 {
        let n = rng.random_range(5..=7);
        let p = rng.random_range(0.15..0.7);
        let a = random_connected_graph(n, p, &mut rng);
        let b = if i % 2 == 0 { shuffled(&a, &mut rng) } else { random_connected_graph(n, p, &mut rng) };
        pairs.push((a, b));
    }
    let mut disagreements = Vec::new();
    let mut isomorphic = 0;
    for (k, (a, b)) in pairs.iter().enumerate() {
        let truth = find_iso(a, b).is_some();
        isomorphic += usize::from(truth);
        let verdict = gi_decide(a, b, GiOptions::default()).expect("valid pair").verdict;
        if (verdict == Verdict::Yes) != truth {
            let note = format!("procedure said {verdict}, brute force says isomorphic={truth}");
            disagreements.push(write_counterexample(&format!("gi-{k}"), a, b, &note));
        }
    }
    Outcome::check(
        disagreements.is_empty(),
        format!(
            "{} pairs ({exhaustive} exhaustive order-4, {} isomorphic), {} disagreements{}",
            pairs.len(),
            isomorphic,
            disagreements.len(),
            disagreements.first().map(|p| format!(", first at {p}")).unwrap_or_default()
        ),
    )
}

fn named_graphs() -> Vec<(&'static str, LabeledGraph)> {
    let (cfi_a, cfi_b) = cfi_pair(&complete(4));
    vec![
        ("petersen", petersen()),
        ("shrikhande", shrikhande()),
        ("rook4x4", rook(4, 4)),
        ("cfi-k4", cfi_a),
        ("cfi-k4-twisted", cfi_b),
        ("a21", fixtures::a21()),
        ("x24", fixtures::x24()),
        ("x8", fixtures::x8()),
    ]
}

fn sas_matches_wl() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut corpus: Vec<(String, LabeledGraph)> = named_graphs().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    for i in 0..300 {
        let n = rng.random_range(1..=30);
        let p = rng.random_range(0.05..0.95);
        corpus.push((format!("random-{i}"), random_graph(n, p, &mut rng)));
    }
    let (mut partition_bad, mut rounds_bad) = (Vec::new(), Vec::new());
    for (name, g) in &corpus {
        let s = sas_stabilize(g);
        let w = wl_stabilize(g);
        if !same_cells(&diagonal_cells(&s.stable), &diagonal_cells(&w.stable)) {
            partition_bad.push(name.clone());
        }
        if s.rounds != w.rounds {
            rounds_bad.push(format!("{name} ({} vs {})", s.rounds, w.rounds));
        }
    }
    Outcome::check(
        partition_bad.is_empty() && rounds_bad.is_empty(),
        format!(
            "{} graphs, {} partition mismatches, {} round-count mismatches{}",
            corpus.len(),
            partition_bad.len(),
            rounds_bad.len(),
            rounds_bad.first().map(|r| format!(" (e.g. {r})")).unwrap_or_default()
        ),
    )
}

fn equitability_corpus() -> Vec<LabeledGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut corpus: Vec<LabeledGraph> = (1..=5).flat_map(graphs_up_to_iso).collect();
    for _ in 0..200 {
        let n = rng.random_range(1..=12);
        let p = rng.random_range(0.1..0.9);
        corpus.push(random_graph(n, p, &mut rng));
    }
    corpus.extend(named_graphs().into_iter().map(|(_, g)| g));
    corpus
}

fn strong_equitability() -> Outcome {
    let corpus = equitability_corpus();
    let mut bad = 0;
    let mut checked = 0;
    for g in &corpus {
        let s = sas_stabilize(g).stable;
        let w = wl_stabilize(g).stable;
        bad += usize::from(!strongly_equitable(&s, &diagonal_cells(&s)));
        bad += usize::from(!strongly_equitable(&w, &diagonal_cells(&w)));
        checked += 2;
    }
    for b in [fixtures::bi_x8_stable(), fixtures::a21_stable(), fixtures::x24_stable()] {
        bad += usize::from(!strongly_equitable(&b, &diagonal_cells(&b)));
        checked += 1;
    }
    Outcome::check(bad == 0, format!("{checked} stable graphs, {bad} violations"))
}

fn orbit_coarsening() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut corpus: Vec<LabeledGraph> = (1..=6).flat_map(graphs_up_to_iso).collect();
    for _ in 0..100 {
        let n = rng.random_range(7..=8);
        corpus.push(random_graph(n, rng.random_range(0.2..0.8), &mut rng));
    }
    let mut bad = 0;
    for g in &corpus {
        let stable = sas_stabilize(g).stable;
        let diag: Vec<_> = (0..g.order()).map(|u| stable.label(u, u)).collect();
        if orbits(g).iter().any(|orbit| orbit.iter().any(|&v| diag[v] != diag[orbit[0]])) {
            bad += 1;
        }
    }
    Outcome::check(bad == 0, format!("{} graphs of order <= 8, {bad} orbits split", corpus.len()))
}

fn description_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut corpus: Vec<LabeledGraph> = (1..=5).flat_map(graphs_up_to_iso).collect();
    corpus.extend([petersen().induced(&[0, 1, 2, 3, 4, 5, 6]).expect("subgraph")]);
    for _ in 0..150 {
        let n = rng.random_range(6..=7);
        corpus.push(random_graph(n, rng.random_range(0.1..0.9), &mut rng));
    }
    let (mut bad, mut reruns, mut ill) = (0, 0, 0);
    for g in &corpus {
        let gamma = gamma_description_graph(g, Truncation::Auto).expect("gamma");
        let spectral = spectral_description_graph(g, DEFAULT_TOLERANCE).expect("spectral");
        ill += usize::from(spectral.ill_conditioned);
        let mut adjoint_ok = false;
        for attempt in 0..3 {
            reruns += usize::from(attempt > 0);
            let adj = adjoint_description_graph(g, 3, DEFAULT_PRIME, &mut rng).expect("adjoint");
            if same_pattern(&gamma, &adj) {
                adjoint_ok = true;
                break;
            }
        }
        if !adjoint_ok || !same_pattern(&gamma, &spectral.graph) {
            bad += 1;
        }
    }
    Outcome::check(
        bad == 0,
        format!(
            "{} graphs of order <= 7, {bad} mismatches, {reruns} adjoint re-runs, {ill} ill-conditioned",
            corpus.len()
        ),
    )
}

fn minimal_polynomial_truncation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = 0;
    let mut shortened = 0;
    for _ in 0..100 {
        let n = rng.random_range(1..=8);
        let g = random_graph(n, rng.random_range(0.1..0.9), &mut rng);
        let m = common::minimal_polynomial_degree(&g);
        shortened += usize::from(m < n);
        let short = gamma_description_graph(&g, Truncation::Length(m - 1)).expect("gamma");
        let full = gamma_description_graph(&g, Truncation::Length(n - 1)).expect("gamma");
        bad += usize::from(!same_pattern(&short, &full));
    }
    Outcome::check(bad == 0, format!("100 graphs, {shortened} with degree below order, {bad} mismatches"))
}

fn strongly_regular_one_round() -> Outcome {
    let t = sas_stabilize(&petersen());
    let single_cell = diagonal_cells(&t.stable).len() == 1;
    Outcome::check(
        t.rounds == 1 && single_cell,
        format!("rounds={}, dims={:?}, single vertex cell={single_cell}", t.rounds, t.dims),
    )
}

fn binding_completeness() -> Outcome {
    let graphs = graphs_up_to_iso(4);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = 0;
    let mut pairs = 0;
    for a in &graphs {
        for b in &graphs {
            for relabel in [false, true] {
                let b = if relabel { shuffled(b, &mut rng) } else { b.clone() };
                let ba = BindingGraph::over(a).expect("order 4");
                let bb = BindingGraph::over(&b).expect("order 4");
                let basic = find_iso(a, &b).is_some();
                let bound = find_iso(ba.graph(), bb.graph()).is_some();
                bad += usize::from(basic != bound);
                pairs += 1;
            }
        }
    }
    Outcome::check(
        bad == 0 && graphs.len() == 11,
        format!("{} graphs of order 4, {pairs} pairs, {bad} mismatches", graphs.len()),
    )
}

/// Positions grouped identically by both key lists.
fn same_classes<A: Eq + std::hash::Hash, B: Eq + std::hash::Hash>(a: &[A], b: &[B]) -> bool {
    let mut fwd = std::collections::HashMap::new();
    let mut back = std::collections::HashMap::new();
    a.iter().zip(b).all(|(x, y)| *fwd.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x)
}

fn binding_label_correspondences() -> Outcome {
    let mut corpus: Vec<LabeledGraph> = all_graphs(4).filter(LabeledGraph::is_connected).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        corpus.push(random_connected_graph(5, 0.4, &mut rng));
    }
    let mut failures = [0usize; 5];
    for a in &corpus {
        let n = a.order();
        let b = binding_graph(a).expect("connected");
        let refined = sas_stabilize(b.graph()).stable;
        let wl = wl_stabilize(b.graph()).stable;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let binder = |u: usize, v: usize| b.binder(u, v).expect("distinct basic vertices");

        // Labels on binding edges over edges and over blank pairs never meet.
        let mut over_edges = std::collections::HashSet::new();
        let mut over_blanks = std::collections::HashSet::new();
        for &(u, v) in &pairs {
            let p = binder(u, v);
            let set = if a.label(u, v).is_blank() { &mut over_blanks } else { &mut over_edges };
            set.insert(refined.label(u, p));
            set.insert(refined.label(v, p));
        }
        failures[0] += usize::from(!over_edges.is_disjoint(&over_blanks));

        // Basic and binding vertices never share a diagonal label.
        let basic_diag: std::collections::HashSet<_> = (0..n).map(|u| refined.label(u, u)).collect();
        failures[1] += usize::from((n..b.order()).any(|p| basic_diag.contains(&refined.label(p, p))));

        // Orbits of the binding graph on basic vertices are the orbits of the basic graph.
        let basic_orbits: Vec<Vec<usize>> = orbits(b.graph()).into_iter().filter(|c| c[0] < n).collect();
        failures[2] += usize::from(!same_cells(&basic_orbits, &orbits(a)));

        // Binding-vertex diagonal labels classify pairs as the basic off-diagonal labels do.
        let off: Vec<_> = pairs.iter().map(|&(u, v)| refined.label(u, v)).collect();
        let bv: Vec<_> = pairs.iter().map(|&(u, v)| refined.label(binder(u, v), binder(u, v))).collect();
        failures[3] += usize::from(!same_classes(&off, &bv));

        // Ordered basic pairs: WL labels against the pair of labels towards their binder.
        let ordered: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        let wl_keys: Vec<_> = ordered.iter().map(|&(u, v)| wl.label(u, v)).collect();
        let sas_keys: Vec<_> =
            ordered.iter().map(|&(u, v)| (refined.label(u, binder(u, v)), refined.label(v, binder(u, v)))).collect();
        failures[4] += usize::from(!same_classes(&wl_keys, &sas_keys));
    }
    let names = ["blankness", "separation", "basic orbits", "binding-vertex labels", "ordered-pair labels"];
    let report: Vec<String> = names.iter().zip(failures).map(|(n, f)| format!("{n} {f}")).collect();
    Outcome::check(
        failures.iter().all(|&f| f == 0),
        format!("{} binding graphs, failures: {}", corpus.len(), report.join(", ")),
    )
}

fn main() {
    let minute = Duration::from_secs(60);
    let results = [
        run(1, "worked examples", Duration::from_secs(10), worked_examples),
        run(2, "numeric renumbering pitfall", Duration::from_secs(1), ff_pitfall),
        run(3, "procedure vs brute force", 10 * minute, oracle_equivalence),
        run(4, "SaS and WL agree on vertices and rounds", 10 * minute, sas_matches_wl),
        run(5, "stable partitions strongly equitable", 10 * minute, strong_equitability),
        run(6, "orbits inside stable cells", 10 * minute, orbit_coarsening),
        run(7, "gamma, adjoint and spectral agree", 10 * minute, description_equivalence),
        run(8, "minimal polynomial truncation", 10 * minute, minimal_polynomial_truncation),
        run(9, "strongly regular stable in one round", Duration::from_secs(10), strongly_regular_one_round),
        run(10, "binding graphs preserve isomorphism", 5 * minute, binding_completeness),
        run(11, "binding graph label correspondences", 10 * minute, binding_label_correspondences),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
