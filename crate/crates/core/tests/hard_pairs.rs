use std::time::Instant;

use stablegraph::generators::{cfi_pair, complete, rook, shrikhande};
use stablegraph::gi::{gi_decide, GiOptions, Verdict};
use stablegraph::{dim, sas_stabilize, vertex_partition, LabelMatrix, LabeledGraph};

/// Number of 4-cliques, counted directly.
fn k4_count(g: &LabeledGraph) -> usize {
    let n = g.order();
    let adj = |u: usize, v: usize| !g.label(u, v).is_blank();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            if !adj(a, b) {
                continue;
            }
            for c in b + 1..n {
                if !(adj(a, c) && adj(b, c)) {
                    continue;
                }
                count += (c + 1..n).filter(|&d| adj(a, d) && adj(b, d) && adj(c, d)).count();
            }
        }
    }
    count
}

#[test]
fn shrikhande_and_rook_are_not_isomorphic() {
    // Same strongly regular parameters, different clique structure.
    assert_eq!(k4_count(&rook(4, 4)), 8);
    assert_eq!(k4_count(&shrikhande()), 0);
}

#[test]
fn refinement_alone_cannot_tell_shrikhande_from_rook() {
    let (s, r) = (sas_stabilize(&shrikhande()), sas_stabilize(&rook(4, 4)));
    assert_eq!(s.dims, r.dims);
    assert_eq!(vertex_partition(&s.stable).len(), 1);
    assert_eq!(vertex_partition(&r.stable).len(), 1);
}

#[test]
fn procedure_rejects_shrikhande_versus_rook() {
    let start = Instant::now();
    let out = gi_decide(&shrikhande(), &rook(4, 4), GiOptions::default()).unwrap();
    println!("verdict {} after {} rounds in {:.2?}", out.verdict, out.rounds, start.elapsed());
    assert_eq!(out.verdict, Verdict::No, "YES here would contradict the known non-isomorphism");
}

#[test]
fn cfi_pair_looks_identical_to_refinement() {
    let (a, b) = cfi_pair(&complete(4));
    let (sa, sb) = (sas_stabilize(&a), sas_stabilize(&b));
    assert_eq!(sa.dims, sb.dims);
    assert_eq!(dim(&sa.stable), dim(&sb.stable));
    let sizes = |g: &LabeledGraph| {
        let mut s: Vec<usize> = vertex_partition(g).cells().iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    };
    assert_eq!(sizes(&sa.stable), sizes(&sb.stable));
}
