//! Reference matrices and partitions for the worked examples shipped in
//! `data/fixtures`.

use crate::graph::{DirectedLabeledGraph, LabeledGraph};
use crate::io::{parse_directed_matrix_json, parse_matrix_json};
use crate::partition::Partition;

macro_rules! fixture {
    ($(#[$doc:meta])* $name:ident, $file:literal) => {
        $(#[$doc])*
        pub fn $name() -> LabeledGraph {
            parse_matrix_json(include_str!(concat!("../data/fixtures/", $file)))
                .expect(concat!("fixture ", $file, " parses"))
        }
    };
    ($(#[$doc:meta])* directed $name:ident, $file:literal) => {
        $(#[$doc])*
        pub fn $name() -> DirectedLabeledGraph {
            parse_directed_matrix_json(include_str!(concat!("../data/fixtures/", $file)))
                .expect(concat!("fixture ", $file, " parses"))
        }
    };
}

fixture!(
    /// 21-vertex simple graph with thirteen orbits.
    a21, "a21.json");
fixture!(a21_seeded, "a21_seeded.json");
fixture!(a21_square, "a21_square.json");
fixture!(
    /// Pseudo-stable result of numeric first-come-first-served squaring on [`a21`].
    a21_ff, "a21_ff.json");
fixture!(a21_stable, "a21_stable.json");
fixture!(
    /// 24-vertex simple graph.
    x24, "x24.json");
fixture!(x24_stable, "x24_stable.json");
fixture!(directed x24_wl, "x24_wl.json");
fixture!(
    /// Stable binding graph of [`x24`] restricted to its basic vertices.
    x24_binding_basic, "x24_binding_basic.json");
fixture!(
    /// 8-vertex simple graph.
    x8, "x8.json");
fixture!(x8_stable, "x8_stable.json");
fixture!(directed x8_wl, "x8_wl.json");
fixture!(
    /// Binding graph of [`x8`]: basic vertices first, binding vertices in a
    /// non-lexicographic order.
    bi_x8, "bi_x8.json");
fixture!(bi_x8_stable, "bi_x8_stable.json");
fixture!(bi_x8_phi, "bi_x8_phi.json");
fixture!(bi_x8_theta, "bi_x8_theta.json");
fixture!(directed bi_x8_wl, "bi_x8_wl.json");

fn one_based(cells: &[&[usize]], n: usize) -> Partition {
    let cells = cells.iter().map(|c| c.iter().map(|v| v - 1).collect()).collect();
    Partition::new(cells, n).expect("reference partition is valid")
}

/// Automorphism partition of [`a21`].
pub fn a21_orbits() -> Partition {
    one_based(
        &[
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
        ],
        21,
    )
}

/// Stable vertex partition of [`x24`].
pub fn x24_cells() -> Partition {
    let ranges = [1..=8, 9..=16, 17..=20, 21..=24];
    Partition::new(ranges.into_iter().map(|r| r.map(|v| v - 1).collect()).collect(), 24)
        .expect("reference partition is valid")
}

/// Automorphism partition of [`x24`]: six runs of four consecutive vertices.
pub fn x24_orbits() -> Partition {
    Partition::new((0..6).map(|c| (4 * c..4 * c + 4).collect()).collect(), 24).expect("reference partition is valid")
}
