//! Brute-force reference checks kept separate from the library's own search.
#![allow(dead_code)]

use stablegraph::{LabelMatrix, LabeledGraph};

/// Some `s` with `a[s[i]][s[j]] == b[i][j]`, by plain backtracking.
pub fn find_iso(a: &LabeledGraph, b: &LabeledGraph) -> Option<Vec<usize>> {
    find_iso_fixing(a, b, None)
}

fn find_iso_fixing(a: &LabeledGraph, b: &LabeledGraph, fixed: Option<(usize, usize)>) -> Option<Vec<usize>> {
    let n = a.order();
    if n != b.order() {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        a: &LabeledGraph,
        b: &LabeledGraph,
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        fixed: Option<(usize, usize)>,
    ) -> bool {
        let n = a.order();
        if i == n {
            return true;
        }
        for x in 0..n {
            if used[x] || fixed.is_some_and(|(u, v)| u == i && v != x) {
                continue;
            }
            if a.label(x, x) != b.label(i, i)
                || (0..i).any(|j| a.label(x, map[j]) != b.label(i, j) || a.label(map[j], x) != b.label(j, i))
            {
                continue;
            }
            map[i] = x;
            used[x] = true;
            if go(a, b, i + 1, map, used, fixed) {
                return true;
            }
            used[x] = false;
        }
        false
    }
    go(a, b, 0, &mut map, &mut used, fixed).then_some(map)
}

/// Orbit representative of every vertex: the least `v` some automorphism sends `u` to.
pub fn orbit_keys(g: &LabeledGraph) -> Vec<usize> {
    let n = g.order();
    let mut key: Vec<usize> = (0..n).collect();
    for u in 0..n {
        for v in 0..u {
            if key[v] == v && find_iso_fixing(g, g, Some((u, v))).is_some() {
                key[u] = v;
                break;
            }
        }
    }
    key
}

pub fn orbits(g: &LabeledGraph) -> Vec<Vec<usize>> {
    group_by_key(&orbit_keys(g))
}

/// Groups positions with equal keys, cells ordered by least member.
pub fn group_by_key<K: PartialEq>(keys: &[K]) -> Vec<Vec<usize>> {
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, k) in keys.iter().enumerate() {
        match cells.iter_mut().find(|c| keys[c[0]] == *k) {
            Some(c) => c.push(i),
            None => cells.push(vec![i]),
        }
    }
    cells
}

/// Diagonal classes of a label matrix.
pub fn diagonal_cells<G: LabelMatrix>(g: &G) -> Vec<Vec<usize>> {
    let diag: Vec<_> = (0..g.order()).map(|u| g.label(u, u)).collect();
    group_by_key(&diag)
}

/// Equal entries of one matrix are exactly the equal entries of the other.
pub fn same_pattern<A: LabelMatrix, B: LabelMatrix>(a: &A, b: &B) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let (ea, eb) = (a.entries(), b.entries());
    let mut fwd = std::collections::HashMap::new();
    let mut back = std::collections::HashMap::new();
    ea.iter().zip(eb).all(|(x, y)| *fwd.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x)
}

/// Equitable, and no label shared between different unordered cell pairs.
pub fn strongly_equitable<G: LabelMatrix>(g: &G, cells: &[Vec<usize>]) -> bool {
    let n = g.order();
    let mut cell_of = vec![0; n];
    for (c, cell) in cells.iter().enumerate() {
        for &v in cell {
            cell_of[v] = c;
        }
    }
    for (ci, cu) in cells.iter().enumerate() {
        for cv in cells {
            let profile = |u: usize| {
                let mut row: Vec<_> = cv.iter().map(|&v| g.label(u, v)).collect();
                let mut col: Vec<_> = cv.iter().map(|&v| g.label(v, u)).collect();
                row.sort();
                col.sort();
                (row, col)
            };
            let first = profile(cu[0]);
            if cu.iter().any(|&u| profile(u) != first) {
                return false;
            }
        }
        let _ = ci;
    }
    let mut owner = std::collections::HashMap::new();
    for u in 0..n {
        for v in 0..n {
            let key = (cell_of[u].min(cell_of[v]), cell_of[u].max(cell_of[v]), u == v);
            if *owner.entry(g.label(u, v)).or_insert(key) != key {
                return false;
            }
        }
    }
    true
}

/// Rank over the integers modulo a large prime.
pub fn rank_mod_p(rows: &mut [Vec<u64>]) -> usize {
    const P: u64 = (1 << 61) - 1;
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % P as u128) as u64;
    let inv = |a: u64| {
        let (mut r, mut base, mut e) = (1u64, a, P - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        r
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(P)) else { continue };
        rows.swap(rank, p);
        let iv = inv(rows[rank][c] % P);
        let pivot: Vec<u64> = rows[rank].iter().map(|&x| mul(x % P, iv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] % P != 0 {
                let f = row[c] % P;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x % P + P - mul(f, y)) % P;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Degree of the minimal polynomial of a 0/1 matrix: the number of linearly
/// independent powers `I, A, A², …`.
pub fn minimal_polynomial_degree(g: &LabeledGraph) -> usize {
    let n = g.order();
    let a: Vec<u64> = g.entries().iter().map(|l| u64::from(l.0)).collect();
    let mut power: Vec<u64> = (0..n * n).map(|p| u64::from(p / n == p % n)).collect();
    let mut rows = Vec::new();
    let mut degree = 0;
    loop {
        rows.push(power.clone());
        let r = rank_mod_p(&mut rows.clone());
        if r == degree {
            return degree;
        }
        degree = r;
        power = (0..n * n).map(|p| (0..n).map(|k| power[(p / n) * n + k] * a[k * n + p % n]).sum()).collect();
    }
}
