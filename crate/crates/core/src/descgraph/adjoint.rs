use std::collections::HashMap;

use rand::Rng;

use crate::codebook::equivalent_variable_substitution;
use crate::error::{Error, Result};
use crate::graph::{LabelId, LabelMatrix, LabeledGraph};

/// 2^62 − 57.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

const MIN_PRIME: u64 = 1 << 61;

#[derive(Clone, Copy)]
struct Field {
    p: u64,
}

impl Field {
    fn add(self, a: u64, b: u64) -> u64 {
        ((u128::from(a) + u128::from(b)) % u128::from(self.p)) as u64
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b % self.p)
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        ((u128::from(a) * u128::from(b)) % u128::from(self.p)) as u64
    }

    fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    /// `det(m) · m⁻¹`, or `None` when `m` is singular.
    fn adjugate(self, mut m: Vec<Vec<u64>>) -> Option<Vec<Vec<u64>>> {
        let n = m.len();
        let mut inv: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        let mut det = 1u64;
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r][col] != 0)?;
            if pivot != col {
                m.swap(pivot, col);
                inv.swap(pivot, col);
                det = self.sub(0, det);
            }
            det = self.mul(det, m[col][col]);
            let scale = self.inv(m[col][col]);
            for j in 0..n {
                m[col][j] = self.mul(m[col][j], scale);
                inv[col][j] = self.mul(inv[col][j], scale);
            }
            for r in 0..n {
                if r == col || m[r][col] == 0 {
                    continue;
                }
                let f = m[r][col];
                for j in 0..n {
                    m[r][j] = self.sub(m[r][j], self.mul(f, m[col][j]));
                    inv[r][j] = self.sub(inv[r][j], self.mul(f, inv[col][j]));
                }
            }
        }
        for row in &mut inv {
            for x in row.iter_mut() {
                *x = self.mul(*x, det);
            }
        }
        Some(inv)
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if let Some(&b) = BASES.iter().find(|&&b| n.is_multiple_of(b)) {
        return n == b;
    }
    let f = Field { p: n };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    BASES.iter().all(|&a| {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            return true;
        }
        (1..s).any(|_| {
            x = f.mul(x, x);
            x == n - 1
        })
    })
}

/// Classifies positions by `adj(λI − A)` evaluated at `trials` independent
/// random points over `GF(prime)`, each label an independent variable and the
/// blank label zero. Positions share a label iff they agree at every point.
pub fn adjoint_description_graph<R: Rng + ?Sized>(
    a: &LabeledGraph,
    trials: usize,
    prime: u64,
    rng: &mut R,
) -> Result<LabeledGraph> {
    if trials < 2 {
        return Err(Error::TooFewTrials(trials));
    }
    if prime < MIN_PRIME || !is_prime(prime) {
        return Err(Error::BadPrime(prime));
    }
    let field = Field { p: prime };
    let n = a.order();
    let mut codes: Vec<Vec<Vec<u64>>> = vec![vec![Vec::with_capacity(trials); n]; n];
    for _ in 0..trials {
        let mut values: HashMap<LabelId, u64> = HashMap::from([(LabelId::BLANK, 0)]);
        for &l in a.entries() {
            values.entry(l).or_insert_with(|| rng.random_range(1..prime));
        }
        let adj = loop {
            let lambda = rng.random_range(0..prime);
            let m: Vec<Vec<u64>> = (0..n)
                .map(|u| {
                    (0..n)
                        .map(|v| {
                            let x = values[&a.label(u, v)];
                            if u == v {
                                field.sub(lambda, x)
                            } else {
                                field.sub(0, x)
                            }
                        })
                        .collect()
                })
                .collect();
            if let Some(adj) = field.adjugate(m) {
                break adj;
            }
        };
        for (u, row) in adj.into_iter().enumerate() {
            for (v, x) in row.into_iter().enumerate() {
                codes[u][v].push(x);
            }
        }
    }
    equivalent_variable_substitution(&codes)
}
