use nalgebra::{DMatrix, SymmetricEigen};

use crate::codebook::equivalent_variable_substitution;
use crate::error::{Error, Result};
use crate::graph::{LabelMatrix, LabeledGraph};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Distinct eigenvalues and their orthogonal projectors.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub projectors: Vec<DMatrix<f64>>,
    pub tol: f64,
}

impl SpectralDecomposition {
    /// Largest entrywise deviation of `Σ μ E` from `a`.
    pub fn reconstruction_error(&self, a: &DMatrix<f64>) -> f64 {
        let mut sum = DMatrix::zeros(a.nrows(), a.ncols());
        for (mu, e) in self.eigenvalues.iter().zip(&self.projectors) {
            sum += e * *mu;
        }
        (sum - a).amax()
    }

    /// Largest entrywise deviation of `E_x E_y` from `δ_xy E_x`.
    pub fn orthogonality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (x, ex) in self.projectors.iter().enumerate() {
            for (y, ey) in self.projectors.iter().enumerate() {
                let prod = ex * ey;
                let err = if x == y { (prod - ex).amax() } else { prod.amax() };
                worst = worst.max(err);
            }
        }
        worst
    }
}

/// Spectral classification of a 0/1 graph.
#[derive(Clone, Debug)]
pub struct SpectralDescription {
    pub graph: LabeledGraph,
    pub decomposition: SpectralDecomposition,
    /// Some eigenvalue or projector-entry gap fell between `tol` and `10·tol`.
    pub ill_conditioned: bool,
}

fn zero_one_matrix(a: &LabeledGraph) -> Result<DMatrix<f64>> {
    let n = a.order();
    if a.entries().iter().any(|l| l.0 > 1) {
        return Err(Error::NotZeroOne);
    }
    Ok(DMatrix::from_fn(n, n, |i, j| f64::from(a.label(i, j).0)))
}

/// Groups sorted values whose consecutive gaps are at most `tol`.
/// Returns the group of each input position and whether a gap was marginal.
fn cluster(values: &[f64], tol: f64) -> (Vec<usize>, bool) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut group = vec![0; values.len()];
    let mut marginal = false;
    let mut current = 0;
    for w in 0..order.len() {
        if w > 0 {
            let gap = values[order[w]] - values[order[w - 1]];
            if gap > tol {
                current += 1;
                marginal |= gap < 10.0 * tol;
            }
        }
        group[order[w]] = current;
    }
    (group, marginal)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::BadTolerance)
    }
}

/// Eigendecomposition of a 0/1 graph, with eigenvalues merged within `tol`.
/// The flag reports a marginal eigenvalue gap.
pub fn spectral_decomposition(a: &LabeledGraph, tol: f64) -> Result<(SpectralDecomposition, bool)> {
    check_tol(tol)?;
    let m = zero_one_matrix(a)?;
    let n = a.order();
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 100_000).ok_or(Error::Eigen)?;
    let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let (group, marginal) = cluster(&values, tol);
    let groups = group.iter().max().map_or(0, |g| g + 1);
    let mut eigenvalues = vec![0.0; groups];
    let mut sizes = vec![0usize; groups];
    let mut projectors = vec![DMatrix::zeros(n, n); groups];
    for (i, &g) in group.iter().enumerate() {
        let v = eig.eigenvectors.column(i);
        projectors[g] += v * v.transpose();
        eigenvalues[g] += values[i];
        sizes[g] += 1;
    }
    for (mu, s) in eigenvalues.iter_mut().zip(&sizes) {
        *mu /= *s as f64;
    }
    Ok((SpectralDecomposition { eigenvalues, projectors, tol }, marginal))
}

/// Number of distinct eigenvalues, which for a symmetric matrix is the degree
/// of its minimal polynomial.
pub fn minimal_polynomial_degree(a: &LabeledGraph, tol: f64) -> Result<usize> {
    Ok(spectral_decomposition(a, tol)?.0.eigenvalues.len())
}

/// Classifies positions by the diagonal indicator together with the entries of
/// every projector whose eigenvalue is non-zero; projector entries are compared
/// after clustering within `tol`.
pub fn spectral_description_graph(a: &LabeledGraph, tol: f64) -> Result<SpectralDescription> {
    let (decomposition, mut ill_conditioned) = spectral_decomposition(a, tol)?;
    let n = a.order();
    let mut keys: Vec<Vec<usize>> = (0..n * n).map(|p| vec![usize::from(p / n == p % n)]).collect();
    for (mu, e) in decomposition.eigenvalues.iter().zip(&decomposition.projectors) {
        if mu.abs() <= tol {
            continue;
        }
        let entries: Vec<f64> = (0..n * n).map(|p| e[(p / n, p % n)]).collect();
        let (group, marginal) = cluster(&entries, tol);
        ill_conditioned |= marginal;
        for (key, g) in keys.iter_mut().zip(group) {
            key.push(g);
        }
    }
    let rows: Vec<Vec<&Vec<usize>>> = (0..n).map(|u| keys[u * n..(u + 1) * n].iter().collect()).collect();
    let graph = equivalent_variable_substitution(&rows)?;
    Ok(SpectralDescription { graph, decomposition, ill_conditioned })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{dim, LabelId};

    fn cycle(n: usize) -> LabeledGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        LabeledGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn four_cycle_spectrum() {
        let (d, marginal) = spectral_decomposition(&cycle(4), DEFAULT_TOLERANCE).unwrap();
        assert!(!marginal);
        let mut mus = d.eigenvalues.clone();
        mus.sort_by(f64::total_cmp);
        assert_eq!(mus.len(), 3);
        for (got, want) in mus.iter().zip([-2.0, 0.0, 2.0]) {
            assert!((got - want).abs() < 1e-9);
        }
        let a = zero_one_matrix(&cycle(4)).unwrap();
        assert!(d.reconstruction_error(&a) < 1e-9);
        assert!(d.orthogonality_error() < 1e-9);
    }

    #[test]
    fn complete_graph_two_classes() {
        let k6 = LabeledGraph::from_fn(6, |u, v| LabelId(u32::from(u != v))).unwrap();
        let s = spectral_description_graph(&k6, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(dim(&s.graph), 2);
        assert_eq!(minimal_polynomial_degree(&k6, DEFAULT_TOLERANCE).unwrap(), 2);
    }

    #[test]
    fn rejects_labels_beyond_one() {
        let g = LabeledGraph::from_rows(vec![vec![0, 2], vec![2, 0]]).unwrap();
        assert!(matches!(spectral_description_graph(&g, DEFAULT_TOLERANCE), Err(Error::NotZeroOne)));
        assert!(matches!(spectral_description_graph(&cycle(3), 0.0), Err(Error::BadTolerance)));
    }

    #[test]
    fn clustering_flags_marginal_gaps() {
        let (g, marginal) = cluster(&[0.0, 5e-10, 1.0, 1.0 + 5e-9], 1e-9);
        assert_eq!(g, vec![0, 0, 1, 2]);
        assert!(marginal);
    }
}
