//! Thin wrappers over nalgebra for the small dense kernels used
//! throughout: singular values, numerical rank, incremental rank
//! tracking and symmetric outer-product vectorization.

use nalgebra::{DMatrix, DVector};

/// Smallest singular value of `m` viewed as a map on its column space.
/// Zero when there are fewer rows than columns: such a matrix cannot
/// have full column rank.
pub fn sigma_min(m: &DMatrix<f64>) -> f64 {
    if m.nrows() < m.ncols() || m.ncols() == 0 {
        return 0.0;
    }
    m.singular_values().iter().cloned().fold(f64::MAX, f64::min)
}

pub fn sigma_max(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Number of singular values above `rel_tol * sigma_max`.
pub fn numerical_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Smallest eigenvalue of a symmetric matrix, clamped at zero.
pub fn lambda_min(g: &DMatrix<f64>) -> f64 {
    g.clone()
        .symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::MAX, f64::min)
        .max(0.0)
}

/// Upper-triangle coordinates of the symmetric outer product `v v^T`.
pub fn sym_outer_vec(v: &DVector<f64>) -> DVector<f64> {
    let n = v.len();
    let mut out = DVector::zeros(n * (n + 1) / 2);
    let mut idx = 0;
    for i in 0..n {
        for j in i..n {
            out[idx] = v[i] * v[j];
            idx += 1;
        }
    }
    out
}

/// Incremental rank tracking by modified Gram-Schmidt. `push` reports
/// whether the vector enlarged the span.
pub struct RankAccumulator {
    basis: Vec<DVector<f64>>,
    rel_tol: f64,
}

impl RankAccumulator {
    pub fn new(rel_tol: f64) -> Self {
        RankAccumulator {
            basis: Vec::new(),
            rel_tol,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn push(&mut self, v: &DVector<f64>) -> bool {
        let norm0 = v.norm();
        if norm0 == 0.0 {
            return false;
        }
        let mut r = v.clone();
        // Two MGS sweeps keep the basis orthogonal enough for rank decisions.
        for _ in 0..2 {
            for b in &self.basis {
                let c = r.dot(b);
                r.axpy(-c, b, 1.0);
            }
        }
        let norm = r.norm();
        if norm > self.rel_tol * norm0 {
            self.basis.push(r / norm);
            true
        } else {
            false
        }
    }

    pub fn pop(&mut self) {
        self.basis.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_min_of_wide_matrix_is_zero() {
        let m = DMatrix::from_row_slice(1, 2, &[1.0, 2.0]);
        assert_eq!(sigma_min(&m), 0.0);
    }

    #[test]
    fn rank_accumulator_matches_svd_rank() {
        let vs = [
            DVector::from_vec(vec![1.0, 0.0, 0.0]),
            DVector::from_vec(vec![1.0, 1e-14, 0.0]),
            DVector::from_vec(vec![0.0, 1.0, 1.0]),
        ];
        let mut acc = RankAccumulator::new(1e-10);
        assert!(acc.push(&vs[0]));
        assert!(!acc.push(&vs[1]));
        assert!(acc.push(&vs[2]));
        assert_eq!(acc.rank(), 2);
    }
}
