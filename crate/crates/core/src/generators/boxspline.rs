//! Box splines evaluated by the de Boor recurrence on the direction
//! matrix. The base case (square submatrix) is the normalized Lebesgue
//! measure of the spanned parallelepiped. Evaluation points receive a
//! fixed sub-nanometer offset in an irrational direction so they never
//! land on the discontinuity mesh of the base-case indicators.

use crate::error::{Result, SivError};
use crate::geom::AxisBox;
use nalgebra::{DMatrix, DVector};
use std::collections::HashMap;

const MESH_OFFSET: f64 = 1e-9;
const PRIMES: [f64; 8] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0];

enum MaskData {
    Degenerate,
    Base { inv: DMatrix<f64>, density: f64 },
    Recurse { pinv: DMatrix<f64>, cols: Vec<usize> },
}

pub struct BoxSplineEngine {
    dim: usize,
    columns: Vec<Vec<i64>>,
    columns_f: Vec<DVector<f64>>,
    masks: HashMap<u32, MaskData>,
    offset: Vec<f64>,
    support: AxisBox,
    unimodular: bool,
}

impl BoxSplineEngine {
    pub fn new(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || dim > PRIMES.len() {
            return Err(SivError::InvalidArgument(format!(
                "box-spline dimension {dim} unsupported"
            )));
        }
        let s = rows[0].len();
        if rows.iter().any(|r| r.len() != s) || s < dim || s > 20 {
            return Err(SivError::InvalidArgument(
                "direction matrix must be rectangular with at least d columns".into(),
            ));
        }
        let columns: Vec<Vec<i64>> = (0..s).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        let columns_f: Vec<DVector<f64>> = columns
            .iter()
            .map(|c| DVector::from_iterator(dim, c.iter().map(|&v| v as f64)))
            .collect();

        let full = DMatrix::from_fn(dim, s, |i, j| columns_f[j][i]);
        let rank = crate::linalg::numerical_rank(&full, 1e-12);
        if rank < dim {
            return Err(SivError::DegenerateDirectionMatrix {
                expected: dim,
                actual: rank,
            });
        }

        let mut masks = HashMap::new();
        let full_mask = (1u32 << s) - 1;
        for mask in 0..=full_mask {
            let count = mask.count_ones() as usize;
            if count < dim {
                continue;
            }
            let cols: Vec<usize> = (0..s).filter(|j| mask & (1 << j) != 0).collect();
            let m = DMatrix::from_fn(dim, count, |i, j| columns_f[cols[j]][i]);
            if crate::linalg::numerical_rank(&m, 1e-12) < dim {
                masks.insert(mask, MaskData::Degenerate);
                continue;
            }
            if count == dim {
                let det = m.determinant().abs();
                let inv = m.try_inverse().expect("full-rank square matrix");
                masks.insert(
                    mask,
                    MaskData::Base {
                        inv,
                        density: 1.0 / det,
                    },
                );
            } else {
                // Minimum-norm representation x = Xi t, t = Xi^T (Xi Xi^T)^-1 x.
                let gram = &m * m.transpose();
                let pinv = m.transpose() * gram.try_inverse().expect("full row rank");
                masks.insert(mask, MaskData::Recurse { pinv, cols });
            }
        }

        let mut lo = vec![0.0; dim];
        let mut hi = vec![0.0; dim];
        for c in &columns {
            for i in 0..dim {
                if c[i] < 0 {
                    lo[i] += c[i] as f64;
                } else {
                    hi[i] += c[i] as f64;
                }
            }
        }

        let mut offset: Vec<f64> = PRIMES[..dim].iter().map(|p| 1.0 / p.sqrt()).collect();
        let norm = offset.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut offset {
            *v *= MESH_OFFSET / norm;
        }

        let unimodular = all_minors_unimodular(&columns, dim);

        Ok(BoxSplineEngine {
            dim,
            columns,
            columns_f,
            masks,
            offset,
            support: AxisBox::new(lo, hi),
            unimodular,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_directions(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn support(&self) -> &AxisBox {
        &self.support
    }

    /// All d x d minors have determinant 0 or +-1. For box splines this is
    /// equivalent to local linear independence on every open set.
    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        if !self.support.contains_closed(x) {
            return 0.0;
        }
        let xp = DVector::from_iterator(self.dim, x.iter().zip(&self.offset).map(|(a, b)| a + b));
        let full_mask = (1u32 << self.columns.len()) - 1;
        self.eval_mask(full_mask, &xp)
    }

    fn eval_mask(&self, mask: u32, x: &DVector<f64>) -> f64 {
        match self.masks.get(&mask) {
            None | Some(MaskData::Degenerate) => 0.0,
            Some(MaskData::Base { inv, density }) => {
                let y = inv * x;
                if y.iter().all(|&v| (0.0..1.0).contains(&v)) {
                    *density
                } else {
                    0.0
                }
            }
            Some(MaskData::Recurse { pinv, cols }) => {
                let t = pinv * x;
                let mut acc = 0.0;
                for (j, &col) in cols.iter().enumerate() {
                    let child = mask & !(1u32 << col);
                    if matches!(self.masks.get(&child), Some(MaskData::Degenerate) | None) {
                        continue;
                    }
                    let tj = t[j];
                    if tj != 0.0 {
                        acc += tj * self.eval_mask(child, x);
                    }
                    if tj != 1.0 {
                        let shifted = x - &self.columns_f[col];
                        acc += (1.0 - tj) * self.eval_mask(child, &shifted);
                    }
                }
                acc / (cols.len() - self.dim) as f64
            }
        }
    }
}

/// Exact integer determinant by fraction-free elimination.
fn int_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn all_minors_unimodular(columns: &[Vec<i64>], dim: usize) -> bool {
    let s = columns.len();
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        let sub: Vec<Vec<i64>> = (0..dim)
            .map(|r| idx.iter().map(|&j| columns[j][r]).collect())
            .collect();
        if int_det(&sub).abs() > 1 {
            return false;
        }
        // Advance to the next dim-combination of {0..s}.
        let mut i = dim as isize - 1;
        while i >= 0 && idx[i as usize] == s - dim + i as usize {
            i -= 1;
        }
        if i < 0 {
            return true;
        }
        let i = i as usize;
        idx[i] += 1;
        for j in i + 1..dim {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    pub fn zwart_powell() -> BoxSplineEngine {
        BoxSplineEngine::new(&[vec![1, 1, 0, 1], vec![0, 0, 1, 1]]).unwrap()
    }

    #[test]
    fn support_is_column_sum_box() {
        let zp = zwart_powell();
        assert_eq!(zp.support().lo, vec![0.0, 0.0]);
        assert_eq!(zp.support().hi, vec![3.0, 2.0]);
    }

    #[test]
    fn rank_deficient_matrix_rejected() {
        let err = BoxSplineEngine::new(&[vec![1, 2], vec![2, 4]]).unwrap_err();
        assert!(matches!(err, SivError::DegenerateDirectionMatrix { .. }));
    }

    #[test]
    fn reduces_to_tensor_product_case() {
        // Directions e1, e1, e2 give B_2(x) B_1(y).
        let eng = BoxSplineEngine::new(&[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        for &(x, y) in &[(0.5, 0.5), (1.5, 0.25), (0.25, 0.75), (1.9, 0.99)] {
            let expect = super::super::bspline::bspline_unchecked(2, x);
            assert_abs_diff_eq!(eng.eval(&[x, y]), expect, epsilon = 1e-6);
        }
        assert_eq!(eng.eval(&[0.5, 1.5]), 0.0);
    }

    #[test]
    fn zwart_powell_partition_of_unity() {
        let zp = zwart_powell();
        for i in 0..9 {
            for j in 0..9 {
                let x = [i as f64 / 8.0, j as f64 / 8.0];
                let mut sum = 0.0;
                for kx in -3..=0 {
                    for ky in -2..=0 {
                        sum += zp.eval(&[x[0] - kx as f64, x[1] - ky as f64]);
                    }
                }
                assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn zwart_powell_is_unimodular() {
        assert!(zwart_powell().is_unimodular());
        // A direction of length 2 breaks unimodularity.
        let eng = BoxSplineEngine::new(&[vec![2, 0, 1], vec![0, 1, 1]]).unwrap();
        assert!(!eng.is_unimodular());
    }

    #[test]
    fn int_det_matches_hand_values() {
        assert_eq!(int_det(&[vec![0, 1], vec![1, 1]]), -1);
        assert_eq!(int_det(&[vec![2, 0], vec![0, 3]]), 6);
        assert_eq!(int_det(&[vec![1, 1], vec![2, 2]]), 0);
    }
}
