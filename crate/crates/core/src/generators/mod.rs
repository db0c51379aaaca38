//! Compactly supported generators of shift-invariant spaces: cardinal
//! B-splines, tensor-product splines, box splines and the piecewise
//! fixtures, together with the translate-overlap structure they induce.

mod bspline;
mod boxspline;
mod fixtures;

pub use boxspline::BoxSplineEngine;
pub use fixtures::Fixture;

use crate::error::{Result, SivError};
use crate::geom::{integrate_1d, integrate_2d_mesh, AxisBox, Region};
use crate::lattice::{lattice_box, Shift};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Default grid spacing for non-vanishing decisions.
pub const GRID_STEP: f64 = 1.0 / 32.0;
/// Values below this are treated as zero when scanning translates.
pub const ZERO_TOL: f64 = 1e-12;
/// Relative singular-value cutoff for rank decisions.
pub const RANK_TOL: f64 = 1e-9;

/// Serialized description of a generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GeneratorSpec {
    #[serde(rename = "bspline")]
    Bspline {
        #[serde(rename = "N")]
        order: u32,
    },
    #[serde(rename = "tensor")]
    Tensor {
        #[serde(rename = "N")]
        orders: Vec<u32>,
    },
    #[serde(rename = "box")]
    Box {
        #[serde(rename = "Xi")]
        xi: Vec<Vec<i64>>,
    },
    #[serde(rename = "fixture")]
    Fixture { name: String },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Arc<Generator>> {
        match self {
            GeneratorSpec::Bspline { order } => Generator::cardinal_bspline(*order),
            GeneratorSpec::Tensor { orders } => Generator::tensor_bspline(orders),
            GeneratorSpec::Box { xi } => Generator::box_spline(xi),
            GeneratorSpec::Fixture { name } => Fixture::from_name(name)
                .map(Generator::fixture)
                .ok_or_else(|| SivError::InvalidArgument(format!("unknown fixture {name:?}"))),
        }
    }
}

enum Kind {
    Bspline(u32),
    Tensor(Vec<u32>),
    Box(BoxSplineEngine),
    Fixture(Fixture),
}

/// A compactly supported continuous generator with exact evaluation.
pub struct Generator {
    spec: GeneratorSpec,
    kind: Kind,
    dim: usize,
    support: AxisBox,
    lli_on_open_sets: bool,
}

/// Cardinal B-spline value; the order must be at least 1.
pub fn eval_bspline(order: u32, t: f64) -> Result<f64> {
    if order < 1 {
        return Err(SivError::InvalidOrder(order));
    }
    Ok(bspline::bspline_unchecked(order, t))
}

impl Generator {
    pub fn cardinal_bspline(order: u32) -> Result<Arc<Generator>> {
        if order < 1 {
            return Err(SivError::InvalidOrder(order));
        }
        Ok(Arc::new(Generator {
            spec: GeneratorSpec::Bspline { order },
            kind: Kind::Bspline(order),
            dim: 1,
            support: AxisBox::new(vec![0.0], vec![order as f64]),
            // B-splines are refinable with global linear independence, which
            // for this family is equivalent to local linear independence on
            // every open set.
            lli_on_open_sets: true,
        }))
    }

    pub fn tensor_bspline(orders: &[u32]) -> Result<Arc<Generator>> {
        if orders.is_empty() {
            return Err(SivError::InvalidArgument("empty order list".into()));
        }
        if let Some(&bad) = orders.iter().find(|&&n| n < 1) {
            return Err(SivError::InvalidOrder(bad));
        }
        Ok(Arc::new(Generator {
            spec: GeneratorSpec::Tensor {
                orders: orders.to_vec(),
            },
            kind: Kind::Tensor(orders.to_vec()),
            dim: orders.len(),
            support: AxisBox::new(
                vec![0.0; orders.len()],
                orders.iter().map(|&n| n as f64).collect(),
            ),
            lli_on_open_sets: true,
        }))
    }

    pub fn box_spline(xi: &[Vec<i64>]) -> Result<Arc<Generator>> {
        let engine = BoxSplineEngine::new(xi)?;
        let dim = engine.dim();
        let support = engine.support().clone();
        let lli = engine.is_unimodular();
        Ok(Arc::new(Generator {
            spec: GeneratorSpec::Box { xi: xi.to_vec() },
            kind: Kind::Box(engine),
            dim,
            support,
            lli_on_open_sets: lli,
        }))
    }

    pub fn fixture(f: Fixture) -> Arc<Generator> {
        Arc::new(Generator {
            spec: GeneratorSpec::Fixture {
                name: f.name().into(),
            },
            support: f.support(),
            kind: Kind::Fixture(f),
            dim: 1,
            lli_on_open_sets: false,
        })
    }

    /// The direction matrix for the bivariate Zwart-Powell element.
    pub fn zwart_powell() -> Arc<Generator> {
        Generator::box_spline(&[vec![1, 1, 0, 1], vec![0, 0, 1, 1]]).expect("full rank")
    }

    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Minimal closed axis-aligned box containing the support.
    pub fn support(&self) -> &AxisBox {
        &self.support
    }

    /// Whether the generator is known to be locally linearly independent on
    /// every open set (B-splines, tensor products, unimodular box splines).
    pub fn lli_on_open_sets(&self) -> bool {
        self.lli_on_open_sets
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        match &self.kind {
            Kind::Bspline(n) => bspline::bspline_unchecked(*n, x[0]),
            Kind::Tensor(orders) => orders
                .iter()
                .zip(x)
                .map(|(&n, &t)| bspline::bspline_unchecked(n, t))
                .product(),
            Kind::Box(engine) => engine.eval(x),
            Kind::Fixture(f) => f.eval(x[0]),
        }
    }

    /// `phi(x - k)`.
    pub fn eval_shifted(&self, x: &[f64], k: &Shift) -> f64 {
        let mut y = vec![0.0; self.dim];
        for i in 0..self.dim {
            y[i] = x[i] - k.0[i] as f64;
        }
        self.eval(&y)
    }

    /// Row vector `(phi(x - k))_k` over the given shift window.
    pub fn translate_row(&self, shifts: &[Shift], x: &[f64]) -> DVector<f64> {
        DVector::from_iterator(shifts.len(), shifts.iter().map(|k| self.eval_shifted(x, k)))
    }

    /// Quadrature of the generator over its support. Exactness relies on
    /// the kink mesh lying in the integer grid (tensor kinds) or the
    /// three-direction mesh (bivariate box splines).
    pub fn integral(&self) -> f64 {
        match self.dim {
            1 => {
                let (a, b) = (self.support.lo[0], self.support.hi[0]);
                // Fixture kinks sit on quarter-integers.
                let cells = ((b - a) * 4.0).ceil() as usize;
                integrate_1d(|t| self.eval(&[t]), a, b, cells.max(1))
            }
            2 => integrate_2d_mesh(|p| self.eval(p), &self.support, 2),
            _ => {
                let grid = self.support.grid(1.0 / 16.0, 0.0);
                let cell = (1.0f64 / 16.0).powi(self.dim as i32);
                grid.iter().map(|p| self.eval(p) * cell).sum()
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Translate-overlap structure
// ---------------------------------------------------------------------------

/// The set of lattice shifts whose translate overlaps the generator,
/// with one witness point per shift.
#[derive(Clone, Debug)]
pub struct OverlapSet {
    witnesses: BTreeMap<Shift, Vec<f64>>,
}

impl OverlapSet {
    pub fn contains(&self, k: &Shift) -> bool {
        self.witnesses.contains_key(k)
    }

    pub fn witness(&self, k: &Shift) -> Option<&[f64]> {
        self.witnesses.get(k).map(|w| w.as_slice())
    }

    pub fn shifts(&self) -> impl Iterator<Item = &Shift> {
        self.witnesses.keys()
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Shifts `k` with `phi . phi(. - k)` not identically zero, decided on a
/// grid of spacing `grid_step` with threshold `zero_tol`.
pub fn overlap_set(g: &Generator, grid_step: f64, zero_tol: f64) -> OverlapSet {
    assert!(grid_step > 0.0);
    let sup = g.support();
    let ranges: Vec<(i64, i64)> = sup
        .widths()
        .iter()
        .map(|&w| (-(w.ceil() as i64), w.ceil() as i64))
        .collect();
    let mut witnesses = BTreeMap::new();
    for k in lattice_box(&ranges) {
        let Some(overlap) = sup.intersect(&sup.translate(&k)) else {
            continue;
        };
        let found = overlap.grid(grid_step, grid_step / 4.0).into_iter().find(|x| {
            let v = g.eval(x) * g.eval_shifted(x, &k);
            v.abs() > zero_tol
        });
        if let Some(x) = found {
            witnesses.insert(k, x);
        }
    }
    OverlapSet { witnesses }
}

/// Shifts whose translate is not identically zero on the region, decided
/// by dense-grid evaluation above `ZERO_TOL`.
pub fn k_set(g: &Generator, region: &Region) -> Vec<Shift> {
    let sup = g.support();
    let ranges: Vec<(i64, i64)> = (0..g.dim())
        .map(|i| {
            (
                (region.bounds.lo[i] - sup.hi[i]).ceil() as i64,
                (region.bounds.hi[i] - sup.lo[i]).floor() as i64,
            )
        })
        .collect();
    let grid = region.interior_grid(GRID_STEP, 1e-9);
    let mut out = Vec::new();
    for k in lattice_box(&ranges) {
        if grid.iter().any(|x| g.eval_shifted(x, &k).abs() > ZERO_TOL) {
            out.push(k);
        }
    }
    out
}

/// True when the translates alive on `region` are linearly independent
/// there: the stacked evaluation matrix reaches full column rank.
pub fn local_linear_independence(
    g: &Generator,
    region: &Region,
    sample_count: usize,
    rank_tol: f64,
) -> Result<bool> {
    let shifts = k_set(g, region);
    if shifts.is_empty() {
        return Err(SivError::EmptyRestriction);
    }
    let points = sample_points(region, sample_count.max(4 * shifts.len()));
    let m = DMatrix::from_fn(points.len(), shifts.len(), |r, c| {
        g.eval_shifted(&points[r], &shifts[c])
    });
    Ok(crate::linalg::numerical_rank(&m, rank_tol) == shifts.len())
}

/// Deterministic interior sample points: a grid refined until it holds at
/// least `count` points.
pub(crate) fn sample_points(region: &Region, count: usize) -> Vec<Vec<f64>> {
    let mut step = GRID_STEP * 4.0;
    loop {
        let pts = region.interior_grid(step, 1e-9);
        if pts.len() >= count || step < 1e-4 {
            return pts;
        }
        step /= 2.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eval_bspline_validates_order() {
        assert!(matches!(eval_bspline(0, 0.5), Err(SivError::InvalidOrder(0))));
        assert_eq!(eval_bspline(3, 0.5).unwrap(), 0.125);
    }

    #[test]
    fn tensor_value_is_product_of_1d_recursions() {
        let g = Generator::tensor_bspline(&[3, 3]).unwrap();
        assert_abs_diff_eq!(g.eval(&[0.5, 0.5]), 0.015625, epsilon = 1e-15);
        let oracle = eval_bspline(3, 0.5).unwrap().powi(2);
        assert_abs_diff_eq!(g.eval(&[0.5, 0.5]), oracle, epsilon = 1e-15);
    }

    #[test]
    fn support_boxes() {
        assert_eq!(
            Generator::cardinal_bspline(3).unwrap().support(),
            &AxisBox::new(vec![0.0], vec![3.0])
        );
        assert_eq!(
            Generator::tensor_bspline(&[3, 3]).unwrap().support(),
            &AxisBox::new(vec![0.0, 0.0], vec![3.0, 3.0])
        );
        // Minkowski sum of the column segments: columns of Xi sum to (3, 2).
        assert_eq!(
            Generator::zwart_powell().support(),
            &AxisBox::new(vec![0.0, 0.0], vec![3.0, 2.0])
        );
    }

    #[test]
    fn zero_outside_support() {
        let g = Generator::zwart_powell();
        for x in [[-0.1, 1.0], [3.1, 1.0], [1.0, -0.1], [1.0, 2.1]] {
            assert_eq!(g.eval(&x), 0.0);
        }
        let b = Generator::cardinal_bspline(4).unwrap();
        assert_eq!(b.eval(&[-1e-9]), 0.0);
        assert_eq!(b.eval(&[4.0 + 1e-9]), 0.0);
    }

    #[test]
    fn continuity_on_cell_faces() {
        let g = Generator::zwart_powell();
        let pairs = [
            ([1.0 - 1e-7, 0.7], [1.0 + 1e-7, 0.7]),
            ([0.5 - 1e-7, 0.5 + 1e-7], [0.5 + 1e-7, 0.5 - 1e-7]),
            ([2.0, 1.0 - 1e-7], [2.0, 1.0 + 1e-7]),
        ];
        for (a, b) in pairs {
            assert_abs_diff_eq!(g.eval(&a), g.eval(&b), epsilon = 1e-5);
        }
    }

    #[test]
    fn integrals_are_one() {
        for n in 1..=6 {
            let g = Generator::cardinal_bspline(n).unwrap();
            assert_abs_diff_eq!(g.integral(), 1.0, epsilon = 1e-9);
        }
        let t = Generator::tensor_bspline(&[3, 3]).unwrap();
        assert_abs_diff_eq!(t.integral(), 1.0, epsilon = 1e-9);
        let zp = Generator::zwart_powell();
        assert_abs_diff_eq!(zp.integral(), 1.0, epsilon = 1e-6);
    }

    #[test]
    fn overlap_set_of_bsplines() {
        for order in 2..=5u32 {
            let g = Generator::cardinal_bspline(order).unwrap();
            let lam = overlap_set(&g, GRID_STEP, ZERO_TOL);
            let expect: Vec<i64> = (-(order as i64 - 1)..=(order as i64 - 1)).collect();
            let got: Vec<i64> = lam.shifts().map(|k| k.0[0]).collect();
            assert_eq!(got, expect, "order {order}");
        }
    }

    #[test]
    fn overlap_set_tensor_is_product_of_1d_sets() {
        let g = Generator::tensor_bspline(&[3, 3]).unwrap();
        let lam = overlap_set(&g, GRID_STEP, ZERO_TOL);
        assert_eq!(lam.len(), 25);
        for k in lam.shifts() {
            assert!(k.0.iter().all(|v| v.abs() <= 2));
            assert!(lam.contains(&k.neg()), "symmetry at {k}");
        }
        assert!(lam.contains(&Shift::zero(2)));
        // Dense-grid product oracle: witnesses really are overlap points.
        for k in lam.shifts() {
            let w = lam.witness(k).unwrap();
            assert!(g.eval(w).abs() * g.eval_shifted(w, k).abs() > ZERO_TOL);
        }
    }

    #[test]
    fn overlap_set_agrees_on_finer_grid() {
        for g in [
            Generator::cardinal_bspline(4).unwrap(),
            Generator::tensor_bspline(&[2, 3]).unwrap(),
            Generator::zwart_powell(),
        ] {
            let coarse: Vec<Shift> = overlap_set(&g, GRID_STEP, ZERO_TOL)
                .shifts()
                .cloned()
                .collect();
            let fine: Vec<Shift> = overlap_set(&g, GRID_STEP / 10.0, ZERO_TOL)
                .shifts()
                .cloned()
                .collect();
            assert_eq!(coarse, fine);
        }
    }

    #[test]
    fn k_set_tensor_unit_square() {
        let g = Generator::tensor_bspline(&[3, 3]).unwrap();
        let ks = k_set(&g, &Region::unit_box(2));
        assert_eq!(ks.len(), 9);
        for k in &ks {
            assert!(k.0.iter().all(|&v| (-2..=0).contains(&v)));
        }
    }

    #[test]
    fn k_set_zwart_powell_upper_triangle() {
        let g = Generator::zwart_powell();
        let mut ks = k_set(&g, &Region::upper_triangle());
        ks.sort();
        let mut expect = vec![
            Shift(vec![0, 0]),
            Shift(vec![-1, 0]),
            Shift(vec![-2, 0]),
            Shift(vec![-1, -1]),
            Shift(vec![-2, -1]),
        ];
        expect.sort();
        assert_eq!(ks, expect);
    }

    #[test]
    fn k_set_empty_far_region() {
        let g = Generator::cardinal_bspline(3).unwrap();
        let far = Region {
            bounds: AxisBox::new(vec![100.0], vec![101.0]),
            halfspaces: vec![],
        };
        assert!(k_set(&g, &far).is_empty());
        assert!(matches!(
            local_linear_independence(&g, &far, 16, RANK_TOL),
            Err(SivError::EmptyRestriction)
        ));
    }

    #[test]
    fn lli_of_tensor_spline_on_unit_square() {
        let g = Generator::tensor_bspline(&[3, 3]).unwrap();
        let region = Region::unit_box(2);
        assert!(local_linear_independence(&g, &region, 64, RANK_TOL).unwrap());
        // Symbolic oracle: the coefficient matrix of the three 1-D pieces in
        // the monomial basis {1, s, s^2} is invertible, so its Kronecker
        // square has rank 9.
        let c = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 0.5, 0.5, 1.0, -1.0, 0.5, -1.0, 0.5]);
        let kron = c.kronecker(&c);
        assert_eq!(crate::linalg::numerical_rank(&kron, 1e-12), 9);
    }

    #[test]
    fn hat_combination_lli_depends_on_region() {
        let g = Generator::fixture(Fixture::HatCombination);
        let on_unit = local_linear_independence(&g, &Region::interval(0.0, 1.0), 32, RANK_TOL);
        assert_eq!(on_unit.unwrap(), true);
        let on_half = local_linear_independence(&g, &Region::interval(0.0, 0.5), 32, RANK_TOL);
        assert_eq!(on_half.unwrap(), false);
    }

    #[test]
    fn lli_verdict_stable_under_sample_doubling() {
        let g = Generator::zwart_powell();
        let region = Region::upper_triangle();
        let a = local_linear_independence(&g, &region, 40, RANK_TOL).unwrap();
        let b = local_linear_independence(&g, &region, 80, RANK_TOL).unwrap();
        assert_eq!(a, b);
        assert!(a);
    }

    #[test]
    fn spec_round_trip() {
        for spec in [
            GeneratorSpec::Bspline { order: 3 },
            GeneratorSpec::Tensor { orders: vec![3, 3] },
            GeneratorSpec::Box {
                xi: vec![vec![1, 1, 0, 1], vec![0, 0, 1, 1]],
            },
            GeneratorSpec::Fixture {
                name: "hat-combination".into(),
            },
        ] {
            let g = spec.build().unwrap();
            let json = serde_json::to_string(g.spec()).unwrap();
            let back: GeneratorSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(&back, g.spec());
        }
        let json = r#"{"kind":"tensor","N":[3,3]}"#;
        let spec: GeneratorSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec, GeneratorSpec::Tensor { orders: vec![3, 3] });
    }
}
