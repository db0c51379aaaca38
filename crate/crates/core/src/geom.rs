//! Axis-aligned boxes, open regions cut out by half-spaces, grid
//! sampling and the quadrature rules used to validate generators.

use crate::lattice::Shift;
use serde::{Deserialize, Serialize};

/// Closed axis-aligned box `[lo_1, hi_1] x ... x [lo_d, hi_d]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl AxisBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        assert_eq!(lo.len(), hi.len());
        AxisBox { lo, hi }
    }

    pub fn unit(dim: usize) -> Self {
        AxisBox {
            lo: vec![0.0; dim],
            hi: vec![1.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn widths(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).collect()
    }

    pub fn contains_closed(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&v, (&lo, &hi))| v >= lo && v <= hi)
    }

    pub fn contains_open(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&v, (&lo, &hi))| v > lo && v < hi)
    }

    pub fn translate(&self, k: &Shift) -> AxisBox {
        AxisBox {
            lo: self.lo.iter().zip(&k.0).map(|(v, &s)| v + s as f64).collect(),
            hi: self.hi.iter().zip(&k.0).map(|(v, &s)| v + s as f64).collect(),
        }
    }

    pub fn intersect(&self, other: &AxisBox) -> Option<AxisBox> {
        let lo: Vec<f64> = self
            .lo
            .iter()
            .zip(&other.lo)
            .map(|(a, b)| a.max(*b))
            .collect();
        let hi: Vec<f64> = self
            .hi
            .iter()
            .zip(&other.hi)
            .map(|(a, b)| a.min(*b))
            .collect();
        if lo.iter().zip(&hi).all(|(a, b)| a < b) {
            Some(AxisBox { lo, hi })
        } else {
            None
        }
    }

    pub fn hull(&self, other: &AxisBox) -> AxisBox {
        AxisBox {
            lo: self
                .lo
                .iter()
                .zip(&other.lo)
                .map(|(a, b)| a.min(*b))
                .collect(),
            hi: self
                .hi
                .iter()
                .zip(&other.hi)
                .map(|(a, b)| a.max(*b))
                .collect(),
        }
    }

    /// Regular grid of points with spacing `step`, inset from the faces by
    /// `margin`. Always yields at least one point per axis (the midpoint of
    /// a very thin box).
    pub fn grid(&self, step: f64, margin: f64) -> Vec<Vec<f64>> {
        let mut axes: Vec<Vec<f64>> = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let a = self.lo[i] + margin;
            let b = self.hi[i] - margin;
            let mut line = Vec::new();
            if a <= b {
                let n = ((b - a) / step).floor() as usize;
                for j in 0..=n {
                    line.push(a + j as f64 * step);
                }
            }
            if line.is_empty() {
                line.push(0.5 * (self.lo[i] + self.hi[i]));
            }
            axes.push(line);
        }
        cartesian(&axes)
    }
}

fn cartesian(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for axis in axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for base in &out {
            for &v in axis {
                let mut p = base.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Open half-space `normal . x < offset`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl HalfSpace {
    pub fn contains(&self, x: &[f64]) -> bool {
        dot(&self.normal, x) < self.offset
    }

    fn contains_with_margin(&self, x: &[f64], margin: f64) -> bool {
        let norm = dot(&self.normal, &self.normal).sqrt();
        dot(&self.normal, x) < self.offset - margin * norm
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Bounded open region: the interior of an axis box intersected with open
/// half-spaces. Membership is by strict inequalities throughout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    #[serde(rename = "box")]
    pub bounds: AxisBox,
    pub halfspaces: Vec<HalfSpace>,
}

impl Region {
    pub fn unit_box(dim: usize) -> Region {
        Region {
            bounds: AxisBox::unit(dim),
            halfspaces: Vec::new(),
        }
    }

    /// `{(s, t): 0 < s < t < 1}`.
    pub fn upper_triangle() -> Region {
        Region {
            bounds: AxisBox::unit(2),
            halfspaces: vec![HalfSpace {
                normal: vec![1.0, -1.0],
                offset: 0.0,
            }],
        }
    }

    /// `{(s, t): 0 < t < s < 1}`.
    pub fn lower_triangle() -> Region {
        Region {
            bounds: AxisBox::unit(2),
            halfspaces: vec![HalfSpace {
                normal: vec![-1.0, 1.0],
                offset: 0.0,
            }],
        }
    }

    pub fn interval(a: f64, b: f64) -> Region {
        Region {
            bounds: AxisBox::new(vec![a], vec![b]),
            halfspaces: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.bounds.contains_open(x) && self.halfspaces.iter().all(|h| h.contains(x))
    }

    fn contains_with_margin(&self, x: &[f64], margin: f64) -> bool {
        x.iter()
            .zip(self.bounds.lo.iter().zip(&self.bounds.hi))
            .all(|(&v, (&lo, &hi))| v > lo + margin && v < hi - margin)
            && self
                .halfspaces
                .iter()
                .all(|h| h.contains_with_margin(x, margin))
    }

    /// Interior grid points with spacing `step`, kept `margin` away from
    /// every face of the region.
    pub fn interior_grid(&self, step: f64, margin: f64) -> Vec<Vec<f64>> {
        self.bounds
            .grid(step, margin)
            .into_iter()
            .filter(|p| self.contains_with_margin(p, margin))
            .collect()
    }

    /// Points `(i_1/n, ..., i_d/n)` strictly inside the region (offset by the
    /// box corner). Used for the deterministic candidate lattices.
    pub fn divisor_grid(&self, n: usize) -> Vec<Vec<f64>> {
        let step = 1.0 / n as f64;
        let mut axes: Vec<Vec<f64>> = Vec::new();
        for i in 0..self.dim() {
            let mut line = Vec::new();
            let mut v = self.bounds.lo[i] + step;
            while v < self.bounds.hi[i] - 1e-12 {
                line.push(v);
                v += step;
            }
            axes.push(line);
        }
        cartesian(&axes)
            .into_iter()
            .filter(|p| self.contains(p))
            .collect()
    }

    /// Seeded uniform samples from the region interior, `margin` away from
    /// the boundary, by rejection from the bounding box.
    pub fn sample_interior<R: rand::Rng>(
        &self,
        count: usize,
        margin: f64,
        rng: &mut R,
    ) -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(count);
        let mut guard = 0usize;
        while out.len() < count && guard < count * 10_000 {
            guard += 1;
            let p: Vec<f64> = (0..self.dim())
                .map(|i| rng.gen_range(self.bounds.lo[i]..self.bounds.hi[i]))
                .collect();
            if self.contains_with_margin(&p, margin) {
                out.push(p);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// 8-point Gauss-Legendre nodes/weights on [-1, 1].
const GL8: [(f64, f64); 8] = [
    (-0.9602898564975363, 0.1012285362903763),
    (-0.7966664774136267, 0.2223810344533745),
    (-0.5255324099163290, 0.3137066458778873),
    (-0.1834346424956498, 0.3626837833783620),
    (0.1834346424956498, 0.3626837833783620),
    (0.5255324099163290, 0.3137066458778873),
    (0.7966664774136267, 0.2223810344533745),
    (0.9602898564975363, 0.1012285362903763),
];

pub fn integrate_1d(f: impl Fn(f64) -> f64, a: f64, b: f64, cells: usize) -> f64 {
    let h = (b - a) / cells as f64;
    let mut total = 0.0;
    for c in 0..cells {
        let lo = a + c as f64 * h;
        let mid = lo + 0.5 * h;
        for &(x, w) in &GL8 {
            total += w * f(mid + 0.5 * h * x);
        }
    }
    total * 0.5 * h
}

/// Degree-5 symmetric rule on a triangle (7 points), in barycentric form.
fn triangle_rule() -> [( [f64; 3], f64); 7] {
    let sqrt15 = 15f64.sqrt();
    let a = (6.0 - sqrt15) / 21.0;
    let b = (6.0 + sqrt15) / 21.0;
    let wa = (155.0 - sqrt15) / 1200.0;
    let wb = (155.0 + sqrt15) / 1200.0;
    [
        ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 9.0 / 40.0),
        ([1.0 - 2.0 * a, a, a], wa),
        ([a, 1.0 - 2.0 * a, a], wa),
        ([a, a, 1.0 - 2.0 * a], wa),
        ([1.0 - 2.0 * b, b, b], wb),
        ([b, 1.0 - 2.0 * b, b], wb),
        ([b, b, 1.0 - 2.0 * b], wb),
    ]
}

fn integrate_triangle(f: &impl Fn(&[f64]) -> f64, p0: [f64; 2], p1: [f64; 2], p2: [f64; 2]) -> f64 {
    let area = 0.5
        * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1])).abs();
    let mut total = 0.0;
    for (bary, w) in triangle_rule() {
        let x = bary[0] * p0[0] + bary[1] * p1[0] + bary[2] * p2[0];
        let y = bary[0] * p0[1] + bary[1] * p1[1] + bary[2] * p2[1];
        total += w * f(&[x, y]);
    }
    total * 2.0 * area
}

/// Integrate a bivariate function over `bbox` by unit-cell subdivision.
/// Each cell is split along its main diagonal so functions with kinks on
/// the three-direction mesh (integer lines plus `x - y` in Z) integrate
/// exactly up to the rule degree. `subdiv` refines each unit cell.
pub fn integrate_2d_mesh(f: impl Fn(&[f64]) -> f64, bbox: &AxisBox, subdiv: usize) -> f64 {
    assert_eq!(bbox.dim(), 2);
    let h = 1.0 / subdiv as f64;
    let (x0, x1) = (bbox.lo[0].floor(), bbox.hi[0].ceil());
    let (y0, y1) = (bbox.lo[1].floor(), bbox.hi[1].ceil());
    let nx = ((x1 - x0) as i64).max(1) * subdiv as i64;
    let ny = ((y1 - y0) as i64).max(1) * subdiv as i64;
    let mut total = 0.0;
    for ix in 0..nx {
        for iy in 0..ny {
            let a = [x0 + ix as f64 * h, y0 + iy as f64 * h];
            let b = [a[0] + h, a[1]];
            let c = [a[0] + h, a[1] + h];
            let d = [a[0], a[1] + h];
            total += integrate_triangle(&f, a, b, c);
            total += integrate_triangle(&f, a, c, d);
        }
    }
    total
}
