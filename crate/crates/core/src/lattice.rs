//! Integer lattice shifts used to index generator translates and
//! signal coefficients.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of the integer lattice, ordered lexicographically so that
/// coefficient maps and serialized windows have a stable order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Shift(pub Vec<i64>);

impl Shift {
    pub fn zero(dim: usize) -> Self {
        Shift(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Shift) -> Shift {
        Shift(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Shift) -> Shift {
        Shift(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Shift {
        Shift(self.0.iter().map(|a| -a).collect())
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&a| a as f64).collect()
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All lattice points of the inclusive box `ranges`, in lexicographic order.
pub fn lattice_box(ranges: &[(i64, i64)]) -> Vec<Shift> {
    let mut out = vec![Shift(Vec::new())];
    for &(lo, hi) in ranges {
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1).max(0) as usize);
        for base in &out {
            for v in lo..=hi {
                let mut s = base.0.clone();
                s.push(v);
                next.push(Shift(s));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_box_is_lexicographic() {
        let pts = lattice_box(&[(0, 1), (-1, 0)]);
        let expect = vec![
            Shift(vec![0, -1]),
            Shift(vec![0, 0]),
            Shift(vec![1, -1]),
            Shift(vec![1, 0]),
        ];
        assert_eq!(pts, expect);
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted);
    }
}
