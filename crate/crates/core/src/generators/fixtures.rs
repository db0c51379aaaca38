//! Hardcoded piecewise-polynomial generators used as negative-result
//! fixtures: continuous, globally linearly independent, but without
//! local linear independence on every open set.

use crate::geom::AxisBox;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fixture {
    /// `h(4t-1) + h(4t-3) + h(4t-5) - h(4t-7)` with `h` the unit hat;
    /// supported on `[0, 2]`.
    #[serde(rename = "hat-combination")]
    HatCombination,
    /// The previous fixture with argument doubled; supported on `[0, 1]`.
    #[serde(rename = "scaled-hat-combination")]
    ScaledHatCombination,
    /// A cubic on `[0, 3]`: `t^3/2`, `-t^3+3t^2-2t+1/2`, `t^3/2-3t^2+5t-3/2`.
    #[serde(rename = "piecewise-cubic")]
    PiecewiseCubic,
}

fn hat(t: f64) -> f64 {
    (1.0 - t.abs()).max(0.0)
}

fn hat_combination(t: f64) -> f64 {
    hat(4.0 * t - 1.0) + hat(4.0 * t - 3.0) + hat(4.0 * t - 5.0) - hat(4.0 * t - 7.0)
}

fn piecewise_cubic(t: f64) -> f64 {
    if (0.0..1.0).contains(&t) {
        t * t * t / 2.0
    } else if (1.0..2.0).contains(&t) {
        -t * t * t + 3.0 * t * t - 2.0 * t + 0.5
    } else if (2.0..3.0).contains(&t) {
        t * t * t / 2.0 - 3.0 * t * t + 5.0 * t - 1.5
    } else {
        0.0
    }
}

impl Fixture {
    pub fn name(&self) -> &'static str {
        match self {
            Fixture::HatCombination => "hat-combination",
            Fixture::ScaledHatCombination => "scaled-hat-combination",
            Fixture::PiecewiseCubic => "piecewise-cubic",
        }
    }

    pub fn from_name(name: &str) -> Option<Fixture> {
        match name {
            "hat-combination" => Some(Fixture::HatCombination),
            "scaled-hat-combination" => Some(Fixture::ScaledHatCombination),
            "piecewise-cubic" => Some(Fixture::PiecewiseCubic),
            _ => None,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Fixture::HatCombination => hat_combination(t),
            Fixture::ScaledHatCombination => hat_combination(2.0 * t),
            Fixture::PiecewiseCubic => piecewise_cubic(t),
        }
    }

    pub fn support(&self) -> AxisBox {
        let hi = match self {
            Fixture::HatCombination => 2.0,
            Fixture::ScaledHatCombination => 1.0,
            Fixture::PiecewiseCubic => 3.0,
        };
        AxisBox::new(vec![0.0], vec![hi])
    }
}
