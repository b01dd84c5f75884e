//! Spiral arrangements of triangles, squares and hexagons: the packings of
//! `k` congruent cells that share the most sides (Harary–Harborth).
//!
//! Side counts are exact integers. Areas follow from `k · u · s²` with
//! `s = P / sides` and `u` the area of a unit-side cell; no coordinates are
//! needed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::par::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpiralShape {
    Triangle,
    Square,
    Hexagon,
}

impl SpiralShape {
    pub const ALL: [SpiralShape; 3] = [SpiralShape::Triangle, SpiralShape::Square, SpiralShape::Hexagon];

    pub fn sides(self) -> u32 {
        match self {
            SpiralShape::Triangle => 3,
            SpiralShape::Square => 4,
            SpiralShape::Hexagon => 6,
        }
    }

    pub fn from_sides(n: u32) -> Option<Self> {
        match n {
            3 => Some(SpiralShape::Triangle),
            4 => Some(SpiralShape::Square),
            6 => Some(SpiralShape::Hexagon),
            _ => None,
        }
    }

    /// Area of one cell with unit side.
    pub fn unit_area(self) -> f64 {
        let r3 = 3f64.sqrt();
        match self {
            SpiralShape::Triangle => r3 / 4.0,
            SpiralShape::Square => 1.0,
            SpiralShape::Hexagon => 3.0 * r3 / 2.0,
        }
    }
}

impl fmt::Display for SpiralShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpiralShape::Triangle => "triangle",
            SpiralShape::Square => "square",
            SpiralShape::Hexagon => "hexagon",
        })
    }
}

/// Smallest `r` with `r² ≥ n`.
pub(crate) fn ceil_sqrt(n: u64) -> u64 {
    let r = n.isqrt();
    if r * r < n {
        r + 1
    } else {
        r
    }
}

/// Largest supported pen count; keeps `12k` and the squared roots inside `u64`.
pub const MAX_SPIRAL_PENS: u64 = 1 << 40;

/// Number of unit sides in the spiral arrangement of `pens` cells:
/// triangles `k + ⌈(k + √(6k))/2⌉`, squares `2k + ⌈2√k⌉`,
/// hexagons `3k + ⌈√(12k − 3)⌉`.
pub fn spiral_side_count(shape: SpiralShape, pens: u64) -> Result<u64> {
    if pens == 0 {
        return Err(invalid("need at least one pen"));
    }
    if pens > MAX_SPIRAL_PENS {
        return Err(invalid(format!("pen count above {MAX_SPIRAL_PENS}")));
    }
    let k = pens;
    Ok(match shape {
        // 2m − k is an integer, so 2m − k ≥ √(6k) iff 2m − k ≥ ⌈√(6k)⌉.
        SpiralShape::Triangle => k + (k + ceil_sqrt(6 * k)).div_ceil(2),
        SpiralShape::Square => 2 * k + ceil_sqrt(4 * k),
        SpiralShape::Hexagon => 3 * k + ceil_sqrt(12 * k - 3),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpiralArrangement {
    pub shape: SpiralShape,
    pub pens: u64,
    pub side_count: u64,
    pub side_length: f64,
    pub area: f64,
    /// Ceiling-free lower bound; equals `area` where no closed bound exists.
    pub area_lower: f64,
    /// Ceiling-free upper bound; equals `area` where no closed bound exists.
    pub area_upper: f64,
}

pub fn spiral_area(shape: SpiralShape, pens: u64, perimeter: f64) -> Result<SpiralArrangement> {
    if !(perimeter.is_finite() && perimeter > 0.0) {
        return Err(invalid(format!("perimeter must be positive, got {perimeter}")));
    }
    let side_count = spiral_side_count(shape, pens)?;
    let s = perimeter / side_count as f64;
    let k = pens as f64;
    let area = k * shape.unit_area() * s * s;
    let p2 = perimeter * perimeter;
    let r3 = 3f64.sqrt();
    let (area_lower, area_upper) = match shape {
        SpiralShape::Triangle => {
            let d = 3.0 * k + (6.0 * k).sqrt();
            (area, r3 * k * p2 / (d * d))
        }
        SpiralShape::Square => {
            let d = 2.0 * k + 2.0 * k.sqrt();
            (k * p2 / ((d + 1.0) * (d + 1.0)), k * p2 / (d * d))
        }
        SpiralShape::Hexagon => {
            let d = 3.0 * k + (12.0 * k - 3.0).sqrt() + 1.0;
            (6.0 * r3 * k * p2 / (4.0 * d * d), area)
        }
    };
    Ok(SpiralArrangement { shape, pens, side_count, side_length: s, area, area_lower, area_upper })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpiralComparison {
    pub pens: u64,
    /// Largest area first.
    pub ranking: Vec<SpiralArrangement>,
}

impl SpiralComparison {
    pub fn order(&self) -> Vec<SpiralShape> {
        self.ranking.iter().map(|a| a.shape).collect()
    }
}

pub fn spiral_compare(pens: u64, perimeter: f64) -> Result<SpiralComparison> {
    let mut ranking = SpiralShape::ALL.iter().map(|&s| spiral_area(s, pens, perimeter)).collect::<Result<Vec<_>>>()?;
    ranking.sort_by(|a, b| b.area.total_cmp(&a.area).then(a.shape.cmp(&b.shape)));
    Ok(SpiralComparison { pens, ranking })
}

/// Hexagon > square > triangle at a single `k`, compared by exact areas.
pub fn theorem_order_holds(pens: u64) -> bool {
    let a = |s| spiral_area(s, pens, 1.0).map(|a| a.area).unwrap_or(f64::NAN);
    let (t, q, h) = (a(SpiralShape::Triangle), a(SpiralShape::Square), a(SpiralShape::Hexagon));
    h > q && q > t
}

/// First `k` in `1..=k_max` where the hexagon > square > triangle order fails.
pub fn first_order_violation(k_max: u64, exec: Execution) -> Option<u64> {
    exec.first_failure(1..=k_max, theorem_order_holds)
}

/// Ratio pairs comparing the ceiling-free envelopes of two shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundPair {
    /// `(2k + 2√k + 1)/(3k + √(6k))` against `3^{-1/4}`.
    SquareOverTriangle,
    /// `(3k + √(12k − 3) + 1)/(k + √k)` against `108^{1/4}`.
    HexagonOverSquare,
}

impl BoundPair {
    pub fn ratio(self, pens: u64) -> f64 {
        let k = pens as f64;
        match self {
            BoundPair::SquareOverTriangle => (2.0 * k + 2.0 * k.sqrt() + 1.0) / (3.0 * k + (6.0 * k).sqrt()),
            BoundPair::HexagonOverSquare => (3.0 * k + (12.0 * k - 3.0).sqrt() + 1.0) / (k + k.sqrt()),
        }
    }

    pub fn constant(self) -> f64 {
        match self {
            BoundPair::SquareOverTriangle => 3f64.powf(-0.25),
            BoundPair::HexagonOverSquare => 108f64.powf(0.25),
        }
    }

    /// Smallest `k` from which the bound argument alone settles the
    /// comparison (the ratio is decreasing, so the first `k` below the
    /// constant).
    pub fn crossover(self, k_max: u64) -> Option<u64> {
        (1..=k_max).find(|&k| self.ratio(k) < self.constant())
    }
}

/// Largest `k` for which the spiral shares exactly `k − 1` sides, i.e. is
/// no better than a chain. Found by direct comparison of side counts.
pub fn chain_equivalent_up_to(shape: SpiralShape, search_limit: u64) -> u64 {
    let n = u64::from(shape.sides());
    (1..=search_limit).take_while(|&k| spiral_side_count(shape, k).ok() == Some(k * (n - 1) + 1)).last().unwrap_or(0)
}
