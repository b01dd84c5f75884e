//! Chains of `k` congruent regular polygons, each sharing one side with each
//! neighbour, built from a fixed amount of perimeter.
//!
//! With side `s`, a chain of `k` regular `n`-gons uses `s (k(n−1) + 1)` of
//! fence and encloses `k n s² cot(π/n) / 4`. Circles cannot share fence, so
//! `k` circles enclose `P² / (4πk)`.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::threshold::{RationalVsConstant, WinningSide};

/// A pen shape: a regular polygon with a side count, or a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Polygon(u32),
    Circle,
}

impl Shape {
    pub fn sides(self) -> Option<u32> {
        match self {
            Shape::Polygon(n) => Some(n),
            Shape::Circle => None,
        }
    }

    pub fn name(self) -> String {
        match self {
            Shape::Polygon(n) => match n {
                3 => "triangle".into(),
                4 => "square".into(),
                5 => "pentagon".into(),
                6 => "hexagon".into(),
                7 => "heptagon".into(),
                8 => "octagon".into(),
                9 => "nonagon".into(),
                10 => "decagon".into(),
                _ => format!("{n}-gon"),
            },
            Shape::Circle => "circle".into(),
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            Shape::Polygon(n) if n < 3 => Err(invalid(format!("a polygon needs at least 3 sides, got {n}"))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Polygon(n) => write!(f, "{} (n={n})", self.name()),
            Shape::Circle => f.write_str("circle"),
        }
    }
}

/// Polygons by side count, circle last (the `n → ∞` limit).
impl Ord for Shape {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Shape::Polygon(a), Shape::Polygon(b)) => a.cmp(b),
            (Shape::Polygon(_), Shape::Circle) => Ordering::Less,
            (Shape::Circle, Shape::Polygon(_)) => Ordering::Greater,
            (Shape::Circle, Shape::Circle) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Shape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub pens: u64,
    pub shape: Shape,
    pub perimeter: f64,
}

impl ChainSpec {
    pub fn new(pens: u64, shape: Shape, perimeter: f64) -> Result<Self> {
        let spec = ChainSpec { pens, shape, perimeter };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.pens == 0 {
            return Err(invalid("need at least one pen"));
        }
        self.shape.validate()?;
        if !(self.perimeter.is_finite() && self.perimeter > 0.0) {
            return Err(invalid(format!("perimeter must be positive, got {}", self.perimeter)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainSolution {
    /// Side length, or the radius for circles.
    pub side_length: f64,
    pub total_area: f64,
    /// Fence used, recomputed from `side_length`.
    pub boundary_check: f64,
}

/// Number of side-lengths of fence in a chain: `k(n−1) + 1`.
pub fn chain_side_count(pens: u64, sides: u32) -> u64 {
    pens * (u64::from(sides) - 1) + 1
}

/// `n cot(π/n)`, the area of a regular `n`-gon of unit side times four.
pub(crate) fn polygon_area_factor(n: f64) -> f64 {
    n / (PI / n).tan()
}

pub fn chain_area(spec: &ChainSpec) -> Result<ChainSolution> {
    spec.validate()?;
    let k = spec.pens as f64;
    let p = spec.perimeter;
    Ok(match spec.shape {
        Shape::Polygon(n) => {
            let sides = chain_side_count(spec.pens, n) as f64;
            let s = p / sides;
            ChainSolution {
                side_length: s,
                total_area: p * p * k / 4.0 * polygon_area_factor(f64::from(n)) / (sides * sides),
                boundary_check: s * sides,
            }
        }
        Shape::Circle => {
            let r = p / (2.0 * PI * k);
            ChainSolution { side_length: r, total_area: p * p / (4.0 * PI * k), boundary_check: 2.0 * PI * r * k }
        }
    })
}

/// Area of `pens` pens of `shape` from unit perimeter. Panics on invalid input;
/// for internal scans over validated candidates.
pub(crate) fn unit_area(pens: u64, shape: Shape) -> f64 {
    chain_area(&ChainSpec { pens, shape, perimeter: 1.0 }).expect("validated shape").total_area
}

/// `A_k(x)` for real `x ≥ 3`, the continuous extension of the chain area.
pub fn continuous_area(pens: u64, x: f64, perimeter: f64) -> f64 {
    let k = pens as f64;
    let d = k * (x - 1.0) + 1.0;
    perimeter * perimeter * k / 4.0 * polygon_area_factor(x) / (d * d)
}

/// Numerator of `A_k'(x)`:
/// `½ sin(2π/x) [1 − k(x+1)] + (π/x) [k(x−1) + 1]`.
///
/// The rest of the derivative is positive for `x ≥ 3`, so the sign of this
/// value is the sign of the slope of the chain area in `x`.
pub fn derivative_sign(pens: u64, x: f64) -> Result<f64> {
    if pens == 0 {
        return Err(invalid("need at least one pen"));
    }
    if !(x >= 3.0 && x.is_finite()) {
        return Err(invalid(format!("x must be finite and at least 3, got {x}")));
    }
    let k = pens as f64;
    Ok(0.5 * (2.0 * PI / x).sin() * (1.0 - k * (x + 1.0)) + PI / x * (k * (x - 1.0) + 1.0))
}

/// The full derivative `A_k'(x)`.
pub fn area_derivative(pens: u64, x: f64, perimeter: f64) -> Result<f64> {
    let numer = derivative_sign(pens, x)?;
    let k = pens as f64;
    let sin = (PI / x).sin();
    let d = k * (x - 1.0) + 1.0;
    Ok(perimeter * perimeter * k / 4.0 * numer / (sin * sin * d * d * d))
}

/// `sin(2π/x) > 2π/(x+1)`. Holds for every `x ≥ 7.5`; false for `x ≤ 0`.
pub fn sine_bound_check(x: f64) -> bool {
    x > 0.0 && (2.0 * PI / x).sin() > 2.0 * PI / (x + 1.0)
}

/// Shapes left to compare once everything past the octagon is dominated.
pub fn default_candidates() -> Vec<Shape> {
    (3..=8).map(Shape::Polygon).chain(std::iter::once(Shape::Circle)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedShape {
    pub shape: Shape,
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestPolygon {
    pub winner: Shape,
    /// Largest area first; equal areas ordered by side count.
    pub ranking: Vec<RankedShape>,
}

pub fn best_polygon(pens: u64, perimeter: f64, candidates: &[Shape]) -> Result<BestPolygon> {
    if candidates.is_empty() {
        return Err(invalid("candidate set is empty"));
    }
    let mut ranking = candidates
        .iter()
        .map(|&shape| {
            let sol = chain_area(&ChainSpec::new(pens, shape, perimeter)?)?;
            Ok(RankedShape { shape, area: sol.total_area })
        })
        .collect::<Result<Vec<_>>>()?;
    ranking.sort_by(|a, b| b.area.total_cmp(&a.area).then(a.shape.cmp(&b.shape)));
    ranking.dedup_by_key(|r| r.shape);
    Ok(BestPolygon { winner: ranking[0].shape, ranking })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleVsTriangle {
    pub circle_area: f64,
    pub triangle_area: f64,
    pub winner: Shape,
}

/// `k` circles against a chain of `k` triangles at equal perimeter.
pub fn circle_vs_triangle(pens: u64) -> Result<CircleVsTriangle> {
    let circle_area = chain_area(&ChainSpec::new(pens, Shape::Circle, 1.0)?)?.total_area;
    let triangle_area = chain_area(&ChainSpec::new(pens, Shape::Polygon(3), 1.0)?)?.total_area;
    let winner = if circle_area > triangle_area { Shape::Circle } else { Shape::Polygon(3) };
    Ok(CircleVsTriangle { circle_area, triangle_area, winner })
}

/// Comparison "`first` encloses less than `second`" in threshold form.
///
/// For polygons `n`, `m`: `A_k(n) < A_k(m)` iff
/// `(k(m−1)+1)/(k(n−1)+1) < sqrt(m cot(π/m) / (n cot(π/n)))`.
/// Against a circle the ratio is `(k(n−1)+1)/k` vs `sqrt(π n cot(π/n))`.
pub fn pairwise_comparison(first: Shape, second: Shape) -> Result<RationalVsConstant> {
    first.validate()?;
    second.validate()?;
    if first == second {
        return Err(invalid("comparison needs two different shapes"));
    }
    match (first, second) {
        (Shape::Polygon(n), Shape::Polygon(m)) => {
            let (nf, mf) = (f64::from(n), f64::from(m));
            let bound = (polygon_area_factor(mf) / polygon_area_factor(nf)).sqrt();
            RationalVsConstant::new(
                (mf - 1.0, 1.0),
                (nf - 1.0, 1.0),
                bound,
                WinningSide::Below,
                format!("sqrt({m}cot(pi/{m}) / {n}cot(pi/{n}))"),
            )
        }
        // A_k(n) < A_k(∞)  iff  (k(n−1)+1)/k > sqrt(π n cot(π/n))
        (Shape::Polygon(n), Shape::Circle) => {
            let nf = f64::from(n);
            RationalVsConstant::new(
                (nf - 1.0, 1.0),
                (1.0, 0.0),
                (PI * polygon_area_factor(nf)).sqrt(),
                WinningSide::Above,
                format!("sqrt(pi {n}cot(pi/{n}))"),
            )
        }
        // A_k(∞) < A_k(m)  iff  (k(m−1)+1)/k < sqrt(π m cot(π/m))
        (Shape::Circle, Shape::Polygon(m)) => {
            let mf = f64::from(m);
            RationalVsConstant::new(
                (mf - 1.0, 1.0),
                (1.0, 0.0),
                (PI * polygon_area_factor(mf)).sqrt(),
                WinningSide::Below,
                format!("sqrt(pi {m}cot(pi/{m}))"),
            )
        }
        (Shape::Circle, Shape::Circle) => unreachable!(),
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::threshold::{find_threshold, Verdict};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn unit_square() {
        let sol = chain_area(&ChainSpec::new(1, Shape::Polygon(4), 4.0).unwrap()).unwrap();
        assert!(rel(sol.side_length, 1.0) < 1e-15);
        assert!(rel(sol.total_area, 1.0) < 1e-14);
    }

    #[test]
    fn unit_circle() {
        let sol = chain_area(&ChainSpec::new(1, Shape::Circle, 2.0 * PI).unwrap()).unwrap();
        assert!(rel(sol.side_length, 1.0) < 1e-15);
        assert!(rel(sol.total_area, PI) < 1e-15);
    }

    #[test]
    fn two_heptagons_against_high_precision() {
        // mpmath, 40 digits: (2/4)·7·cot(π/7)/169
        let reference = 0.043_004_880_994_101_644_882_085_124_350_3_f64;
        let sol = chain_area(&ChainSpec::new(2, Shape::Polygon(7), 1.0).unwrap()).unwrap();
        assert_eq!(sol.side_length, 1.0 / 13.0);
        let ulp = reference * f64::EPSILON;
        assert!((sol.total_area - reference).abs() <= 10.0 * ulp, "{}", sol.total_area);
    }

    #[test]
    fn invalid_chain_specs() {
        assert!(ChainSpec::new(0, Shape::Polygon(4), 1.0).is_err());
        assert!(ChainSpec::new(1, Shape::Polygon(2), 1.0).is_err());
        assert!(ChainSpec::new(1, Shape::Polygon(4), 0.0).is_err());
        assert!(ChainSpec::new(1, Shape::Circle, f64::NAN).is_err());
    }

    #[test]
    fn derivative_sign_examples() {
        assert!(derivative_sign(2, 8.0).unwrap() < 0.0);
        assert!(derivative_sign(1, 100.0).unwrap() > 0.0);
        let n = derivative_sign(2, 1000.0).unwrap();
        assert!(n < 0.0);
        // π(2−k)/x is an upper bound for x ≥ 7.5.
        assert!(n < PI * (2.0 - 2.0) / 1000.0);
        assert!(derivative_sign(2, 2.5).is_err());
        assert!(derivative_sign(0, 5.0).is_err());
    }

    #[test]
    fn single_pen_area_increasing_at_100() {
        let h = 1e-3;
        let fd = (continuous_area(1, 100.0 + h, 1.0) - continuous_area(1, 100.0 - h, 1.0)) / (2.0 * h);
        assert!(fd > 0.0);
        let exact = area_derivative(1, 100.0, 1.0).unwrap();
        assert!(rel(exact, fd) < 1e-5);
    }

    #[test]
    fn sine_bound_examples() {
        assert!(sine_bound_check(7.5));
        assert!(sine_bound_check(100.0));
        assert!(!sine_bound_check(1.0));
        assert!(!sine_bound_check(0.0));
        assert!(!sine_bound_check(-3.0));
    }

    #[test]
    fn best_polygon_regimes() {
        let cands = default_candidates();
        assert_eq!(best_polygon(1, 1.0, &cands).unwrap().winner, Shape::Circle);
        assert_eq!(best_polygon(2, 1.0, &cands).unwrap().winner, Shape::Polygon(7));
        assert_eq!(best_polygon(3, 1.0, &cands).unwrap().winner, Shape::Polygon(5));
        assert_eq!(best_polygon(4, 1.0, &cands).unwrap().winner, Shape::Polygon(5));
        for k in [5, 6, 10, 100, 1000] {
            assert_eq!(best_polygon(k, 1.0, &cands).unwrap().winner, Shape::Polygon(4));
        }
    }

    #[test]
    fn best_polygon_ranking_is_complete_and_sorted() {
        let best = best_polygon(2, 3.0, &default_candidates()).unwrap();
        assert_eq!(best.ranking.len(), 7);
        assert!(best.ranking.windows(2).all(|w| w[0].area >= w[1].area));
        assert!(best_polygon(2, 1.0, &[]).is_err());
        assert!(best_polygon(2, 1.0, &[Shape::Polygon(2)]).is_err());
    }

    #[test]
    fn ties_go_to_fewer_sides() {
        let best = best_polygon(3, 1.0, &[Shape::Polygon(6), Shape::Polygon(6)]).unwrap();
        assert_eq!(best.ranking.len(), 1);
    }

    #[test]
    fn circles_against_triangles() {
        for k in 1..=3 {
            assert_eq!(circle_vs_triangle(k).unwrap().winner, Shape::Circle);
        }
        for k in 4..=50 {
            assert_eq!(circle_vs_triangle(k).unwrap().winner, Shape::Polygon(3));
        }
        // Same boundary from the rearranged inequality.
        let c = (1.0 / (PI * 3f64.sqrt())).sqrt();
        for k in 1..=50u64 {
            let kf = k as f64;
            let circle_wins = c >= kf / (2.0 * kf + 1.0);
            assert_eq!(circle_wins, circle_vs_triangle(k).unwrap().winner == Shape::Circle);
        }
    }

    #[test]
    fn pairwise_thresholds() {
        // A_k(5) < A_k(4) from k = 5 on.
        let cmp = pairwise_comparison(Shape::Polygon(4), Shape::Polygon(5)).unwrap();
        let rep = find_threshold(&cmp, 10_000).unwrap();
        assert_eq!(rep.verdict, Verdict::Flip { k0: 5, before: true });
        // Circles lose to squares from k = 2.
        let cmp = pairwise_comparison(Shape::Circle, Shape::Polygon(4)).unwrap();
        let rep = find_threshold(&cmp, 10_000).unwrap();
        assert_eq!(rep.verdict, Verdict::Flip { k0: 2, before: false });
    }

    #[test]
    fn shape_order_and_display() {
        assert!(Shape::Polygon(100) < Shape::Circle);
        assert_eq!(Shape::Polygon(7).to_string(), "heptagon (n=7)");
        assert_eq!(Shape::Polygon(12).name(), "12-gon");
    }
}
