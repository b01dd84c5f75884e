//! SVG drawings of chains and spiral packings. Display only.

use std::cmp::Reverse;
use std::collections::{HashMap, HashSet};
use std::f64::consts::PI;
use std::fmt::Write as _;

use penopt::spiral_packing::SpiralShape;

pub type Point = (f64, f64);

/// Cell polygons with vertices in counter-clockwise order.
#[derive(Debug, Clone)]
pub struct Drawing {
    pub cells: Vec<Vec<Point>>,
}

fn regular_polygon(n: u32, side: f64) -> Vec<Point> {
    let r = side / (2.0 * (PI / f64::from(n)).sin());
    // Edge 0 is vertical on the left.
    (0..n)
        .map(|i| {
            let a = PI - PI / f64::from(n) + 2.0 * PI * f64::from(i) / f64::from(n);
            (r * a.cos(), r * a.sin())
        })
        .collect()
}

fn reflect(p: Point, a: Point, b: Point) -> Point {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let t = ((p.0 - a.0) * dx + (p.1 - a.1) * dy) / (dx * dx + dy * dy);
    let foot = (a.0 + t * dx, a.1 + t * dy);
    (2.0 * foot.0 - p.0, 2.0 * foot.1 - p.1)
}

/// Chain of `pens` regular n-gons. Each new cell is the mirror image of the
/// previous one across an exit edge ⌊n/2⌋ steps round from the entry edge,
/// turning left and right alternately so the chain stays straight on average.
pub fn chain(n: u32, pens: u64, side: f64) -> Drawing {
    let n_us = n as usize;
    let mut cur = regular_polygon(n, side);
    let mut cells = vec![cur.clone()];
    let step = n_us / 2;
    for i in 1..pens {
        let exit = if i % 2 == 1 { step } else { n_us - step };
        let (a, b) = (cur[exit], cur[(exit + 1) % n_us]);
        let mut next: Vec<Point> = cur.iter().map(|&p| reflect(p, a, b)).collect();
        next.reverse();
        // Re-index so the shared edge is edge 0 again.
        let start = (n_us - 1 - ((exit + 1) % n_us) + n_us) % n_us;
        next.rotate_left(start);
        cur = next;
        cells.push(cur.clone());
    }
    Drawing { cells }
}

type Cell = (i32, i32);

fn neighbours(shape: SpiralShape, (x, y): Cell) -> Vec<Cell> {
    match shape {
        SpiralShape::Square => vec![(x + 1, y), (x, y + 1), (x - 1, y), (x, y - 1)],
        SpiralShape::Hexagon => vec![(x + 1, y), (x, y + 1), (x - 1, y + 1), (x - 1, y), (x, y - 1), (x + 1, y - 1)],
        SpiralShape::Triangle => {
            let vertical = if (x + y).rem_euclid(2) == 0 { (x, y - 1) } else { (x, y + 1) };
            vec![(x + 1, y), vertical, (x - 1, y)]
        }
    }
}

fn cell_polygon(shape: SpiralShape, (x, y): Cell, s: f64) -> Vec<Point> {
    let (x, y) = (f64::from(x), f64::from(y));
    match shape {
        SpiralShape::Square => {
            vec![(x * s, y * s), ((x + 1.0) * s, y * s), ((x + 1.0) * s, (y + 1.0) * s), (x * s, (y + 1.0) * s)]
        }
        SpiralShape::Hexagon => {
            let (cx, cy) = (s * 3f64.sqrt() * (x + y / 2.0), s * 1.5 * y);
            (0..6)
                .map(|i| {
                    let a = PI / 6.0 + PI / 3.0 * f64::from(i);
                    (cx + s * a.cos(), cy + s * a.sin())
                })
                .collect()
        }
        SpiralShape::Triangle => {
            let h = s * 3f64.sqrt() / 2.0;
            let cx = x * s / 2.0;
            if (x + y).rem_euclid(2.0) == 0.0 {
                vec![(cx - s / 2.0, y * h), (cx + s / 2.0, y * h), (cx, (y + 1.0) * h)]
            } else {
                vec![(cx + s / 2.0, (y + 1.0) * h), (cx - s / 2.0, (y + 1.0) * h), (cx, y * h)]
            }
        }
    }
}

fn centroid(poly: &[Point]) -> Point {
    let n = poly.len() as f64;
    let (sx, sy) = poly.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    (sx / n, sy / n)
}

/// Spiral packing grown one cell at a time: each new cell touches the
/// cluster along as many sides as possible, then keeps the best follow-up
/// slot open, then is nearest to the centre, then first by angle. Triangles
/// wind round a vertex, the others round a cell.
pub fn spiral(shape: SpiralShape, pens: u64, side: f64) -> Drawing {
    let order = spiral_order(shape, pens, side);
    Drawing { cells: order.iter().map(|c| cell_polygon(shape, *c, side)).collect() }
}

fn spiral_order(shape: SpiralShape, pens: u64, side: f64) -> Vec<Cell> {
    let first = cell_polygon(shape, (0, 0), side);
    let origin = if shape == SpiralShape::Triangle { first[1] } else { centroid(&first) };
    let mut taken: HashSet<Cell> = HashSet::from([(0, 0)]);
    let mut order = vec![(0, 0)];
    // Empty cells next to the cluster, with their number of taken neighbours.
    let mut touch: HashMap<Cell, usize> = neighbours(shape, (0, 0)).into_iter().map(|c| (c, 1)).collect();
    while (order.len() as u64) < pens {
        let score = |c: &Cell| {
            let around = neighbours(shape, *c);
            let next = touch
                .iter()
                .filter(|(n, _)| *n != c)
                .map(|(n, t)| t + usize::from(around.contains(n)))
                .max()
                .unwrap_or(0)
                .max(1);
            let (px, py) = centroid(&cell_polygon(shape, *c, side));
            let (dx, dy) = (px - origin.0, py - origin.1);
            // Quantise so lattice round-off cannot reorder equal keys.
            let dist_key = ((dx * dx + dy * dy).sqrt() / side * 1e6).round() as i64;
            let angle_key = (dy.atan2(dx).rem_euclid(2.0 * PI) * 1e6).round() as i64;
            (Reverse(touch[c]), Reverse(next), dist_key, angle_key)
        };
        let best = *touch.keys().min_by_key(|c| score(c)).expect("cluster always has empty neighbours");
        touch.remove(&best);
        taken.insert(best);
        order.push(best);
        for nb in neighbours(shape, best) {
            if !taken.contains(&nb) {
                *touch.entry(nb).or_insert(0) += 1;
            }
        }
    }
    order
}

impl Drawing {
    /// Number of distinct unit edges, i.e. the fence count.
    pub fn edge_count(&self) -> usize {
        let key = |p: Point| ((p.0 * 1e6).round() as i64, (p.1 * 1e6).round() as i64);
        let mut edges = HashSet::new();
        for cell in &self.cells {
            for i in 0..cell.len() {
                let (a, b) = (key(cell[i]), key(cell[(i + 1) % cell.len()]));
                edges.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
        edges.len()
    }

    pub fn to_svg(&self, title: &str) -> String {
        let margin = 10.0;
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in self.cells.iter().flatten() {
            x0 = x0.min(p.0);
            y0 = y0.min(p.1);
            x1 = x1.max(p.0);
            y1 = y1.max(p.1);
        }
        let (w, h) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
        // Flip y so the drawing reads with y up.
        let tx = |p: Point| (p.0 - x0 + margin, y1 - p.1 + margin);
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
        );
        let _ = writeln!(out, "  <title>{}</title>", escape(title));
        let font = self
            .cells
            .first()
            .map(|c| {
                let (cx, cy) = centroid(c);
                let r = c.iter().map(|p| ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt()).fold(f64::MAX, f64::min);
                (r * 0.8).clamp(4.0, 24.0)
            })
            .unwrap_or(12.0);
        for (i, cell) in self.cells.iter().enumerate() {
            let pts: Vec<String> = cell
                .iter()
                .map(|&p| {
                    let (x, y) = tx(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(
                out,
                r##"  <polygon points="{}" fill="#e8f0e0" stroke="#2f4f2f" stroke-width="1.5" stroke-linejoin="round"/>"##,
                pts.join(" ")
            );
            let (cx, cy) = tx(centroid(cell));
            let _ = writeln!(
                out,
                r#"  <text x="{cx:.3}" y="{cy:.3}" font-family="sans-serif" font-size="{font:.1}" text-anchor="middle" dominant-baseline="central">{}</text>"#,
                i + 1
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
