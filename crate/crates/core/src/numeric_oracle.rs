//! Independent numerical checks.
//!
//! [`maximize_grid`] solves the grid problem without the closed form: it
//! climbs in log-coordinates using finite-difference gradients and keeps
//! every iterate on the budget surface by rescaling. The cost is homogeneous
//! of degree `n − 1` in the side lengths, so a single scalar projects any
//! positive point onto the constraint.
//!
//! [`scan_comparisons`] evaluates every pairwise comparison in a design
//! family over a range of pen counts and reports where orderings flip.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, PenError, Result};
use crate::par::Execution;
use crate::platonic_chain::{chain_volume, Solid};
use crate::polygon_chain::{default_candidates, unit_area, Shape};
use crate::rect_grid::GridSpec;
use crate::spiral_packing::{spiral_area, SpiralShape};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub max_iterations: usize,
    /// Stop once the relative change in side lengths falls below this.
    pub convergence_tol: f64,
    pub multi_start: usize,
    pub seed: u64,
    /// How the starts are scheduled; results do not depend on it.
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_iterations: 10_000,
            convergence_tol: 1e-10,
            multi_start: 8,
            seed: 0x5eed,
            execution: Execution::default(),
        }
    }
}

impl OracleConfig {
    pub fn with_seed(seed: u64) -> Self {
        OracleConfig { seed, ..Default::default() }
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.execution = exec;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 || self.multi_start == 0 {
            return Err(invalid("iteration and start counts must be positive"));
        }
        if self.convergence_tol.is_nan() || self.convergence_tol <= 0.0 {
            return Err(invalid("convergence tolerance must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartOutcome {
    pub hypervolume: f64,
    pub iterations: usize,
    pub converged: bool,
    pub last_step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSolution {
    pub side_lengths: Vec<f64>,
    pub hypervolume: f64,
    /// One entry per start, in start order.
    pub starts: Vec<StartOutcome>,
}

// Central difference step in log-coordinates, i.e. relative in x.
const FD_STEP: f64 = 1e-6;
// Below this the finite-difference gradient is at its noise floor.
const GRADIENT_FLOOR: f64 = 1e-9;
const ARMIJO: f64 = 1e-4;

struct LogProblem<'a> {
    spec: &'a GridSpec,
    log_b: Vec<f64>,
    n: f64,
}

impl<'a> LogProblem<'a> {
    fn new(spec: &'a GridSpec) -> Self {
        LogProblem {
            spec,
            log_b: spec.chamber_counts().iter().map(|&b| f64::from(b).ln()).collect(),
            n: spec.dims() as f64,
        }
    }

    /// Shift in log-coordinates that puts `u` on the budget surface.
    fn projection_shift(&self, u: &[f64]) -> f64 {
        let x: Vec<f64> = u.iter().map(|v| v.exp()).collect();
        (self.spec.budget() / self.spec.cost(&x)).ln() / (self.n - 1.0)
    }

    fn project(&self, u: &mut [f64]) {
        let shift = self.projection_shift(u);
        u.iter_mut().for_each(|v| *v += shift);
    }

    /// `ln V` after projecting `u` onto the budget surface.
    fn objective(&self, u: &[f64]) -> f64 {
        let shift = self.projection_shift(u);
        u.iter().zip(&self.log_b).map(|(v, lb)| v + lb).sum::<f64>() + self.n * shift
    }

    fn gradient(&self, u: &[f64]) -> Vec<f64> {
        let mut probe = u.to_vec();
        (0..u.len())
            .map(|i| {
                probe[i] = u[i] + FD_STEP;
                let up = self.objective(&probe);
                probe[i] = u[i] - FD_STEP;
                let down = self.objective(&probe);
                probe[i] = u[i];
                (up - down) / (2.0 * FD_STEP)
            })
            .collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn climb(problem: &LogProblem<'_>, mut u: Vec<f64>, cfg: &OracleConfig) -> (Vec<f64>, StartOutcome) {
    problem.project(&mut u);
    let mut f = problem.objective(&u);
    let mut g = problem.gradient(&u);
    let mut alpha = 1.0;
    let mut last_step = f64::INFINITY;

    for it in 1..=cfg.max_iterations {
        let gnorm2 = dot(&g, &g);
        if gnorm2.sqrt() < GRADIENT_FLOOR {
            return finish(problem, u, it - 1, true, last_step);
        }
        // Backtracking ascent along the gradient.
        let mut step = alpha;
        let mut accepted = None;
        for _ in 0..60 {
            let mut trial: Vec<f64> = u.iter().zip(&g).map(|(v, gi)| v + step * gi).collect();
            problem.project(&mut trial);
            let ft = problem.objective(&trial);
            if ft >= f + ARMIJO * step * gnorm2 {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        let Some((next, f_next)) = accepted else {
            // No representable ascent step: stationary to working precision.
            return finish(problem, u, it, true, 0.0);
        };

        let x_old: Vec<f64> = u.iter().map(|v| v.exp()).collect();
        let x_new: Vec<f64> = next.iter().map(|v| v.exp()).collect();
        let diff: f64 = x_old.iter().zip(&x_new).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        last_step = diff / dot(&x_new, &x_new).sqrt();

        let g_next = problem.gradient(&next);
        // Barzilai–Borwein step for the next iteration.
        let s: Vec<f64> = next.iter().zip(&u).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_next.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        alpha = if sy.abs() > 0.0 { (dot(&s, &s) / sy.abs()).clamp(1e-10, 1e10) } else { 1.0 };

        u = next;
        f = f_next;
        g = g_next;
        if last_step < cfg.convergence_tol {
            return finish(problem, u, it, true, last_step);
        }
    }
    finish(problem, u, cfg.max_iterations, false, last_step)
}

fn finish(
    problem: &LogProblem<'_>,
    u: Vec<f64>,
    iterations: usize,
    converged: bool,
    last_step: f64,
) -> (Vec<f64>, StartOutcome) {
    let x: Vec<f64> = u.iter().map(|v| v.exp()).collect();
    let hypervolume = problem.spec.hypervolume(&x);
    (x, StartOutcome { hypervolume, iterations, converged, last_step })
}

/// Random log-space start for start number `index`; independent of thread scheduling.
fn start_point(seed: u64, index: usize, dims: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    (0..dims).map(|_| rng.gen_range(-3.0..3.0)).collect()
}

/// Maximizes the grid hypervolume under the cost budget numerically.
pub fn maximize_grid(spec: &GridSpec, cfg: &OracleConfig) -> Result<OracleSolution> {
    cfg.validate()?;
    if let Some(index) = spec.cost_coeffs().iter().position(|&c| c == 0.0) {
        return Err(PenError::UnboundedProblem { index });
    }
    let problem = LogProblem::new(spec);
    let starts: Vec<usize> = (0..cfg.multi_start).collect();
    let runs = cfg.execution.map_slice(&starts, |&i| {
        let u0 = start_point(cfg.seed, i, spec.dims());
        climb(&problem, u0, cfg)
    });

    let best = runs
        .iter()
        .enumerate()
        .filter(|(_, (_, o))| o.converged)
        .max_by(|(ia, (_, a)), (ib, (_, b))| a.hypervolume.total_cmp(&b.hypervolume).then(ib.cmp(ia)))
        .map(|(i, _)| i);
    let Some(best) = best else {
        let worst = runs.iter().map(|(_, o)| o.last_step).fold(0.0, f64::max);
        return Err(PenError::DidNotConverge { iterations: cfg.max_iterations, last_step: worst });
    };
    let side_lengths = runs[best].0.clone();
    let hypervolume = runs[best].1.hypervolume;
    Ok(OracleSolution { side_lengths, hypervolume, starts: runs.into_iter().map(|(_, o)| o).collect() })
}

/// Cost of `x` relative to the budget minus one; zero on the constraint surface.
pub fn constraint_residual(spec: &GridSpec, x: &[f64]) -> f64 {
    spec.cost(x) / spec.budget() - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    PolygonChain,
    Spiral,
    Platonic,
}

impl Family {
    /// Design labels compared in this family, in a fixed order.
    pub fn members(self) -> Vec<String> {
        match self {
            Family::PolygonChain => default_candidates().iter().map(shape_label).collect(),
            Family::Spiral => SpiralShape::ALL.iter().map(|s| s.to_string()).collect(),
            Family::Platonic => Solid::PLATONIC.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Measure (area or volume at unit budget) of every member at `k`.
    fn measures(self, pens: u64) -> Vec<f64> {
        match self {
            Family::PolygonChain => default_candidates().iter().map(|&s| unit_area(pens, s)).collect(),
            Family::Spiral => SpiralShape::ALL
                .iter()
                .map(|&s| spiral_area(s, pens, 1.0).map(|a| a.area).unwrap_or(f64::NAN))
                .collect(),
            Family::Platonic => Solid::PLATONIC
                .iter()
                .map(|&s| chain_volume(s, pens, 1.0).map(|v| v.total_volume).unwrap_or(f64::NAN))
                .collect(),
        }
    }
}

fn shape_label(s: &Shape) -> String {
    match s {
        Shape::Polygon(n) => n.to_string(),
        Shape::Circle => "circle".into(),
    }
}

/// An ordering flip between two members of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingFlip {
    pub first: String,
    pub second: String,
    /// First `k` at which the order differs from `k − 1`.
    pub k: u64,
    /// Whether `first` is strictly larger from `k` on.
    pub first_larger_after: bool,
}

/// A maximal run of consecutive `k` with the same winner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinnerRun {
    pub winner: String,
    pub k_start: u64,
    pub k_end: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: Family,
    pub k_start: u64,
    pub k_end: u64,
    pub flips: Vec<OrderingFlip>,
    pub winners: Vec<WinnerRun>,
}

impl ScanReport {
    pub fn winner_at(&self, k: u64) -> Option<&str> {
        self.winners.iter().find(|r| (r.k_start..=r.k_end).contains(&k)).map(|r| r.winner.as_str())
    }
}

pub const MAX_SCAN_K: u64 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq)]
struct Snapshot {
    // Bit p set when member i > member j for the p-th pair (i < j).
    larger_mask: u64,
    winner: u8,
}

fn snapshot(measures: &[f64]) -> Snapshot {
    let mut mask = 0u64;
    let mut bit = 0;
    for i in 0..measures.len() {
        for j in i + 1..measures.len() {
            if measures[i] > measures[j] {
                mask |= 1 << bit;
            }
            bit += 1;
        }
    }
    // Ties resolve to the earlier member.
    let winner = measures.iter().enumerate().fold(0, |best, (i, &m)| if m > measures[best] { i } else { best });
    Snapshot { larger_mask: mask, winner: winner as u8 }
}

/// Exhaustively compares every pair of designs in `family` for each `k` in range.
pub fn scan_comparisons(family: Family, k_start: u64, k_end: u64, exec: Execution) -> Result<ScanReport> {
    if k_start == 0 || k_start > k_end || k_end > MAX_SCAN_K {
        return Err(invalid(format!("k range must lie within 1..={MAX_SCAN_K}, got {k_start}..={k_end}")));
    }
    let members = family.members();
    let snaps = exec.map_range(k_start..=k_end, |k| snapshot(&family.measures(k)));

    let mut flips = Vec::new();
    let mut winners: Vec<WinnerRun> = Vec::new();
    let mut prev: Option<Snapshot> = None;
    for (offset, snap) in snaps.iter().enumerate() {
        let k = k_start + offset as u64;
        if let Some(p) = prev {
            let changed = p.larger_mask ^ snap.larger_mask;
            if changed != 0 {
                let mut bit = 0;
                for i in 0..members.len() {
                    for j in i + 1..members.len() {
                        if changed & (1 << bit) != 0 {
                            flips.push(OrderingFlip {
                                first: members[i].clone(),
                                second: members[j].clone(),
                                k,
                                first_larger_after: snap.larger_mask & (1 << bit) != 0,
                            });
                        }
                        bit += 1;
                    }
                }
            }
        }
        let name = &members[snap.winner as usize];
        match winners.last_mut() {
            Some(run) if &run.winner == name => run.k_end = k,
            _ => winners.push(WinnerRun { winner: name.clone(), k_start: k, k_end: k }),
        }
        prev = Some(*snap);
    }
    Ok(ScanReport { family, k_start, k_end, flips, winners })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn tv_stand_oracle() {
        let spec = GridSpec::new(vec![1, 1, 2], vec![6.0, 2.0, 9.0], 81.0).unwrap();
        let sol = maximize_grid(&spec, &OracleConfig::default()).unwrap();
        assert!(rel(sol.hypervolume, 13.5) < 1e-6, "{}", sol.hypervolume);
    }

    #[test]
    fn symmetric_square_oracle() {
        let spec = GridSpec::new(vec![1, 1], vec![1.0, 1.0], 4.0).unwrap();
        let sol = maximize_grid(&spec, &OracleConfig::default()).unwrap();
        for x in &sol.side_lengths {
            assert!(rel(*x, 2.0) < 1e-6);
        }
    }

    #[test]
    fn unbounded_rejected() {
        let spec = GridSpec::new(vec![1, 1], vec![0.0, 1.0], 4.0).unwrap();
        assert_eq!(maximize_grid(&spec, &OracleConfig::default()), Err(PenError::UnboundedProblem { index: 0 }));
    }

    #[test]
    fn bad_config() {
        let spec = GridSpec::new(vec![1, 1], vec![1.0, 1.0], 4.0).unwrap();
        let cfg = OracleConfig { multi_start: 0, ..Default::default() };
        assert!(maximize_grid(&spec, &cfg).is_err());
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let spec = GridSpec::new(vec![2, 3, 1], vec![0.3, 7.0, 1.1], 50.0).unwrap();
        let cfg = OracleConfig { max_iterations: 1, convergence_tol: 1e-300, ..Default::default() };
        assert!(matches!(maximize_grid(&spec, &cfg), Err(PenError::DidNotConverge { .. })));
    }

    #[test]
    fn start_points_are_stable() {
        assert_eq!(start_point(7, 3, 4), start_point(7, 3, 4));
        assert_ne!(start_point(7, 3, 4), start_point(7, 4, 4));
    }

    #[test]
    fn scan_range_validation() {
        assert!(scan_comparisons(Family::Spiral, 0, 10, Execution::Sequential).is_err());
        assert!(scan_comparisons(Family::Spiral, 10, 5, Execution::Sequential).is_err());
        assert!(scan_comparisons(Family::Spiral, 1, MAX_SCAN_K + 1, Execution::Sequential).is_err());
    }

    #[test]
    fn platonic_scan_flips() {
        let rep = scan_comparisons(Family::Platonic, 1, 200, Execution::Sequential).unwrap();
        let got: Vec<(&str, &str, u64)> =
            rep.flips.iter().map(|f| (f.first.as_str(), f.second.as_str(), f.k)).collect();
        assert_eq!(got, vec![("dodecahedron", "icosahedron", 9), ("cube", "octahedron", 68)]);
    }
}
