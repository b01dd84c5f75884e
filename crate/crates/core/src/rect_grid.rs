//! Rectangular grids of pens in `n` dimensions under a fixed cost budget.
//!
//! A `b_1 × … × b_n` grid of identical chambers with side lengths `x_i` has
//! hypervolume `V = ∏ (x_i b_i)` and total wall cost
//! `Σ_i C_i ∏_{j≠i} (x_j b_j)`, where `C_i` is the aggregated cost of the walls
//! perpendicular to direction `i` after dividing out the chamber counts of the
//! other axes. At the optimum every direction consumes exactly `budget / n`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, PenError, Result};

/// Largest supported dimension. Products of `n` coefficients leave the
/// comfortable range of `f64` well before this matters, but there is no use
/// case beyond it either.
pub const MAX_DIMS: usize = 16;

/// An `n`-dimensional grid pen problem with normalized cost coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    chamber_counts: Vec<u32>,
    cost_coeffs: Vec<f64>,
    budget: f64,
}

impl GridSpec {
    /// Builds a spec from normalized coefficients `C_i`.
    ///
    /// Zero coefficients are accepted here; [`solve_grid`] rejects them and
    /// [`unbounded_witness`] requires one.
    pub fn new(chamber_counts: Vec<u32>, cost_coeffs: Vec<f64>, budget: f64) -> Result<Self> {
        let n = chamber_counts.len();
        if !(2..=MAX_DIMS).contains(&n) {
            return Err(invalid(format!("dimension must be in 2..={MAX_DIMS}, got {n}")));
        }
        if cost_coeffs.len() != n {
            return Err(invalid(format!("{} chamber counts but {} cost coefficients", n, cost_coeffs.len())));
        }
        if let Some(i) = chamber_counts.iter().position(|&b| b == 0) {
            return Err(invalid(format!("chamber count {i} must be at least 1")));
        }
        if let Some(i) = cost_coeffs.iter().position(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(invalid(format!(
                "cost coefficient {i} must be finite and non-negative, got {}",
                cost_coeffs[i]
            )));
        }
        if !(budget.is_finite() && budget > 0.0) {
            return Err(invalid(format!("budget must be positive, got {budget}")));
        }
        Ok(GridSpec { chamber_counts, cost_coeffs, budget })
    }

    /// Builds a spec from raw per-direction wall costs `c_i`, normalizing with
    /// `C_i = c_i / ∏_{j≠i} b_j`.
    pub fn from_wall_costs(chamber_counts: Vec<u32>, wall_costs: Vec<f64>, budget: f64) -> Result<Self> {
        if wall_costs.len() != chamber_counts.len() {
            return Err(invalid(format!(
                "{} chamber counts but {} wall costs",
                chamber_counts.len(),
                wall_costs.len()
            )));
        }
        let coeffs = wall_costs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let others: f64 =
                    chamber_counts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &b)| f64::from(b)).product();
                c / others
            })
            .collect();
        GridSpec::new(chamber_counts, coeffs, budget)
    }

    pub fn dims(&self) -> usize {
        self.chamber_counts.len()
    }

    pub fn chamber_counts(&self) -> &[u32] {
        &self.chamber_counts
    }

    pub fn cost_coeffs(&self) -> &[f64] {
        &self.cost_coeffs
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    /// Same grid with a different budget.
    pub fn with_budget(&self, budget: f64) -> Result<Self> {
        GridSpec::new(self.chamber_counts.clone(), self.cost_coeffs.clone(), budget)
    }

    /// `V = ∏ (x_i b_i)`.
    pub fn hypervolume(&self, side_lengths: &[f64]) -> f64 {
        side_lengths.iter().zip(&self.chamber_counts).map(|(x, &b)| x * f64::from(b)).product()
    }

    /// Cost of the walls perpendicular to each direction, `C_i ∏_{j≠i} (x_j b_j)`.
    pub fn direction_costs(&self, side_lengths: &[f64]) -> Vec<f64> {
        let extents: Vec<f64> = side_lengths.iter().zip(&self.chamber_counts).map(|(x, &b)| x * f64::from(b)).collect();
        (0..self.dims())
            .map(|i| {
                let others: f64 = extents.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, e)| e).product();
                self.cost_coeffs[i] * others
            })
            .collect()
    }

    /// Total wall cost of a configuration.
    pub fn cost(&self, side_lengths: &[f64]) -> f64 {
        self.direction_costs(side_lengths).iter().sum()
    }

    /// Index of the last zero coefficient, if any.
    pub fn free_direction(&self) -> Option<usize> {
        self.cost_coeffs.iter().rposition(|&c| c == 0.0)
    }
}

/// The optimal grid for a bounded spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectSolution {
    pub side_lengths: Vec<f64>,
    /// Lagrange parameter: `x_i b_i = multiplier · (n − 1) · C_i` for every `i`.
    pub multiplier: f64,
    pub hypervolume: f64,
    pub direction_costs: Vec<f64>,
}

/// Solves the grid problem in closed form.
///
/// Every extent `x_i b_i` is proportional to `C_i`; the common factor
/// `t = [C / (n ∏ C_j)]^{1/(n-1)}` is fixed by the budget.
pub fn solve_grid(spec: &GridSpec) -> Result<RectSolution> {
    if let Some(index) = spec.cost_coeffs.iter().position(|&c| c == 0.0) {
        return Err(PenError::UnboundedProblem { index });
    }
    let n = spec.dims();
    let exponent = 1.0 / (n as f64 - 1.0);

    let product: f64 = spec.cost_coeffs.iter().product();
    let scale = if product.is_normal() && (n as f64 * product).is_normal() {
        (spec.budget / (n as f64 * product)).powf(exponent)
    } else {
        let log_product: f64 = spec.cost_coeffs.iter().map(|c| c.ln()).sum();
        ((spec.budget.ln() - (n as f64).ln() - log_product) * exponent).exp()
    };
    if !(scale.is_finite() && scale > 0.0) {
        return Err(invalid("cost coefficients out of representable range"));
    }

    let side_lengths: Vec<f64> =
        spec.cost_coeffs.iter().zip(&spec.chamber_counts).map(|(c, &b)| c / f64::from(b) * scale).collect();
    Ok(RectSolution {
        multiplier: scale / (n as f64 - 1.0),
        hypervolume: spec.hypervolume(&side_lengths),
        direction_costs: spec.direction_costs(&side_lengths),
        side_lengths,
    })
}

/// A feasible configuration for a degenerate spec whose volume grows linearly
/// in the chosen base length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnboundedWitness {
    /// The direction whose walls are free; all other sides equal the base length.
    pub free_index: usize,
    pub side_lengths: Vec<f64>,
    pub hypervolume: f64,
    pub cost: f64,
}

/// Constructs a budget-exhausting configuration with volume proportional to
/// `base_length`, showing that a zero coefficient admits no finite optimum.
pub fn unbounded_witness(spec: &GridSpec, base_length: f64) -> Result<UnboundedWitness> {
    let free = spec.free_direction().ok_or(PenError::NotUnbounded)?;
    if !(base_length.is_finite() && base_length > 0.0) {
        return Err(invalid(format!("base length must be positive, got {base_length}")));
    }
    let n = spec.dims();
    // Σ_{i≠free} C_i ∏_{j≠i} b_j
    let weight: f64 = (0..n)
        .filter(|&i| i != free)
        .map(|i| {
            let others: f64 = (0..n).filter(|&j| j != i).map(|j| f64::from(spec.chamber_counts[j])).product();
            spec.cost_coeffs[i] * others
        })
        .sum();
    if weight <= 0.0 {
        return Err(invalid("every cost coefficient is zero; the budget cannot be spent"));
    }
    let free_length = spec.budget / (base_length.powi(n as i32 - 2) * weight);
    let side_lengths: Vec<f64> = (0..n).map(|j| if j == free { free_length } else { base_length }).collect();
    Ok(UnboundedWitness {
        free_index: free,
        hypervolume: spec.hypervolume(&side_lengths),
        cost: spec.cost(&side_lengths),
        side_lengths,
    })
}

/// Spec whose cost equation is the total hypersurface area: `C_i = b_i + 1`
/// full-length walls perpendicular to direction `i`.
pub fn surface_area_spec(chamber_counts: Vec<u32>, area_budget: f64) -> Result<GridSpec> {
    let coeffs = chamber_counts.iter().map(|&b| f64::from(b) + 1.0).collect();
    GridSpec::new(chamber_counts, coeffs, area_budget)
}
