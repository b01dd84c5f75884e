//! Integer crossover thresholds for "rational function of k vs. constant"
//! comparisons.
//!
//! Every design comparison in this crate reduces to
//! `r(k) = (αk + β) / (γk + δ)` against a positive constant `c`. Since `r`
//! is monotone on `k ≥ 1`, the predicate can change at most once. The closed
//! form root seeds the search; direct evaluation at the neighbouring integers
//! decides.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Which side of the bound means "the first design wins".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WinningSide {
    Below,
    Above,
}

/// `(αk + β) / (γk + δ)` compared against `bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalVsConstant {
    pub numerator: (f64, f64),
    pub denominator: (f64, f64),
    pub bound: f64,
    pub wins_when: WinningSide,
    /// Free-form label tracing where `bound` came from, e.g. `"(4/3)^(7/6)"`.
    pub tag: String,
}

impl RationalVsConstant {
    pub fn new(
        numerator: (f64, f64),
        denominator: (f64, f64),
        bound: f64,
        wins_when: WinningSide,
        tag: impl Into<String>,
    ) -> Result<Self> {
        let cmp = RationalVsConstant { numerator, denominator, bound, wins_when, tag: tag.into() };
        cmp.validate()?;
        Ok(cmp)
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = self.numerator;
        let (g, d) = self.denominator;
        if ![a, b, g, d, self.bound].iter().all(|v| v.is_finite()) {
            return Err(invalid("coefficients and bound must be finite"));
        }
        if self.bound.is_nan() || self.bound <= 0.0 {
            return Err(invalid(format!("bound must be positive, got {}", self.bound)));
        }
        // γk + δ > 0 for every k ≥ 1.
        if g < 0.0 || g + d <= 0.0 {
            return Err(invalid("denominator must stay positive for all k >= 1"));
        }
        Ok(())
    }

    /// `r(k)`.
    pub fn ratio(&self, k: f64) -> f64 {
        let (a, b) = self.numerator;
        let (g, d) = self.denominator;
        (a * k + b) / (g * k + d)
    }

    /// Whether the first design wins at integer `k`.
    pub fn first_wins(&self, k: u64) -> bool {
        let r = self.ratio(k as f64);
        match self.wins_when {
            WinningSide::Below => r < self.bound,
            WinningSide::Above => r > self.bound,
        }
    }

    /// `αδ − βγ`; its sign is the direction of monotonicity.
    pub fn slope_sign(&self) -> f64 {
        let (a, b) = self.numerator;
        let (g, d) = self.denominator;
        a * d - b * g
    }

    /// Real `k*` solving `r(k) = c`, when the line crosses at all.
    pub fn real_crossing(&self) -> Option<f64> {
        let (a, b) = self.numerator;
        let (g, d) = self.denominator;
        let denom = a - self.bound * g;
        if denom == 0.0 || self.slope_sign() == 0.0 {
            return None;
        }
        Some((self.bound * d - b) / denom)
    }

    /// `lim_{k→∞} r(k)`.
    pub fn limit(&self) -> f64 {
        let (a, b) = self.numerator;
        let (g, d) = self.denominator;
        if g > 0.0 {
            a / g
        } else if a == 0.0 {
            b / d
        } else {
            a.signum() * f64::INFINITY
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    AlwaysTrue,
    AlwaysFalse,
    /// The predicate equals `before` for `k < k0` and `!before` for `k ≥ k0`.
    Flip {
        k0: u64,
        before: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitCheck {
    pub limit: f64,
    /// Predicate value as `k → ∞`; `None` when the limit sits on the bound.
    pub first_wins: Option<bool>,
    /// `|limit − c| < 1e-12`.
    pub marginal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverReport {
    pub tag: String,
    pub k_max: u64,
    pub verdict: Verdict,
    pub limit: LimitCheck,
    /// The predicate reaches a different value beyond `k_max`.
    pub flips_beyond_range: bool,
    /// Diagnostic only: real solution of `r(k) = c`.
    pub real_crossing: Option<f64>,
    /// Whether the closed-form seed landed on the certified integer.
    pub seed_exact: bool,
}

const MARGINAL_LIMIT: f64 = 1e-12;

/// Finds where (if anywhere) in `1..=k_max` the winner flips.
pub fn find_threshold(cmp: &RationalVsConstant, k_max: u64) -> Result<CrossoverReport> {
    cmp.validate()?;
    if k_max == 0 {
        return Err(invalid("k_max must be at least 1"));
    }

    let limit_value = cmp.limit();
    let marginal = (limit_value - cmp.bound).abs() < MARGINAL_LIMIT;
    let limit_wins = if marginal {
        None
    } else {
        Some(match cmp.wins_when {
            WinningSide::Below => limit_value < cmp.bound,
            WinningSide::Above => limit_value > cmp.bound,
        })
    };

    let at_start = cmp.first_wins(1);
    let at_end = cmp.first_wins(k_max);
    let real_crossing = cmp.real_crossing();

    let (verdict, seed_exact) = if at_start == at_end {
        let v = if at_start { Verdict::AlwaysTrue } else { Verdict::AlwaysFalse };
        (v, true)
    } else {
        let changes_at = |k: u64| k >= 2 && cmp.first_wins(k - 1) == at_start && cmp.first_wins(k) != at_start;
        let seed = real_crossing.filter(|x| x.is_finite()).map(|x| x.ceil().clamp(2.0, k_max as f64) as u64);
        let certified = seed.and_then(|s| {
            // Float error in the seed is at most a step or two either way.
            [s, s + 1, s.saturating_sub(1), s + 2, s.saturating_sub(2)]
                .into_iter()
                .find(|&k| k <= k_max && changes_at(k))
                .map(|k| (k, k == s))
        });
        let (k0, exact) = match certified {
            Some(hit) => hit,
            None => (bisect(cmp, at_start, k_max), false),
        };
        (Verdict::Flip { k0, before: at_start }, exact)
    };

    let flips_beyond_range = match limit_wins {
        Some(w) => w != at_end,
        None => false,
    };

    Ok(CrossoverReport {
        tag: cmp.tag.clone(),
        k_max,
        verdict,
        limit: LimitCheck { limit: limit_value, first_wins: limit_wins, marginal },
        flips_beyond_range,
        real_crossing,
        seed_exact,
    })
}

// Smallest k in 2..=k_max with first_wins(k) != start. Requires that one exists.
fn bisect(cmp: &RationalVsConstant, start: bool, k_max: u64) -> u64 {
    let (mut lo, mut hi) = (1u64, k_max);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if cmp.first_wins(mid) == start {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}
