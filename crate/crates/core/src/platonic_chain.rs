//! Chains of `k` congruent platonic solids sharing one face with each
//! neighbour, built from a fixed total surface area `T`.
//!
//! A single solid with surface area `A` holds `A^{3/2} / q_f`. Shared faces
//! are counted for both neighbours, so each solid gets
//! `A = T f / (k(f−1) + 1)` and the chain holds `k A^{3/2} / q_f`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::threshold::{RationalVsConstant, WinningSide};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solid {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
    Sphere,
}

impl Solid {
    pub const PLATONIC: [Solid; 5] =
        [Solid::Tetrahedron, Solid::Cube, Solid::Octahedron, Solid::Dodecahedron, Solid::Icosahedron];

    pub fn from_faces(faces: u32) -> Result<Self> {
        match faces {
            4 => Ok(Solid::Tetrahedron),
            6 => Ok(Solid::Cube),
            8 => Ok(Solid::Octahedron),
            12 => Ok(Solid::Dodecahedron),
            20 => Ok(Solid::Icosahedron),
            _ => Err(invalid(format!("no platonic solid has {faces} faces"))),
        }
    }

    /// Face count; `None` for the sphere.
    pub fn faces(self) -> Option<u32> {
        match self {
            Solid::Tetrahedron => Some(4),
            Solid::Cube => Some(6),
            Solid::Octahedron => Some(8),
            Solid::Dodecahedron => Some(12),
            Solid::Icosahedron => Some(20),
            Solid::Sphere => None,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Solid::Tetrahedron => "Tetra",
            Solid::Cube => "Cube",
            Solid::Octahedron => "Octa",
            Solid::Dodecahedron => "Dode",
            Solid::Icosahedron => "Ico",
            Solid::Sphere => "Sphere",
        }
    }

    /// `q = A^{3/2} / V` for a single solid, from the radical closed forms.
    pub fn q_const(self) -> f64 {
        let r3 = 3f64.sqrt();
        let r5 = 5f64.sqrt();
        match self {
            Solid::Tetrahedron => 6.0 * (6.0 * r3).sqrt(),
            Solid::Cube => 6.0 * 6f64.sqrt(),
            Solid::Octahedron => 6.0 * (3.0 * r3).sqrt(),
            Solid::Dodecahedron => 6.0 * (10.0 - 2.0 * r5).sqrt() * (225.0 + 90.0 * r5).powf(0.25) / (3.0 + r5),
            Solid::Icosahedron => 12.0 * (15.0 * r3).sqrt() / (3.0 + r5),
            Solid::Sphere => 6.0 * PI.sqrt(),
        }
    }
}

impl fmt::Display for Solid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solid::Tetrahedron => "tetrahedron",
            Solid::Cube => "cube",
            Solid::Octahedron => "octahedron",
            Solid::Dodecahedron => "dodecahedron",
            Solid::Icosahedron => "icosahedron",
            Solid::Sphere => "sphere",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolidChainSolution {
    /// Surface area of one solid, shared faces counted in full.
    pub per_solid_area: f64,
    pub total_volume: f64,
    /// Total surface recomputed from `per_solid_area`.
    pub surface_check: f64,
}

pub fn chain_volume(solid: Solid, pens: u64, surface: f64) -> Result<SolidChainSolution> {
    if pens == 0 {
        return Err(invalid("need at least one pen"));
    }
    if !(surface.is_finite() && surface > 0.0) {
        return Err(invalid(format!("surface area must be positive, got {surface}")));
    }
    let k = pens as f64;
    Ok(match solid.faces() {
        Some(f) => {
            let f = f64::from(f);
            let a = surface * f / (k * (f - 1.0) + 1.0);
            SolidChainSolution {
                per_solid_area: a,
                total_volume: k * a.powf(1.5) / solid.q_const(),
                surface_check: (k * f - (k - 1.0)) / f * a,
            }
        }
        None => SolidChainSolution {
            per_solid_area: surface / k,
            total_volume: surface.powf(1.5) / (6.0 * (PI * k).sqrt()),
            surface_check: surface,
        },
    })
}

/// Outcome of comparing two platonic chains at one `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseOrder {
    pub first: Solid,
    pub second: Solid,
    pub pens: u64,
    /// `(k(F−1)+1)/(k(f−1)+1)`.
    pub lhs: f64,
    /// `(F/f)(q_f/q_F)^{2/3}`.
    pub rhs: f64,
    /// `V_k(first) < V_k(second)`.
    pub first_is_smaller: bool,
    /// `|lhs − rhs| / rhs`.
    pub margin: f64,
}

impl PairwiseOrder {
    pub fn larger(&self) -> Solid {
        if self.first_is_smaller {
            self.second
        } else {
            self.first
        }
    }
}

fn platonic_faces(solid: Solid) -> Result<f64> {
    solid.faces().map(f64::from).ok_or_else(|| invalid("pairwise ordering is defined for platonic solids only"))
}

/// "`first` holds less than `second`" as a threshold comparison.
pub fn pairwise_comparison(first: Solid, second: Solid) -> Result<RationalVsConstant> {
    let f = platonic_faces(first)?;
    let big_f = platonic_faces(second)?;
    if first == second {
        return Err(invalid("comparison needs two different solids"));
    }
    let bound = big_f / f * (first.q_const() / second.q_const()).powf(2.0 / 3.0);
    RationalVsConstant::new(
        (big_f - 1.0, 1.0),
        (f - 1.0, 1.0),
        bound,
        WinningSide::Below,
        format!("({big_f}/{f})(q{f}/q{big_f})^(2/3)"),
    )
}

/// Sphere chain against a platonic chain: `V_k(f) < V_k(sphere)` iff
/// `k / (k(f−1)+1) < (q_f / 6√π)^{2/3} / f`.
pub fn sphere_comparison_form(solid: Solid) -> Result<RationalVsConstant> {
    let f = platonic_faces(solid)?;
    let bound = (solid.q_const() / Solid::Sphere.q_const()).powf(2.0 / 3.0) / f;
    RationalVsConstant::new(
        (1.0, 0.0),
        (f - 1.0, 1.0),
        bound,
        WinningSide::Below,
        format!("(q{f}/6sqrt(pi))^(2/3)/{f}"),
    )
}

pub fn pairwise_order(first: Solid, second: Solid, pens: u64) -> Result<PairwiseOrder> {
    if pens == 0 {
        return Err(invalid("need at least one pen"));
    }
    let cmp = pairwise_comparison(first, second)?;
    let lhs = cmp.ratio(pens as f64);
    let rhs = cmp.bound;
    Ok(PairwiseOrder { first, second, pens, lhs, rhs, first_is_smaller: lhs < rhs, margin: (lhs - rhs).abs() / rhs })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankedSolid {
    pub solid: Solid,
    pub volume: f64,
}

/// The five platonic solids ranked by chain volume at `surface`, largest first.
pub fn full_ordering_at(pens: u64, surface: f64) -> Result<Vec<RankedSolid>> {
    let mut ranked = Solid::PLATONIC
        .iter()
        .map(|&solid| Ok(RankedSolid { solid, volume: chain_volume(solid, pens, surface)?.total_volume }))
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|a, b| b.volume.total_cmp(&a.volume).then(a.solid.cmp(&b.solid)));
    Ok(ranked)
}

pub fn full_ordering(pens: u64) -> Result<Vec<RankedSolid>> {
    full_ordering_at(pens, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereComparison {
    pub solid: Solid,
    pub pens: u64,
    pub solid_volume: f64,
    pub sphere_volume: f64,
    pub sphere_wins: bool,
}

pub fn sphere_comparison(solid: Solid, pens: u64) -> Result<SphereComparison> {
    platonic_faces(solid)?;
    let solid_volume = chain_volume(solid, pens, 1.0)?.total_volume;
    let sphere_volume = chain_volume(Solid::Sphere, pens, 1.0)?.total_volume;
    Ok(SphereComparison { solid, pens, solid_volume, sphere_volume, sphere_wins: sphere_volume > solid_volume })
}
