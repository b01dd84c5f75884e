//! Acceptance gate. Each criterion is checked straight against the library at
//! its stated tolerance; the last one drives the `penopt verify` binary.
//! Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use penopt::numeric_oracle::{maximize_grid, OracleConfig};
use penopt::platonic_chain::{chain_volume, full_ordering, pairwise_order, Solid};
use penopt::polygon_chain::{best_polygon, chain_area, default_candidates, sine_bound_check, ChainSpec, Shape};
use penopt::rect_grid::{solve_grid, unbounded_witness, GridSpec};
use penopt::spiral_packing::{spiral_area, SpiralShape};
use penopt::verify::{random_grid_spec, random_grid_specs, DEFAULT_SEED};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, fn() -> Outcome);

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_ostrich() -> Outcome {
    let spec = GridSpec::new(vec![3, 1], vec![4.0, 2.0], 1000.0).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let sol = solve_grid(&spec).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    let ok = rel(sol.side_lengths[0], 250.0 / 3.0) < 1e-10
        && rel(sol.side_lengths[1], 125.0) < 1e-10
        && sol.direction_costs.iter().all(|c| rel(*c, 500.0) < 1e-10)
        && took < Duration::from_millis(1);
    ensure(ok, format!("x={:?} costs={:?} {:?}", sol.side_lengths, sol.direction_costs, took))
}

fn c2_tv_stand() -> Outcome {
    let spec = GridSpec::new(vec![1, 1, 2], vec![6.0, 2.0, 9.0], 81.0).map_err(|e| e.to_string())?;
    let sol = solve_grid(&spec).map_err(|e| e.to_string())?;
    let ok = sol.side_lengths.iter().zip([3.0, 1.0, 2.25]).all(|(x, w)| rel(*x, w) < 1e-10)
        && sol.direction_costs.iter().all(|c| rel(*c, 27.0) < 1e-10);
    ensure(ok, format!("x={:?} costs={:?}", sol.side_lengths, sol.direction_costs))
}

fn c3_equal_split() -> Outcome {
    let t = Instant::now();
    let specs = random_grid_specs(DEFAULT_SEED, 200);
    let (mut split, mut oracle_err) = (0.0f64, 0.0f64);
    for (i, spec) in specs.iter().enumerate() {
        if !(2..=6).contains(&spec.dims()) {
            return Err(format!("spec {i} has n={}", spec.dims()));
        }
        let sol = solve_grid(spec).map_err(|e| e.to_string())?;
        let share = spec.budget() / spec.dims() as f64;
        split = sol.direction_costs.iter().map(|c| rel(*c, share)).fold(split, f64::max);
        let num = maximize_grid(spec, &OracleConfig::with_seed(DEFAULT_SEED)).map_err(|e| format!("spec {i}: {e}"))?;
        oracle_err = oracle_err.max(rel(num.hypervolume, sol.hypervolume));
    }
    let took = t.elapsed();
    ensure(
        split < 1e-10 && oracle_err < 1e-6 && took < Duration::from_secs(30),
        format!("200 specs: split err {split:.1e}, oracle err {oracle_err:.1e}, {took:.2?}"),
    )
}

fn c4_unbounded() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 4);
    let (mut cost_err, mut growth_err) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let base = random_grid_spec(&mut rng);
        let mut c = base.cost_coeffs().to_vec();
        let zero = rng.gen_range(0..c.len());
        c[zero] = 0.0;
        let spec = GridSpec::new(base.chamber_counts().to_vec(), c, base.budget()).map_err(|e| e.to_string())?;
        let x1 = rng.gen_range(0.1..10.0);
        let w = unbounded_witness(&spec, x1).map_err(|e| e.to_string())?;
        let w10 = unbounded_witness(&spec, 10.0 * x1).map_err(|e| e.to_string())?;
        if w.free_index != zero {
            return Err(format!("free axis {} but zero at {zero}", w.free_index));
        }
        cost_err = cost_err.max(rel(spec.cost(&w.side_lengths), spec.budget()));
        cost_err = cost_err.max(rel(spec.cost(&w10.side_lengths), spec.budget()));
        growth_err = growth_err.max(rel(w10.hypervolume, 10.0 * w.hypervolume));
    }
    ensure(cost_err < 1e-12 && growth_err < 1e-9, format!("cost err {cost_err:.1e}, growth err {growth_err:.1e}"))
}

fn c5_best_polygon() -> Outcome {
    let t = Instant::now();
    let cands = default_candidates();
    let winner = |k: u64| best_polygon(k, 1.0, &cands).map(|b| b.winner).map_err(|e| e.to_string());
    let mut bad = Vec::new();
    for (k, want) in [(1, Shape::Circle), (2, Shape::Polygon(7)), (3, Shape::Polygon(5)), (4, Shape::Polygon(5))] {
        if winner(k)? != want {
            bad.push(k);
        }
    }
    for k in 5..=10_000 {
        if winner(k)? != Shape::Polygon(4) {
            bad.push(k);
        }
    }
    let took = t.elapsed();
    ensure(
        bad.is_empty() && took < Duration::from_secs(5),
        format!("mismatches at {:?}, {took:.2?}", &bad[..bad.len().min(5)]),
    )
}

fn area(k: u64, shape: Shape) -> Result<f64, String> {
    chain_area(&ChainSpec::new(k, shape, 1.0).map_err(|e| e.to_string())?)
        .map(|s| s.total_area)
        .map_err(|e| e.to_string())
}

fn c6_circles() -> Outcome {
    for k in 1..=1000 {
        let circle_wins = area(k, Shape::Circle)? > area(k, Shape::Polygon(3))?;
        if circle_wins != (k <= 3) {
            return Err(format!("wrong winner at k={k}"));
        }
    }
    Ok("circle ahead for k<=3, behind for 4..=1000".into())
}

fn c7_domination() -> Outcome {
    for k in 2..=50 {
        let a: Vec<f64> = (8..=200).map(|n| area(k, Shape::Polygon(n))).collect::<Result<_, _>>()?;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[j] >= a[i] {
                    return Err(format!("k={k}: A({}) >= A({})", j + 8, i + 8));
                }
            }
        }
    }
    Ok("all 8<=n<m<=200, k in 2..=50".into())
}

fn c8_sine_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 8);
    let fails = (0..10_000).filter(|_| !sine_bound_check(rng.gen_range(7.5..=1e4))).count();
    ensure(
        fails == 0 && !sine_bound_check(1.0),
        format!("{fails} failures in 10^4 samples, x=1 -> {}", sine_bound_check(1.0)),
    )
}

fn c9_spiral_values() -> Outcome {
    let r3 = 3f64.sqrt();
    let cases = [
        (SpiralShape::Square, 3, 3.0 / 100.0),
        (SpiralShape::Square, 4, 1.0 / 36.0),
        (SpiralShape::Square, 5, 1.0 / 45.0),
        (SpiralShape::Square, 6, 6.0 / 289.0),
        (SpiralShape::Hexagon, 3, 9.0 * r3 / 450.0),
        (SpiralShape::Hexagon, 4, 6.0 * r3 / 361.0),
        (SpiralShape::Hexagon, 5, 15.0 * r3 / 1058.0),
        (SpiralShape::Hexagon, 6, r3 / 81.0),
    ];
    let mut worst = 0.0f64;
    for p in [1.0, 7.5] {
        for (shape, k, coeff) in cases {
            let a = spiral_area(shape, k, p).map_err(|e| e.to_string())?.area;
            worst = worst.max(rel(a, coeff * p * p));
        }
    }
    ensure(worst < 1e-12, format!("max rel err {worst:.1e}"))
}

fn c10_spiral_order() -> Outcome {
    let t = Instant::now();
    for k in 1..=1_000_000u64 {
        let a = |s| spiral_area(s, k, 1.0).map(|x| x.area).map_err(|e| e.to_string());
        let (tri, sq, hex) = (a(SpiralShape::Triangle)?, a(SpiralShape::Square)?, a(SpiralShape::Hexagon)?);
        if !(hex > sq && sq > tri) {
            return Err(format!("order fails at k={k}"));
        }
    }
    let took = t.elapsed();
    ensure(took < Duration::from_secs(10), format!("k in 1..=10^6, {took:.2?}"))
}

fn flip_points(a: Solid, b: Solid, k_max: u64) -> Result<Vec<u64>, String> {
    let mut prev = pairwise_order(a, b, 1).map_err(|e| e.to_string())?.first_is_smaller;
    let mut flips = Vec::new();
    for k in 2..=k_max {
        let now = pairwise_order(a, b, k).map_err(|e| e.to_string())?.first_is_smaller;
        if now != prev {
            flips.push(k);
        }
        prev = now;
    }
    Ok(flips)
}

fn c11_thresholds() -> Outcome {
    use Solid::*;
    let mut notes = Vec::new();
    for (a, b, want) in [
        (Cube, Octahedron, vec![68]),
        (Dodecahedron, Icosahedron, vec![9]),
        (Tetrahedron, Cube, vec![]),
        (Octahedron, Dodecahedron, vec![]),
        (Cube, Dodecahedron, vec![]),
        (Octahedron, Icosahedron, vec![]),
        (Cube, Icosahedron, vec![]),
    ] {
        let got = flip_points(a, b, 10_000)?;
        if got != want {
            return Err(format!("{a}/{b}: flips {got:?}, expected {want:?}"));
        }
        notes.push(format!("{}/{}:{:?}", a.short_name(), b.short_name(), got));
    }
    Ok(notes.join(" "))
}

fn c12_table() -> Outcome {
    use Solid::*;
    let low = [Icosahedron, Dodecahedron, Octahedron, Cube, Tetrahedron];
    let mid = [Dodecahedron, Icosahedron, Octahedron, Cube, Tetrahedron];
    let high = [Dodecahedron, Icosahedron, Cube, Octahedron, Tetrahedron];
    for (k, want) in [(1, low), (8, low), (9, mid), (67, mid), (68, high), (1000, high)] {
        let got: Vec<Solid> = full_ordering(k).map_err(|e| e.to_string())?.iter().map(|r| r.solid).collect();
        if got != want {
            return Err(format!("k={k}: {got:?}"));
        }
    }
    Ok("k in {1,8,9,67,68,1000}".into())
}

fn c13_spheres() -> Outcome {
    for k in 1..=10_000 {
        let sphere = chain_volume(Solid::Sphere, k, 1.0).map_err(|e| e.to_string())?.total_volume;
        for s in Solid::PLATONIC {
            if chain_volume(s, k, 1.0).map_err(|e| e.to_string())?.total_volume >= sphere {
                return Err(format!("{s} not beaten at k={k}"));
            }
        }
    }
    Ok("k in 1..=10^4".into())
}

fn c14_q_constants() -> Outcome {
    // Unit-edge volume and surface of each solid.
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let r5 = 5f64.sqrt();
    let unit = [
        (Solid::Tetrahedron, r2 / 12.0, r3),
        (Solid::Cube, 1.0, 6.0),
        (Solid::Octahedron, r2 / 3.0, 2.0 * r3),
        (Solid::Dodecahedron, (15.0 + 7.0 * r5) / 4.0, 3.0 * (25.0 + 10.0 * r5).sqrt()),
        (Solid::Icosahedron, 5.0 * (3.0 + r5) / 12.0, 5.0 * r3),
    ];
    let mut worst = 0.0f64;
    for (solid, v, a) in unit {
        worst = worst.max(rel(a.powf(1.5) / v, solid.q_const()));
    }
    ensure(worst < 1e-9, format!("max rel err {worst:.1e}"))
}

fn c15_two_tetrahedra() -> Outcome {
    let v = chain_volume(Solid::Tetrahedron, 2, 1.0).map_err(|e| e.to_string())?.total_volume;
    let want = 8.0 / (21.0 * (42.0 * 3f64.sqrt()).sqrt());
    ensure(rel(v, want) < 1e-12, format!("V={v} want {want}"))
}

fn c16_cli_verify() -> Outcome {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_penopt"))
        .args(["verify", "--format", "csv"])
        .output()
        .map_err(|e| e.to_string())?;
    let took = t.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    let rows = stdout.lines().skip(1).filter(|l| l.contains(",PASS,")).count();
    ensure(
        out.status.code() == Some(0) && rows == 15 && took < Duration::from_secs(120),
        format!("exit {:?}, {rows}/15 passing rows, {took:.2?}", out.status.code()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 16] = [
        (1, "ostrich example", c1_ostrich),
        (2, "tv-stand example", c2_tv_stand),
        (3, "equal split, 200 random grids + oracle", c3_equal_split),
        (4, "unbounded witness", c4_unbounded),
        (5, "best polygon regimes", c5_best_polygon),
        (6, "circle vs triangle chains", c6_circles),
        (7, "many-sided domination", c7_domination),
        (8, "sine lower bound", c8_sine_bound),
        (9, "exact spiral values", c9_spiral_values),
        (10, "hexagon > square > triangle spirals", c10_spiral_order),
        (11, "platonic pairwise thresholds", c11_thresholds),
        (12, "platonic ordering table", c12_table),
        (13, "spheres beat solids", c13_spheres),
        (14, "q constants from unit solids", c14_q_constants),
        (15, "two-tetrahedron volume", c15_two_tetrahedra),
        (16, "penopt verify exits 0", c16_cli_verify),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let t = Instant::now();
        let result = check();
        let took = t.elapsed();
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if result.is_err() {
            failed += 1;
        }
        println!("{status} criterion {id:>2}: {name} ({took:.2?}) - {detail}");
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
