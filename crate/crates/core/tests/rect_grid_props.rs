use penopt::numeric_oracle::{constraint_residual, maximize_grid, OracleConfig};
use penopt::rect_grid::{solve_grid, unbounded_witness, GridSpec};
use penopt::Execution;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn grid_spec() -> impl Strategy<Value = GridSpec> {
    (2usize..=6).prop_flat_map(|n| {
        (prop::collection::vec(1u32..=5, n), prop::collection::vec(0.1f64..10.0, n), 1.0f64..100.0)
            .prop_map(|(b, c, budget)| GridSpec::new(b, c, budget).unwrap())
    })
}

fn degenerate_spec() -> impl Strategy<Value = GridSpec> {
    (grid_spec(), any::<prop::sample::Index>()).prop_map(|(spec, idx)| {
        let mut c = spec.cost_coeffs().to_vec();
        let i = idx.index(c.len());
        c[i] = 0.0;
        GridSpec::new(spec.chamber_counts().to_vec(), c, spec.budget()).unwrap()
    })
}

proptest! {
    #[test]
    fn equal_split(spec in grid_spec()) {
        let sol = solve_grid(&spec).unwrap();
        let share = spec.budget() / spec.dims() as f64;
        for c in &sol.direction_costs {
            prop_assert!(rel(*c, share) < 1e-10);
        }
        prop_assert!(rel(sol.direction_costs.iter().sum(), spec.budget()) < 1e-12);
        prop_assert!(rel(sol.hypervolume, spec.hypervolume(&sol.side_lengths)) < 1e-12);
    }

    #[test]
    fn multiplier_links_extents_to_coefficients(spec in grid_spec()) {
        let sol = solve_grid(&spec).unwrap();
        let n = spec.dims() as f64;
        for i in 0..spec.dims() {
            let extent = sol.side_lengths[i] * f64::from(spec.chamber_counts()[i]);
            prop_assert!(rel(extent, sol.multiplier * (n - 1.0) * spec.cost_coeffs()[i]) < 1e-12);
        }
    }

    // ∇V = λ ∇C by central differences, step 1e-6 x_i.
    #[test]
    fn stationarity(spec in grid_spec()) {
        let sol = solve_grid(&spec).unwrap();
        let x = &sol.side_lengths;
        for i in 0..x.len() {
            let h = 1e-6 * x[i];
            let mut up = x.clone();
            let mut down = x.clone();
            up[i] += h;
            down[i] -= h;
            let dv = (spec.hypervolume(&up) - spec.hypervolume(&down)) / (2.0 * h);
            let dc = (spec.cost(&up) - spec.cost(&down)) / (2.0 * h);
            prop_assert!(rel(dv, sol.multiplier * dc) < 1e-5, "i={} dv={} λdc={}", i, dv, sol.multiplier * dc);
        }
    }

    #[test]
    fn homogeneity(spec in grid_spec(), t in 0.01f64..100.0) {
        let base = solve_grid(&spec).unwrap();
        let scaled = solve_grid(&spec.with_budget(spec.budget() * t).unwrap()).unwrap();
        let n = spec.dims() as f64;
        for (a, b) in base.side_lengths.iter().zip(&scaled.side_lengths) {
            prop_assert!(rel(*b, a * t.powf(1.0 / (n - 1.0))) < 1e-12);
        }
        prop_assert!(rel(scaled.hypervolume, base.hypervolume * t.powf(n / (n - 1.0))) < 1e-12);
    }

    #[test]
    fn witness_grows_linearly(spec in degenerate_spec(), x1 in 0.01f64..100.0) {
        let w = unbounded_witness(&spec, x1).unwrap();
        let w10 = unbounded_witness(&spec, 10.0 * x1).unwrap();
        prop_assert!(rel(spec.cost(&w.side_lengths), spec.budget()) < 1e-12);
        prop_assert!(rel(spec.cost(&w10.side_lengths), spec.budget()) < 1e-12);
        prop_assert!(rel(w10.hypervolume, 10.0 * w.hypervolume) < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_agrees_with_closed_form(spec in grid_spec(), seed in any::<u64>()) {
        let closed = solve_grid(&spec).unwrap();
        let oracle = maximize_grid(&spec, &OracleConfig::with_seed(seed)).unwrap();
        prop_assert!(rel(oracle.hypervolume, closed.hypervolume) < 1e-6);
        // Every converged start finds the same optimum, on the budget surface.
        for s in oracle.starts.iter().filter(|s| s.converged) {
            prop_assert!(rel(s.hypervolume, closed.hypervolume) < 1e-6);
        }
        prop_assert!(constraint_residual(&spec, &oracle.side_lengths).abs() < 1e-12);
    }
}

#[test]
fn oracle_is_deterministic_across_schedules() {
    let spec = GridSpec::new(vec![2, 3, 1, 4], vec![0.7, 3.1, 9.2, 1.5], 42.0).unwrap();
    let seq = maximize_grid(&spec, &OracleConfig::with_seed(11).with_execution(Execution::Sequential)).unwrap();
    let par = maximize_grid(&spec, &OracleConfig::with_seed(11).with_execution(Execution::Parallel)).unwrap();
    let again = maximize_grid(&spec, &OracleConfig::with_seed(11)).unwrap();
    assert_eq!(seq, par);
    assert_eq!(seq, again);
    let bits =
        |s: &penopt::numeric_oracle::OracleSolution| s.side_lengths.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&seq), bits(&par));
}

#[test]
fn oracle_tv_stand_and_square() {
    let tv = GridSpec::new(vec![1, 1, 2], vec![6.0, 2.0, 9.0], 81.0).unwrap();
    let sol = maximize_grid(&tv, &OracleConfig::default()).unwrap();
    assert!(rel(sol.hypervolume, 13.5) < 1e-6);
    for (x, want) in sol.side_lengths.iter().zip([3.0, 1.0, 2.25]) {
        assert!(rel(*x, want) < 1e-4);
    }
    let sq = GridSpec::new(vec![1, 1], vec![1.0, 1.0], 4.0).unwrap();
    let sol = maximize_grid(&sq, &OracleConfig::default()).unwrap();
    assert!(sol.side_lengths.iter().all(|x| rel(*x, 2.0) < 1e-6));
}

#[test]
fn oracle_fifty_seeded_specs() {
    let specs = penopt::verify::random_grid_specs(50, 50);
    for spec in &specs {
        let closed = solve_grid(spec).unwrap();
        let oracle = maximize_grid(spec, &OracleConfig::with_seed(50)).unwrap();
        assert!(rel(oracle.hypervolume, closed.hypervolume) < 1e-6, "{spec:?}");
    }
}
