//! `penopt` command-line front end.

mod output;
mod specs;
mod svg;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use penopt::numeric_oracle::{scan_comparisons, Family};
use penopt::platonic_chain::{chain_volume, full_ordering_at, sphere_comparison, Solid};
use penopt::polygon_chain::{best_polygon, chain_area, default_candidates, ChainSpec, Shape};
use penopt::rect_grid::{solve_grid, surface_area_spec, unbounded_witness, GridSpec};
use penopt::spiral_packing::{spiral_area, spiral_compare, SpiralShape};
use penopt::verify;
use penopt::Execution;

use output::{emit, Cell, Format, Report, Table, DEFAULT_DIGITS};

#[derive(Parser, Debug)]
#[command(name = "penopt", version, about = "Optimal pen designs: grids, polygon chains, spirals and solids")]
struct Cli {
    /// Output format (defaults to svg for `draw`, table otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Significant digits for table and csv numbers.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS as u8, value_parser = clap::value_parser!(u8).range(1..=17))]
    digits: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rectangular grids of chambers under a cost budget.
    #[command(subcommand)]
    Rect(RectCmd),
    /// Chains of regular polygons under a perimeter budget.
    #[command(subcommand)]
    Polygon(PolygonCmd),
    /// Spiral packings of triangles, squares or hexagons.
    #[command(subcommand)]
    Spiral(SpiralCmd),
    /// Chains of platonic solids under a surface budget.
    #[command(subcommand)]
    Platonic(PlatonicCmd),
    /// Scan pen counts for ordering flips within a family.
    Crossover(CrossoverArgs),
    /// Re-run every published example and theorem check.
    Verify(VerifyArgs),
    /// Draw a chain or spiral arrangement as SVG.
    Draw(DrawArgs),
}

#[derive(Subcommand, Debug)]
enum RectCmd {
    /// Closed-form optimum.
    Solve(RectArgs),
    /// Feasible designs with unbounded volume when a coefficient is zero.
    Witness {
        #[command(flatten)]
        grid: RectArgs,
        /// Side length used for every non-free axis.
        #[arg(long, default_value_t = 1.0)]
        base: f64,
    },
}

#[derive(Args, Debug)]
struct RectArgs {
    /// JSON problem file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Chamber counts per axis, comma separated.
    #[arg(long, value_delimiter = ',')]
    chambers: Option<Vec<u32>>,
    /// Cost coefficient per axis, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    coeffs: Option<Vec<f64>>,
    /// Use wall area as the cost (coefficients b_i + 1).
    #[arg(long, conflicts_with = "coeffs")]
    surface: bool,
    #[arg(long, allow_negative_numbers = true)]
    budget: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum PolygonCmd {
    /// Area of one chain.
    Area(ShapeArgs),
    /// Best shape for a pen count.
    Best {
        #[command(flatten)]
        common: FamilyArgs,
        /// Largest polygon considered (the circle is always included).
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(3..))]
        max_sides: u32,
    },
    /// Areas of the standard candidates over a range of pen counts.
    Table(RangeArgs),
}

#[derive(Subcommand, Debug)]
enum SpiralCmd {
    Area(ShapeArgs),
    /// Rank the three spiral packings.
    Compare(FamilyArgs),
    Table(RangeArgs),
}

#[derive(Subcommand, Debug)]
enum PlatonicCmd {
    /// Volume of one chain.
    Volume(SolidArgs),
    /// Rank the five solids, largest volume first.
    Order(FamilyArgs),
    Table(RangeArgs),
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    pens: Option<u64>,
    /// Perimeter (or surface area for solids).
    #[arg(long, allow_negative_numbers = true)]
    budget: Option<f64>,
}

#[derive(Args, Debug)]
struct ShapeArgs {
    #[command(flatten)]
    common: FamilyArgs,
    /// Number of sides, or `circle`.
    #[arg(long)]
    sides: Option<String>,
}

#[derive(Args, Debug)]
struct SolidArgs {
    #[command(flatten)]
    common: FamilyArgs,
    /// Number of faces (4, 6, 8, 12, 20), or `sphere`.
    #[arg(long)]
    faces: Option<String>,
}

#[derive(Args, Debug)]
struct RangeArgs {
    #[arg(long, default_value_t = 1)]
    from: u64,
    #[arg(long, default_value_t = 10)]
    to: u64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    budget: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Polygon,
    Spiral,
    Platonic,
}

#[derive(Args, Debug)]
struct CrossoverArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, default_value_t = 1)]
    from: u64,
    #[arg(long, default_value_t = 1000)]
    to: u64,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Only these checks, comma separated.
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<u8>>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Layout {
    Chain,
    Spiral,
}

#[derive(Args, Debug)]
struct DrawArgs {
    #[arg(long, value_enum, default_value = "chain")]
    layout: Layout,
    #[arg(long)]
    pens: u64,
    #[arg(long)]
    sides: u32,
    /// Edge length in SVG user units.
    #[arg(long, default_value_t = 40.0)]
    side_length: f64,
}

const MAX_DRAW_PENS: u64 = 10_000;

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}

/// Exit status: 0 ok, 1 bad input, 2 failed verification.
fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let echo: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match dispatch(&cli, echo) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

/// Returns `Ok(false)` when verification ran but something failed.
fn dispatch(cli: &Cli, echo: Vec<String>) -> Result<bool> {
    let mut passed = true;
    let (mut report, svg_doc) = match &cli.command {
        Command::Rect(RectCmd::Solve(args)) => (rect_solve(args)?, None),
        Command::Rect(RectCmd::Witness { grid, base }) => (rect_witness(grid, *base)?, None),
        Command::Polygon(PolygonCmd::Area(args)) => (polygon_area(args)?, None),
        Command::Polygon(PolygonCmd::Best { common, max_sides }) => (polygon_best(common, *max_sides)?, None),
        Command::Polygon(PolygonCmd::Table(r)) => (polygon_table(r)?, None),
        Command::Spiral(SpiralCmd::Area(args)) => (spiral_area_cmd(args)?, None),
        Command::Spiral(SpiralCmd::Compare(args)) => (spiral_compare_cmd(args)?, None),
        Command::Spiral(SpiralCmd::Table(r)) => (spiral_table(r)?, None),
        Command::Platonic(PlatonicCmd::Volume(args)) => (platonic_volume(args)?, None),
        Command::Platonic(PlatonicCmd::Order(args)) => (platonic_order(args)?, None),
        Command::Platonic(PlatonicCmd::Table(r)) => (platonic_table(r)?, None),
        Command::Crossover(args) => (crossover(args)?, None),
        Command::Verify(args) => {
            let (report, ok) = verify_cmd(args)?;
            passed = ok;
            (report, None)
        }
        Command::Draw(args) => {
            let (report, doc) = draw(args)?;
            (report, Some(doc))
        }
    };
    report.command = echo;
    let format = cli.format.unwrap_or(if svg_doc.is_some() { Format::Svg } else { Format::Table });
    let text = match (format, svg_doc) {
        (Format::Svg, Some(doc)) => doc,
        (f, _) => report.render(f, usize::from(cli.digits))?,
    };
    emit(&text, cli.out.as_deref())?;
    Ok(passed)
}

fn grid_spec(args: &RectArgs) -> Result<GridSpec> {
    let file = args.spec.as_deref().map(specs::read).transpose()?.map(|t| specs::parse_rect(&t)).transpose()?;
    let chambers = args
        .chambers
        .clone()
        .or_else(|| file.as_ref().map(|f| f.chamber_counts.clone()))
        .ok_or_else(|| anyhow!("--chambers or --spec is required"))?;
    let budget =
        args.budget.or(file.as_ref().map(|f| f.budget)).ok_or_else(|| anyhow!("--budget or --spec is required"))?;
    if args.surface {
        return Ok(surface_area_spec(chambers, budget)?);
    }
    let coeffs = args
        .coeffs
        .clone()
        .or_else(|| file.as_ref().map(|f| f.cost_coeffs.clone()))
        .ok_or_else(|| anyhow!("--coeffs, --surface or --spec is required"))?;
    Ok(GridSpec::new(chambers, coeffs, budget)?)
}

fn axis_table(spec: &GridSpec, x: &[f64]) -> Table {
    let mut t = Table::new(["axis", "chambers", "coeff", "side_length", "direction_cost"]);
    let costs = spec.direction_costs(x);
    for i in 0..spec.dims() {
        t.push(vec![
            (i + 1).into(),
            spec.chamber_counts()[i].into(),
            spec.cost_coeffs()[i].into(),
            x[i].into(),
            costs[i].into(),
        ]);
    }
    t
}

fn rect_solve(args: &RectArgs) -> Result<Report> {
    let spec = grid_spec(args)?;
    let sol = solve_grid(&spec)?;
    Ok(Report::new(format!("optimal {}-dimensional grid", spec.dims()), axis_table(&spec, &sol.side_lengths))
        .with("budget", spec.budget())
        .with("hypervolume", sol.hypervolume)
        .with("multiplier", sol.multiplier)
        .with("cost_per_direction", spec.budget() / spec.dims() as f64))
}

fn rect_witness(args: &RectArgs, base: f64) -> Result<Report> {
    let spec = grid_spec(args)?;
    let w = unbounded_witness(&spec, base)?;
    let grown = unbounded_witness(&spec, 10.0 * base)?;
    Ok(Report::new(format!("unbounded: axis {} is free of cost", w.free_index + 1), axis_table(&spec, &w.side_lengths))
        .with("free_axis", w.free_index + 1)
        .with("base", base)
        .with("hypervolume", w.hypervolume)
        .with("cost", w.cost)
        .with("hypervolume_at_10x_base", grown.hypervolume))
}

/// Merges flags over an optional JSON file.
struct Resolved<S> {
    pens: u64,
    budget: f64,
    shape: Option<S>,
}

fn resolve_polygon(args: &FamilyArgs, sides: Option<&str>) -> Result<Resolved<Shape>> {
    let file = args.spec.as_deref().map(specs::read).transpose()?.map(|t| specs::parse_polygon(&t)).transpose()?;
    let pens = args.pens.or(file.as_ref().map(|f| f.pens)).ok_or_else(|| anyhow!("--pens or --spec is required"))?;
    let budget = args.budget.or(file.as_ref().and_then(|f| f.perimeter)).unwrap_or(1.0);
    let shape = match sides {
        Some(s) => Some(parse_shape(s)?),
        None => match file.and_then(|f| f.sides) {
            Some(specs::SidesField::Count(n)) => Some(Shape::Polygon(n)),
            Some(specs::SidesField::Named(s)) => Some(parse_shape(&s)?),
            None => None,
        },
    };
    Ok(Resolved { pens, budget, shape })
}

fn parse_shape(s: &str) -> Result<Shape> {
    if s.eq_ignore_ascii_case("circle") {
        return Ok(Shape::Circle);
    }
    let n: u32 = s.parse().with_context(|| format!("invalid side count `{s}`"))?;
    if n < 3 {
        bail!("a polygon needs at least 3 sides, got {n}");
    }
    Ok(Shape::Polygon(n))
}

fn polygon_area(args: &ShapeArgs) -> Result<Report> {
    let r = resolve_polygon(&args.common, args.sides.as_deref())?;
    let shape = r.shape.ok_or_else(|| anyhow!("--sides is required"))?;
    let sol = chain_area(&ChainSpec::new(r.pens, shape, r.budget)?)?;
    let size = if shape == Shape::Circle { "radius" } else { "side_length" };
    Ok(Report::new(format!("chain of {} x {shape}", r.pens), Table::new(Vec::<String>::new()))
        .with("pens", r.pens)
        .with("perimeter", r.budget)
        .with(size, sol.side_length)
        .with("total_area", sol.total_area)
        .with("area_per_pen", sol.total_area / r.pens as f64)
        .with("boundary_check", sol.boundary_check))
}

fn polygon_best(args: &FamilyArgs, max_sides: u32) -> Result<Report> {
    let r = resolve_polygon(args, None)?;
    let candidates: Vec<Shape> = (3..=max_sides).map(Shape::Polygon).chain([Shape::Circle]).collect();
    let best = best_polygon(r.pens, r.budget, &candidates)?;
    let mut t = Table::new(["rank", "shape", "total_area"]);
    for (i, ranked) in best.ranking.iter().enumerate() {
        t.push(vec![(i + 1).into(), ranked.shape.to_string().into(), ranked.area.into()]);
    }
    Ok(Report::new(format!("best for {} pens: {}", r.pens, best.winner), t)
        .with("winner", best.winner.to_string())
        .with("perimeter", r.budget))
}

fn check_range(r: &RangeArgs) -> Result<()> {
    if r.from == 0 || r.from > r.to {
        bail!("need 1 <= --from <= --to, got {}..{}", r.from, r.to);
    }
    if r.to - r.from >= 1_000_000 {
        bail!("range too long for a table; use `crossover` for long scans");
    }
    Ok(())
}

fn polygon_table(r: &RangeArgs) -> Result<Report> {
    check_range(r)?;
    let cands = default_candidates();
    let mut cols: Vec<String> = vec!["pens".into()];
    cols.extend(cands.iter().map(|s| s.name()));
    cols.push("best".into());
    let mut t = Table::new(cols);
    for k in r.from..=r.to {
        let best = best_polygon(k, r.budget, &cands)?;
        let mut row: Vec<Cell> = vec![k.into()];
        for s in &cands {
            row.push(chain_area(&ChainSpec::new(k, *s, r.budget)?)?.total_area.into());
        }
        row.push(best.winner.name().into());
        t.push(row);
    }
    Ok(Report::new(format!("polygon chains, perimeter {}", output::format_sig(r.budget, 12)), t))
}

fn resolve_spiral(args: &FamilyArgs, sides: Option<&str>) -> Result<Resolved<SpiralShape>> {
    let file = args.spec.as_deref().map(specs::read).transpose()?.map(|t| specs::parse_spiral(&t)).transpose()?;
    let pens = args.pens.or(file.as_ref().map(|f| f.pens)).ok_or_else(|| anyhow!("--pens or --spec is required"))?;
    let budget = args.budget.or(file.as_ref().and_then(|f| f.perimeter)).unwrap_or(1.0);
    let n = match sides {
        Some(s) => Some(s.parse::<u32>().with_context(|| format!("invalid side count `{s}`"))?),
        None => file.and_then(|f| f.sides),
    };
    let shape = n
        .map(|n| SpiralShape::from_sides(n).ok_or_else(|| anyhow!("spirals need 3, 4 or 6 sides, got {n}")))
        .transpose()?;
    Ok(Resolved { pens, budget, shape })
}

fn spiral_area_cmd(args: &ShapeArgs) -> Result<Report> {
    let r = resolve_spiral(&args.common, args.sides.as_deref())?;
    let shape = r.shape.ok_or_else(|| anyhow!("--sides is required"))?;
    let a = spiral_area(shape, r.pens, r.budget)?;
    Ok(Report::new(format!("{shape} spiral of {} pens", r.pens), Table::new(Vec::<String>::new()))
        .with("pens", r.pens)
        .with("perimeter", r.budget)
        .with("side_count", a.side_count)
        .with("side_length", a.side_length)
        .with("total_area", a.area)
        .with("area_lower_bound", a.area_lower)
        .with("area_upper_bound", a.area_upper))
}

fn spiral_compare_cmd(args: &FamilyArgs) -> Result<Report> {
    let r = resolve_spiral(args, None)?;
    let cmp = spiral_compare(r.pens, r.budget)?;
    let mut t = Table::new(["rank", "shape", "side_count", "total_area"]);
    for (i, a) in cmp.ranking.iter().enumerate() {
        t.push(vec![(i + 1).into(), a.shape.to_string().into(), a.side_count.into(), a.area.into()]);
    }
    let order: Vec<String> = cmp.order().iter().map(ToString::to_string).collect();
    Ok(Report::new(format!("spirals for {} pens: {}", r.pens, order.join(" > ")), t).with("perimeter", r.budget))
}

fn spiral_table(r: &RangeArgs) -> Result<Report> {
    check_range(r)?;
    let mut cols = vec!["pens".to_string()];
    for s in SpiralShape::ALL {
        cols.push(format!("{s}_sides"));
        cols.push(format!("{s}_area"));
    }
    cols.push("order".into());
    let mut t = Table::new(cols);
    for k in r.from..=r.to {
        let mut row: Vec<Cell> = vec![k.into()];
        for s in SpiralShape::ALL {
            let a = spiral_area(s, k, r.budget)?;
            row.push(a.side_count.into());
            row.push(a.area.into());
        }
        let order: Vec<String> = spiral_compare(k, r.budget)?.order().iter().map(ToString::to_string).collect();
        row.push(order.join(">").into());
        t.push(row);
    }
    Ok(Report::new(format!("spiral packings, perimeter {}", output::format_sig(r.budget, 12)), t))
}

fn parse_solid(s: &str) -> Result<Solid> {
    if s.eq_ignore_ascii_case("sphere") {
        return Ok(Solid::Sphere);
    }
    let f: u32 = s.parse().with_context(|| format!("invalid face count `{s}`"))?;
    Ok(Solid::from_faces(f)?)
}

fn resolve_platonic(args: &FamilyArgs, faces: Option<&str>) -> Result<Resolved<Solid>> {
    let file = args.spec.as_deref().map(specs::read).transpose()?.map(|t| specs::parse_platonic(&t)).transpose()?;
    let pens = args.pens.or(file.as_ref().map(|f| f.pens)).ok_or_else(|| anyhow!("--pens or --spec is required"))?;
    let budget = args.budget.or(file.as_ref().and_then(|f| f.surface)).unwrap_or(1.0);
    let shape = match faces {
        Some(s) => Some(parse_solid(s)?),
        None => match file.and_then(|f| f.faces) {
            Some(specs::FacesField::Count(n)) => Some(Solid::from_faces(n)?),
            Some(specs::FacesField::Named(s)) => Some(parse_solid(&s)?),
            None => None,
        },
    };
    Ok(Resolved { pens, budget, shape })
}

fn platonic_volume(args: &SolidArgs) -> Result<Report> {
    let r = resolve_platonic(&args.common, args.faces.as_deref())?;
    let solid = r.shape.ok_or_else(|| anyhow!("--faces is required"))?;
    let sol = chain_volume(solid, r.pens, r.budget)?;
    let mut report = Report::new(format!("chain of {} x {solid}", r.pens), Table::new(Vec::<String>::new()))
        .with("pens", r.pens)
        .with("surface", r.budget)
        .with("area_per_solid", sol.per_solid_area)
        .with("total_volume", sol.total_volume)
        .with("surface_check", sol.surface_check);
    if solid != Solid::Sphere {
        let sphere = chain_volume(Solid::Sphere, r.pens, r.budget)?.total_volume;
        report = report
            .with("sphere_volume", sphere)
            .with("sphere_is_larger", sphere_comparison(solid, r.pens)?.sphere_wins);
    }
    Ok(report)
}

const RANK_COLUMNS: [&str; 5] = ["first", "second", "third", "fourth", "fifth"];

type OrderingRow = (Vec<Cell>, Vec<(Solid, f64)>);

fn ordering_row(k: u64, budget: f64) -> Result<OrderingRow> {
    let ranked = full_ordering_at(k, budget)?;
    let mut row: Vec<Cell> = vec![k.into()];
    row.extend(ranked.iter().map(|r| Cell::from(r.solid.short_name())));
    Ok((row, ranked.iter().map(|r| (r.solid, r.volume)).collect()))
}

fn platonic_order(args: &FamilyArgs) -> Result<Report> {
    let r = resolve_platonic(args, None)?;
    let mut t = Table::new(std::iter::once("pens").chain(RANK_COLUMNS));
    let (row, volumes) = ordering_row(r.pens, r.budget)?;
    t.push(row);
    let names: Vec<&str> = volumes.iter().map(|(s, _)| s.short_name()).collect();
    let mut report = Report::new(format!("largest volume first: {}", names.join(" > ")), t).with("surface", r.budget);
    for (s, v) in volumes {
        report = report.with(&format!("volume_{}", s.short_name().to_lowercase()), v);
    }
    Ok(report)
}

fn platonic_table(r: &RangeArgs) -> Result<Report> {
    check_range(r)?;
    let mut t = Table::new(std::iter::once("pens").chain(RANK_COLUMNS));
    for k in r.from..=r.to {
        t.push(ordering_row(k, r.budget)?.0);
    }
    Ok(Report::new("platonic chains, largest volume first", t))
}

fn crossover(args: &CrossoverArgs) -> Result<Report> {
    let family = match args.family {
        FamilyArg::Polygon => Family::PolygonChain,
        FamilyArg::Spiral => Family::Spiral,
        FamilyArg::Platonic => Family::Platonic,
    };
    let exec = if args.sequential { Execution::Sequential } else { Execution::default() };
    let scan = scan_comparisons(family, args.from, args.to, exec)?;
    let mut t = Table::new(["first", "second", "pens", "first_larger_from_here"]);
    for f in &scan.flips {
        t.push(vec![f.first.clone().into(), f.second.clone().into(), f.k.into(), f.first_larger_after.into()]);
    }
    let runs: Vec<String> =
        scan.winners.iter().map(|w| format!("{} for {}..{}", w.winner, w.k_start, w.k_end)).collect();
    Ok(Report::new(format!("{} ordering flips in {}..{}", scan.flips.len(), scan.k_start, scan.k_end), t)
        .with("winners", runs.join("; ")))
}

fn verify_cmd(args: &VerifyArgs) -> Result<(Report, bool)> {
    let outcomes = match &args.only {
        None => verify::run_all(args.seed),
        Some(ids) => ids
            .iter()
            .map(|id| verify::run_criterion(*id, args.seed).ok_or_else(|| anyhow!("no check numbered {id}")))
            .collect::<Result<_>>()?,
    };
    let mut t = Table::new(["id", "check", "status", "seconds", "detail"]);
    for o in &outcomes {
        t.push(vec![
            u32::from(o.id).into(),
            o.title.into(),
            (if o.passed { "PASS" } else { "FAIL" }).into(),
            o.elapsed.as_secs_f64().into(),
            o.detail.clone().into(),
        ]);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let mut report = Report::new(format!("{} checks, {failed} failed", outcomes.len()), t);
    report.seed = Some(args.seed);
    Ok((report, failed == 0))
}

fn draw(args: &DrawArgs) -> Result<(Report, String)> {
    if args.pens == 0 || args.pens > MAX_DRAW_PENS {
        bail!("--pens must be between 1 and {MAX_DRAW_PENS}");
    }
    if !(args.side_length.is_finite() && args.side_length > 0.0) {
        bail!("--side-length must be positive");
    }
    let (drawing, title) = match args.layout {
        Layout::Chain => {
            if args.sides < 3 {
                bail!("a polygon needs at least 3 sides, got {}", args.sides);
            }
            (
                svg::chain(args.sides, args.pens, args.side_length),
                format!("chain of {} x {}", args.pens, Shape::Polygon(args.sides)),
            )
        }
        Layout::Spiral => {
            let shape = SpiralShape::from_sides(args.sides)
                .ok_or_else(|| anyhow!("spirals need 3, 4 or 6 sides, got {}", args.sides))?;
            (svg::spiral(shape, args.pens, args.side_length), format!("{shape} spiral of {} pens", args.pens))
        }
    };
    let mut t = Table::new(["cell", "centroid_x", "centroid_y"]);
    for (i, c) in drawing.cells.iter().enumerate() {
        let n = c.len() as f64;
        t.push(vec![
            (i + 1).into(),
            (c.iter().map(|p| p.0).sum::<f64>() / n).into(),
            (c.iter().map(|p| p.1).sum::<f64>() / n).into(),
        ]);
    }
    let report = Report::new(title.clone(), t).with("edges", drawing.edge_count());
    Ok((report, drawing.to_svg(&title)))
}
