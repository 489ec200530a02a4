//! `check` subcommands. Each prints a summary and returns whether the property held.

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use twostage::engine::{run_frontier, run_internal, run_to_fixpoint};
use twostage::sampler::{sample_product, InitSpec, SeedSpec};
use twostage::structure::al::al_witness;
use twostage::structure::blocking::blocking_zeros;
use twostage::structure::boxes::{q_box_fillable_with, BoxGeometry, TileAdjacency};
use twostage::structure::frames::{find_frames_with, frame_within, FrameIndex, FrameMetric};
use twostage::structure::shell::{l1_circle, shell_report, Point};
use twostage::{components, make_rule, BoundaryMode, Config, Rect, RegionMask, RuleName};

use crate::args::{parse_rect, parse_values, Values};
use crate::io::read_config;

#[derive(Subcommand)]
pub enum CheckCmd {
    /// Medium-size filled rectangles: for every j up to the longest final 2-rectangle, a
    /// rectangle with long side in [j/2, j] fills internally
    Al(AlArgs),
    /// 0-elimination on frame-free rectangles with at most two 2s per 5x5 square
    Elim(ElimArgs),
    /// Deleting the initial 0s never adds eventual 2s
    Restrict(RestrictArgs),
    /// Blocking 0s stay 0 under the given rule
    Blocking(BlockingArgs),
    /// List the frames of a configuration
    Frames(FramesArgs),
    /// Shell conditions of a vertex set
    Shell(ShellArgs),
    /// Fillability conditions of a q-box
    Fillable(FillableArgs),
}

pub fn check(cmd: &CheckCmd) -> Result<bool> {
    match cmd {
        CheckCmd::Al(a) => al(a),
        CheckCmd::Elim(a) => elim(a),
        CheckCmd::Restrict(a) => restrict(a),
        CheckCmd::Blocking(a) => blocking(a),
        CheckCmd::Frames(a) => frames(a),
        CheckCmd::Shell(a) => shell(a),
        CheckCmd::Fillable(a) => fillable(a),
    }
}

#[derive(Args)]
pub struct AlArgs {
    /// Number of random configurations
    #[arg(long, default_value_t = 200)]
    trials: u64,
    /// Side of the square lattice
    #[arg(long, default_value_t = 30)]
    size: usize,
    /// Density of 2s; every other site is 1
    #[arg(long, default_value_t = 0.1)]
    q: f64,
    #[arg(long)]
    seed: u64,
}

fn al(a: &AlArgs) -> Result<bool> {
    let standard = make_rule(RuleName::Standard, 2)?;
    let n = a.size;
    let spec = InitSpec { width: n, height: n, kappa: 2, probs: vec![0.0, 1.0 - a.q, a.q], boundary: BoundaryMode::FrozenExterior(1) };
    spec.validate()?;
    let per_trial: Vec<(usize, usize)> = (0..a.trials)
        .into_par_iter()
        .map(|t| -> Result<(usize, usize)> {
            let c = sample_product(&spec, SeedSpec { base_seed: a.seed, trial_index: t })?;
            let end = run_internal(&c, &RegionMask::full(n, n), &standard, false)?.final_config;
            let longest = components(&end, 2).iter().filter(|k| k.is_rectangle).map(|k| k.bbox.long()).max().unwrap_or(0);
            let mut failures = 0;
            for j in 1..=longest {
                let ok = match al_witness(&c, j)? {
                    Some(r) if 2 * r.long() >= j && r.long() <= j => {
                        let inner = run_internal(&c, &RegionMask::from_rect(n, n, &r)?, &standard, false)?.final_config;
                        r.sites().all(|s| inner.get(s) == 2)
                    }
                    _ => false,
                };
                failures += usize::from(!ok);
            }
            Ok((failures, longest))
        })
        .collect::<Result<_>>()?;
    let failures: usize = per_trial.iter().map(|x| x.0).sum();
    let checks: usize = per_trial.iter().map(|x| x.1).sum();
    println!("al: {failures} failures in {checks} (config, j) checks over {} configs", a.trials);
    Ok(failures == 0)
}

#[derive(Args)]
pub struct ElimArgs {
    /// Number of fixtures to test
    #[arg(long, default_value_t = 500)]
    fixtures: usize,
    /// Smallest rectangle side
    #[arg(long, default_value_t = 5)]
    min_side: usize,
    /// Largest rectangle side
    #[arg(long, default_value_t = 20)]
    max_side: usize,
    /// Draw budget per fixture
    #[arg(long, default_value_t = 1_000_000)]
    max_attempts: usize,
    #[arg(long)]
    seed: u64,
}

fn crowded(c: &Config, (sx, sy): (usize, usize)) -> bool {
    let (w, h) = (c.width(), c.height());
    (sy.saturating_sub(4)..=sy).any(|y0| {
        (sx.saturating_sub(4)..=sx).any(|x0| {
            (y0..y0 + 5)
                .flat_map(|y| (x0..x0 + 5).map(move |x| (x, y)))
                .filter(|&(x, y)| x < w && y < h && c.get((x, y)) == 2)
                .count()
                > 2
        })
    })
}

/// Random 0/1 rectangle with 2s added one at a time, each kept only if every 5x5 square
/// still holds at most two; rejected if it contains a frame.
fn elim_fixture(rng: &mut ChaCha8Rng, a: &ElimArgs) -> Result<Option<Config>> {
    let mut attempts = 0;
    while attempts < a.max_attempts {
        let (w, h) = (rng.gen_range(a.min_side..=a.max_side), rng.gen_range(a.min_side..=a.max_side));
        let p: f64 = rng.gen_range(0.2..0.8);
        let cells = (0..w * h).map(|_| u8::from(rng.gen_bool(p))).collect();
        let mut c = Config::new(w, h, 2, BoundaryMode::FrozenExterior(1), cells, None)?;
        let target = rng.gen_range(1..=(w * h / 25).max(1));
        let mut placed = 0;
        while placed < target && attempts < a.max_attempts {
            attempts += 1;
            let s = (rng.gen_range(0..w), rng.gen_range(0..h));
            let before = c.get(s);
            if before == 2 {
                continue;
            }
            c.set(s, 2);
            if crowded(&c, s) {
                c.set(s, before);
            } else {
                placed += 1;
            }
        }
        let whole = Rect { x0: 0, y0: 0, x1: w - 1, y1: h - 1 };
        if placed == target && FrameIndex::new(&c).find_within(&whole, w.max(h)).is_none() {
            return Ok(Some(c));
        }
        attempts += 1;
    }
    Ok(None)
}

fn elim(a: &ElimArgs) -> Result<bool> {
    if a.min_side < 5 || a.min_side > a.max_side {
        bail!("sides must satisfy 5 <= min-side <= max-side");
    }
    let standard = make_rule(RuleName::Standard, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let (mut fixtures, mut starved, mut failures) = (0, 0, 0);
    while fixtures < a.fixtures {
        let Some(c) = elim_fixture(&mut rng, a)? else {
            starved += 1;
            if starved > 10 {
                break;
            }
            continue;
        };
        fixtures += 1;
        let end = run_to_fixpoint(&c, &standard, c.len())?.final_config;
        failures += usize::from(end.count(0) > 0);
    }
    println!("elim: {failures} failures in {fixtures} fixtures; generator starved {starved} times");
    Ok(failures == 0 && fixtures == a.fixtures)
}

#[derive(Args)]
pub struct RestrictArgs {
    /// Configurations per (p, q) cell
    #[arg(long, default_value_t = 125)]
    trials: u64,
    /// Side of the square lattice
    #[arg(long, default_value_t = 50)]
    size: usize,
    /// Densities of 1s
    #[arg(long, value_parser = parse_values, default_value = "0.05,0.2")]
    p: Values,
    /// Densities of 2s
    #[arg(long, value_parser = parse_values, default_value = "0.02,0.1")]
    q: Values,
    /// Base seed; cell i uses seed + i
    #[arg(long)]
    seed: u64,
}

fn restrict(a: &RestrictArgs) -> Result<bool> {
    let standard = make_rule(RuleName::Standard, 2)?;
    let n = a.size;
    let cells: Vec<(f64, f64)> = a.p.0.iter().flat_map(|&p| a.q.0.iter().map(move |&q| (p, q))).collect();
    let mut violations = 0;
    let mut configs = 0;
    for (i, &(p, q)) in cells.iter().enumerate() {
        let spec = InitSpec::pq(n, n, p, q, BoundaryMode::FrozenExterior(0))?;
        let base_seed = a.seed.wrapping_add(i as u64);
        let counts: Vec<Option<usize>> = (0..a.trials)
            .into_par_iter()
            .map(|t| -> Result<Option<usize>> {
                let c = sample_product(&spec, SeedSpec { base_seed, trial_index: t })?;
                let nonzero = RegionMask::from_fn(n, n, |s| c.get(s) != 0);
                if nonzero.is_empty() {
                    return Ok(None);
                }
                let reduced = run_internal(&c, &nonzero, &standard, false)?.final_config;
                let full = run_frontier(&c, &standard)?;
                Ok(Some(nonzero.sites().filter(|s| reduced.get(*s) == 2 && full.get(*s) != 2).count()))
            })
            .collect::<Result<_>>()?;
        for v in counts.into_iter().flatten() {
            configs += 1;
            violations += v;
        }
    }
    println!("restrict: {violations} violating sites over {configs} configs");
    Ok(violations == 0)
}

#[derive(Args)]
pub struct BlockingArgs {
    /// Rule to run
    #[arg(long, default_value = "modified")]
    rule: RuleName,
    /// Check this configuration file instead of random ones
    #[arg(long, value_name = "FILE", conflicts_with_all = ["seed", "trials", "size", "p", "q"])]
    input: Option<PathBuf>,
    /// Number of random configurations
    #[arg(long, default_value_t = 500)]
    trials: u64,
    /// Side of the square torus
    #[arg(long, default_value_t = 100)]
    size: usize,
    /// Density of 1s
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    /// Density of 2s
    #[arg(long, default_value_t = 0.2)]
    q: f64,
    #[arg(long, required_unless_present = "input")]
    seed: Option<u64>,
}

/// (sites that became non-0, blocking sites) for one configuration.
fn blocking_violations(c: &Config, rule: &twostage::RuleTable) -> Result<(usize, usize)> {
    let blocked = blocking_zeros(c);
    let end = run_frontier(c, rule)?;
    Ok((blocked.sites().filter(|s| end.get(*s) != 0).count(), blocked.count()))
}

fn blocking(a: &BlockingArgs) -> Result<bool> {
    let rule = make_rule(a.rule, 2)?;
    let results: Vec<(usize, usize)> = match (&a.input, a.seed) {
        (Some(path), _) => vec![blocking_violations(&read_config(path)?, &rule)?],
        (None, Some(seed)) => {
            let spec = InitSpec::pq(a.size, a.size, a.p, a.q, BoundaryMode::Torus)?;
            (0..a.trials)
                .into_par_iter()
                .map(|t| blocking_violations(&sample_product(&spec, SeedSpec { base_seed: seed, trial_index: t })?, &rule))
                .collect::<Result<_>>()?
        }
        (None, None) => bail!("give --input or --seed"),
    };
    let violations: usize = results.iter().map(|r| r.0).sum();
    let sites: usize = results.iter().map(|r| r.1).sum();
    println!("blocking: {violations} violations among {sites} blocking 0s in {} configs", results.len());
    Ok(violations == 0)
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Linf,
    L1,
}

#[derive(Args)]
pub struct FramesArgs {
    /// Configuration file
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Search region x0,y0,x1,y1 [default: whole lattice]
    #[arg(long, value_parser = parse_rect)]
    region: Option<Rect>,
    /// Distance used for the inner strips
    #[arg(long, value_enum, default_value = "linf")]
    metric: MetricArg,
    /// Only report one frame of width and height at most this
    #[arg(long)]
    max_side: Option<usize>,
}

fn frames(a: &FramesArgs) -> Result<bool> {
    let c = read_config(&a.input)?;
    let region = a.region.unwrap_or(Rect { x0: 0, y0: 0, x1: c.width() - 1, y1: c.height() - 1 });
    let metric = match a.metric {
        MetricArg::Linf => FrameMetric::LInf,
        MetricArg::L1 => FrameMetric::L1,
    };
    let found = match a.max_side {
        Some(side) => frame_within(&c, &region, side).into_iter().collect(),
        None => find_frames_with(&c, &region, metric),
    };
    for r in &found {
        println!("{},{},{},{}", r.x0, r.y0, r.x1, r.y1);
    }
    println!("frames: {}", found.len());
    Ok(true)
}

#[derive(Args)]
pub struct ShellArgs {
    /// Radius r of the annulus
    #[arg(long)]
    radius: i64,
    /// File of "u1 u2" vertices, one per line [default: the exact l1 circle of radius r]
    #[arg(long, value_name = "FILE")]
    points: Option<PathBuf>,
}

fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<i64> = line
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| anyhow!("line {}: `{t}` is not an integer", i + 1)))
            .collect::<Result<_>>()?;
        let [u1, u2] = nums[..] else { bail!("line {}: expected two integers", i + 1) };
        out.push((u1, u2));
    }
    Ok(out)
}

fn shell(a: &ShellArgs) -> Result<bool> {
    if a.radius < 1 {
        bail!("--radius must be positive");
    }
    let points = match &a.points {
        Some(path) => parse_points(&fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)?,
        None => l1_circle(a.radius),
    };
    let report = shell_report(&points, a.radius);
    println!("{report}");
    Ok(report.sh1 && report.sh2 && report.sh3 && report.sh4)
}

#[derive(Clone, Copy, ValueEnum)]
enum AdjacencyArg {
    Four,
    Eight,
}

#[derive(Args)]
pub struct FillableArgs {
    /// Configuration file
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// The q-box x0,y0,x1,y1 [default: whole lattice]
    #[arg(long, value_parser = parse_rect)]
    qbox: Option<Rect>,
    /// Density of 1s the box sizes derive from
    #[arg(long)]
    p: f64,
    /// Density of 2s the box sizes derive from
    #[arg(long)]
    q: f64,
    /// Band half-width parameter of the cross
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Segment length parameter
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Override the p-box side
    #[arg(long)]
    pbox: Option<usize>,
    /// Override the center box side
    #[arg(long)]
    center: Option<usize>,
    /// Override the side of the frame-free sliding squares
    #[arg(long)]
    window: Option<usize>,
    /// Largest allowed enclosed component diameter, in p-boxes [default: floor(ln(1/q)), at least 1]
    #[arg(long)]
    diam_limit: Option<usize>,
    /// Tile adjacency of circuits
    #[arg(long, value_enum, default_value = "four")]
    adjacency: AdjacencyArg,
}

fn fillable(a: &FillableArgs) -> Result<bool> {
    let c = read_config(&a.input)?;
    let mut geom = BoxGeometry::from_pq(a.p, a.q, a.m, a.k)?;
    if let Some(s) = a.pbox {
        geom.pbox_side = s;
    }
    if let Some(s) = a.center {
        geom.center_side = s;
        geom.qbox_side = 2 * s;
    }
    if let Some(s) = a.window {
        geom.frame_window = s;
    }
    let qbox = a.qbox.unwrap_or(Rect { x0: 0, y0: 0, x1: c.width() - 1, y1: c.height() - 1 });
    let diam_limit = a.diam_limit.unwrap_or_else(|| ((1.0 / a.q).ln().floor() as usize).max(1));
    let adjacency = match a.adjacency {
        AdjacencyArg::Four => TileAdjacency::Four,
        AdjacencyArg::Eight => TileAdjacency::Eight,
    };
    let report = q_box_fillable_with(&c, &qbox, &geom, diam_limit, adjacency)?;
    println!("{report}");
    Ok(report.f1 && report.f2 && report.f3 && report.f4)
}
