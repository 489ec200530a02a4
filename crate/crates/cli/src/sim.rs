//! `run`, `sweep` and `render`.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use twostage::engine::{default_max_steps, run_with_snapshots, Halt};
use twostage::experiments::{rows_to_csv, LatticeTemplate, Schedule, TrialOptions, LARGE_COMPONENT};
use twostage::render::{render_ppm, Palette};
use twostage::sampler::{overlay_square, sample_product, InitSpec, SeedSpec};
use twostage::{boundary_name, make_rule, BoundaryMode, RuleName, State};

use crate::args::{parse_boundary_flag, parse_values, Values};
use crate::io::{emit, read_config, write_config, write_ppm};

#[derive(Args)]
pub struct RunArgs {
    /// Update rule
    #[arg(long, default_value = "standard")]
    rule: RuleName,
    /// Top state (multicolor only)
    #[arg(long, default_value_t = 2)]
    kappa: State,
    /// Start from this configuration file instead of sampling one
    #[arg(long, value_name = "FILE", conflicts_with_all = ["w", "h", "p", "q", "probs", "seed", "trial", "boundary"])]
    input: Option<PathBuf>,
    /// Lattice width
    #[arg(long, required_unless_present = "input")]
    w: Option<usize>,
    /// Lattice height
    #[arg(long, required_unless_present = "input")]
    h: Option<usize>,
    /// Density of 1s
    #[arg(long, conflicts_with = "probs")]
    p: Option<f64>,
    /// Density of 2s
    #[arg(long, conflicts_with = "probs")]
    q: Option<f64>,
    /// Comma-separated probability of every state 0..=kappa
    #[arg(long, value_delimiter = ',')]
    probs: Option<Vec<f64>>,
    /// torus, masked or frozen:<state>
    #[arg(long, value_parser = parse_boundary_flag)]
    boundary: Option<BoundaryMode>,
    /// Base seed of the random stream
    #[arg(long, required_unless_present = "input")]
    seed: Option<u64>,
    /// Trial index (stream) within the seed
    #[arg(long)]
    trial: Option<u64>,
    /// Overlay a centered square of the top state with this side
    #[arg(long, value_name = "SIDE")]
    square: Option<usize>,
    /// Comma-separated snapshot times
    #[arg(long, value_delimiter = ',', value_name = "T")]
    snap: Vec<usize>,
    /// Step budget [default: kappa*W*H, or 10*W*H for cyclic]
    #[arg(long)]
    max_steps: Option<usize>,
    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

pub fn run(a: &RunArgs) -> Result<bool> {
    let rule = make_rule(a.rule, a.kappa)?;
    let mut initial = match &a.input {
        Some(path) => read_config(path)?,
        None => {
            let (w, h) = (a.w.expect("required"), a.h.expect("required"));
            let boundary = a.boundary.unwrap_or(BoundaryMode::Torus);
            let probs = match (&a.probs, a.p, a.q) {
                (Some(v), _, _) => v.clone(),
                (None, Some(p), Some(q)) => {
                    let mut v = vec![0.0; a.kappa as usize + 1];
                    v[0] = 1.0 - p - q;
                    v[1] = p;
                    v[2] = q;
                    v
                }
                _ => bail!("give --p and --q, or --probs"),
            };
            let spec = InitSpec { width: w, height: h, kappa: a.kappa, probs, boundary };
            spec.validate()?;
            let seed = SeedSpec { base_seed: a.seed.expect("required"), trial_index: a.trial.unwrap_or(0) };
            sample_product(&spec, seed)?
        }
    };
    if let Some(side) = a.square {
        let center = (initial.width() / 2, initial.height() / 2);
        initial = overlay_square(&initial, center, side, initial.kappa())?;
    }
    let mut times = a.snap.clone();
    times.sort_unstable();
    times.dedup();
    let budget = a.max_steps.unwrap_or_else(|| default_max_steps(&initial, &rule));
    let report = run_with_snapshots(&initial, &rule, &times, budget)?;

    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    write_config(&a.out.join("initial.txt"), &initial)?;
    write_config(&a.out.join("final.txt"), &report.final_config)?;
    write_ppm(&a.out.join("final.ppm"), &report.final_config)?;
    for (requested, (t, snap)) in times.iter().zip(&report.snapshots) {
        let stem = format!("snap_{requested}");
        write_config(&a.out.join(format!("{stem}.txt")), snap)?;
        write_ppm(&a.out.join(format!("{stem}.ppm")), snap)?;
        if t != requested {
            println!("snapshot {requested} taken at t={t}");
        }
    }
    let halt = match report.halt {
        Halt::Fixpoint => "fixpoint".to_string(),
        Halt::StepBudgetExhausted => "budget".to_string(),
        Halt::CycleDetected { period } => format!("cycle:{period}"),
    };
    let densities: Vec<String> = report.final_config.densities().iter().map(|d| format!("{d:.6}")).collect();
    println!(
        "rule={} size={}x{} boundary={} halt={halt} steps={} densities={}",
        rule.name(),
        initial.width(),
        initial.height(),
        boundary_name(initial.boundary()),
        report.steps,
        densities.join(",")
    );
    Ok(true)
}

#[derive(Args)]
pub struct SweepArgs {
    /// Rules to sweep (repeat or comma-separate)
    #[arg(long, value_delimiter = ',', default_value = "standard")]
    rule: Vec<RuleName>,
    /// Top state (multicolor only)
    #[arg(long, default_value_t = 2)]
    kappa: State,
    /// Lattice width
    #[arg(long, default_value_t = 200)]
    w: usize,
    /// Lattice height
    #[arg(long, default_value_t = 200)]
    h: usize,
    /// Densities of 1s: start:stop:step (stop excluded) or a comma list
    #[arg(long, value_parser = parse_values)]
    p: Values,
    /// Densities of 2s, crossed with every p
    #[arg(long, value_parser = parse_values, conflicts_with = "q_pow", required_unless_present = "q_pow")]
    q: Option<Values>,
    /// Exponent gamma of q = coef * p^gamma
    #[arg(long, value_name = "GAMMA")]
    q_pow: Option<f64>,
    /// Coefficient of q = coef * p^gamma
    #[arg(long, default_value_t = 1.0, requires = "q_pow")]
    q_coef: f64,
    /// Trials per cell
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Base seed; trial t of every cell uses stream t
    #[arg(long)]
    seed: u64,
    /// torus, masked or frozen:<state>
    #[arg(long, value_parser = parse_boundary_flag, default_value = "torus")]
    boundary: BoundaryMode,
    /// Diameter above which a 2-component counts as large
    #[arg(long, default_value_t = LARGE_COMPONENT)]
    large_threshold: usize,
    /// Step budget per trial
    #[arg(long)]
    max_steps: Option<usize>,
    /// CSV output file [default: stdout]
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

pub fn sweep(a: &SweepArgs) -> Result<bool> {
    let ps = a.p.0.clone();
    let schedule = match (&a.q, a.q_pow) {
        (Some(Values(qs)), _) => Schedule::Pairs(ps.iter().flat_map(|&p| qs.iter().map(move |&q| (p, q))).collect()),
        (None, Some(gamma)) => Schedule::Power { ps, c: a.q_coef, gamma },
        (None, None) => bail!("give --q or --q-pow"),
    };
    let rules = a.rule.iter().map(|&r| make_rule(r, a.kappa)).collect::<twostage::Result<Vec<_>>>()?;
    let template = LatticeTemplate { width: a.w, height: a.h, kappa: a.kappa, boundary: a.boundary };
    let opts = TrialOptions { max_steps: a.max_steps, large_threshold: a.large_threshold };
    let rows = twostage::experiments::sweep(&schedule, &template, &rules, a.trials, a.seed, &opts)?;
    emit(a.csv.as_deref(), rows_to_csv(&rows)?.as_bytes())?;
    Ok(true)
}

#[derive(Args)]
pub struct RenderArgs {
    /// Configuration file
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// PPM output file [default: stdout]
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

pub fn render(a: &RenderArgs) -> Result<bool> {
    let config = read_config(&a.input)?;
    emit(a.out.as_deref(), &render_ppm(&config, &Palette::for_kappa(config.kappa()))?)?;
    Ok(true)
}
