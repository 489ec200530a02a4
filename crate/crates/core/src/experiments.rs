//! Seeded Monte Carlo trials, per-cell aggregation and (p, q) sweeps.
//!
//! Every trial draws its configuration from its own random stream, and aggregation runs in
//! trial order after all trials finish, so results do not depend on the worker count.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::engine::{default_max_steps, run_fast, Halt};
use crate::error::{Error, Result};
use crate::grid::{components, State};
use crate::rules::RuleTable;
use crate::sampler::{sample_product, InitSpec, SeedSpec};

/// Default ℓ∞ diameter above which a 2-component counts as large.
pub const LARGE_COMPONENT: usize = 750;

#[derive(Clone, Debug, PartialEq)]
pub struct TrialOutcome {
    /// State of the site `(W/2, H/2)` in the final configuration.
    pub origin_state: State,
    pub densities: Vec<f64>,
    /// Largest ℓ∞ diameter of a component in the top state; 0 if there is none.
    pub max2_diam: usize,
    pub steps: usize,
    pub halt: Halt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialOptions {
    /// Step budget; `None` uses the engine default for the lattice and rule.
    pub max_steps: Option<usize>,
    pub large_threshold: usize,
}

impl Default for TrialOptions {
    fn default() -> Self {
        TrialOptions { max_steps: None, large_threshold: LARGE_COMPONENT }
    }
}

pub fn run_trial(spec: &InitSpec, rule: &RuleTable, seed: SeedSpec, max_steps: Option<usize>) -> Result<TrialOutcome> {
    let initial = sample_product(spec, seed)?;
    let budget = max_steps.unwrap_or_else(|| default_max_steps(&initial, rule));
    let report = run_fast(&initial, rule, budget)?;
    let f = &report.final_config;
    let origin = (f.width() / 2, f.height() / 2);
    let max2_diam = components(f, f.kappa()).iter().map(|c| c.diameter).max().unwrap_or(0);
    Ok(TrialOutcome {
        origin_state: f.get(origin),
        densities: f.densities(),
        max2_diam,
        steps: report.steps,
        halt: report.halt,
    })
}

/// Aggregate of one (rule, lattice, p, q) cell.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub rule: String,
    pub width: usize,
    pub height: usize,
    pub p: f64,
    pub q: f64,
    pub trials: usize,
    pub base_seed: u64,
    /// Frequency of each final origin state.
    pub freqs: Vec<f64>,
    /// Mean final density of each state.
    pub densities: Vec<f64>,
    /// Mean step count over trials that did not end in a cycle; NaN if all did.
    pub mean_steps: f64,
    pub frac_large2: f64,
    /// Trials that ended in a cycle.
    pub cycles: usize,
}

pub fn estimate_distribution(
    spec: &InitSpec,
    rule: &RuleTable,
    trials: usize,
    base_seed: u64,
    opts: &TrialOptions,
) -> Result<SweepRow> {
    if trials == 0 {
        return Err(Error::Contract("trials must be at least 1".into()));
    }
    if spec.kappa != rule.kappa() {
        return Err(Error::KappaMismatch { config: spec.kappa, rule: rule.kappa() });
    }
    let outcomes: Vec<TrialOutcome> = (0..trials as u64)
        .into_par_iter()
        .map(|t| run_trial(spec, rule, SeedSpec { base_seed, trial_index: t }, opts.max_steps))
        .collect::<Result<_>>()?;
    let states = spec.kappa as usize + 1;
    let n = trials as f64;
    let mut freqs = vec![0.0; states];
    let mut densities = vec![0.0; states];
    let mut steps_sum = 0.0;
    let mut settled = 0usize;
    let mut large = 0usize;
    for o in &outcomes {
        freqs[o.origin_state as usize] += 1.0;
        for (acc, d) in densities.iter_mut().zip(&o.densities) {
            *acc += d;
        }
        if !matches!(o.halt, Halt::CycleDetected { .. }) {
            steps_sum += o.steps as f64;
            settled += 1;
        }
        large += usize::from(o.max2_diam > opts.large_threshold);
    }
    freqs.iter_mut().for_each(|f| *f /= n);
    densities.iter_mut().for_each(|d| *d /= n);
    Ok(SweepRow {
        rule: rule.name().to_string(),
        width: spec.width,
        height: spec.height,
        p: spec.probs.get(1).copied().unwrap_or(0.0),
        q: spec.probs.get(2).copied().unwrap_or(0.0),
        trials,
        base_seed,
        freqs,
        densities,
        mean_steps: if settled == 0 { f64::NAN } else { steps_sum / settled as f64 },
        frac_large2: large as f64 / n,
        cycles: trials - settled,
    })
}

/// The (p, q) cells of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub enum Schedule {
    Pairs(Vec<(f64, f64)>),
    /// `q = c * p^gamma` for each `p`.
    Power { ps: Vec<f64>, c: f64, gamma: f64 },
}

impl Schedule {
    pub fn cells(&self) -> Vec<(f64, f64)> {
        match self {
            Schedule::Pairs(v) => v.clone(),
            Schedule::Power { ps, c, gamma } => ps.iter().map(|&p| (p, c * p.powf(*gamma))).collect(),
        }
    }
}

/// Lattice shape shared by all cells of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeTemplate {
    pub width: usize,
    pub height: usize,
    pub kappa: State,
    pub boundary: crate::grid::BoundaryMode,
}

impl LatticeTemplate {
    /// Spec with `P(1) = p`, `P(2) = q`, 0 for any higher state.
    pub fn spec(&self, p: f64, q: f64) -> Result<InitSpec> {
        let mut probs = vec![0.0; self.kappa as usize + 1];
        probs[0] = 1.0 - p - q;
        probs[1] = p;
        probs[2] = q;
        let spec = InitSpec { width: self.width, height: self.height, kappa: self.kappa, probs, boundary: self.boundary };
        spec.validate()?;
        Ok(spec)
    }
}

/// One row per (rule, cell), rules outermost, cells in schedule order.
pub fn sweep(
    schedule: &Schedule,
    template: &LatticeTemplate,
    rules: &[RuleTable],
    trials: usize,
    base_seed: u64,
    opts: &TrialOptions,
) -> Result<Vec<SweepRow>> {
    let cells = schedule.cells();
    if cells.is_empty() {
        return Err(Error::Contract("sweep grid is empty".into()));
    }
    if template.kappa < 2 {
        return Err(Error::Contract("sweeps need kappa >= 2".into()));
    }
    let mut rows = Vec::with_capacity(rules.len() * cells.len());
    for rule in rules {
        for &(p, q) in &cells {
            rows.push(estimate_distribution(&template.spec(p, q)?, rule, trials, base_seed, opts)?);
        }
    }
    Ok(rows)
}

/// `printf("%.6g")`-style formatting.
pub fn fmt_g6(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-4..6).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (5 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub const CSV_HEADER: &str =
    "rule,width,height,p,q,trials,base_seed,freq0,freq1,freq2,density0,density1,density2,mean_steps,frac_large2,cycles";

/// CSV text for rows sharing one kappa. States above 2 add `freqK` and `densityK` columns
/// after `freq2` and `density2`.
pub fn rows_to_csv(rows: &[SweepRow]) -> Result<String> {
    let states = rows.first().map_or(3, |r| r.freqs.len());
    if rows.iter().any(|r| r.freqs.len() != states) {
        return Err(Error::Contract("rows with different kappa in one table".into()));
    }
    let mut out = String::new();
    let extra = |prefix: &str| (3..states).map(|s| format!(",{prefix}{s}")).collect::<String>();
    out.push_str(&format!(
        "rule,width,height,p,q,trials,base_seed,freq0,freq1,freq2{},density0,density1,density2{},mean_steps,frac_large2,cycles\n",
        extra("freq"),
        extra("density")
    ));
    for r in rows {
        let join = |v: &[f64]| v.iter().map(|x| fmt_g6(*x)).collect::<Vec<_>>().join(",");
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.rule,
            r.width,
            r.height,
            fmt_g6(r.p),
            fmt_g6(r.q),
            r.trials,
            r.base_seed,
            join(&r.freqs),
            join(&r.densities),
            fmt_g6(r.mean_steps),
            fmt_g6(r.frac_large2),
            r.cycles
        )
        .expect("write to string");
    }
    Ok(out)
}
