//! Trajectory execution: the naive reference runner, the frontier runner, internal
//! dynamics and snapshots.
//!
//! The frontier stepper re-evaluates only sites whose own state or a neighbor's state
//! changed in the previous step. A site outside that set sees the same neighborhood as
//! before and therefore computes the same (unchanged) state, so the stepper reproduces
//! synchronous stepping exactly for every rule, monotone or not.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::grid::{BoundaryMode, Config, RegionMask, State};
use crate::rules::{step, RuleTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Halt {
    Fixpoint,
    StepBudgetExhausted,
    /// The trajectory re-entered a configuration `period` steps after first visiting it.
    CycleDetected { period: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    /// For a cycle, the first configuration of the cycle.
    pub final_config: Config,
    /// Fixpoint: number of steps that changed something. Cycle: time of entry into the cycle.
    /// Budget: the budget.
    pub steps: usize,
    pub halt: Halt,
    pub snapshots: Vec<(usize, Config)>,
}

/// Default step budget: `kappa * W * H` for monotone rules, `10 * W * H` otherwise.
pub fn default_max_steps(config: &Config, rule: &RuleTable) -> usize {
    let area = config.width() * config.height();
    if rule.monotone_flag() {
        rule.kappa() as usize * area
    } else {
        10 * area
    }
}

fn content_hash(cells: &[State]) -> u64 {
    let mut h = DefaultHasher::new();
    cells.hash(&mut h);
    h.finish()
}

/// Something that advances a configuration one synchronous step.
trait Advance {
    fn config(&self) -> &Config;
    /// Returns whether any site changed.
    fn advance(&mut self) -> bool;
}

struct Naive<'a> {
    rule: &'a RuleTable,
    current: Config,
}

impl Advance for Naive<'_> {
    fn config(&self) -> &Config {
        &self.current
    }

    fn advance(&mut self) -> bool {
        let next = step(&self.current, self.rule).expect("kappa checked by caller");
        let changed = next != self.current;
        self.current = next;
        changed
    }
}

/// Exact synchronous stepper that only visits the active frontier.
pub struct FrontierStepper<'a> {
    rule: &'a RuleTable,
    current: Config,
    candidates: Vec<usize>,
    stamp: Vec<u32>,
    generation: u32,
    changes: Vec<(usize, State)>,
}

impl<'a> FrontierStepper<'a> {
    pub fn new(config: Config, rule: &'a RuleTable) -> Result<Self> {
        rule.check_kappa(&config)?;
        let candidates = (0..config.len()).filter(|i| config.in_domain_idx(*i)).collect();
        let stamp = vec![0; config.len()];
        Ok(FrontierStepper { rule, current: config, candidates, stamp, generation: 0, changes: Vec::new() })
    }

    pub fn config(&self) -> &Config {
        &self.current
    }

    pub fn into_config(self) -> Config {
        self.current
    }

    /// One synchronous step; returns whether anything changed.
    pub fn advance(&mut self) -> bool {
        self.changes.clear();
        let cells = self.current.cells();
        for &idx in &self.candidates {
            let site = self.current.site(idx);
            let old = cells[idx];
            let new = self.rule.next_state(old, &self.current.neighbor_states(site));
            if new != old {
                self.changes.push((idx, new));
            }
        }
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        self.candidates.clear();
        let gen = self.generation;
        for &(idx, new) in &self.changes {
            self.current.cells_mut()[idx] = new;
        }
        for &(idx, _) in &self.changes {
            let site = self.current.site(idx);
            if self.stamp[idx] != gen {
                self.stamp[idx] = gen;
                self.candidates.push(idx);
            }
            for nb in self.current.neighbor_sites(site).into_iter().flatten() {
                let j = self.current.index(nb);
                if self.stamp[j] != gen {
                    self.stamp[j] = gen;
                    self.candidates.push(j);
                }
            }
        }
        !self.changes.is_empty()
    }
}

impl Advance for FrontierStepper<'_> {
    fn config(&self) -> &Config {
        &self.current
    }

    fn advance(&mut self) -> bool {
        FrontierStepper::advance(self)
    }
}

/// Reconstructs the configuration at time `t` with the naive stepper.
fn replay(initial: &Config, rule: &RuleTable, t: usize) -> Config {
    let mut c = initial.clone();
    for _ in 0..t {
        c = step(&c, rule).expect("kappa checked by caller");
    }
    c
}

fn drive<A: Advance>(
    mut stepper: A,
    rule: &RuleTable,
    max_steps: usize,
    times: &[usize],
) -> RunReport {
    let initial = stepper.config().clone();
    let track_cycles = !rule.monotone_flag();
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::new();
    if track_cycles {
        seen.entry(content_hash(initial.cells())).or_default().push(0);
    }
    let mut snapshots = Vec::with_capacity(times.len());
    let mut next_time = 0;
    let mut t = 0;
    loop {
        while next_time < times.len() && times[next_time] == t {
            snapshots.push((t, stepper.config().clone()));
            next_time += 1;
        }
        if t == max_steps {
            return finish(stepper.config().clone(), t, Halt::StepBudgetExhausted, snapshots, &times[next_time..]);
        }
        if !stepper.advance() {
            return finish(stepper.config().clone(), t, Halt::Fixpoint, snapshots, &times[next_time..]);
        }
        t += 1;
        if track_cycles {
            let h = content_hash(stepper.config().cells());
            let entry = seen.entry(h).or_default();
            for &s in entry.iter() {
                if replay(&initial, rule, s) == *stepper.config() {
                    let first = stepper.config().clone();
                    let period = t - s;
                    return finish(first, s, Halt::CycleDetected { period }, snapshots, &times[next_time..]);
                }
            }
            entry.push(t);
        }
    }
}

fn finish(
    final_config: Config,
    steps: usize,
    halt: Halt,
    mut snapshots: Vec<(usize, Config)>,
    pending: &[usize],
) -> RunReport {
    for &time in pending {
        let time = if halt == Halt::Fixpoint { time } else { steps };
        snapshots.push((time, final_config.clone()));
    }
    RunReport { final_config, steps, halt, snapshots }
}

/// Reference runner: full synchronous steps until fixpoint, budget or (non-monotone rules
/// only) a repeated configuration.
pub fn run_to_fixpoint(config: &Config, rule: &RuleTable, max_steps: usize) -> Result<RunReport> {
    rule.check_kappa(config)?;
    Ok(drive(Naive { rule, current: config.clone() }, rule, max_steps, &[]))
}

/// Final configuration of a monotone rule, computed on the active frontier.
pub fn run_frontier(config: &Config, rule: &RuleTable) -> Result<Config> {
    if !rule.monotone_flag() {
        return Err(Error::Contract(format!("run_frontier needs a monotone rule, got `{}`", rule.name())));
    }
    let mut stepper = FrontierStepper::new(config.clone(), rule)?;
    while stepper.advance() {}
    Ok(stepper.into_config())
}

/// Frontier-driven run with the same halting conventions as [`run_to_fixpoint`].
pub fn run_fast(config: &Config, rule: &RuleTable, max_steps: usize) -> Result<RunReport> {
    run_with_snapshots(config, rule, &[], max_steps)
}

/// Runs and records the configuration at each requested time. Times past a fixpoint get
/// the fixpoint; times past a cycle entry or the budget get the final configuration and
/// are labeled with the halt time.
pub fn run_with_snapshots(
    config: &Config,
    rule: &RuleTable,
    times: &[usize],
    max_steps: usize,
) -> Result<RunReport> {
    if times.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Contract("snapshot times must be non-decreasing".into()));
    }
    let stepper = FrontierStepper::new(config.clone(), rule)?;
    Ok(drive(stepper, rule, max_steps, times))
}

/// Masked copy of `config` restricted to `region` (intersected with any existing mask).
/// With `zero_to_one`, every 0 in the region starts as 1.
pub fn restrict(config: &Config, region: &RegionMask, zero_to_one: bool) -> Result<Config> {
    if region.width() != config.width() || region.height() != config.height() {
        return Err(Error::InvalidConfig("region shape differs from lattice".into()));
    }
    let domain = match config.mask() {
        Some(m) => m.intersect(region),
        None => region.clone(),
    };
    if domain.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let mut restricted = config.with_boundary(BoundaryMode::Masked, Some(domain))?;
    if zero_to_one {
        let mask = restricted.mask().cloned().expect("masked");
        for (cell, on) in restricted.cells_mut().iter_mut().zip(mask.bits()) {
            if *on && *cell == 0 {
                *cell = 1;
            }
        }
    }
    Ok(restricted)
}

/// Internal dynamics on `region`, run to fixpoint with the default budget.
pub fn run_internal(
    config: &Config,
    region: &RegionMask,
    rule: &RuleTable,
    zero_to_one: bool,
) -> Result<RunReport> {
    let restricted = restrict(config, region, zero_to_one)?;
    let budget = default_max_steps(&restricted, rule);
    run_fast(&restricted, rule, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{make_rule, RuleName};

    fn frozen0(rows: &[&str]) -> Config {
        Config::from_rows(rows, 2, BoundaryMode::FrozenExterior(0)).unwrap()
    }

    fn rule(name: RuleName) -> RuleTable {
        make_rule(name, 2).unwrap()
    }

    #[test]
    fn fixpoint_without_ones() {
        let r = run_to_fixpoint(&frozen0(&["202"]), &rule(RuleName::Standard), 10).unwrap();
        assert_eq!((r.steps, r.halt), (0, Halt::Fixpoint));
    }

    #[test]
    fn two_forced_flips() {
        let r = run_to_fixpoint(&frozen0(&["010", "202", "010"]), &rule(RuleName::Standard), 100).unwrap();
        assert_eq!(r.final_config, frozen0(&["010", "222", "010"]));
        assert_eq!((r.steps, r.halt), (2, Halt::Fixpoint));
    }

    #[test]
    fn budget_exhaustion() {
        let r = run_to_fixpoint(&frozen0(&["010", "202", "010"]), &rule(RuleName::Standard), 1).unwrap();
        assert_eq!((r.steps, r.halt), (1, Halt::StepBudgetExhausted));
    }

    #[test]
    fn frontier_rejects_cyclic() {
        let c = frozen0(&["0"]);
        assert!(matches!(run_frontier(&c, &rule(RuleName::Cyclic)), Err(Error::Contract(_))));
    }

    #[test]
    fn frontier_small_cases() {
        let st = rule(RuleName::Standard);
        let zero = Config::filled(5, 4, 2, BoundaryMode::Torus, 0).unwrap();
        assert_eq!(run_frontier(&zero, &st).unwrap(), zero);
        assert_eq!(run_frontier(&frozen0(&["21", "12"]), &st).unwrap(), frozen0(&["22", "22"]));
    }

    #[test]
    fn internal_examples() {
        let c = frozen0(&["10", "01"]);
        let region = RegionMask::full(2, 2);
        let r = run_internal(&c, &region, &rule(RuleName::Modified), false).unwrap();
        assert!(r.final_config.cells().iter().all(|s| *s == 1));

        let c = frozen0(&["01", "10"]);
        let mut single = RegionMask::empty(2, 2);
        single.set((1, 0), true);
        let r = run_internal(&c, &single, &rule(RuleName::Standard), false).unwrap();
        assert_eq!((r.steps, r.final_config.get((1, 0))), (0, 1));

        assert!(matches!(
            run_internal(&c, &RegionMask::empty(2, 2), &rule(RuleName::Standard), false),
            Err(Error::EmptyRegion)
        ));
    }

    #[test]
    fn snapshot_times() {
        let c = frozen0(&["010", "202", "010"]);
        let st = rule(RuleName::Standard);
        let r = run_with_snapshots(&c, &st, &[0, 1, 7], 100).unwrap();
        assert_eq!(r.snapshots[0], (0, c.clone()));
        assert_eq!(r.snapshots[1].1, step(&c, &st).unwrap());
        assert_eq!(r.snapshots[2], (7, r.final_config.clone()));
        assert!(run_with_snapshots(&c, &st, &[2, 1], 10).is_err());
    }

    #[test]
    fn naive_and_frontier_agree_on_cyclic() {
        let cy = rule(RuleName::Cyclic);
        for rows in [["20", "02"], ["21", "10"], ["12", "00"]] {
            let c = Config::from_rows(&rows, 2, BoundaryMode::Torus).unwrap();
            let budget = default_max_steps(&c, &cy);
            assert_eq!(run_to_fixpoint(&c, &cy, budget).unwrap(), run_fast(&c, &cy, budget).unwrap());
        }
    }
}
