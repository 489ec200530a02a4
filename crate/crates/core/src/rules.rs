//! Transition tables for the named rule families and the synchronous step.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Config, NeighborStats, State};

/// When a site in a given source state changes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TransitionPredicate {
    /// At least `theta` neighbors in `target`. `theta = 5` never fires.
    CountAtLeast { target: State, theta: u8 },
    /// Neighbors in `target` along at least `d` coordinate directions.
    DirectionsAtLeast { target: State, d: u8 },
    /// Fires iff exactly one candidate `(state, theta)` meets its threshold.
    ExclusiveCount(Vec<(State, u8)>),
    Never,
}

/// A predicate and its result state(s). `ExclusiveCount` carries one result per candidate;
/// every other predicate carries exactly one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub predicate: TransitionPredicate,
    pub results: Vec<State>,
}

impl Transition {
    fn simple(predicate: TransitionPredicate, result: State) -> Self {
        Transition { predicate, results: vec![result] }
    }

    /// The new state if the transition fires on these neighbors (`[W, E, N, S]`).
    pub fn fire(&self, neighbors: &[Option<State>; 4]) -> Option<State> {
        match &self.predicate {
            TransitionPredicate::CountAtLeast { target, theta } => {
                let n = NeighborStats::from_neighbors(neighbors, *target).n;
                (n >= *theta).then_some(self.results[0])
            }
            TransitionPredicate::DirectionsAtLeast { target, d } => {
                let np = NeighborStats::from_neighbors(neighbors, *target).nprime;
                (np >= *d).then_some(self.results[0])
            }
            TransitionPredicate::ExclusiveCount(cands) => {
                let mut hit = None;
                for (i, (target, theta)) in cands.iter().enumerate() {
                    if NeighborStats::from_neighbors(neighbors, *target).n >= *theta {
                        if hit.is_some() {
                            return None;
                        }
                        hit = Some(self.results[i]);
                    }
                }
                hit
            }
            TransitionPredicate::Never => None,
        }
    }
}

/// The named rule families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleName {
    Standard,
    Modified,
    ModifiedN2p,
    StandardN2p,
    PollutedStandard,
    PollutedModified,
    Cyclic,
    Competition,
    Multicolor,
}

impl RuleName {
    pub const ALL: [RuleName; 9] = [
        RuleName::Standard,
        RuleName::Modified,
        RuleName::ModifiedN2p,
        RuleName::StandardN2p,
        RuleName::PollutedStandard,
        RuleName::PollutedModified,
        RuleName::Cyclic,
        RuleName::Competition,
        RuleName::Multicolor,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::Standard => "standard",
            RuleName::Modified => "modified",
            RuleName::ModifiedN2p => "modified-n2p",
            RuleName::StandardN2p => "standard-n2p",
            RuleName::PollutedStandard => "polluted-standard",
            RuleName::PollutedModified => "polluted-modified",
            RuleName::Cyclic => "cyclic",
            RuleName::Competition => "competition",
            RuleName::Multicolor => "multicolor",
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleName::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::UnknownRule(s.to_string()))
    }
}

/// Per-source-state transitions. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleTable {
    name: String,
    kappa: State,
    transitions: Vec<Option<Transition>>,
    monotone: bool,
}

impl RuleTable {
    /// Builds a table from explicit transitions; the monotone flag is derived.
    pub fn new(name: &str, kappa: State, transitions: Vec<Option<Transition>>) -> Result<Self> {
        if transitions.len() != kappa as usize + 1 {
            return Err(Error::InvalidConfig(format!(
                "rule needs {} transitions, got {}",
                kappa as usize + 1,
                transitions.len()
            )));
        }
        for t in transitions.iter().flatten() {
            let expected = match &t.predicate {
                TransitionPredicate::ExclusiveCount(c) => c.len(),
                _ => 1,
            };
            if t.results.len() != expected || t.results.iter().any(|r| *r > kappa) {
                return Err(Error::InvalidConfig("malformed transition results".into()));
            }
        }
        let monotone = transitions.iter().enumerate().all(|(s, t)| match t {
            None => true,
            Some(t) => s < kappa as usize && t.results.iter().all(|r| *r as usize > s),
        }) && transitions[kappa as usize].is_none();
        Ok(RuleTable { name: name.to_string(), kappa, transitions, monotone })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kappa(&self) -> State {
        self.kappa
    }

    pub fn transitions(&self) -> &[Option<Transition>] {
        &self.transitions
    }

    pub fn monotone_flag(&self) -> bool {
        self.monotone
    }

    /// New state of a site in `current` with neighbors `[W, E, N, S]`.
    #[inline]
    pub fn next_state(&self, current: State, neighbors: &[Option<State>; 4]) -> State {
        match &self.transitions[current as usize] {
            Some(t) => t.fire(neighbors).unwrap_or(current),
            None => current,
        }
    }

    pub(crate) fn check_kappa(&self, config: &Config) -> Result<()> {
        if config.kappa() != self.kappa {
            return Err(Error::KappaMismatch { config: config.kappa(), rule: self.kappa });
        }
        Ok(())
    }
}

/// Builds a named rule. Every rule but `multicolor` requires `kappa = 2`.
pub fn make_rule(name: RuleName, kappa: State) -> Result<RuleTable> {
    use TransitionPredicate::*;
    if name != RuleName::Multicolor && kappa != 2 {
        return Err(Error::RuleKappa { name: name.to_string(), expected: "2".into(), got: kappa });
    }
    if name == RuleName::Multicolor && kappa < 2 {
        return Err(Error::RuleKappa { name: name.to_string(), expected: ">= 2".into(), got: kappa });
    }
    let count = |target, result| Some(Transition::simple(CountAtLeast { target, theta: 2 }, result));
    let dirs = |target, result| Some(Transition::simple(DirectionsAtLeast { target, d: 2 }, result));
    let never = || Some(Transition::simple(Never, 2));
    let transitions = match name {
        RuleName::Standard => vec![count(1, 1), count(2, 2), None],
        RuleName::Modified => vec![dirs(1, 1), count(2, 2), None],
        RuleName::StandardN2p => vec![count(1, 1), dirs(2, 2), None],
        RuleName::ModifiedN2p => vec![dirs(1, 1), dirs(2, 2), None],
        RuleName::PollutedStandard => vec![count(1, 1), never(), None],
        RuleName::PollutedModified => vec![dirs(1, 1), never(), None],
        RuleName::Cyclic => vec![count(1, 1), count(2, 2), count(0, 0)],
        RuleName::Competition => vec![
            Some(Transition { predicate: ExclusiveCount(vec![(1, 2), (2, 2)]), results: vec![1, 2] }),
            None,
            None,
        ],
        RuleName::Multicolor => {
            let mut t: Vec<Option<Transition>> = (0..kappa).map(|i| count(i + 1, i + 1)).collect();
            t.push(None);
            t
        }
    };
    RuleTable::new(name.as_str(), kappa, transitions)
}

/// One synchronous update: every site reads the old configuration.
pub fn step(config: &Config, rule: &RuleTable) -> Result<Config> {
    rule.check_kappa(config)?;
    let mut next = config.clone();
    let out = next.cells_mut();
    for (idx, cell) in out.iter_mut().enumerate() {
        if !config.in_domain_idx(idx) {
            continue;
        }
        let site = config.site(idx);
        *cell = rule.next_state(config.cells()[idx], &config.neighbor_states(site));
    }
    Ok(next)
}
