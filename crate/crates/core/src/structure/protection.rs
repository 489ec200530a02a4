//! Protected regions (PR1)-(PR3) and a generator of rectangular fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::run_internal;
use crate::error::{Error, Result};
use crate::grid::{components, BoundaryMode, Config, Rect, RegionMask, Site};
use crate::rules::RuleTable;
use crate::structure::blocking::blocking_zeros;
use crate::structure::Prefix2D;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProtectionReport {
    pub pr1: bool,
    pub pr2: bool,
    pub pr3: bool,
    /// A site of `Z` violating (PR1).
    pub pr1_witness: Option<Site>,
    /// A boundary site of `Z` with a 2 of `Z` within distance `m`.
    pub pr2_witness: Option<Site>,
    /// A site of an overlong final 2-component.
    pub pr3_witness: Option<Site>,
}

impl ProtectionReport {
    pub fn all(&self) -> bool {
        self.pr1 && self.pr2 && self.pr3
    }

    /// The first witness, in flag order.
    pub fn violating_site(&self) -> Option<Site> {
        self.pr1_witness.or(self.pr2_witness).or(self.pr3_witness)
    }
}

impl std::fmt::Display for ProtectionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let b = |v: bool| u8::from(v);
        write!(f, "PR1={} PR2={} PR3={}", b(self.pr1), b(self.pr2), b(self.pr3))?;
        for (name, w) in [("pr1_site", self.pr1_witness), ("pr2_site", self.pr2_witness), ("pr3_site", self.pr3_witness)] {
            if let Some((x, y)) = w {
                write!(f, " {name}={x},{y}")?;
            }
        }
        Ok(())
    }
}

/// Neighbors of `u` outside `z`, and how many of those are blocking 0s. Neighbors beyond the
/// lattice edge count as outside and never as blocking.
fn exterior_neighbors(config: &Config, z: &RegionMask, blocking: &RegionMask, u: Site) -> (usize, usize) {
    let mut outside = 0;
    let mut blocked = 0;
    for nb in config.neighbor_sites(u) {
        match nb {
            Some(v) if z.contains(v) => {}
            Some(v) => {
                outside += 1;
                blocked += usize::from(blocking.contains(v));
            }
            None => outside += 1,
        }
    }
    (outside, blocked)
}

/// Checks (PR1)-(PR3) for `Z` with parameter `m`; (PR3) runs the internal dynamics on `Z`
/// with every 0 turned into a 1.
pub fn protected_region_report(config: &Config, z: &RegionMask, m: usize, rule: &RuleTable) -> Result<ProtectionReport> {
    if z.is_empty() {
        return Err(Error::EmptyRegion);
    }
    if z.width() != config.width() || z.height() != config.height() {
        return Err(Error::InvalidConfig("region shape differs from lattice".into()));
    }
    let blocking = blocking_zeros(config);
    let twos_in_z = Prefix2D::new(config.width(), config.height(), |x, y| z.contains((x, y)) && config.get((x, y)) == 2);
    let mut report = ProtectionReport { pr1: true, pr2: true, pr3: true, ..Default::default() };
    for u in z.sites() {
        let (outside, blocked) = exterior_neighbors(config, z, &blocking, u);
        if report.pr1 && outside >= 2 && blocked < outside - 1 {
            report.pr1 = false;
            report.pr1_witness = Some(u);
        }
        if report.pr2 && outside >= 1 {
            let (x, y) = u;
            let x0 = x.saturating_sub(m);
            let y0 = y.saturating_sub(m);
            let x1 = (x + m).min(config.width() - 1);
            let y1 = (y + m).min(config.height() - 1);
            if twos_in_z.count(x0, y0, x1, y1) > 0 {
                report.pr2 = false;
                report.pr2_witness = Some(u);
            }
        }
    }
    let internal = run_internal(config, z, rule, true)?;
    if let Some(bad) = components(&internal.final_config, 2).into_iter().find(|c| 2 * c.diameter > m) {
        report.pr3 = false;
        report.pr3_witness = Some(bad.sites[0]);
    }
    Ok(report)
}

/// A rectangular region with "202" patterns just outside each corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtectedFixture {
    pub config: Config,
    pub region: RegionMask,
    pub rect: Rect,
    pub m: usize,
}

/// Parameters of [`protected_fixture`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixtureParams {
    pub width: usize,
    pub height: usize,
    pub m: usize,
    /// Density of 2s in the deep interior of the region.
    pub interior_q: f64,
    /// Densities of 1s and 2s outside the region.
    pub exterior_p: f64,
    pub exterior_q: f64,
    /// Give up after this many rejected draws.
    pub max_attempts: usize,
}

/// Draws fixtures until one passes the protection report under `rule`. Interior 0s and 1s
/// are drawn with equal weight; interior 2s stay more than `m` from the region border.
pub fn protected_fixture(params: &FixtureParams, rule: &RuleTable, seed: u64) -> Result<ProtectedFixture> {
    let FixtureParams { width, height, m, .. } = *params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..params.max_attempts {
        let rw = rng.gen_range(4..=width - 4);
        let rh = rng.gen_range(2..=height - 4);
        let x0 = rng.gen_range(2..=width - 2 - rw);
        let y0 = rng.gen_range(2..=height - 2 - rh);
        let rect = Rect { x0, y0, x1: x0 + rw - 1, y1: y0 + rh - 1 };
        let mut cells = vec![0u8; width * height];
        for y in 0..height {
            for x in 0..width {
                let u: f64 = rng.gen();
                cells[y * width + x] = if rect.contains((x, y)) {
                    let deep = x > x0 + m && x + m < rect.x1 && y > y0 + m && y + m < rect.y1;
                    if deep && u < params.interior_q {
                        2
                    } else if u < 0.5 {
                        1
                    } else {
                        0
                    }
                } else if u < params.exterior_q {
                    2
                } else if u < params.exterior_q + params.exterior_p {
                    1
                } else {
                    0
                };
            }
        }
        let mut config = Config::new(width, height, 2, BoundaryMode::FrozenExterior(0), cells, None)?;
        for (cx, row) in [(rect.x0, y0 - 1), (rect.x1, y0 - 1), (rect.x0, rect.y1 + 1), (rect.x1, rect.y1 + 1)] {
            config.set((cx - 1, row), 2);
            config.set((cx, row), 0);
            config.set((cx + 1, row), 2);
        }
        let region = RegionMask::from_rect(width, height, &rect)?;
        if protected_region_report(&config, &region, m, rule)?.all() {
            return Ok(ProtectedFixture { config, region, rect, m });
        }
    }
    Err(Error::Contract(format!("no protected fixture in {} attempts", params.max_attempts)))
}
