//! Product-measure initial configurations and deterministic fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::{BoundaryMode, Config, RegionMask, Site, State};

/// Independent per-site states: state `i` with probability `probs[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct InitSpec {
    pub width: usize,
    pub height: usize,
    pub kappa: State,
    pub probs: Vec<f64>,
    pub boundary: BoundaryMode,
}

impl InitSpec {
    /// Three-state spec with `P(1) = p`, `P(2) = q`.
    pub fn pq(width: usize, height: usize, p: f64, q: f64, boundary: BoundaryMode) -> Result<Self> {
        let spec = InitSpec { width, height, kappa: 2, probs: vec![1.0 - p - q, p, q], boundary };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidSpec("width and height must be positive".into()));
        }
        if self.probs.len() != self.kappa as usize + 1 {
            return Err(Error::InvalidSpec(format!(
                "{} probabilities for kappa {}",
                self.probs.len(),
                self.kappa
            )));
        }
        if self.probs.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::InvalidSpec("probabilities must be non-negative".into()));
        }
        let total: f64 = self.probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSpec(format!("probabilities sum to {total}, not 1")));
        }
        if let BoundaryMode::FrozenExterior(f) = self.boundary {
            if f > self.kappa {
                return Err(Error::InvalidSpec(format!("frozen state {f} exceeds kappa")));
            }
        }
        Ok(())
    }
}

/// Identifies one trial's random stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub base_seed: u64,
    pub trial_index: u64,
}

/// Random stream positioned at a site: ChaCha8 keyed by the base seed, stream = trial
/// index, word position = 2 x site index (one `f64` per site consumes two words).
fn site_rng(seed: SeedSpec, site_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.base_seed);
    rng.set_stream(seed.trial_index);
    rng.set_word_pos(2 * site_index as u128);
    rng
}

/// Maps a uniform draw to a state by thresholds taken from the highest state down, so the
/// same draw couples configurations with different probabilities.
fn pick(u: f64, probs: &[f64]) -> State {
    let mut acc = 0.0;
    for s in (1..probs.len()).rev() {
        acc += probs[s];
        if u < acc {
            return s as State;
        }
    }
    0
}

/// Per-site uniforms for one trial, row-major.
pub fn site_uniforms(width: usize, height: usize, seed: SeedSpec) -> Vec<f64> {
    let mut out = Vec::with_capacity(width * height);
    for y in 0..height {
        let mut rng = site_rng(seed, y * width);
        out.extend((0..width).map(|_| rng.gen::<f64>()));
    }
    out
}

pub fn sample_product(spec: &InitSpec, seed: SeedSpec) -> Result<Config> {
    spec.validate()?;
    let cells = site_uniforms(spec.width, spec.height, seed)
        .into_iter()
        .map(|u| pick(u, &spec.probs))
        .collect();
    let mask = (spec.boundary == BoundaryMode::Masked)
        .then(|| RegionMask::full(spec.width, spec.height));
    Config::new(spec.width, spec.height, spec.kappa, spec.boundary, cells, mask)
}

/// The 2-ignition square with the parameters it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ignition {
    pub config: Config,
    pub half_side: usize,
    pub inset: usize,
    pub strip_gap: usize,
}

impl Ignition {
    /// Places the square `strip_gap` rows below `companion` (which must be `2L` wide), with
    /// 1s in between. The result keeps the companion's boundary mode.
    pub fn place_below(&self, companion: &Config) -> Result<Config> {
        let w = self.config.width();
        if companion.width() != w {
            return Err(Error::Geometry(format!(
                "companion width {} differs from ignition width {w}",
                companion.width()
            )));
        }
        if companion.boundary() == BoundaryMode::Masked {
            return Err(Error::Geometry("companion must not be masked".into()));
        }
        let gap_rows = self.strip_gap - 1;
        let h = companion.height() + gap_rows + self.config.height();
        let mut cells = companion.cells().to_vec();
        cells.extend(std::iter::repeat_n(1, gap_rows * w));
        cells.extend_from_slice(self.config.cells());
        Config::new(w, h, companion.kappa().max(2), companion.boundary(), cells, None)
    }
}

/// The 2L x 2L square with a bottom row of 2s and one 2 per other row on a four-column
/// schedule, everything else 1.
///
/// Plane coordinates: columns `c in [-L+1, L]`, rows `j in [-3L+2-g, -L+1-g]`. The array
/// maps `x = c + L - 1` and `y = (-L+1-g) - j`, so the bottom row is `y = 2L-1`.
pub fn build_ignition(half_side: usize, inset: usize, strip_gap: usize) -> Result<Ignition> {
    let (l, a, g) = (half_side as i64, inset as i64, strip_gap as i64);
    if half_side == 0 || inset == 0 || strip_gap == 0 {
        return Err(Error::Geometry("ignition parameters must be positive".into()));
    }
    if l <= a + 2 {
        return Err(Error::Geometry(format!("need L > a + 2, got L={l}, a={a}")));
    }
    let side = 2 * half_side;
    let j_max = -l + 1 - g;
    let j_min = -3 * l + 2 - g;
    let mut cells = vec![1; side * side];
    for j in j_min..=j_max {
        let y = (j_max - j) as usize;
        if j == j_min {
            cells[y * side..(y + 1) * side].fill(2);
            continue;
        }
        let c = match j.rem_euclid(4) {
            0 => -l + 1 + a,
            1 => l - a,
            2 => -l + 2 + a,
            _ => l - 1 - a,
        };
        let x = (c + l - 1) as usize;
        cells[y * side + x] = 2;
    }
    let config = Config::new(side, side, 2, BoundaryMode::FrozenExterior(1), cells, None)?;
    Ok(Ignition { config, half_side, inset, strip_gap })
}

/// Copy of `config` with the `side x side` square around `center` set to `s`.
/// The square spans `center - side/2 .. center - side/2 + side` on each axis.
pub fn overlay_square(config: &Config, center: Site, side: usize, s: State) -> Result<Config> {
    let half = side / 2;
    let (cx, cy) = center;
    if side == 0
        || cx < half
        || cy < half
        || cx - half + side > config.width()
        || cy - half + side > config.height()
    {
        return Err(Error::Geometry(format!(
            "square of side {side} at ({cx}, {cy}) leaves the {}x{} lattice",
            config.width(),
            config.height()
        )));
    }
    if s > config.kappa() {
        return Err(Error::InvalidConfig(format!("state {s} exceeds kappa")));
    }
    let mut out = config.clone();
    for y in cy - half..cy - half + side {
        for x in cx - half..cx - half + side {
            if out.in_domain((x, y)) {
                out.set((x, y), s);
            }
        }
    }
    Ok(out)
}

/// A row of `gap` 0s flanked by 2s, centered in an all-1 lattice with a frozen-1 exterior.
pub fn build_blocking(width: usize, height: usize, gap: usize) -> Result<Config> {
    if gap == 0 || gap + 2 > width || height == 0 {
        return Err(Error::Geometry(format!("gap {gap} does not fit width {width}")));
    }
    let mut c = Config::filled(width, height, 2, BoundaryMode::FrozenExterior(1), 1)?;
    let y = height / 2;
    let x0 = (width - gap - 2) / 2;
    c.set((x0, y), 2);
    for x in x0 + 1..=x0 + gap {
        c.set((x, y), 0);
    }
    c.set((x0 + gap + 1, y), 2);
    Ok(c)
}
