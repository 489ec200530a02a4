//! Finite lattice configurations, neighborhood statistics and 4-connected components.
//!
//! Coordinates are `(column, row)` with `(0, 0)` at the top-left, matching the text format.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A site state in `0..=kappa`.
pub type State = u8;

/// A lattice site as `(column, row)`.
pub type Site = (usize, usize);

/// How sites at the edge of the finite lattice see their missing neighbors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryMode {
    /// Periodic in both directions.
    Torus,
    /// Out-of-range neighbors are permanently in the given state.
    FrozenExterior(State),
    /// Internal dynamics: only sites in the configuration's mask exist.
    Masked,
}

/// Inclusive axis-aligned rectangle of sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rect {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

impl Rect {
    pub fn new(x0: usize, y0: usize, x1: usize, y1: usize) -> Result<Self> {
        if x0 > x1 || y0 > y1 {
            return Err(Error::Geometry(format!(
                "degenerate rectangle ({x0},{y0})-({x1},{y1})"
            )));
        }
        Ok(Rect { x0, y0, x1, y1 })
    }

    /// Rectangle of the given size with top-left corner `(x0, y0)`.
    pub fn with_size(x0: usize, y0: usize, width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Geometry("rectangle with zero side".into()));
        }
        Rect::new(x0, y0, x0 + width - 1, y0 + height - 1)
    }

    pub fn width(&self) -> usize {
        self.x1 - self.x0 + 1
    }

    pub fn height(&self) -> usize {
        self.y1 - self.y0 + 1
    }

    /// Length of the longest side.
    pub fn long(&self) -> usize {
        self.width().max(self.height())
    }

    pub fn area(&self) -> usize {
        self.width() * self.height()
    }

    pub fn contains(&self, (x, y): Site) -> bool {
        (self.x0..=self.x1).contains(&x) && (self.y0..=self.y1).contains(&y)
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.x0 <= other.x0 && other.x1 <= self.x1 && self.y0 <= other.y0 && other.y1 <= self.y1
    }

    /// Smallest rectangle containing both.
    pub fn span(&self, other: &Rect) -> Rect {
        Rect {
            x0: self.x0.min(other.x0),
            y0: self.y0.min(other.y0),
            x1: self.x1.max(other.x1),
            y1: self.y1.max(other.y1),
        }
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (self.y0..=self.y1).flat_map(move |y| (self.x0..=self.x1).map(move |x| (x, y)))
    }
}

/// A subset of the lattice sites, same shape as the cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegionMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl RegionMask {
    pub fn empty(width: usize, height: usize) -> Self {
        RegionMask { width, height, bits: vec![false; width * height] }
    }

    pub fn full(width: usize, height: usize) -> Self {
        RegionMask { width, height, bits: vec![true; width * height] }
    }

    pub fn from_bits(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != width * height {
            return Err(Error::InvalidConfig(format!(
                "mask has {} bits, expected {}",
                bits.len(),
                width * height
            )));
        }
        Ok(RegionMask { width, height, bits })
    }

    pub fn from_rect(width: usize, height: usize, rect: &Rect) -> Result<Self> {
        if rect.x1 >= width || rect.y1 >= height {
            return Err(Error::Geometry(format!("{rect:?} exceeds {width}x{height} lattice")));
        }
        let mut mask = RegionMask::empty(width, height);
        for s in rect.sites() {
            mask.set(s, true);
        }
        Ok(mask)
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(Site) -> bool) -> Self {
        let bits = (0..width * height).map(|i| f((i % width, i / width))).collect();
        RegionMask { width, height, bits }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn contains(&self, (x, y): Site) -> bool {
        x < self.width && y < self.height && self.bits[y * self.width + x]
    }

    pub fn set(&mut self, (x, y): Site, on: bool) {
        self.bits[y * self.width + x] = on;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|b| *b)
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| (i % self.width, i / self.width))
    }

    pub fn intersect(&self, other: &RegionMask) -> RegionMask {
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| *a && *b).collect();
        RegionMask { width: self.width, height: self.height, bits }
    }
}

/// Neighbor counts of one target state around a site.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct NeighborStats {
    /// Neighbors in the target state.
    pub n: u8,
    /// Horizontal (west/east) neighbors in the target state.
    pub nh: u8,
    /// Vertical (north/south) neighbors in the target state.
    pub nv: u8,
    /// Number of coordinate directions with at least one such neighbor.
    pub nprime: u8,
}

impl NeighborStats {
    /// Stats from neighbor states ordered `[west, east, north, south]`; `None` means no neighbor.
    pub fn from_neighbors(neighbors: &[Option<State>; 4], target: State) -> Self {
        let hit = |i: usize| u8::from(neighbors[i] == Some(target));
        let nh = hit(0) + hit(1);
        let nv = hit(2) + hit(3);
        NeighborStats { n: nh + nv, nh, nv, nprime: u8::from(nh > 0) + u8::from(nv > 0) }
    }
}

/// A finite lattice configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    width: usize,
    height: usize,
    kappa: State,
    boundary: BoundaryMode,
    cells: Vec<State>,
    mask: Option<RegionMask>,
}

impl Config {
    /// Validating constructor. `mask` must be present exactly when `boundary` is `Masked`;
    /// masked-out cells are normalized to 0.
    pub fn new(
        width: usize,
        height: usize,
        kappa: State,
        boundary: BoundaryMode,
        mut cells: Vec<State>,
        mask: Option<RegionMask>,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidConfig("width and height must be positive".into()));
        }
        if kappa == 0 {
            return Err(Error::InvalidConfig("kappa must be positive".into()));
        }
        if cells.len() != width * height {
            return Err(Error::InvalidConfig(format!(
                "{} cells for a {width}x{height} lattice",
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|c| **c > kappa) {
            return Err(Error::InvalidConfig(format!("state {bad} exceeds kappa {kappa}")));
        }
        match (boundary, &mask) {
            (BoundaryMode::Masked, None) => {
                return Err(Error::InvalidConfig("masked boundary requires a mask".into()))
            }
            (BoundaryMode::Masked, Some(m)) => {
                if m.width != width || m.height != height {
                    return Err(Error::InvalidConfig("mask shape differs from lattice".into()));
                }
                if m.is_empty() {
                    return Err(Error::EmptyRegion);
                }
                for (c, on) in cells.iter_mut().zip(&m.bits) {
                    if !on {
                        *c = 0;
                    }
                }
            }
            (BoundaryMode::FrozenExterior(f), None) if f > kappa => {
                return Err(Error::InvalidConfig(format!(
                    "frozen exterior state {f} exceeds kappa {kappa}"
                )))
            }
            (_, None) => {}
            (_, Some(_)) => {
                return Err(Error::InvalidConfig("mask given without masked boundary".into()))
            }
        }
        Ok(Config { width, height, kappa, boundary, cells, mask })
    }

    /// Uniform configuration.
    pub fn filled(
        width: usize,
        height: usize,
        kappa: State,
        boundary: BoundaryMode,
        state: State,
    ) -> Result<Self> {
        let mask = (boundary == BoundaryMode::Masked).then(|| RegionMask::full(width, height));
        Config::new(width, height, kappa, boundary, vec![state; width * height], mask)
    }

    /// Builds a configuration from digit rows; `.` marks masked-out sites and forces `Masked`.
    pub fn from_rows(rows: &[&str], kappa: State, boundary: BoundaryMode) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let mut cells = Vec::with_capacity(width * height);
        let mut bits = Vec::with_capacity(width * height);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::Parse { line: i + 1, msg: "ragged row".into() });
            }
            for ch in row.chars() {
                match ch {
                    '.' => {
                        cells.push(0);
                        bits.push(false);
                    }
                    d if d.is_ascii_digit() => {
                        cells.push(d as u8 - b'0');
                        bits.push(true);
                    }
                    other => {
                        return Err(Error::Parse { line: i + 1, msg: format!("bad cell `{other}`") })
                    }
                }
            }
        }
        let any_dot = bits.iter().any(|b| !b);
        let mask = match boundary {
            BoundaryMode::Masked => Some(RegionMask::from_bits(width, height, bits)?),
            _ if any_dot => {
                return Err(Error::InvalidConfig("`.` requires the masked boundary".into()))
            }
            _ => None,
        };
        Config::new(width, height, kappa, boundary, cells, mask)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn kappa(&self) -> State {
        self.kappa
    }

    pub fn boundary(&self) -> BoundaryMode {
        self.boundary
    }

    pub fn mask(&self) -> Option<&RegionMask> {
        self.mask.as_ref()
    }

    pub fn cells(&self) -> &[State] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index(&self, (x, y): Site) -> usize {
        y * self.width + x
    }

    pub fn site(&self, idx: usize) -> Site {
        (idx % self.width, idx / self.width)
    }

    pub fn get(&self, (x, y): Site) -> State {
        self.cells[y * self.width + x]
    }

    /// Sets a cell. Panics on out-of-range sites or states above kappa.
    pub fn set(&mut self, (x, y): Site, state: State) {
        assert!(state <= self.kappa, "state {state} exceeds kappa {}", self.kappa);
        let idx = y * self.width + x;
        self.cells[idx] = state;
    }

    /// Whether the site takes part in the dynamics (always true unless masked out).
    pub fn in_domain(&self, (x, y): Site) -> bool {
        match &self.mask {
            Some(m) => m.contains((x, y)),
            None => x < self.width && y < self.height,
        }
    }

    pub(crate) fn in_domain_idx(&self, idx: usize) -> bool {
        self.mask.as_ref().is_none_or(|m| m.bits[idx])
    }

    /// Domain sites in row-major order.
    pub fn domain_sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.cells.len()).filter(|i| self.in_domain_idx(*i)).map(|i| self.site(i))
    }

    pub fn domain_size(&self) -> usize {
        self.mask.as_ref().map_or(self.cells.len(), RegionMask::count)
    }

    /// Number of domain sites in `state`.
    pub fn count(&self, state: State) -> usize {
        (0..self.cells.len())
            .filter(|i| self.cells[*i] == state && self.in_domain_idx(*i))
            .count()
    }

    /// Fraction of domain sites in each state `0..=kappa`.
    pub fn densities(&self) -> Vec<f64> {
        let mut counts = vec![0usize; self.kappa as usize + 1];
        for i in 0..self.cells.len() {
            if self.in_domain_idx(i) {
                counts[self.cells[i] as usize] += 1;
            }
        }
        let total = self.domain_size() as f64;
        counts.into_iter().map(|c| c as f64 / total).collect()
    }

    pub(crate) fn cells_mut(&mut self) -> &mut [State] {
        &mut self.cells
    }

    /// Same lattice with a different boundary; the mask is dropped unless `boundary` is `Masked`.
    pub fn with_boundary(&self, boundary: BoundaryMode, mask: Option<RegionMask>) -> Result<Self> {
        Config::new(self.width, self.height, self.kappa, boundary, self.cells.clone(), mask)
    }

    /// Sites of the in-domain neighbors, ordered `[west, east, north, south]`.
    pub fn neighbor_sites(&self, (x, y): Site) -> [Option<Site>; 4] {
        let (w, h) = (self.width, self.height);
        match self.boundary {
            BoundaryMode::Torus => [
                Some(((x + w - 1) % w, y)),
                Some(((x + 1) % w, y)),
                Some((x, (y + h - 1) % h)),
                Some((x, (y + 1) % h)),
            ],
            _ => {
                let raw = [
                    x.checked_sub(1).map(|x| (x, y)),
                    (x + 1 < w).then_some((x + 1, y)),
                    y.checked_sub(1).map(|y| (x, y)),
                    (y + 1 < h).then_some((x, y + 1)),
                ];
                match &self.mask {
                    Some(m) => raw.map(|s| s.filter(|s| m.contains(*s))),
                    None => raw,
                }
            }
        }
    }

    /// States of the four neighbors, ordered `[west, east, north, south]`.
    /// Frozen exterior neighbors report the frozen state; masked-out neighbors are `None`.
    pub fn neighbor_states(&self, site: Site) -> [Option<State>; 4] {
        let sites = self.neighbor_sites(site);
        match self.boundary {
            BoundaryMode::FrozenExterior(f) => sites.map(|s| Some(s.map_or(f, |s| self.get(s)))),
            _ => sites.map(|s| s.map(|s| self.get(s))),
        }
    }

    pub(crate) fn check_site(&self, (x, y): Site) -> Result<()> {
        if x >= self.width || y >= self.height {
            return Err(Error::Coordinate {
                x: x as i64,
                y: y as i64,
                width: self.width,
                height: self.height,
            });
        }
        Ok(())
    }
}

/// Counts of the neighbors of `site` in state `s`, respecting the boundary mode.
pub fn neighbor_stats(config: &Config, site: Site, s: State) -> Result<NeighborStats> {
    config.check_site(site)?;
    if !config.in_domain(site) {
        return Err(Error::Domain { x: site.0, y: site.1 });
    }
    Ok(NeighborStats::from_neighbors(&config.neighbor_states(site), s))
}

/// A maximal 4-connected set of equal-state sites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub sites: Vec<Site>,
    pub bbox: Rect,
    /// Maximum pairwise ℓ∞ distance (wrap-aware on the torus); 0 for a singleton.
    pub diameter: usize,
    /// The component exactly fills its bounding box.
    pub is_rectangle: bool,
}

/// Maximal 4-connected components of the sites in state `s`, in order of their first site.
pub fn components(config: &Config, s: State) -> Vec<Component> {
    let n = config.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] || config.cells[start] != s || !config.in_domain_idx(start) {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut sites = Vec::new();
        while let Some(idx) = queue.pop_front() {
            let site = config.site(idx);
            sites.push(site);
            for nb in config.neighbor_sites(site).into_iter().flatten() {
                let j = config.index(nb);
                if !seen[j] && config.cells[j] == s {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        sites.sort_unstable_by_key(|&(x, y)| (y, x));
        out.push(summarize(config, sites));
    }
    out
}

fn summarize(config: &Config, sites: Vec<Site>) -> Component {
    let (mut x0, mut y0, mut x1, mut y1) = (usize::MAX, usize::MAX, 0, 0);
    for &(x, y) in &sites {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let bbox = Rect { x0, y0, x1, y1 };
    let diameter = if config.boundary == BoundaryMode::Torus {
        let xs: Vec<usize> = sites.iter().map(|s| s.0).collect();
        let ys: Vec<usize> = sites.iter().map(|s| s.1).collect();
        circular_spread(xs, config.width).max(circular_spread(ys, config.height))
    } else {
        (x1 - x0).max(y1 - y0)
    };
    let is_rectangle = sites.len() == bbox.area();
    Component { sites, bbox, diameter, is_rectangle }
}

/// Largest pairwise distance on a cycle of length `n` among the given positions.
fn circular_spread(mut pos: Vec<usize>, n: usize) -> usize {
    pos.sort_unstable();
    pos.dedup();
    let k = pos.len();
    let mut best = 0;
    for &a in &pos {
        let target = (a + n / 2) % n;
        let i = pos.partition_point(|&p| p < target);
        for j in [i % k, (i + k - 1) % k] {
            let d = a.abs_diff(pos[j]);
            best = best.max(d.min(n - d));
        }
    }
    best
}
