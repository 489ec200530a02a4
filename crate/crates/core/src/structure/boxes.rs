//! Box geometry, 1-crossable p-boxes and fillable q-boxes.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{Config, Rect};
use crate::structure::frames::FrameIndex;
use crate::structure::{state_at, Prefix2D};

/// Side lengths of the nested boxes and the supportive-vertex shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxGeometry {
    pub pbox_side: usize,
    pub qbox_side: usize,
    pub center_side: usize,
    /// Side of the sliding squares that must be frame-free.
    pub frame_window: usize,
    /// Arm length `N` of the cross.
    pub cross_arm: usize,
    /// Half-width `m + 1` of the cross bands.
    pub cross_halfwidth: usize,
    /// `k + 1`: the segment is `[0, k + 1] x {0}`.
    pub segment_len: usize,
    /// Spacing of the rescaled boxes, `floor(1/q) + 1`.
    pub rescale: usize,
}

fn floor_pos(v: f64) -> usize {
    if v.is_finite() && v > 0.0 {
        v.floor() as usize
    } else {
        0
    }
}

impl BoxGeometry {
    /// Sizes from `p` and `q` with natural logarithms; `m` and `k` are free.
    pub fn from_pq(p: f64, q: f64, m: usize, k: usize) -> Result<Self> {
        if !(0.0 < p && p < 1.0 && 0.0 < q && q < 1.0) {
            return Err(Error::Geometry(format!("p={p}, q={q} must lie in (0, 1)")));
        }
        let lp = (1.0 / p).ln();
        let lq = (1.0 / q).ln();
        let center_side = 2 * floor_pos(lq / q);
        let geom = BoxGeometry {
            pbox_side: 2 * floor_pos(lp / p),
            qbox_side: 2 * center_side,
            center_side,
            frame_window: 3 * floor_pos(lp * lq / p),
            cross_arm: 10 * floor_pos(1.0 / q),
            cross_halfwidth: m + 1,
            segment_len: k + 1,
            rescale: floor_pos(1.0 / q) + 1,
        };
        if geom.pbox_side == 0 || geom.center_side == 0 {
            return Err(Error::Geometry(format!("p={p}, q={q} give an empty box")));
        }
        Ok(geom)
    }

    /// `m` of the cross.
    pub fn m(&self) -> usize {
        self.cross_halfwidth - 1
    }

    /// `k` of the segment.
    pub fn k(&self) -> usize {
        self.segment_len - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossVariant {
    /// Rows and columns covered by 1s; no 2 in the box or the eight surrounding boxes.
    WithHalo,
    /// Rows and columns covered by 1s; no 2 in the box or on its external boundary ring.
    NoExternalTwo,
}

fn lines_have_one(config: &Config, b: &Rect) -> bool {
    (b.y0..=b.y1).all(|y| (b.x0..=b.x1).any(|x| config.get((x, y)) == 1 && config.in_domain((x, y))))
        && (b.x0..=b.x1).all(|x| (b.y0..=b.y1).any(|y| config.get((x, y)) == 1 && config.in_domain((x, y))))
}

fn has_two(config: &Config, x0: i64, y0: i64, x1: i64, y1: i64) -> bool {
    (y0..=y1).any(|y| (x0..=x1).any(|x| state_at(config, x, y) == Some(2)))
}

pub fn p_box_crossable(config: &Config, b: &Rect, variant: CrossVariant) -> Result<bool> {
    if b.x1 >= config.width() || b.y1 >= config.height() {
        return Err(Error::Geometry(format!("{b:?} leaves the lattice")));
    }
    let (x0, y0, x1, y1) = (b.x0 as i64, b.y0 as i64, b.x1 as i64, b.y1 as i64);
    match variant {
        CrossVariant::WithHalo => {
            let (w, h) = (b.width() as i64, b.height() as i64);
            let (hx0, hy0, hx1, hy1) = (x0 - w, y0 - h, x1 + w, y1 + h);
            if hx0 < 0 || hy0 < 0 || hx1 >= config.width() as i64 || hy1 >= config.height() as i64 {
                return Err(Error::Geometry(format!("halo of {b:?} leaves the lattice")));
            }
            Ok(lines_have_one(config, b) && !has_two(config, hx0, hy0, hx1, hy1))
        }
        CrossVariant::NoExternalTwo => {
            Ok(lines_have_one(config, b) && !has_two(config, x0 - 1, y0 - 1, x1 + 1, y1 + 1))
        }
    }
}

/// Adjacency between tiles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TileAdjacency {
    /// Edge-sharing tiles.
    #[default]
    Four,
    /// Edge- or corner-sharing tiles.
    Eight,
}

impl TileAdjacency {
    fn offsets(self) -> &'static [(i64, i64)] {
        match self {
            TileAdjacency::Four => &[(-1, 0), (1, 0), (0, -1), (0, 1)],
            TileAdjacency::Eight => &[(-1, 0), (1, 0), (0, -1), (0, 1), (-1, -1), (1, -1), (-1, 1), (1, 1)],
        }
    }

    fn dual(self) -> Self {
        match self {
            TileAdjacency::Four => TileAdjacency::Eight,
            TileAdjacency::Eight => TileAdjacency::Four,
        }
    }

    fn adjacent(self, a: (usize, usize), b: (usize, usize)) -> bool {
        let (dx, dy) = (a.0.abs_diff(b.0), a.1.abs_diff(b.1));
        match self {
            TileAdjacency::Four => dx + dy == 1,
            TileAdjacency::Eight => dx.max(dy) == 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FillabilityReport {
    pub f1: bool,
    pub f2: bool,
    pub f3: bool,
    pub f4: bool,
    /// Closed walk of tile indices `(column, row)`; the last tile is adjacent to the first.
    pub circuit_witness: Option<Vec<(usize, usize)>>,
    pub frame_witness: Option<Rect>,
    /// A 5x5 square holding more than two 2s.
    pub crowded_square: Option<Rect>,
    /// Largest tile diameter among the components checked by F2.
    pub max_component_diameter: Option<usize>,
}

impl fmt::Display for FillabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |v: bool| u8::from(v);
        write!(f, "F1={} F2={} F3={} F4={}", b(self.f1), b(self.f2), b(self.f3), b(self.f4))?;
        if let Some(c) = &self.circuit_witness {
            let tiles: Vec<String> = c.iter().map(|(x, y)| format!("{x},{y}")).collect();
            write!(f, " circuit={}", tiles.join(";"))?;
        }
        if let Some(r) = &self.frame_witness {
            write!(f, " frame={},{},{},{}", r.x0, r.y0, r.x1, r.y1)?;
        }
        if let Some(r) = &self.crowded_square {
            write!(f, " crowded={},{},{},{}", r.x0, r.y0, r.x1, r.y1)?;
        }
        if let Some(d) = self.max_component_diameter {
            write!(f, " max_diam={d}")?;
        }
        Ok(())
    }
}

/// Tiling of a q-box by p-boxes.
#[derive(Clone, Debug)]
pub struct Tiling {
    pub qbox: Rect,
    pub side: usize,
    pub cols: usize,
    pub rows: usize,
    pub center: Rect,
}

impl Tiling {
    pub fn new(config: &Config, qbox: &Rect, geom: &BoxGeometry) -> Result<Self> {
        let side = geom.pbox_side;
        if qbox.x1 >= config.width() || qbox.y1 >= config.height() {
            return Err(Error::Geometry(format!("{qbox:?} leaves the lattice")));
        }
        if side == 0 || !qbox.width().is_multiple_of(side) || !qbox.height().is_multiple_of(side) {
            return Err(Error::Geometry(format!(
                "{}x{} q-box is not tiled by {side}-boxes",
                qbox.width(),
                qbox.height()
            )));
        }
        let cs = geom.center_side;
        if cs == 0 || cs > qbox.width() || cs > qbox.height() || !(qbox.width() - cs).is_multiple_of(2) || !(qbox.height() - cs).is_multiple_of(2) {
            return Err(Error::Geometry(format!("center box of side {cs} is not centered in {qbox:?}")));
        }
        let ox = qbox.x0 + (qbox.width() - cs) / 2;
        let oy = qbox.y0 + (qbox.height() - cs) / 2;
        Ok(Tiling {
            qbox: *qbox,
            side,
            cols: qbox.width() / side,
            rows: qbox.height() / side,
            center: Rect { x0: ox, y0: oy, x1: ox + cs - 1, y1: oy + cs - 1 },
        })
    }

    pub fn tile_rect(&self, (i, j): (usize, usize)) -> Rect {
        let x0 = self.qbox.x0 + i * self.side;
        let y0 = self.qbox.y0 + j * self.side;
        Rect { x0, y0, x1: x0 + self.side - 1, y1: y0 + self.side - 1 }
    }

    pub fn is_center_tile(&self, t: (usize, usize)) -> bool {
        let r = self.tile_rect(t);
        r.x0 <= self.center.x1 && self.center.x0 <= r.x1 && r.y0 <= self.center.y1 && self.center.y0 <= r.y1
    }

    fn idx(&self, (i, j): (usize, usize)) -> usize {
        j * self.cols + i
    }

    fn tile(&self, idx: usize) -> (usize, usize) {
        (idx % self.cols, idx / self.cols)
    }

    fn neighbors(&self, t: (usize, usize), adj: TileAdjacency) -> impl Iterator<Item = (usize, usize)> + '_ {
        adj.offsets().iter().filter_map(move |(dx, dy)| {
            let (x, y) = (t.0 as i64 + dx, t.1 as i64 + dy);
            ((0..self.cols as i64).contains(&x) && (0..self.rows as i64).contains(&y)).then_some((x as usize, y as usize))
        })
    }

    fn on_border(&self, (i, j): (usize, usize)) -> bool {
        i == 0 || j == 0 || i + 1 == self.cols || j + 1 == self.rows
    }

    pub fn crossable(&self, config: &Config) -> Vec<bool> {
        (0..self.cols * self.rows)
            .map(|k| {
                p_box_crossable(config, &self.tile_rect(self.tile(k)), CrossVariant::NoExternalTwo)
                    .expect("tiles lie in the lattice")
            })
            .collect()
    }
}

/// Parity of the number of times the closed walk crosses the rightward ray from `p`
/// (taken just above the row of `p`). The walk must not visit `p`.
pub fn winding_parity(walk: &[(usize, usize)], p: (usize, usize)) -> bool {
    (0..walk.len()).filter(|&k| edge_crosses(walk[k], walk[(k + 1) % walk.len()], p)).count() % 2 == 1
}

/// Whether the unit step `a -> b` crosses the rightward ray from `p`.
fn edge_crosses(a: (usize, usize), b: (usize, usize), p: (usize, usize)) -> bool {
    let (px, py) = (p.0 as i64, p.1 as i64);
    let (ax, ay, bx, by) = (a.0 as i64, a.1 as i64, b.0 as i64, b.1 as i64);
    if (ay <= py) == (by <= py) {
        return false;
    }
    // Steps change the row by one, so one endpoint sits on row py.
    let lx = if ay <= py { ax } else { bx };
    lx > px
}

/// Checks a circuit witness from scratch: closed, adjacent steps, every tile 1-crossable,
/// no center tile visited, and odd winding around every center tile.
pub fn verify_circuit(
    config: &Config,
    qbox: &Rect,
    geom: &BoxGeometry,
    adjacency: TileAdjacency,
    walk: &[(usize, usize)],
) -> Result<bool> {
    let tiling = Tiling::new(config, qbox, geom)?;
    if walk.len() < 2 {
        return Ok(false);
    }
    for (k, &t) in walk.iter().enumerate() {
        if t.0 >= tiling.cols || t.1 >= tiling.rows || tiling.is_center_tile(t) {
            return Ok(false);
        }
        if !adjacency.adjacent(t, walk[(k + 1) % walk.len()]) {
            return Ok(false);
        }
        if !p_box_crossable(config, &tiling.tile_rect(t), CrossVariant::NoExternalTwo)? {
            return Ok(false);
        }
    }
    for j in 0..tiling.rows {
        for i in 0..tiling.cols {
            if tiling.is_center_tile((i, j)) && !winding_parity(walk, (i, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn flood(
    tiling: &Tiling,
    seeds: impl IntoIterator<Item = usize>,
    adj: TileAdjacency,
    mut allowed: impl FnMut(usize) -> bool,
) -> Vec<bool> {
    let mut seen = vec![false; tiling.cols * tiling.rows];
    let mut queue = VecDeque::new();
    for s in seeds {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(k) = queue.pop_front() {
        for nb in tiling.neighbors(tiling.tile(k), adj) {
            let n = tiling.idx(nb);
            if !seen[n] && allowed(n) {
                seen[n] = true;
                queue.push_back(n);
            }
        }
    }
    seen
}

/// Closed walk through `allowed` tiles crossing the ray from `p` an odd number of times,
/// found by breadth-first search on (tile, parity) pairs.
fn odd_walk(tiling: &Tiling, adj: TileAdjacency, allowed: &[bool], p: (usize, usize)) -> Option<Vec<(usize, usize)>> {
    let n = tiling.cols * tiling.rows;
    for start in (0..n).filter(|k| allowed[*k]) {
        let mut prev = vec![usize::MAX; 2 * n];
        let s0 = 2 * start;
        prev[s0] = s0;
        let mut queue = VecDeque::from([s0]);
        while let Some(state) = queue.pop_front() {
            let (k, par) = (state / 2, state % 2);
            let t = tiling.tile(k);
            for nb in tiling.neighbors(t, adj) {
                let m = tiling.idx(nb);
                if !allowed[m] {
                    continue;
                }
                let next = 2 * m + (par ^ usize::from(edge_crosses(t, nb, p)));
                if prev[next] == usize::MAX {
                    prev[next] = state;
                    queue.push_back(next);
                }
            }
        }
        let target = 2 * start + 1;
        if prev[target] == usize::MAX {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = target;
        while cur != s0 {
            walk.push(tiling.tile(cur / 2));
            cur = prev[cur];
        }
        walk.reverse();
        return Some(walk);
    }
    None
}

/// Conditions (F1)-(F4) of a q-box, with 4-adjacent circuits.
pub fn q_box_fillable(config: &Config, qbox: &Rect, geom: &BoxGeometry, diam_limit: usize) -> Result<FillabilityReport> {
    q_box_fillable_with(config, qbox, geom, diam_limit, TileAdjacency::Four)
}

pub fn q_box_fillable_with(
    config: &Config,
    qbox: &Rect,
    geom: &BoxGeometry,
    diam_limit: usize,
    adjacency: TileAdjacency,
) -> Result<FillabilityReport> {
    let tiling = Tiling::new(config, qbox, geom)?;
    let mut report = FillabilityReport::default();
    circuit_conditions(config, &tiling, adjacency, diam_limit, &mut report);
    sparsity_conditions(config, &tiling, geom, &mut report);
    let twos = Prefix2D::of_state(config, 2);
    let c = tiling.center;
    report.f4 = (c.y0..=c.y1).all(|y| twos.count(c.x0, y, c.x1, y) > 0)
        && (c.x0..=c.x1).all(|x| twos.count(x, c.y0, x, c.y1) > 0);
    Ok(report)
}

/// F1 and F2. The innermost circuit is the outer boundary of `F`: the center tiles, the
/// closed tiles reachable from them by dual steps, and everything those enclose.
fn circuit_conditions(config: &Config, tiling: &Tiling, adj: TileAdjacency, diam_limit: usize, report: &mut FillabilityReport) {
    let n = tiling.cols * tiling.rows;
    let crossable = tiling.crossable(config);
    let center: Vec<usize> = (0..n).filter(|k| tiling.is_center_tile(tiling.tile(*k))).collect();
    let inner = flood(tiling, center.iter().copied(), adj.dual(), |k| !crossable[k]);
    if (0..n).any(|k| inner[k] && tiling.on_border(tiling.tile(k))) {
        return;
    }
    let border_seeds = (0..n).filter(|k| !inner[*k] && tiling.on_border(tiling.tile(*k)));
    let outside = flood(tiling, border_seeds, adj, |k| !inner[k]);
    let enclosed: Vec<bool> = outside.iter().map(|o| !o).collect();
    let ring: Vec<bool> = (0..n)
        .map(|k| outside[k] && tiling.neighbors(tiling.tile(k), adj.dual()).any(|t| enclosed[tiling.idx(t)]))
        .collect();
    let p = tiling.tile(center[0]);
    let walk = odd_walk(tiling, adj, &ring, p).or_else(|| {
        let open: Vec<bool> = (0..n).map(|k| crossable[k] && !tiling.is_center_tile(tiling.tile(k))).collect();
        odd_walk(tiling, adj, &open, p)
    });
    let Some(walk) = walk else { return };
    report.f1 = true;
    report.circuit_witness = Some(walk);

    // F2: enclosed tiles not joined to the circuit through crossable tiles.
    let ring_seeds = (0..n).filter(|k| ring[*k]);
    let joined = flood(tiling, ring_seeds, TileAdjacency::Four, |k| enclosed[k] && crossable[k]);
    let rest: Vec<bool> = (0..n).map(|k| enclosed[k] && !joined[k]).collect();
    let mut seen = vec![false; n];
    let mut worst = 0;
    for s in 0..n {
        if !rest[s] || seen[s] {
            continue;
        }
        let comp = flood(tiling, [s], TileAdjacency::Four, |k| rest[k]);
        let tiles: Vec<(usize, usize)> = (0..n).filter(|k| comp[*k]).map(|k| tiling.tile(k)).collect();
        for k in (0..n).filter(|k| comp[*k]) {
            seen[k] = true;
        }
        let span = |f: fn(&(usize, usize)) -> usize| {
            let lo = tiles.iter().map(f).min().unwrap_or(0);
            let hi = tiles.iter().map(f).max().unwrap_or(0);
            hi - lo
        };
        worst = worst.max(span(|t| t.0).max(span(|t| t.1)));
    }
    report.max_component_diameter = Some(worst);
    report.f2 = worst <= diam_limit;
}

fn sparsity_conditions(config: &Config, tiling: &Tiling, geom: &BoxGeometry, report: &mut FillabilityReport) {
    let q = tiling.qbox;
    let twos = Prefix2D::of_state(config, 2);
    let mut crowded = None;
    if q.width() >= 5 && q.height() >= 5 {
        'outer: for y in q.y0..=q.y1 - 4 {
            for x in q.x0..=q.x1 - 4 {
                if twos.count(x, y, x + 4, y + 4) > 2 {
                    crowded = Some(Rect { x0: x, y0: y, x1: x + 4, y1: y + 4 });
                    break 'outer;
                }
            }
        }
    }
    let window = geom.frame_window.min(q.width()).min(q.height());
    let frame = if crowded.is_none() { FrameIndex::new(config).find_within(&q, window) } else { None };
    report.f3 = crowded.is_none() && frame.is_none();
    report.crowded_square = crowded;
    report.frame_witness = frame;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::BoundaryMode;

    #[test]
    fn geometry_from_pq() {
        let g = BoxGeometry::from_pq(0.1, 0.05, 2, 5).unwrap();
        // (1/0.1) ln 10 = 23.03; (1/0.05) ln 20 = 59.9; 10 * 2.303 * 2.996 = 68.99.
        assert_eq!(g.pbox_side, 46);
        assert_eq!(g.center_side, 118);
        assert_eq!(g.qbox_side, 236);
        assert_eq!(g.frame_window, 3 * 68);
        assert_eq!(g.cross_arm, 200);
        assert_eq!(g.rescale, 21);
        assert_eq!((g.m(), g.k()), (2, 5));
    }

    #[test]
    fn crossable_examples() {
        let mut c = Config::filled(9, 9, 2, BoundaryMode::FrozenExterior(1), 1).unwrap();
        let b = Rect { x0: 3, y0: 3, x1: 5, y1: 5 };
        assert!(p_box_crossable(&c, &b, CrossVariant::WithHalo).unwrap());
        assert!(p_box_crossable(&c, &b, CrossVariant::NoExternalTwo).unwrap());
        c.set((2, 2), 2);
        assert!(!p_box_crossable(&c, &b, CrossVariant::WithHalo).unwrap());
        assert!(!p_box_crossable(&c, &b, CrossVariant::NoExternalTwo).unwrap());
        c.set((2, 2), 1);
        c.set((0, 0), 2);
        assert!(!p_box_crossable(&c, &b, CrossVariant::WithHalo).unwrap());
        assert!(p_box_crossable(&c, &b, CrossVariant::NoExternalTwo).unwrap());
        for y in 3..=5 {
            c.set((4, y), 0);
        }
        assert!(!p_box_crossable(&c, &b, CrossVariant::NoExternalTwo).unwrap());
        assert!(p_box_crossable(&c, &Rect { x0: 1, y0: 1, x1: 3, y1: 3 }, CrossVariant::WithHalo).is_err());
    }

    #[test]
    fn winding() {
        let ring = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)];
        assert!(winding_parity(&ring, (1, 1)));
        assert!(!winding_parity(&ring, (3, 1)));
    }
}
