//! Supportive vertices (SV1)-(SV3) and helpful rescaled boxes.
//!
//! `Cross(x)` is the union of the vertical band `[x-(m+1), x+(m+1)] x [y-N, y+N]` and the
//! horizontal band `[x-N, x+N] x [y-(m+1), y+(m+1)]`; `Segment(x)` is the row segment from
//! `x` to `x + (k+1)`.

use crate::error::{Error, Result};
use crate::grid::{Config, Rect, Site};
use crate::structure::boxes::BoxGeometry;
use crate::structure::Prefix2D;

/// Supportive-vertex checks against precomputed 2-counts.
pub struct SupportIndex<'a> {
    config: &'a Config,
    geom: BoxGeometry,
    twos: Prefix2D,
}

impl<'a> SupportIndex<'a> {
    pub fn new(config: &'a Config, geom: &BoxGeometry) -> Self {
        SupportIndex { config, geom: *geom, twos: Prefix2D::of_state(config, 2) }
    }

    /// Whether `Cross(x)` lies in the lattice.
    pub fn cross_fits(&self, (x, y): Site) -> bool {
        let reach = self.geom.cross_arm.max(self.geom.cross_halfwidth).max(self.geom.segment_len);
        x >= reach && y >= reach && x + reach < self.config.width() && y + reach < self.config.height()
    }

    pub fn is_supportive(&self, x: Site) -> Result<bool> {
        if !self.cross_fits(x) {
            return Err(Error::Geometry(format!("cross around {x:?} leaves the lattice")));
        }
        Ok(self.sv1(x) && self.sv2(x) && self.sv3(x))
    }

    fn sv1(&self, x: Site) -> bool {
        self.config.get(x) == 2
    }

    /// The first non-0 site right of `x` is a 2 at distance 2..=k+1.
    fn sv2(&self, (x, y): Site) -> bool {
        let limit = self.geom.segment_len;
        for d in 1..=limit {
            match self.config.get((x + d, y)) {
                0 => continue,
                2 => return d >= 2,
                _ => return false,
            }
        }
        false
    }

    /// No 2 in `Cross(x)` outside `Segment(x)`.
    fn sv3(&self, (x, y): Site) -> bool {
        let n = self.geom.cross_arm;
        let h = self.geom.cross_halfwidth;
        let t = &self.twos;
        let vertical = t.count(x - h, y - n, x + h, y + n);
        let horizontal = t.count(x - n, y - h, x + n, y + h);
        let both = t.count(x - h.min(n), y - h.min(n), x + h.min(n), y + h.min(n));
        let in_cross = vertical + horizontal - both;
        // Segment sites inside the cross (all of them when k + 1 <= N).
        let seg_end = x + self.geom.segment_len.min(n);
        let on_segment = t.count(x, y, seg_end, y);
        in_cross == on_segment
    }
}

pub fn is_supportive(config: &Config, x: Site, geom: &BoxGeometry) -> Result<bool> {
    SupportIndex::new(config, geom).is_supportive(x)
}

/// The rescaled box `Q_u` in array coordinates: centered at
/// `(W/2 + rescale*u1, H/2 - rescale*u2)` with half-side `floor((rescale-1)/2)`.
pub fn rescaled_box(config: &Config, u: (i64, i64), geom: &BoxGeometry) -> Result<Rect> {
    let r = geom.rescale as i64;
    let half = (r - 1) / 2;
    let cx = config.width() as i64 / 2 + r * u.0;
    let cy = config.height() as i64 / 2 - r * u.1;
    let (x0, y0, x1, y1) = (cx - half, cy - half, cx + half, cy + half);
    if x0 < 0 || y0 < 0 || x1 >= config.width() as i64 || y1 >= config.height() as i64 {
        return Err(Error::Geometry(format!("Q_{u:?} leaves the lattice")));
    }
    Ok(Rect { x0: x0 as usize, y0: y0 as usize, x1: x1 as usize, y1: y1 as usize })
}

/// Whether `Q_u` holds a supportive vertex at ℓ∞ distance at least `m + k + 4` from the
/// box's internal boundary.
pub fn is_helpful_box(config: &Config, u: (i64, i64), geom: &BoxGeometry) -> Result<bool> {
    let q = rescaled_box(config, u, geom)?;
    let depth = geom.m() + geom.k() + 4;
    if q.x0 + depth > q.x1 - depth || q.y0 + depth > q.y1 - depth {
        return Ok(false);
    }
    let core = Rect { x0: q.x0 + depth, y0: q.y0 + depth, x1: q.x1 - depth, y1: q.y1 - depth };
    let index = SupportIndex::new(config, geom);
    for corner in [(core.x0, core.y0), (core.x1, core.y1)] {
        if !index.cross_fits(corner) {
            return Err(Error::Geometry(format!("crosses in Q_{u:?} leave the lattice")));
        }
    }
    for s in core.sites() {
        if config.get(s) == 2 && index.is_supportive(s)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::BoundaryMode;

    fn geom() -> BoxGeometry {
        BoxGeometry {
            pbox_side: 4,
            qbox_side: 16,
            center_side: 8,
            frame_window: 12,
            cross_arm: 8,
            cross_halfwidth: 2,
            segment_len: 4,
            rescale: 21,
        }
    }

    fn lattice() -> Config {
        Config::filled(41, 41, 2, BoundaryMode::FrozenExterior(0), 1).unwrap()
    }

    #[test]
    fn two_zero_two() {
        let mut c = lattice();
        c.set((20, 20), 2);
        c.set((21, 20), 0);
        c.set((22, 20), 2);
        assert!(is_supportive(&c, (20, 20), &geom()).unwrap());
        assert!(!is_supportive(&c, (22, 20), &geom()).unwrap());
        c.set((20, 27), 2);
        assert!(!is_supportive(&c, (20, 20), &geom()).unwrap());
        c.set((20, 27), 1);
        c.set((27, 27), 2);
        assert!(is_supportive(&c, (20, 20), &geom()).unwrap());
        assert!(is_supportive(&c, (3, 3), &geom()).is_err());
    }

    #[test]
    fn sv1_and_sv2_edges() {
        let mut c = lattice();
        assert!(!is_supportive(&c, (20, 20), &geom()).unwrap());
        c.set((20, 20), 2);
        c.set((21, 20), 2);
        assert!(!is_supportive(&c, (20, 20), &geom()).unwrap());
        c.set((21, 20), 0);
        c.set((22, 20), 1);
        assert!(!is_supportive(&c, (20, 20), &geom()).unwrap());
    }

    #[test]
    fn helpful_box_depth() {
        let g = geom();
        let mut c = lattice();
        c.set((20, 20), 2);
        c.set((21, 20), 0);
        c.set((22, 20), 2);
        assert!(is_helpful_box(&c, (0, 0), &g).unwrap());
        // Q_0 spans 10..=30; depth m + k + 4 = 8 leaves 18..=22.
        let q = rescaled_box(&c, (0, 0), &g).unwrap();
        assert_eq!(q, Rect { x0: 10, y0: 10, x1: 30, y1: 30 });

        let mut c = lattice();
        c.set((17, 20), 2);
        c.set((18, 20), 0);
        c.set((19, 20), 2);
        assert!(is_supportive(&c, (17, 20), &g).unwrap());
        assert!(!is_helpful_box(&c, (0, 0), &g).unwrap());
    }
}
