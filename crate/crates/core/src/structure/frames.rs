//! Frames: rectangles with at least 6 rows or columns, a 2 on every side, and for every
//! side a second 2 inside the rectangle within distance 2 of that side.
//!
//! For a site inside the rectangle, its distance to a side is the perpendicular offset
//! under both the ℓ∞ and ℓ¹ readings, so the "within distance 2" strip of a side is the
//! three lines nearest to it in either case.

use crate::grid::{Config, Rect};
use crate::structure::Prefix2D;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FrameMetric {
    #[default]
    LInf,
    L1,
}

/// Frame test against precomputed 2-counts.
pub struct FrameIndex {
    twos: Prefix2D,
}

impl FrameIndex {
    pub fn new(config: &Config) -> Self {
        FrameIndex { twos: Prefix2D::of_state(config, 2) }
    }

    fn side_ok(&self, line: (usize, usize, usize, usize), strip: (usize, usize, usize, usize)) -> bool {
        self.twos.count(line.0, line.1, line.2, line.3) >= 1
            && self.twos.count(strip.0, strip.1, strip.2, strip.3) >= 2
    }

    /// Whether `r` is a frame. Both metrics give the same strips (see the module docs).
    pub fn is_frame(&self, r: &Rect, _metric: FrameMetric) -> bool {
        let Rect { x0, y0, x1, y1 } = *r;
        if r.width() < 6 && r.height() < 6 {
            return false;
        }
        let ys = (y0 + 2).min(y1);
        let ye = y1.saturating_sub(2).max(y0);
        let xs = (x0 + 2).min(x1);
        let xe = x1.saturating_sub(2).max(x0);
        self.side_ok((x0, y0, x1, y0), (x0, y0, x1, ys))
            && self.side_ok((x0, y1, x1, y1), (x0, ye, x1, y1))
            && self.side_ok((x0, y0, x0, y1), (x0, y0, xs, y1))
            && self.side_ok((x1, y0, x1, y1), (xe, y0, x1, y1))
    }

    /// Some frame inside `region` whose width and height are both at most `max_side`.
    pub fn find_within(&self, region: &Rect, max_side: usize) -> Option<Rect> {
        let t = &self.twos;
        for y0 in region.y0..=region.y1 {
            if t.count(region.x0, y0, region.x1, y0) == 0 {
                continue;
            }
            let y_hi = region.y1.min(y0 + max_side.saturating_sub(1));
            for y1 in y0..=y_hi {
                if t.count(region.x0, y1, region.x1, y1) == 0 {
                    continue;
                }
                if let Some(r) = self.scan_columns(region, y0, y1, max_side) {
                    return Some(r);
                }
            }
        }
        None
    }

    fn scan_columns(&self, region: &Rect, y0: usize, y1: usize, max_side: usize) -> Option<Rect> {
        let t = &self.twos;
        let h = y1 - y0 + 1;
        let tall = h >= 6;
        let (rx0, rx1) = (region.x0, region.x1);
        // Narrow rectangles: the side strips overlap, so test them directly.
        if tall {
            for x0 in rx0..=rx1 {
                for w in 1..=2.min(max_side) {
                    let x1 = x0 + w - 1;
                    if x1 > rx1 {
                        break;
                    }
                    let r = Rect { x0, y0, x1, y1 };
                    if self.is_frame(&r, FrameMetric::LInf) {
                        return Some(r);
                    }
                }
            }
        }
        if max_side < 3 || rx1 - rx0 + 1 < 3 {
            return None;
        }
        let col = |x: usize| t.count(x, y0, x, y1);
        let left_ok = |x: usize| x + 2 <= rx1 && col(x) >= 1 && t.count(x, y0, x + 2, y1) >= 2;
        let right_ok = |x: usize| x >= rx0 + 2 && col(x) >= 1 && t.count(x - 2, y0, x, y1) >= 2;
        // next_right[x - rx0] = smallest x' >= x with a valid right side.
        let n = rx1 - rx0 + 1;
        let mut next_right = vec![usize::MAX; n + 1];
        for i in (0..n).rev() {
            next_right[i] = if right_ok(rx0 + i) { rx0 + i } else { next_right[i + 1] };
        }
        let ys = (y0 + 2).min(y1);
        let ye = y1.saturating_sub(2).max(y0);
        // Top and bottom conditions only get easier as the interval grows.
        let horiz_ok = |x0: usize, x1: usize| {
            t.count(x0, y0, x1, y0) >= 1
                && t.count(x0, y0, x1, ys) >= 2
                && t.count(x0, y1, x1, y1) >= 1
                && t.count(x0, ye, x1, y1) >= 2
        };
        let mut x1_min = rx0;
        for x0 in rx0..=rx1 - 2 {
            x1_min = x1_min.max(x0 + 2);
            if !left_ok(x0) {
                continue;
            }
            let x1_max = rx1.min(x0 + max_side - 1);
            while x1_min <= x1_max && !horiz_ok(x0, x1_min) {
                x1_min += 1;
            }
            if x1_min > x1_max {
                continue;
            }
            let lo = if tall { x1_min } else { x1_min.max(x0 + 5) };
            if lo > x1_max {
                continue;
            }
            let cand = next_right[lo - rx0];
            if cand <= x1_max {
                return Some(Rect { x0, y0, x1: cand, y1 });
            }
        }
        None
    }
}

/// All frames inside `region` (clipped to the lattice), in row-major order of their
/// corners, under the default ℓ∞ reading.
pub fn find_frames(config: &Config, region: &Rect) -> Vec<Rect> {
    find_frames_with(config, region, FrameMetric::LInf)
}

pub fn find_frames_with(config: &Config, region: &Rect, metric: FrameMetric) -> Vec<Rect> {
    let Some(region) = clip(config, region) else { return Vec::new() };
    let index = FrameIndex::new(config);
    let mut out = Vec::new();
    for y0 in region.y0..=region.y1 {
        for x0 in region.x0..=region.x1 {
            for y1 in y0..=region.y1 {
                for x1 in x0..=region.x1 {
                    let r = Rect { x0, y0, x1, y1 };
                    if index.is_frame(&r, metric) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}

/// Some frame inside `region` fitting in a `max_side x max_side` square.
pub fn frame_within(config: &Config, region: &Rect, max_side: usize) -> Option<Rect> {
    let region = clip(config, region)?;
    FrameIndex::new(config).find_within(&region, max_side)
}

fn clip(config: &Config, r: &Rect) -> Option<Rect> {
    if r.x0 >= config.width() || r.y0 >= config.height() {
        return None;
    }
    Some(Rect { x0: r.x0, y0: r.y0, x1: r.x1.min(config.width() - 1), y1: r.y1.min(config.height() - 1) })
}
