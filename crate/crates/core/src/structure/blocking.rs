//! Blocking 0s: runs of 0s in a row flanked by 2s on both sides.

use crate::grid::{Config, RegionMask};

/// Sites in state 0 whose nearest non-0 site in the same row, on each side, exists and is
/// a 2. Rows do not wrap, whatever the boundary mode; masked-out sites end a run.
pub fn blocking_zeros(config: &Config) -> RegionMask {
    let (w, h) = (config.width(), config.height());
    let mut out = RegionMask::empty(w, h);
    for y in 0..h {
        let mut x = 0;
        while x < w {
            if !(config.in_domain((x, y)) && config.get((x, y)) == 0) {
                x += 1;
                continue;
            }
            let start = x;
            while x < w && config.in_domain((x, y)) && config.get((x, y)) == 0 {
                x += 1;
            }
            let left = start > 0 && config.in_domain((start - 1, y)) && config.get((start - 1, y)) == 2;
            let right = x < w && config.in_domain((x, y)) && config.get((x, y)) == 2;
            if left && right {
                for z in start..x {
                    out.set((z, y), true);
                }
            }
        }
    }
    out
}
