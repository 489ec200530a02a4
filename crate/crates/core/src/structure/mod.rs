//! Structural predicates and witnesses: internal spanning, rectangle witnesses, blocking
//! 0s, frames, crossable and fillable boxes, protected regions, shells and supportive
//! vertices.

pub mod al;
pub mod blocking;
pub mod boxes;
pub mod frames;
pub mod protection;
pub mod shell;
pub mod spanning;
pub mod support;

use crate::grid::{BoundaryMode, Config, Rect, State};

/// Inclusive-rectangle counts of sites matching a predicate, in O(1) per query.
#[derive(Clone, Debug)]
pub struct Prefix2D {
    width: usize,
    sums: Vec<u32>,
}

impl Prefix2D {
    pub fn new(width: usize, height: usize, mut hit: impl FnMut(usize, usize) -> bool) -> Self {
        let w1 = width + 1;
        let mut sums = vec![0u32; w1 * (height + 1)];
        for y in 0..height {
            let mut row = 0u32;
            for x in 0..width {
                row += u32::from(hit(x, y));
                sums[(y + 1) * w1 + x + 1] = sums[y * w1 + x + 1] + row;
            }
        }
        Prefix2D { width, sums }
    }

    /// Counts domain sites of `config` in state `s`.
    pub fn of_state(config: &Config, s: State) -> Self {
        Prefix2D::new(config.width(), config.height(), |x, y| {
            config.get((x, y)) == s && config.in_domain((x, y))
        })
    }

    /// Count inside `[x0, x1] x [y0, y1]`; the rectangle must lie in the lattice.
    #[inline]
    pub fn count(&self, x0: usize, y0: usize, x1: usize, y1: usize) -> u32 {
        let w1 = self.width + 1;
        self.sums[(y1 + 1) * w1 + x1 + 1] + self.sums[y0 * w1 + x0]
            - self.sums[y0 * w1 + x1 + 1]
            - self.sums[(y1 + 1) * w1 + x0]
    }

    pub fn count_rect(&self, r: &Rect) -> u32 {
        self.count(r.x0, r.y0, r.x1, r.y1)
    }
}

/// State seen at a possibly out-of-range position under the configuration's boundary mode:
/// torus positions wrap, frozen exteriors report the frozen state, masked-out sites are `None`.
pub fn state_at(config: &Config, x: i64, y: i64) -> Option<State> {
    let (w, h) = (config.width() as i64, config.height() as i64);
    match config.boundary() {
        BoundaryMode::Torus => Some(config.get((x.rem_euclid(w) as usize, y.rem_euclid(h) as usize))),
        BoundaryMode::FrozenExterior(f) => {
            if (0..w).contains(&x) && (0..h).contains(&y) {
                Some(config.get((x as usize, y as usize)))
            } else {
                Some(f)
            }
        }
        BoundaryMode::Masked => {
            let site = (x as usize, y as usize);
            ((0..w).contains(&x) && (0..h).contains(&y) && config.in_domain(site)).then(|| config.get(site))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_counts() {
        let c = Config::from_rows(&["212", "022", "100"], 2, BoundaryMode::Torus).unwrap();
        let p = Prefix2D::of_state(&c, 2);
        assert_eq!(p.count(0, 0, 2, 2), 4);
        assert_eq!(p.count(1, 1, 2, 2), 2);
        assert_eq!(p.count(0, 2, 2, 2), 0);
        assert_eq!(p.count(2, 0, 2, 0), 1);
    }

    #[test]
    fn boundary_lookup() {
        let c = Config::from_rows(&["12"], 2, BoundaryMode::Torus).unwrap();
        assert_eq!(state_at(&c, -1, 3), Some(2));
        let c = Config::from_rows(&["12"], 2, BoundaryMode::FrozenExterior(0)).unwrap();
        assert_eq!(state_at(&c, -1, 0), Some(0));
        let c = Config::from_rows(&["1."], 2, BoundaryMode::Masked).unwrap();
        assert_eq!(state_at(&c, 1, 0), None);
    }
}
