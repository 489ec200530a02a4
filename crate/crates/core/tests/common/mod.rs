//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use twostage::{BoundaryMode, Config, Rect, RegionMask};

/// Neighbor states `[W, E, N, S]`, computed straight from the boundary definitions.
pub fn oracle_neighbors(c: &Config, x: usize, y: usize) -> [Option<u8>; 4] {
    let (w, h) = (c.width() as i64, c.height() as i64);
    let offsets = [(-1i64, 0i64), (1, 0), (0, -1), (0, 1)];
    offsets.map(|(dx, dy)| {
        let (nx, ny) = (x as i64 + dx, y as i64 + dy);
        match c.boundary() {
            BoundaryMode::Torus => Some(c.get((nx.rem_euclid(w) as usize, ny.rem_euclid(h) as usize))),
            BoundaryMode::FrozenExterior(f) => {
                if nx < 0 || ny < 0 || nx >= w || ny >= h {
                    Some(f)
                } else {
                    Some(c.get((nx as usize, ny as usize)))
                }
            }
            BoundaryMode::Masked => {
                if nx < 0 || ny < 0 || nx >= w || ny >= h {
                    return None;
                }
                let s = (nx as usize, ny as usize);
                let inside = c.mask().is_none_or(|m| m.contains(s));
                inside.then(|| c.get(s))
            }
        }
    })
}

fn count(nb: &[Option<u8>; 4], t: u8) -> usize {
    nb.iter().filter(|v| **v == Some(t)).count()
}

fn dirs(nb: &[Option<u8>; 4], t: u8) -> usize {
    usize::from(nb[0] == Some(t) || nb[1] == Some(t)) + usize::from(nb[2] == Some(t) || nb[3] == Some(t))
}

/// The update rule of each named family, written out case by case.
pub fn oracle_next(rule: &str, kappa: u8, cur: u8, nb: &[Option<u8>; 4]) -> u8 {
    match (rule, cur) {
        ("multicolor", s) if s < kappa => {
            if count(nb, s + 1) >= 2 {
                s + 1
            } else {
                s
            }
        }
        ("multicolor", s) => s,
        ("competition", 0) => match (count(nb, 1) >= 2, count(nb, 2) >= 2) {
            (true, false) => 1,
            (false, true) => 2,
            _ => 0,
        },
        ("competition", s) => s,
        ("standard" | "standard-n2p" | "polluted-standard" | "cyclic", 0) if count(nb, 1) >= 2 => 1,
        ("modified" | "modified-n2p" | "polluted-modified", 0) if dirs(nb, 1) == 2 => 1,
        ("standard" | "modified" | "cyclic", 1) if count(nb, 2) >= 2 => 2,
        ("standard-n2p" | "modified-n2p", 1) if dirs(nb, 2) == 2 => 2,
        ("cyclic", 2) if count(nb, 0) >= 2 => 0,
        (_, s) => s,
    }
}

pub fn oracle_step(c: &Config, rule: &str) -> Config {
    let mut next = c.clone();
    for y in 0..c.height() {
        for x in 0..c.width() {
            if c.in_domain((x, y)) {
                next.set((x, y), oracle_next(rule, c.kappa(), c.get((x, y)), &oracle_neighbors(c, x, y)));
            }
        }
    }
    next
}

/// Trajectory up to (and including) the first repeated configuration or `limit` steps.
pub fn oracle_trajectory(c: &Config, rule: &str, limit: usize) -> Vec<Config> {
    let mut traj = vec![c.clone()];
    for _ in 0..limit {
        let next = oracle_step(traj.last().unwrap(), rule);
        let seen = traj.contains(&next);
        traj.push(next);
        if seen {
            break;
        }
    }
    traj
}

pub fn oracle_fixpoint(c: &Config, rule: &str) -> Config {
    let mut cur = c.clone();
    loop {
        let next = oracle_step(&cur, rule);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Classic 2-neighbor bootstrap closure of `seed` on a `w x h` box (no wrap) or torus.
pub fn bootstrap_closure(seed: &[bool], w: usize, h: usize, torus: bool) -> Vec<bool> {
    let mut on = seed.to_vec();
    loop {
        let mut changed = false;
        let snapshot = on.clone();
        for y in 0..h {
            for x in 0..w {
                if snapshot[y * w + x] {
                    continue;
                }
                let mut n = 0;
                for (dx, dy) in [(-1i64, 0i64), (1, 0), (0, -1), (0, 1)] {
                    let (mut nx, mut ny) = (x as i64 + dx, y as i64 + dy);
                    if torus {
                        nx = nx.rem_euclid(w as i64);
                        ny = ny.rem_euclid(h as i64);
                    } else if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                        continue;
                    }
                    n += usize::from(snapshot[ny as usize * w + nx as usize]);
                }
                if n >= 2 {
                    on[y * w + x] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return on;
        }
    }
}

/// Frame check straight from the definition. For a site inside the rectangle, its ℓ¹ and
/// ℓ∞ distances to a side segment are both the perpendicular offset.
pub fn oracle_is_frame(c: &Config, r: &Rect) -> bool {
    if r.width() < 6 && r.height() < 6 {
        return false;
    }
    let twos: Vec<(usize, usize)> = r.sites().filter(|&s| c.get(s) == 2).collect();
    // Distance from a site inside r to each side segment.
    let dist = |(x, y): (usize, usize), side: usize| -> usize {
        match side {
            0 => y - r.y0,
            1 => r.y1 - y,
            2 => x - r.x0,
            _ => r.x1 - x,
        }
    };
    (0..4).all(|side| {
        twos.iter().any(|&v| {
            dist(v, side) == 0 && twos.iter().any(|&w| w != v && dist(w, side) <= 2)
        })
    })
}

pub fn oracle_frames(c: &Config, region: &Rect) -> Vec<Rect> {
    let mut out = Vec::new();
    for y0 in region.y0..=region.y1 {
        for y1 in y0..=region.y1 {
            for x0 in region.x0..=region.x1 {
                for x1 in x0..=region.x1 {
                    let r = Rect { x0, y0, x1, y1 };
                    if oracle_is_frame(c, &r) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}

pub fn boundary_strategy() -> impl Strategy<Value = BoundaryMode> {
    prop_oneof![
        Just(BoundaryMode::Torus),
        (0u8..=2).prop_map(BoundaryMode::FrozenExterior),
        Just(BoundaryMode::Masked),
    ]
}

/// Random config with state weights `weights`; masked configs get a random mask.
pub fn config_strategy(
    sizes: std::ops::RangeInclusive<usize>,
    weights: [u32; 3],
    boundary: impl Strategy<Value = BoundaryMode>,
) -> impl Strategy<Value = Config> {
    let total: u32 = weights.iter().sum();
    (sizes.clone(), sizes, boundary).prop_flat_map(move |(w, h, b)| {
        let cells = proptest::collection::vec(0..total, w * h).prop_map(move |v| {
            v.into_iter()
                .map(|u| if u < weights[0] { 0 } else if u < weights[0] + weights[1] { 1 } else { 2 })
                .collect::<Vec<u8>>()
        });
        let mask = proptest::collection::vec(proptest::bool::weighted(0.85), w * h);
        (cells, mask).prop_map(move |(cells, mut bits)| {
            bits[0] = true;
            let mask = (b == BoundaryMode::Masked).then(|| RegionMask::from_bits(w, h, bits).unwrap());
            Config::new(w, h, 2, b, cells, mask).unwrap()
        })
    })
}
