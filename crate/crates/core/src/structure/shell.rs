//! Shells (SH1)-(SH4): ℓ¹-annular vertex sets in plane coordinates centered at the origin.

use std::collections::HashSet;
use std::fmt;

/// A plane vertex `(u1, u2)`.
pub type Point = (i64, i64);

fn l1((a, b): Point) -> i64 {
    a.abs() + b.abs()
}

fn linf((a, b): Point) -> i64 {
    a.abs().max(b.abs())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellReport {
    pub radius: i64,
    pub sh1: bool,
    pub sh2: bool,
    pub sh3: bool,
    pub sh4: bool,
    /// A required vertex missing from the set.
    pub sh1_witness: Option<Point>,
    /// A vertex of the set outside the annulus.
    pub sh2_witness: Option<Point>,
    /// A diagonal direction with no vertex far enough along it.
    pub sh3_witness: Option<Point>,
    /// A vertex of the set that the set does not protect.
    pub sh4_witness: Option<Point>,
    /// The largest diagonal reach found along each of (1,1), (1,-1), (-1,1), (-1,-1).
    pub diagonal_reach: [Option<i64>; 4],
}

impl fmt::Display for ShellReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |v: bool| u8::from(v);
        write!(f, "r={} SH1={} SH2={} SH3={} SH4={}", self.radius, b(self.sh1), b(self.sh2), b(self.sh3), b(self.sh4))?;
        for (name, w) in [("sh1", self.sh1_witness), ("sh2", self.sh2_witness), ("sh3", self.sh3_witness), ("sh4", self.sh4_witness)] {
            if let Some((x, y)) = w {
                write!(f, " {name}_at={x},{y}")?;
            }
        }
        Ok(())
    }
}

fn box_hits(set: &HashSet<Point>, (u1, u2): Point, xs: (i64, i64), ys: (i64, i64)) -> bool {
    (xs.0..=xs.1).any(|dx| (ys.0..=ys.1).any(|dy| set.contains(&(u1 + dx, u2 + dy))))
}

/// Whether the off-axis vertex `u` is protected by `set`.
pub fn is_protected_by(set: &HashSet<Point>, u: Point) -> bool {
    let (u1, u2) = u;
    if u1 == 0 || u2 == 0 {
        return false;
    }
    if (u1 > 0) == (u2 > 0) {
        box_hits(set, u, (-2, -1), (1, 2)) && box_hits(set, u, (1, 2), (-2, -1))
    } else {
        box_hits(set, u, (-2, -1), (-2, -1)) && box_hits(set, u, (1, 2), (1, 2))
    }
}

pub fn shell_report(points: &[Point], r: i64) -> ShellReport {
    let set: HashSet<Point> = points.iter().copied().collect();
    let mut sorted: Vec<Point> = set.iter().copied().collect();
    sorted.sort_unstable();

    let mut sh1_witness = None;
    'sh1: for a in -r..=r {
        let rest = r - a.abs();
        for b in [-rest, rest] {
            let u = (a, b);
            if linf(u) >= r - 3 && !set.contains(&u) {
                sh1_witness = Some(u);
                break 'sh1;
            }
        }
    }

    // r <= |u|_1 <= r + 2 sqrt(r), squared to stay in integers.
    let sh2_witness = sorted.iter().copied().find(|&u| {
        let d = l1(u) - r;
        d < 0 || d * d > 4 * r || linf(u) > r
    });

    let dirs = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
    let mut diagonal_reach = [None; 4];
    for (slot, (dx, dy)) in diagonal_reach.iter_mut().zip(dirs) {
        *slot = sorted
            .iter()
            .filter(|&&(a, b)| a != 0 && a * dx > 0 && a * dx == b * dy)
            .map(|&(a, _)| a.abs())
            .max();
    }
    let sh3_witness = dirs
        .iter()
        .zip(diagonal_reach)
        .find(|(_, reach)| !matches!(reach, Some(k) if 2 * k >= r))
        .map(|(d, _)| *d);

    let sh4_witness = sorted
        .iter()
        .copied()
        .find(|&(a, b)| a.abs() >= 3 && b.abs() >= 3 && !is_protected_by(&set, (a, b)));

    ShellReport {
        radius: r,
        sh1: sh1_witness.is_none(),
        sh2: sh2_witness.is_none(),
        sh3: sh3_witness.is_none(),
        sh4: sh4_witness.is_none(),
        sh1_witness,
        sh2_witness,
        sh3_witness,
        sh4_witness,
        diagonal_reach,
    }
}

/// The exact ℓ¹ circle `{u : |u|_1 = r}`.
pub fn l1_circle(r: i64) -> Vec<Point> {
    let mut out = Vec::new();
    for a in -r..=r {
        let rest = r - a.abs();
        out.push((a, rest));
        if rest != 0 {
            out.push((a, -rest));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_radius_eight() {
        let rep = shell_report(&l1_circle(8), 8);
        assert!(rep.sh1 && rep.sh2 && rep.sh3 && rep.sh4, "{rep}");
        assert_eq!(rep.diagonal_reach, [Some(4); 4]);
    }

    #[test]
    fn missing_axis_vertex() {
        let s: Vec<Point> = l1_circle(8).into_iter().filter(|&u| u != (8, 0)).collect();
        let rep = shell_report(&s, 8);
        assert!(!rep.sh1);
        assert_eq!(rep.sh1_witness, Some((8, 0)));
    }

    #[test]
    fn vertex_beyond_linf() {
        let mut s = l1_circle(8);
        s.push((9, 0));
        let rep = shell_report(&s, 8);
        assert!(!rep.sh2);
        assert_eq!(rep.sh2_witness, Some((9, 0)));
    }

    #[test]
    fn odd_radius_has_no_diagonal_vertex() {
        let rep = shell_report(&l1_circle(9), 9);
        assert!(rep.sh1 && rep.sh2 && rep.sh4);
        assert!(!rep.sh3);
    }
}
