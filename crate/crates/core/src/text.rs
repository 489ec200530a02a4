//! Plain-text configuration format.
//!
//! ```text
//! W H KAPPA BOUNDARY
//! <H rows of W characters>
//! ```
//!
//! `BOUNDARY` is `torus`, `frozen:<digit>` or `masked`. Cells are digits; `.` marks a
//! masked-out site and is only legal with `masked`.

use crate::error::{Error, Result};
use crate::grid::{BoundaryMode, Config, RegionMask};

pub fn parse_config(text: &str) -> Result<Config> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(Error::Parse { line: 1, msg: "expected `W H KAPPA BOUNDARY`".into() });
    }
    let num = |s: &str, what: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Parse { line: 1, msg: format!("bad {what} `{s}`") })
    };
    let width = num(fields[0], "width")?;
    let height = num(fields[1], "height")?;
    let kappa = num(fields[2], "kappa")?;
    if width == 0 || height == 0 {
        return Err(Error::Parse { line: 1, msg: "width and height must be positive".into() });
    }
    if !(1..=9).contains(&kappa) {
        return Err(Error::Parse { line: 1, msg: format!("kappa {kappa} not in 1..=9") });
    }
    let kappa = kappa as u8;
    let boundary = parse_boundary(fields[3])
        .ok_or_else(|| Error::Parse { line: 1, msg: format!("bad boundary `{}`", fields[3]) })?;

    let mut cells = Vec::with_capacity(width * height);
    let mut bits = Vec::with_capacity(width * height);
    for row in 0..height {
        let line_no = row + 2;
        let line = lines
            .next()
            .ok_or(Error::Parse { line: line_no, msg: "missing row".into() })?;
        if line.chars().count() != width {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("row has {} cells, expected {width}", line.chars().count()),
            });
        }
        for ch in line.chars() {
            match ch {
                '.' if boundary == BoundaryMode::Masked => {
                    cells.push(0);
                    bits.push(false);
                }
                '.' => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "`.` requires the masked boundary".into(),
                    })
                }
                d if d.is_ascii_digit() => {
                    let v = d as u8 - b'0';
                    if v > kappa {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("state {v} exceeds kappa {kappa}"),
                        });
                    }
                    cells.push(v);
                    bits.push(true);
                }
                other => {
                    return Err(Error::Parse { line: line_no, msg: format!("bad cell `{other}`") })
                }
            }
        }
    }
    if let Some((i, extra)) = lines.enumerate().find(|(_, l)| !l.is_empty()) {
        return Err(Error::Parse {
            line: height + 2 + i,
            msg: format!("unexpected trailing content `{extra}`"),
        });
    }
    let mask = match boundary {
        BoundaryMode::Masked => Some(RegionMask::from_bits(width, height, bits)?),
        _ => None,
    };
    Config::new(width, height, kappa, boundary, cells, mask).map_err(|e| match e {
        Error::EmptyRegion => Error::Parse { line: 2, msg: "mask is empty".into() },
        other => other,
    })
}

/// `torus`, `masked` or `frozen:<digit>`.
pub fn parse_boundary(s: &str) -> Option<BoundaryMode> {
    match s {
        "torus" => Some(BoundaryMode::Torus),
        "masked" => Some(BoundaryMode::Masked),
        _ => {
            let d = s.strip_prefix("frozen:")?;
            let mut chars = d.chars();
            let c = chars.next()?;
            if chars.next().is_some() || !c.is_ascii_digit() {
                return None;
            }
            Some(BoundaryMode::FrozenExterior(c as u8 - b'0'))
        }
    }
}

pub fn boundary_name(b: BoundaryMode) -> String {
    match b {
        BoundaryMode::Torus => "torus".into(),
        BoundaryMode::FrozenExterior(s) => format!("frozen:{s}"),
        BoundaryMode::Masked => "masked".into(),
    }
}

/// Canonical text form. Fails only for kappa above 9, which has no single-digit encoding.
pub fn serialize_config(config: &Config) -> Result<String> {
    if config.kappa() > 9 {
        return Err(Error::InvalidConfig("text format supports kappa <= 9".into()));
    }
    let (w, h) = (config.width(), config.height());
    let mut out = String::with_capacity((w + 1) * h + 32);
    out.push_str(&format!("{w} {h} {} {}\n", config.kappa(), boundary_name(config.boundary())));
    for y in 0..h {
        for x in 0..w {
            if config.in_domain((x, y)) {
                out.push((b'0' + config.get((x, y))) as char);
            } else {
                out.push('.');
            }
        }
        out.push('\n');
    }
    Ok(out)
}
