//! Flag value parsers.

use anyhow::{anyhow, bail, Result};
use twostage::{parse_boundary, BoundaryMode, Rect};

/// Values of a range flag.
#[derive(Clone, Debug, PartialEq)]
pub struct Values(pub Vec<f64>);

/// `start:stop:step` (stop excluded), a comma list, or a single value.
pub fn parse_values(s: &str) -> Result<Values> {
    parse_range(s).map(Values)
}

pub fn parse_range(s: &str) -> Result<Vec<f64>> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| anyhow!("`{t}` is not a number"));
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts[..] else { bail!("range `{s}` must be start:stop:step") };
        let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
        if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() {
            bail!("range `{s}` needs a positive step");
        }
        let mut out = Vec::new();
        let mut i = 0;
        loop {
            let v = start + i as f64 * step;
            if v >= stop - step * 1e-9 {
                break;
            }
            out.push((v * 1e12).round() / 1e12);
            i += 1;
        }
        if out.is_empty() {
            bail!("range `{s}` is empty");
        }
        Ok(out)
    } else {
        s.split(',').map(num).collect()
    }
}

pub fn parse_boundary_flag(s: &str) -> Result<BoundaryMode> {
    parse_boundary(s).ok_or_else(|| anyhow!("boundary must be torus, masked or frozen:<state>, got `{s}`"))
}

/// `x0,y0,x1,y1`, inclusive.
pub fn parse_rect(s: &str) -> Result<Rect> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| anyhow!("`{t}` is not a coordinate")))
        .collect::<Result<_>>()?;
    let [x0, y0, x1, y1] = v[..] else { bail!("rectangle `{s}` must be x0,y0,x1,y1") };
    Ok(Rect::new(x0, y0, x1, y1)?)
}
