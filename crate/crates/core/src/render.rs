//! Binary PPM (P6) images of configurations, one pixel per site.

use crate::error::{Error, Result};
use crate::grid::{Config, State};

/// One RGB color per state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette {
    colors: Vec<[u8; 3]>,
}

impl Default for Palette {
    /// 0 yellow, 1 red, 2 blue.
    fn default() -> Self {
        Palette { colors: vec![[255, 221, 0], [220, 30, 30], [30, 60, 220]] }
    }
}

impl Palette {
    pub fn new(colors: Vec<[u8; 3]>) -> Self {
        Palette { colors }
    }

    /// The default colors followed by a grey ramp for states above 2.
    pub fn for_kappa(kappa: State) -> Self {
        let mut p = Palette::default();
        let extra = kappa.saturating_sub(2) as usize;
        for i in 1..=extra {
            let g = (200 - 160 * i / extra.max(1)) as u8;
            p.colors.push([g, g, g]);
        }
        p
    }

    pub fn color(&self, s: State) -> Result<[u8; 3]> {
        self.colors.get(s as usize).copied().ok_or(Error::Palette(s))
    }
}

/// Masked-out sites are black.
pub fn render_ppm(config: &Config, palette: &Palette) -> Result<Vec<u8>> {
    for s in 0..=config.kappa() {
        palette.color(s)?;
    }
    let header = format!("P6\n{} {}\n255\n", config.width(), config.height());
    let mut out = Vec::with_capacity(header.len() + 3 * config.len());
    out.extend_from_slice(header.as_bytes());
    for y in 0..config.height() {
        for x in 0..config.width() {
            let rgb = if config.in_domain((x, y)) { palette.color(config.get((x, y)))? } else { [0, 0, 0] };
            out.extend_from_slice(&rgb);
        }
    }
    Ok(out)
}
