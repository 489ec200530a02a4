//! File helpers.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use twostage::render::{render_ppm, Palette};
use twostage::{parse_config, serialize_config, Config};

pub fn read_config(path: &Path) -> Result<Config> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn write_config(path: &Path, config: &Config) -> Result<()> {
    emit(Some(path), serialize_config(config)?.as_bytes())
}

pub fn write_ppm(path: &Path, config: &Config) -> Result<()> {
    emit(Some(path), &render_ppm(config, &Palette::for_kappa(config.kappa()))?)
}
