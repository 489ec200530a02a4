//! `fixture` subcommands.

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Subcommand};
use twostage::sampler::{build_blocking, build_ignition};
use twostage::serialize_config;
use twostage::structure::protection::{protected_fixture, protected_region_report, FixtureParams};
use twostage::{make_rule, RuleName};

use crate::io::emit;

#[derive(Subcommand)]
pub enum FixtureCmd {
    /// The 2L x 2L ignition square: a bottom row of 2s and one 2 per row above it
    Ignition(IgnitionArgs),
    /// A row of 0s flanked by 2s in an all-1 lattice
    Blocking(BlockingFixtureArgs),
    /// A random rectangle passing the protection conditions
    Protected(ProtectedArgs),
}

#[derive(Args)]
pub struct IgnitionArgs {
    /// Half side L
    #[arg(long)]
    half_side: usize,
    /// Column inset a of the per-row 2s (needs L > a + 2)
    #[arg(long, default_value_t = 1)]
    inset: usize,
    /// Vertical offset g of the square
    #[arg(long, default_value_t = 1)]
    gap: usize,
    /// Output file [default: stdout]
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct BlockingFixtureArgs {
    #[arg(long)]
    w: usize,
    #[arg(long)]
    h: usize,
    /// Number of 0s between the two 2s
    #[arg(long)]
    gap: usize,
    /// Output file [default: stdout]
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ProtectedArgs {
    #[arg(long, default_value_t = 32)]
    w: usize,
    #[arg(long, default_value_t = 28)]
    h: usize,
    /// Protection distance m
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Density of 2s deep inside the region
    #[arg(long, default_value_t = 0.05)]
    interior_q: f64,
    /// Density of 1s outside the region
    #[arg(long, default_value_t = 0.3)]
    exterior_p: f64,
    /// Density of 2s outside the region
    #[arg(long, default_value_t = 0.3)]
    exterior_q: f64,
    /// Rejected draws before giving up
    #[arg(long, default_value_t = 100_000)]
    max_attempts: usize,
    /// Rule used for the protection check
    #[arg(long, default_value = "modified")]
    rule: RuleName,
    #[arg(long)]
    seed: u64,
    /// Output file for the configuration [default: stdout]
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

pub fn fixture(cmd: &FixtureCmd) -> Result<bool> {
    match cmd {
        FixtureCmd::Ignition(a) => {
            let ig = build_ignition(a.half_side, a.inset, a.gap)?;
            emit(a.out.as_deref(), serialize_config(&ig.config)?.as_bytes())?;
            Ok(true)
        }
        FixtureCmd::Blocking(a) => {
            emit(a.out.as_deref(), serialize_config(&build_blocking(a.w, a.h, a.gap)?)?.as_bytes())?;
            Ok(true)
        }
        FixtureCmd::Protected(a) => {
            let rule = make_rule(a.rule, 2)?;
            let params = FixtureParams {
                width: a.w,
                height: a.h,
                m: a.m,
                interior_q: a.interior_q,
                exterior_p: a.exterior_p,
                exterior_q: a.exterior_q,
                max_attempts: a.max_attempts,
            };
            let fx = protected_fixture(&params, &rule, a.seed)?;
            let report = protected_region_report(&fx.config, &fx.region, fx.m, &rule)?;
            let r = fx.rect;
            let summary = format!("region={},{},{},{} m={} {report}", r.x0, r.y0, r.x1, r.y1, fx.m);
            match &a.out {
                Some(path) => {
                    emit(Some(path), serialize_config(&fx.config)?.as_bytes())?;
                    println!("{summary}");
                }
                None => {
                    emit(None, serialize_config(&fx.config)?.as_bytes())?;
                    eprintln!("{summary}");
                }
            }
            Ok(report.all())
        }
    }
}
