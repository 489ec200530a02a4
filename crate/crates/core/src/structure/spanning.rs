//! Internal spanning by 1s.

use crate::engine::run_internal;
use crate::error::Result;
use crate::grid::{Config, RegionMask};
use crate::rules::{make_rule, RuleName};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanVariant {
    Standard,
    Modified,
}

/// Whether the internal dynamics of 1s on 0s inside `region` ends with every region site
/// in state 1. 2s in the region never change here, so any 2 makes the answer false.
pub fn is_internally_spanned(config: &Config, region: &RegionMask, variant: SpanVariant) -> Result<bool> {
    let name = match variant {
        SpanVariant::Standard => RuleName::PollutedStandard,
        SpanVariant::Modified => RuleName::PollutedModified,
    };
    let report = run_internal(config, region, &make_rule(name, 2)?, false)?;
    let f = &report.final_config;
    let spanned = f.domain_sites().all(|s| f.get(s) == 1);
    Ok(spanned)
}
