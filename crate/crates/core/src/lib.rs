//! Two-stage (three-state) bootstrap percolation on finite square lattices: the dynamics,
//! the structural predicates used to reason about them, and a seeded Monte Carlo harness.

pub mod engine;
pub mod error;
pub mod experiments;
pub mod grid;
pub mod render;
pub mod rules;
pub mod sampler;
pub mod structure;
pub mod text;

pub use error::{Error, Result};
pub use grid::{components, neighbor_stats, BoundaryMode, Component, Config, NeighborStats, Rect, RegionMask, Site, State};
pub use rules::{make_rule, step, RuleName, RuleTable, Transition, TransitionPredicate};
pub use text::{boundary_name, parse_boundary, parse_config, serialize_config};
