//! Rectangles internally filled by 2s growing on 1s, and the medium-size witness.
//!
//! Growth of 2s on a background of 1s (threshold 2) is computed by merging rectangles:
//! each initial 2 is a 1x1 rectangle, and two rectangles whose column gap plus row gap is
//! at most 2 merge into their span. Every node of the resulting merge tree is internally
//! filled, and a merged span is at most one longer than the sum of its parts' long sides.

use crate::error::{Error, Result};
use crate::grid::{BoundaryMode, Config, Rect};

#[derive(Clone, Debug)]
struct Node {
    rect: Rect,
    children: Option<(usize, usize)>,
}

/// The merge tree of 2-rectangles on a {1,2}-valued configuration.
#[derive(Clone, Debug)]
pub struct MergeTree {
    nodes: Vec<Node>,
    roots: Vec<usize>,
}

/// Coordinate distance between intervals: 0 if they overlap, 1 if adjacent, and so on.
fn axis_gap(a0: usize, a1: usize, b0: usize, b1: usize) -> usize {
    if b0 > a1 {
        b0 - a1
    } else { a0.saturating_sub(b1) }
}

fn close(a: &Rect, b: &Rect) -> bool {
    axis_gap(a.x0, a.x1, b.x0, b.x1) + axis_gap(a.y0, a.y1, b.y0, b.y1) <= 2
}

impl MergeTree {
    pub fn build(config: &Config) -> Result<Self> {
        if config.boundary() == BoundaryMode::Masked {
            return Err(Error::InvalidConfig("rectangle merging needs an unmasked lattice".into()));
        }
        if config.cells().iter().any(|s| !(1..=2).contains(s)) {
            return Err(Error::InvalidConfig("configuration must contain only 1s and 2s".into()));
        }
        let mut nodes: Vec<Node> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        for (x, y) in config.domain_sites().filter(|s| config.get(*s) == 2) {
            nodes.push(Node { rect: Rect { x0: x, y0: y, x1: x, y1: y }, children: None });
        }
        // Worklist: a node is pushed when created; popping it merges it with any close
        // active node, or settles it as active.
        let mut pending: Vec<usize> = (0..nodes.len()).rev().collect();
        while let Some(n) = pending.pop() {
            let rect = nodes[n].rect;
            match active.iter().position(|&a| close(&nodes[a].rect, &rect)) {
                Some(pos) => {
                    let a = active.swap_remove(pos);
                    let merged = nodes[a].rect.span(&rect);
                    nodes.push(Node { rect: merged, children: Some((a, n)) });
                    pending.push(nodes.len() - 1);
                }
                None => active.push(n),
            }
        }
        active.sort_by_key(|&i| nodes[i].rect);
        Ok(MergeTree { nodes, roots: active })
    }

    /// The maximal filled rectangles of the final configuration.
    pub fn final_rectangles(&self) -> Vec<Rect> {
        self.roots.iter().map(|&i| self.nodes[i].rect).collect()
    }

    /// A filled rectangle with `long` in `[j/2, j]`, if one exists.
    pub fn witness(&self, j: usize) -> Option<Rect> {
        let lower = j.div_ceil(2);
        for &root in &self.roots {
            if self.nodes[root].rect.long() < lower {
                continue;
            }
            let mut cur = root;
            while self.nodes[cur].rect.long() > j {
                let (a, b) = self.nodes[cur].children?;
                cur = if self.nodes[a].rect.long() >= self.nodes[b].rect.long() { a } else { b };
            }
            return Some(self.nodes[cur].rect);
        }
        None
    }
}

/// Final filled rectangles of 2s growing on 1s over the whole lattice.
pub fn closure_rectangles(config: &Config) -> Result<Vec<Rect>> {
    Ok(MergeTree::build(config)?.final_rectangles())
}

/// A rectangle `R` with `long(R)` in `[j/2, j]` whose internal dynamics of 2s on 1s fills
/// it, or `None` if there is none.
pub fn al_witness(config: &Config, j: usize) -> Result<Option<Rect>> {
    if j == 0 {
        return Err(Error::Contract("j must be positive".into()));
    }
    Ok(MergeTree::build(config)?.witness(j))
}
