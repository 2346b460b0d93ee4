//! Isotropy weights read off the graph.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{DecoratedGraph, GraphError, VertexId, VertexKind};

/// Unordered pair of isotropy weights, stored ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightPair {
    pub lo: i64,
    pub hi: i64,
}

impl WeightPair {
    pub fn new(x: i64, y: i64) -> Self {
        WeightPair { lo: x.min(y), hi: x.max(y) }
    }

    pub fn contains(&self, w: i64) -> bool {
        self.lo == w || self.hi == w
    }

    pub fn coprime(&self) -> bool {
        self.lo == 0 || self.hi == 0 || self.lo.gcd(&self.hi) == 1
    }

    /// Product of absolute values.
    pub fn abs_product(&self) -> i64 {
        (self.lo * self.hi).abs()
    }
}

impl fmt::Display for WeightPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.lo, self.hi)
    }
}

/// Weight of the edge leaving `v` upwards, `1` when there is none.
pub fn up_weight(g: &DecoratedGraph, v: &VertexId) -> u64 {
    g.up_edges(v).map(|e| e.weight).next().unwrap_or(1)
}

/// Weight of the edge leaving `v` downwards, `1` when there is none.
pub fn down_weight(g: &DecoratedGraph, v: &VertexId) -> u64 {
    g.down_edges(v).map(|e| e.weight).next().unwrap_or(1)
}

/// Weights at an extremal isolated vertex, padded with `1`, as positive numbers.
pub fn extremal_weights(g: &DecoratedGraph, v: &VertexId) -> (u64, u64) {
    let mut ws: Vec<u64> = g.incident(v).map(|e| e.weight).collect();
    ws.resize(2, 1);
    ws.sort_unstable();
    (ws[0], ws[1])
}

pub fn isotropy_weights(g: &DecoratedGraph, v: &VertexId) -> Result<WeightPair, GraphError> {
    let vertex = g.require(v)?;
    let is_min = g.is_min(v);
    let is_max = g.is_max(v);
    if let VertexKind::Surface { .. } = vertex.kind {
        if is_max && !is_min {
            return Ok(WeightPair::new(0, -1));
        }
        return Ok(WeightPair::new(0, 1));
    }
    if is_min || is_max {
        let (a, b) = extremal_weights(g, v);
        let sign = if is_min { 1 } else { -1 };
        return Ok(WeightPair::new(sign * a as i64, sign * b as i64));
    }
    Ok(WeightPair::new(up_weight(g, v) as i64, -(down_weight(g, v) as i64)))
}
