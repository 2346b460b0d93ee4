//! The partial order on vertices.

use serde::Serialize;

use crate::{DecoratedGraph, GraphError, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comparison {
    Less,
    Greater,
    Incomparable,
    EqualId,
}

/// Whether `to` is reached from `from` by walking up edges.
pub fn reaches_up(g: &DecoratedGraph, from: &VertexId, to: &VertexId) -> bool {
    let mut stack = vec![from.clone()];
    let mut seen = vec![from.clone()];
    while let Some(v) = stack.pop() {
        if &v == to {
            return true;
        }
        for e in g.up_edges(&v) {
            if !seen.contains(&e.b) {
                seen.push(e.b.clone());
                stack.push(e.b.clone());
            }
        }
    }
    false
}

fn below(g: &DecoratedGraph, v: &VertexId, w: &VertexId) -> bool {
    let (mv, mw) = (g.moment(v), g.moment(w));
    if mv >= mw {
        return false;
    }
    g.is_extremal(v) || g.is_extremal(w) || reaches_up(g, v, w)
}

/// `v < w` iff `v` lies below `w` and either one is extremal or an
/// upward chain of edges joins them.
pub fn compare(g: &DecoratedGraph, v: &VertexId, w: &VertexId) -> Result<Comparison, GraphError> {
    g.require(v)?;
    g.require(w)?;
    Ok(if v == w {
        Comparison::EqualId
    } else if below(g, v, w) {
        Comparison::Less
    } else if below(g, w, v) {
        Comparison::Greater
    } else {
        Comparison::Incomparable
    })
}

/// All strictly ordered pairs `(v, w)` with `v < w`.
pub fn order_pairs(g: &DecoratedGraph) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for v in g.vertices() {
        for w in g.vertices() {
            if v.id != w.id && below(g, &v.id, &w.id) {
                out.push((v.id.clone(), w.id.clone()));
            }
        }
    }
    out
}
