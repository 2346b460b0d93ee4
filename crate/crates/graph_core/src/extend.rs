//! Extended graphs: weight-one edges completing the branches.

use serde::Serialize;

use crate::{canonical_order, DecoratedGraph, Edge, GraphError, Vertex, VertexId};

/// One bottom-to-top path of an extended graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    /// Vertex ids from the minimum to the maximum.
    pub vertices: Vec<VertexId>,
    /// Edge weights along the path, one fewer than vertices.
    pub weights: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedGraph {
    pub base: DecoratedGraph,
    /// Weight-one edges, stored with `a` below `b`.
    pub free_edges: Vec<Edge>,
}

impl ExtendedGraph {
    fn all_up<'a>(&'a self, v: &'a VertexId) -> impl Iterator<Item = &'a Edge> + 'a {
        self.base.up_edges(v).chain(self.free_edges.iter().filter(move |e| &e.a == v))
    }

    fn degree(&self, v: &VertexId) -> usize {
        self.base.incident(v).count() + self.free_edges.iter().filter(|e| e.touches(v)).count()
    }

    /// Branches in a deterministic order: stored edges first, then free ones.
    pub fn branches(&self) -> Vec<Branch> {
        let Some(min) = self.base.min_vertex() else { return Vec::new() };
        let max = self.base.max_vertex().map(|v| v.id.clone());
        let mut out = Vec::new();
        for first in self.all_up(&min.id) {
            let mut vertices = vec![min.id.clone(), first.b.clone()];
            let mut weights = vec![first.weight];
            let mut cur = first.b.clone();
            while Some(&cur) != max.as_ref() {
                let Some(next) = self.all_up(&cur).next() else { break };
                weights.push(next.weight);
                vertices.push(next.b.clone());
                cur = next.b.clone();
            }
            out.push(Branch { vertices, weights });
        }
        out
    }

    /// Checks degree two at interior vertices and monotone branches.
    pub fn check(&self) -> Result<(), GraphError> {
        for v in self.base.interior() {
            let d = self.degree(&v.id);
            if d != 2 {
                return Err(GraphError::NoExtension(format!("{} has degree {}", v.id, d)));
            }
        }
        let max = self.base.max_vertex().map(|v| v.id.clone());
        for b in self.branches() {
            if b.vertices.last() != max.as_ref() {
                return Err(GraphError::NoExtension("a branch stops below the maximum".into()));
            }
            for w in b.vertices.windows(2) {
                if self.base.moment(&w[0]) >= self.base.moment(&w[1]) {
                    return Err(GraphError::NoExtension("branch is not monotone".into()));
                }
            }
        }
        Ok(())
    }
}

fn require_extendable(g: &DecoratedGraph) -> Result<(&Vertex, &Vertex), GraphError> {
    if let Some(gen) = g.surfaces().filter_map(|v| v.genus()).find(|&gn| gn > 0) {
        return Err(GraphError::NonzeroGenus(gen));
    }
    match (g.min_vertex(), g.max_vertex()) {
        (Some(a), Some(b)) if a.id != b.id => Ok((a, b)),
        _ => Err(GraphError::Invalid("no unique minimum and maximum".into())),
    }
}

struct Builder<'a> {
    g: &'a DecoratedGraph,
    free: Vec<Edge>,
}

impl<'a> Builder<'a> {
    fn has_up(&self, v: &VertexId) -> bool {
        self.g.up_edges(v).next().is_some() || self.free.iter().any(|e| &e.a == v)
    }

    fn has_down(&self, v: &VertexId) -> bool {
        self.g.down_edges(v).next().is_some() || self.free.iter().any(|e| &e.b == v)
    }

    fn spare(&self, v: &VertexId) -> usize {
        let used = self.g.incident(v).count() + self.free.iter().filter(|e| e.touches(v)).count();
        2usize.saturating_sub(used)
    }

    fn add(&mut self, a: &VertexId, b: &VertexId) {
        self.free.push(Edge::new(a.clone(), b.clone(), 1));
    }

    /// Adds trivial branches until there are two, and wraps up.
    fn finish(mut self, min: &VertexId, max: &VertexId) -> Result<ExtendedGraph, GraphError> {
        while self.spare(min) > 0 && self.spare(max) > 0 {
            let ext = ExtendedGraph { base: self.g.clone(), free_edges: self.free.clone() };
            if ext.branches().len() >= 2 {
                break;
            }
            self.add(min, max);
        }
        let ext = ExtendedGraph { base: self.g.clone(), free_edges: self.free };
        ext.check()?;
        let n = ext.branches().len();
        if n != 2 {
            return Err(GraphError::NoExtension(format!("{} branches", n)));
        }
        Ok(ext)
    }
}

/// Completes `g` to two branches by joining every interior vertex without an
/// upward edge to the lowest higher vertex without a downward edge, then
/// joining what still lacks a downward edge to the minimum.
pub fn extend_graph(g: &DecoratedGraph) -> Result<ExtendedGraph, GraphError> {
    let (min, max) = require_extendable(g)?;
    let rank = canonical_order(g);
    let key = |id: &VertexId| (g.moment(id).cloned(), rank.iter().position(|r| r == id));
    let mut b = Builder { g, free: Vec::new() };
    let mut interior: Vec<VertexId> = g.interior().map(|v| v.id.clone()).collect();
    interior.sort_by_key(|id| key(id));

    for v in &interior {
        if b.has_up(v) {
            continue;
        }
        let level = g.moment(v).cloned();
        let candidate =
            interior.iter().filter(|w| g.moment(w).cloned() > level && !b.has_down(w)).min_by_key(|w| key(w)).cloned();
        match candidate {
            Some(w) => b.add(v, &w),
            None if b.spare(&max.id) > 0 => b.add(v, &max.id),
            None => return Err(GraphError::NoExtension(format!("nothing above {} can receive an edge", v))),
        }
    }
    for v in &interior {
        if b.has_down(v) {
            continue;
        }
        if b.spare(&min.id) == 0 {
            return Err(GraphError::NoExtension(format!("minimum cannot receive an edge from {}", v)));
        }
        b.add(&min.id, v);
    }
    b.finish(&min.id, &max.id)
}

/// Joins interior vertices without an upward edge directly to the maximum and
/// those without a downward edge to the minimum.
pub fn extend_graph_to_extrema(g: &DecoratedGraph) -> Result<ExtendedGraph, GraphError> {
    let (min, max) = require_extendable(g)?;
    let mut b = Builder { g, free: Vec::new() };
    let interior: Vec<VertexId> = g.interior().map(|v| v.id.clone()).collect();
    for v in &interior {
        if !b.has_up(v) {
            if b.spare(&max.id) == 0 {
                return Err(GraphError::NoExtension(format!("maximum cannot receive an edge from {}", v)));
            }
            b.add(v, &max.id);
        }
        if !b.has_down(v) {
            if b.spare(&min.id) == 0 {
                return Err(GraphError::NoExtension(format!("minimum cannot receive an edge from {}", v)));
            }
            b.add(&min.id, v);
        }
    }
    b.finish(&min.id, &max.id)
}
