//! Vertices, edges and the decorated graph container.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::GraphError;

/// Opaque vertex identifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(s: impl Into<String>) -> Self {
        VertexId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Isolated fixed point.
    Point,
    /// Fixed surface with normalized area and genus.
    Surface { area: Rational, genus: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub moment: Rational,
    pub kind: VertexKind,
}

impl Vertex {
    pub fn point(id: impl Into<VertexId>, moment: Rational) -> Self {
        Vertex { id: id.into(), moment, kind: VertexKind::Point }
    }

    pub fn surface(id: impl Into<VertexId>, moment: Rational, area: Rational, genus: u32) -> Self {
        Vertex { id: id.into(), moment, kind: VertexKind::Surface { area, genus } }
    }

    pub fn is_surface(&self) -> bool {
        matches!(self.kind, VertexKind::Surface { .. })
    }

    pub fn area(&self) -> Option<&Rational> {
        match &self.kind {
            VertexKind::Surface { area, .. } => Some(area),
            VertexKind::Point => None,
        }
    }

    pub fn genus(&self) -> Option<u32> {
        match &self.kind {
            VertexKind::Surface { genus, .. } => Some(*genus),
            VertexKind::Point => None,
        }
    }
}

/// Edge of weight `k`; stored with `a` the lower endpoint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
    pub weight: u64,
}

impl Edge {
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>, weight: u64) -> Self {
        Edge { a: a.into(), b: b.into(), weight }
    }

    pub fn touches(&self, v: &VertexId) -> bool {
        &self.a == v || &self.b == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: &VertexId) -> &VertexId {
        if &self.a == v {
            &self.b
        } else {
            &self.a
        }
    }
}

/// Vertices plus a multiset of edges of weight at least two.
///
/// Construction only checks referential integrity; the shape rules are
/// reported by [`crate::validate_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

fn by_level(a: &Vertex, b: &Vertex) -> Ordering {
    a.moment.cmp(&b.moment).then_with(|| a.id.cmp(&b.id))
}

impl DecoratedGraph {
    pub fn new(mut vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        vertices.sort_by(by_level);
        let mut ids: Vec<&VertexId> = vertices.iter().map(|v| &v.id).collect();
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateVertex(w[0].clone()));
            }
        }
        let mut oriented = Vec::with_capacity(edges.len());
        for e in edges {
            let va = vertices.iter().find(|v| v.id == e.a);
            let vb = vertices.iter().find(|v| v.id == e.b);
            let (va, vb) = match (va, vb) {
                (Some(x), Some(y)) => (x, y),
                (None, _) => return Err(GraphError::UnknownEndpoint(e.a)),
                (_, None) => return Err(GraphError::UnknownEndpoint(e.b)),
            };
            if e.a == e.b {
                return Err(GraphError::SelfLoop(e.a));
            }
            if by_level(va, vb) == Ordering::Greater {
                oriented.push(Edge { a: e.b, b: e.a, weight: e.weight });
            } else {
                oriented.push(e);
            }
        }
        oriented.sort_by(|x, y| {
            let lx = (level_of(&vertices, &x.a), level_of(&vertices, &x.b));
            let ly = (level_of(&vertices, &y.a), level_of(&vertices, &y.b));
            lx.cmp(&ly).then(x.weight.cmp(&y.weight))
        });
        Ok(DecoratedGraph { vertices, edges: oriented })
    }

    /// Vertices sorted by moment, then id.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Edges with `a` below `b`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: &VertexId) -> Option<&Vertex> {
        self.vertices.iter().find(|v| &v.id == id)
    }

    pub fn require(&self, id: &VertexId) -> Result<&Vertex, GraphError> {
        self.vertex(id).ok_or_else(|| GraphError::UnknownVertex(id.clone()))
    }

    pub fn contains(&self, id: &VertexId) -> bool {
        self.vertex(id).is_some()
    }

    pub fn moment(&self, id: &VertexId) -> Option<&Rational> {
        self.vertex(id).map(|v| &v.moment)
    }

    /// The unique vertex of smallest moment.
    pub fn min_vertex(&self) -> Option<&Vertex> {
        let first = self.vertices.first()?;
        match self.vertices.get(1) {
            Some(second) if second.moment == first.moment => None,
            _ => Some(first),
        }
    }

    /// The unique vertex of largest moment.
    pub fn max_vertex(&self) -> Option<&Vertex> {
        let n = self.vertices.len();
        let last = self.vertices.last()?;
        if n >= 2 && self.vertices[n - 2].moment == last.moment {
            None
        } else {
            Some(last)
        }
    }

    pub fn is_min(&self, id: &VertexId) -> bool {
        self.min_vertex().is_some_and(|v| &v.id == id)
    }

    pub fn is_max(&self, id: &VertexId) -> bool {
        self.max_vertex().is_some_and(|v| &v.id == id)
    }

    pub fn is_extremal(&self, id: &VertexId) -> bool {
        self.is_min(id) || self.is_max(id)
    }

    /// Vertices strictly between the extremal levels.
    pub fn interior(&self) -> impl Iterator<Item = &Vertex> {
        let lo = self.vertices.first().map(|v| v.moment.clone());
        let hi = self.vertices.last().map(|v| v.moment.clone());
        self.vertices.iter().filter(move |v| Some(&v.moment) != lo.as_ref() && Some(&v.moment) != hi.as_ref())
    }

    pub fn incident<'a>(&'a self, id: &'a VertexId) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| e.touches(id))
    }

    /// Edges leaving `id` towards a higher moment.
    pub fn up_edges<'a>(&'a self, id: &'a VertexId) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| &e.a == id && self.moment(&e.a) < self.moment(&e.b))
    }

    /// Edges leaving `id` towards a lower moment.
    pub fn down_edges<'a>(&'a self, id: &'a VertexId) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| &e.b == id && self.moment(&e.a) < self.moment(&e.b))
    }

    pub fn surfaces(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter().filter(|v| v.is_surface())
    }

    /// Negates every moment label.
    pub fn flip(&self) -> DecoratedGraph {
        self.map_moments(|m| -m.clone())
    }

    /// Adds `c` to every moment label.
    pub fn shift(&self, c: &Rational) -> DecoratedGraph {
        self.map_moments(|m| m + c)
    }

    pub fn map_moments(&self, f: impl Fn(&Rational) -> Rational) -> DecoratedGraph {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex { id: v.id.clone(), moment: f(&v.moment), kind: v.kind.clone() })
            .collect();
        DecoratedGraph::new(vertices, self.edges.clone()).expect("ids unchanged")
    }

    /// Renames vertices; `f` must be injective.
    pub fn relabel(&self, f: impl Fn(&VertexId) -> VertexId) -> Result<DecoratedGraph, GraphError> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| Vertex { id: f(&v.id), moment: v.moment.clone(), kind: v.kind.clone() })
            .collect();
        let edges = self.edges.iter().map(|e| Edge { a: f(&e.a), b: f(&e.b), weight: e.weight }).collect();
        DecoratedGraph::new(vertices, edges)
    }

    /// An id of the form `{base}.{n}` not yet in use.
    pub fn fresh_id(&self, base: &VertexId) -> VertexId {
        (1..).map(|n| VertexId::new(format!("{}.{}", base, n))).find(|c| !self.contains(c)).expect("unbounded")
    }
}

fn level_of<'a>(vertices: &'a [Vertex], id: &VertexId) -> (&'a Rational, &'a VertexId) {
    let v = vertices.iter().find(|v| &v.id == id).expect("checked endpoint");
    (&v.moment, &v.id)
}
