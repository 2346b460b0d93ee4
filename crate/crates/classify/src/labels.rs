//! Real labels for a two-surface graph chosen after its integer labels.
//!
//! Above the maximum the density is `-(a + e_min + e_max) y + (a_min - a_max - b)`
//! with `a = Σ 1/(m_p n_p)`. Both coefficients vanish, so `e_min + e_max = -a`
//! and `b = -(y_min e_min + y_max e_max + Σ y_p/(m_p n_p))`.

use std::collections::BTreeMap;

use blowup_calculus::is_consistent;
use dh_measure::extremal_self_intersections;
use graph_core::rational::int;
use graph_core::{validate_graph, DecoratedGraph, Edge, Rational, Vertex, VertexId};
use num_traits::Signed;

use crate::ClassifyError;

/// Integer data of a graph with two fixed surfaces: the common genus and the
/// interior points with their edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub genus: u32,
    pub points: Vec<VertexId>,
    pub edges: Vec<Edge>,
}

impl Skeleton {
    /// Forgets the real labels of a two-surface graph.
    pub fn from_graph(g: &DecoratedGraph) -> Option<Skeleton> {
        let (lo, hi) = (g.min_vertex()?, g.max_vertex()?);
        if !lo.is_surface() || !hi.is_surface() {
            return None;
        }
        Some(Skeleton {
            genus: lo.genus().unwrap_or(0),
            points: g.interior().map(|v| v.id.clone()).collect(),
            edges: g.edges().to_vec(),
        })
    }
}

/// Heights of the surfaces and of the interior points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moments {
    pub y_min: Rational,
    pub y_max: Rational,
    pub points: BTreeMap<VertexId, Rational>,
}

impl Moments {
    pub fn of_graph(g: &DecoratedGraph) -> Option<Moments> {
        Some(Moments {
            y_min: g.min_vertex()?.moment.clone(),
            y_max: g.max_vertex()?.moment.clone(),
            points: g.interior().map(|v| (v.id.clone(), v.moment.clone())).collect(),
        })
    }

    fn of(&self, id: &VertexId) -> Result<&Rational, ClassifyError> {
        self.points.get(id).ok_or_else(|| ClassifyError::Labels(format!("no height for {id}")))
    }
}

/// `(m_p n_p, y_p)` for each interior point.
fn products(s: &Skeleton, y: &Moments) -> Result<Vec<(u64, Rational)>, ClassifyError> {
    for e in &s.edges {
        let (a, b) = (y.of(&e.a)?, y.of(&e.b)?);
        if a >= b {
            return Err(ClassifyError::Labels(format!("heights decrease along the edge {}-{}", e.a, e.b)));
        }
    }
    s.points
        .iter()
        .map(|p| {
            let yp = y.of(p)?;
            if yp <= &y.y_min || yp >= &y.y_max {
                return Err(ClassifyError::Labels(format!("{p} is not strictly between the surfaces")));
            }
            let up: u64 = s.edges.iter().filter(|e| &e.a == p).map(|e| e.weight).product();
            let down: u64 = s.edges.iter().filter(|e| &e.b == p).map(|e| e.weight).product();
            Ok((up * down, yp.clone()))
        })
        .collect()
}

/// The required difference `a_min - a_max`.
pub fn label_offset(s: &Skeleton, y: &Moments, e: (i64, i64)) -> Result<Rational, ClassifyError> {
    let ps = products(s, y)?;
    let a: Rational = ps.iter().map(|(mn, _)| Rational::new(1.into(), (*mn).into())).sum();
    if !a.is_integer() {
        return Err(ClassifyError::Labels(format!("Σ 1/(m n) = {a} is not an integer")));
    }
    if int(e.0 + e.1) != -&a {
        return Err(ClassifyError::Labels(format!("e_min + e_max = {} but must be {}", e.0 + e.1, -a)));
    }
    let weighted: Rational = ps.iter().map(|(mn, yp)| yp / int(*mn as i64)).sum();
    Ok(-(&y.y_min * int(e.0) + &y.y_max * int(e.1) + weighted))
}

/// Labels the skeleton, checking `a_min - a_max = b` and positivity.
pub fn assign_labels(
    s: &Skeleton,
    y: &Moments,
    a_min: &Rational,
    a_max: &Rational,
    e: (i64, i64),
) -> Result<DecoratedGraph, ClassifyError> {
    if y.y_min >= y.y_max {
        return Err(ClassifyError::Labels("y_min must be below y_max".into()));
    }
    if !a_min.is_positive() || !a_max.is_positive() {
        return Err(ClassifyError::Labels("areas must be positive".into()));
    }
    let b = label_offset(s, y, e)?;
    if a_min - a_max != b {
        return Err(ClassifyError::Labels(format!("a_min - a_max = {} but must be {b}", a_min - a_max)));
    }
    let mut vertices = vec![
        Vertex::surface("min", y.y_min.clone(), a_min.clone(), s.genus),
        Vertex::surface("max", y.y_max.clone(), a_max.clone(), s.genus),
    ];
    for p in &s.points {
        vertices.push(Vertex::point(p.clone(), y.of(p)?.clone()));
    }
    let g = DecoratedGraph::new(vertices, s.edges.clone())?;
    let report = validate_graph(&g);
    if !report.is_valid() {
        return Err(ClassifyError::Labels(report.to_string()));
    }
    let ex = extremal_self_intersections(&g).map_err(|err| ClassifyError::Labels(err.to_string()))?;
    if ex.e_min != int(e.0) || ex.e_max != int(e.1) || !is_consistent(&g) {
        return Err(ClassifyError::Labels("the labelled graph is inconsistent".into()));
    }
    Ok(g)
}
