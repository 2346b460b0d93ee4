//! Graphs that come from toric surfaces.

use std::collections::BTreeSet;

use graph_core::{extend_graph, extend_graph_to_extrema, DecoratedGraph, GraphError, Rational};
use num_traits::{One, Signed, Zero};
use toric_geometry::{affine_normal_form, graph_to_polygon, DelzantPolygon};

use crate::ClassifyError;

/// Non-free orbits on each non-extremal level where the count can change:
/// interior vertices on the level plus edges passing through it.
pub fn level_counts(g: &DecoratedGraph) -> Vec<(Rational, usize)> {
    let (Some(lo), Some(hi)) = (g.min_vertex(), g.max_vertex()) else { return vec![] };
    let mut levels: BTreeSet<Rational> = g.vertices().iter().map(|v| v.moment.clone()).collect();
    let marks: Vec<Rational> = levels.iter().cloned().collect();
    for w in marks.windows(2) {
        levels.insert((&w[0] + &w[1]) / Rational::from_integer(2.into()));
    }
    levels
        .into_iter()
        .filter(|y| y > &lo.moment && y < &hi.moment)
        .map(|y| {
            let points = g.interior().filter(|v| v.moment == y).count();
            let crossing = g
                .edges()
                .iter()
                .filter(|e| {
                    let (a, b) = (g.moment(&e.a).expect("edge end"), g.moment(&e.b).expect("edge end"));
                    a < &y && &y < b
                })
                .count();
            (y, points + crossing)
        })
        .collect()
}

/// Genus zero everywhere and an extension with two branches.
pub fn is_toric_extendable(g: &DecoratedGraph) -> bool {
    g.surfaces().all(|v| v.genus() == Some(0)) && extend_graph(g).is_ok()
}

/// The normal form of a Delzant polygon realizing a graph with isolated
/// fixed points.
///
/// Such polygons have no horizontal edge, and every edge of weight one
/// reaches the top or the bottom vertex.
pub fn classify_isolated(g: &DecoratedGraph) -> Result<DelzantPolygon, ClassifyError> {
    if let Some(v) = g.surfaces().next() {
        return Err(ClassifyError::NotIsolated(v.id.to_string()));
    }
    let min = g.min_vertex().ok_or_else(|| GraphError::Invalid("no unique minimum".into()))?;
    // every chain starts at the minimum or at an interior vertex entered by a free sphere
    let starts = g.up_edges(&min.id).count() + g.interior().filter(|v| g.down_edges(&v.id).next().is_none()).count();
    if starts > 2 {
        return Err(ClassifyError::Branches(starts));
    }
    let ext = extend_graph_to_extrema(g)?;
    let p = graph_to_polygon(g, &ext)?;
    let ys: Vec<&Rational> = p.vertices().iter().map(|v| &v.1).collect();
    let bottom = ys.iter().min().expect("nonempty polygon");
    let top = ys.iter().max().expect("nonempty polygon");
    for i in 0..p.len() {
        let d = p.direction(i);
        if d.b.is_zero() {
            return Err(ClassifyError::Condition(format!("edge {i} is horizontal")));
        }
        let (a, b) = p.edge(i);
        let extremal = [&a.1, &b.1].iter().any(|y| y == bottom || y == top);
        if d.b.abs().is_one() && !extremal {
            return Err(ClassifyError::Condition(format!("edge {i} of weight one misses the extrema")));
        }
    }
    Ok(affine_normal_form(&p))
}
