//! Passing between Delzant polygons and decorated graphs.
//!
//! The circle is the second factor of the torus, so the moment map is the
//! height `y`. An edge with primitive outward normal `(±k, b)` is a sphere
//! with stabilizer of order `k`; horizontal edges (`k = 0`) are fixed
//! surfaces.
//!
//! Going back, the two branches of an extended graph become the right and
//! left boundary paths. Right normals are `(k_i, b_i)` and left normals are
//! `(-k'_i, b'_i)`, both with consecutive determinant one along the branch.
//! Moving up by `dy` shifts the right path by `-b dy / k` and the left path
//! by `b' dy / k'`.

use chain_arith::{det, next_b, LatticeVector};
use dh_measure::{density, extremal_self_intersections, polygon_width, PiecewiseLinearDensity};
use graph_core::{extend_graph_to_extrema, DecoratedGraph, Edge, ExtendedGraph, Rational, Vertex, VertexId};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polygon::{DelzantPolygon, Point};
use crate::ToricError;

fn surface_id(i: usize) -> VertexId {
    VertexId::new(format!("e{i}"))
}

fn point_id(i: usize) -> VertexId {
    VertexId::new(format!("v{i}"))
}

/// Graph vertex carrying polygon vertex `i`.
fn owner(p: &DelzantPolygon, i: usize) -> VertexId {
    let n = p.len();
    for e in [i, (i + n - 1) % n] {
        if p.direction(e).b.is_zero() {
            return surface_id(e);
        }
    }
    point_id(i)
}

/// The graph together with the weight-one spheres of the boundary.
pub fn polygon_extension(p: &DelzantPolygon) -> ExtendedGraph {
    let n = p.len();
    let mut vertices = Vec::new();
    for i in 0..n {
        let d = p.direction(i);
        if d.b.is_zero() {
            let (a, _) = p.edge(i);
            vertices.push(Vertex::surface(surface_id(i), a.1.clone(), p.edge_length(i), 0));
        } else if owner(p, i) == point_id(i) {
            vertices.push(Vertex::point(point_id(i), p.vertices()[i].1.clone()));
        }
    }
    let mut edges = Vec::new();
    let mut free_edges = Vec::new();
    for i in 0..n {
        let k = p.direction(i).b.abs();
        if k.is_zero() {
            continue;
        }
        let (a, b) = (owner(p, i), owner(p, (i + 1) % n));
        if k.is_one() {
            free_edges.push((a, b));
        } else {
            let w: u64 = k.try_into().expect("edge weight fits in u64");
            edges.push(Edge::new(a, b, w));
        }
    }
    let base = DecoratedGraph::new(vertices, edges).expect("polygon ids are distinct");
    let free_edges = free_edges
        .into_iter()
        .map(|(a, b)| {
            let lower = base.moment(&a) <= base.moment(&b);
            if lower {
                Edge::new(a, b, 1)
            } else {
                Edge::new(b, a, 1)
            }
        })
        .collect();
    ExtendedGraph { base, free_edges }
}

/// Horizontal edges become surfaces, other vertices isolated points, and
/// edges of weight at least two become graph edges.
pub fn polygon_to_graph(p: &DelzantPolygon) -> DecoratedGraph {
    polygon_extension(p).base
}

/// Width of the polygon as a function of height.
pub fn polygon_pushforward(p: &DelzantPolygon) -> PiecewiseLinearDensity {
    polygon_width(p.vertices()).expect("a valid polygon has positive height")
}

fn rat(x: &BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

/// Normals `(k_i, b_i)` along one branch from a seed `b_1`.
fn branch_normals(ks: &[u64], b1: BigInt) -> Result<Vec<LatticeVector>, ToricError> {
    let mut out = vec![LatticeVector::new(ks[0], b1)];
    for &k in &ks[1..] {
        let prev = out.last().expect("nonempty");
        let b = next_b(&prev.k, &prev.b, &BigInt::from(k))
            .ok_or_else(|| ToricError::Construction(format!("no integral normal after {} for weight {k}", prev)))?;
        out.push(LatticeVector::new(k, b));
    }
    Ok(out)
}

/// Points of one branch starting at `start`; `sign` is `-1` on the right.
fn walk(g: &DecoratedGraph, ids: &[VertexId], normals: &[LatticeVector], start: Point, sign: i64) -> Vec<Point> {
    let mut pts = vec![start];
    for (w, u) in ids.windows(2).zip(normals) {
        let dy = g.moment(&w[1]).expect("branch vertex") - g.moment(&w[0]).expect("branch vertex");
        let last = pts.last().expect("nonempty");
        let x = &last.0 + Rational::from_integer(BigInt::from(sign)) * rat(&u.b) * &dy / rat(&u.k);
        pts.push((x, &last.1 + &dy));
    }
    pts
}

fn check_genus(g: &DecoratedGraph) -> Result<(), ToricError> {
    match g.vertices().iter().find(|v| v.genus().is_some_and(|h| h > 0)) {
        Some(v) => Err(ToricError::Genus(v.id.clone())),
        None => Ok(()),
    }
}

/// Builds the Delzant polygon of a genus-zero graph from a two-branch extension.
///
/// The first branch is drawn on the right. The result is checked for
/// closure at the top, for the Delzant condition, and for width equal to the
/// density of `g`.
pub fn graph_to_polygon(g: &DecoratedGraph, ext: &ExtendedGraph) -> Result<DelzantPolygon, ToricError> {
    check_genus(g)?;
    let branches = ext.branches();
    if branches.len() != 2 {
        return Err(ToricError::BranchCount(branches.len()));
    }
    let (right, left) = (&branches[0], &branches[1]);
    let lo = g.min_vertex().ok_or_else(|| ToricError::Construction("no unique minimum".into()))?;
    let hi = g.max_vertex().ok_or_else(|| ToricError::Construction("no unique maximum".into()))?;
    let (k1, kp1) = (BigInt::from(right.weights[0]), BigInt::from(left.weights[0]));
    let (b1, bp1) = match lo.area() {
        None => {
            // -k'_1 b_1 - b'_1 k_1 = 1 with 0 <= b_1 < k_1
            let mut b1 = BigInt::zero();
            while !((BigInt::one() + &kp1 * &b1) % &k1).is_zero() {
                b1 += 1;
                if b1 >= k1 {
                    return Err(ToricError::Construction("weights at the minimum are not coprime".into()));
                }
            }
            let bp1 = -(BigInt::one() + &kp1 * &b1).div_floor(&k1);
            (b1, bp1)
        }
        Some(_) => {
            if !k1.is_one() || !kp1.is_one() {
                return Err(ToricError::Construction(
                    "a branch leaves the minimal surface with weight above one".into(),
                ));
            }
            let e = extremal_self_intersections(g)?.e_min;
            (BigInt::zero(), e.to_integer())
        }
    };
    let u = branch_normals(&right.weights, b1)?;
    let up = branch_normals(&left.weights, bp1)?;
    let a_min = lo.area().cloned().unwrap_or_else(Rational::zero);
    let y0 = lo.moment.clone();
    let rp = walk(g, &right.vertices, &u, (a_min.clone(), y0.clone()), -1);
    let lp = walk(g, &left.vertices, &up, (Rational::zero(), y0), 1);
    let (top_r, top_l) = (rp.last().expect("nonempty"), lp.last().expect("nonempty"));
    let gap = &top_r.0 - &top_l.0;
    let want = hi.area().cloned().unwrap_or_else(Rational::zero);
    if gap != want {
        return Err(ToricError::Closure(format!("top gap is {gap}, expected {want}")));
    }
    let ul = u.last().expect("nonempty");
    let us = up.last().expect("nonempty");
    let us = LatticeVector { k: -&us.k, b: us.b.clone() };
    match hi.area() {
        None if !det(ul, &us).is_one() => {
            return Err(ToricError::Closure(format!(
                "normals {ul} and {us} at the top have determinant {}",
                det(ul, &us)
            )))
        }
        Some(_) if !ul.k.is_one() || !(-&us.k).is_one() => {
            return Err(ToricError::Closure("a branch reaches the maximal surface with weight above one".into()))
        }
        _ => {}
    }
    let mut vertices: Vec<Point> = Vec::new();
    if lo.area().is_some() {
        vertices.push(lp[0].clone());
    }
    vertices.extend(rp.iter().cloned());
    let skip_top = if hi.area().is_some() { 0 } else { 1 };
    vertices.extend(lp[1..lp.len() - skip_top].iter().rev().cloned());
    let poly = DelzantPolygon::new(vertices)?;
    if !polygon_pushforward(&poly).same_function(&density(g)?) {
        return Err(ToricError::Construction("polygon width differs from the density".into()));
    }
    Ok(poly)
}

/// [`graph_to_polygon`] with the extension that joins interior vertices to the extrema.
pub fn graph_to_polygon_default(g: &DecoratedGraph) -> Result<DelzantPolygon, ToricError> {
    check_genus(g)?;
    let ext = extend_graph_to_extrema(g)?;
    graph_to_polygon(g, &ext)
}
