//! Delzant polygons: validation, normals, affine normal form and corner chopping.

use std::fmt;

use chain_arith::{det, LatticeVector};
use graph_core::{rational::int, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::ToricError;

pub type Point = (Rational, Rational);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PolygonViolation {
    TooFewVertices,
    RepeatedVertex { index: usize },
    Clockwise,
    NotConvex { index: usize },
    Determinant { index: usize, det: BigInt },
}

impl fmt::Display for PolygonViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonViolation::TooFewVertices => write!(f, "fewer than three vertices"),
            PolygonViolation::RepeatedVertex { index } => write!(f, "vertex {index} repeats its successor"),
            PolygonViolation::Clockwise => write!(f, "vertices are clockwise"),
            PolygonViolation::NotConvex { index } => write!(f, "vertex {index} is not a strictly convex corner"),
            PolygonViolation::Determinant { index, det } => {
                write!(f, "normals at vertex {index} have determinant {det}, expected 1")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PolygonReport {
    pub violations: Vec<PolygonViolation>,
}

impl PolygonReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for PolygonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Polygon given by its vertices in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DelzantPolygon {
    vertices: Vec<Point>,
}

fn cross(p: &Point, q: &Point, r: &Point) -> Rational {
    (&q.0 - &p.0) * (&r.1 - &q.1) - (&q.1 - &p.1) * (&r.0 - &q.0)
}

fn twice_signed_area(vs: &[Point]) -> Rational {
    let n = vs.len();
    (0..n).map(|i| &vs[i].0 * &vs[(i + 1) % n].1 - &vs[(i + 1) % n].0 * &vs[i].1).sum()
}

/// Primitive integer vector along a nonzero rational direction.
pub fn primitive(dx: &Rational, dy: &Rational) -> LatticeVector {
    let l = dx.denom().lcm(dy.denom());
    let x = dx.numer() * (&l / dx.denom());
    let y = dy.numer() * (&l / dy.denom());
    let g = x.gcd(&y);
    LatticeVector { k: x / &g, b: y / g }
}

/// Lattice length of the segment from `p` to `q`.
pub fn lattice_length(p: &Point, q: &Point) -> Rational {
    let (dx, dy) = (&q.0 - &p.0, &q.1 - &p.1);
    let u = primitive(&dx, &dy);
    if u.k.is_zero() {
        dy / Rational::from_integer(u.b)
    } else {
        dx / Rational::from_integer(u.k)
    }
}

fn to_rat(x: &BigInt) -> Rational {
    Rational::from_integer(x.clone())
}

impl DelzantPolygon {
    /// Builds and validates, reversing clockwise input.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self, ToricError> {
        if vertices.len() >= 3 && twice_signed_area(&vertices).is_negative() {
            vertices.reverse();
        }
        let p = DelzantPolygon { vertices };
        let report = validate_delzant(&p);
        if !report.is_valid() {
            return Err(ToricError::InvalidPolygon(report.to_string()));
        }
        Ok(p)
    }

    /// Integer vertices, for tests and examples.
    pub fn from_ints(vertices: &[(i64, i64)]) -> Result<Self, ToricError> {
        Self::new(vertices.iter().map(|&(x, y)| (int(x), int(y))).collect())
    }

    /// Keeps the vertices as given; see [`validate_delzant`].
    pub fn unchecked(vertices: Vec<Point>) -> Self {
        DelzantPolygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (&Point, &Point) {
        (&self.vertices[i], &self.vertices[(i + 1) % self.len()])
    }

    pub fn direction(&self, i: usize) -> LatticeVector {
        let (p, q) = self.edge(i);
        primitive(&(&q.0 - &p.0), &(&q.1 - &p.1))
    }

    /// Primitive outward normal of edge `i`.
    pub fn normal(&self, i: usize) -> LatticeVector {
        let d = self.direction(i);
        LatticeVector { k: d.b, b: -d.k }
    }

    pub fn normals(&self) -> Vec<LatticeVector> {
        (0..self.len()).map(|i| self.normal(i)).collect()
    }

    pub fn edge_length(&self, i: usize) -> Rational {
        let (p, q) = self.edge(i);
        lattice_length(p, q)
    }

    pub fn area(&self) -> Rational {
        twice_signed_area(&self.vertices) / int(2)
    }

    pub fn map(&self, f: impl Fn(&Point) -> Point) -> DelzantPolygon {
        DelzantPolygon { vertices: self.vertices.iter().map(f).collect() }
    }

    /// `(x, y) -> (a + s x + m y, y)` with `s = ±1`, kept counterclockwise.
    pub fn transform(&self, s: i64, m: &BigInt, a: &Rational) -> DelzantPolygon {
        let m = to_rat(m);
        let mut out = self.map(|(x, y)| (a + int(s) * x + &m * y, y.clone()));
        if s < 0 {
            out.vertices.reverse();
        }
        out
    }

    /// Rotates so the lowest, then leftmost, vertex comes first.
    fn rotated_to_bottom_left(&self) -> DelzantPolygon {
        let start = (0..self.len())
            .min_by(|&i, &j| {
                let (p, q) = (&self.vertices[i], &self.vertices[j]);
                (&p.1, &p.0).cmp(&(&q.1, &q.0))
            })
            .unwrap_or(0);
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(start);
        DelzantPolygon { vertices }
    }

    pub fn to_json(&self) -> String {
        let doc: Vec<[String; 2]> = self.vertices.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect();
        serde_json::to_string(&doc).expect("polygon serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, ToricError> {
        let doc: Vec<[String; 2]> = serde_json::from_str(s).map_err(|e| ToricError::Json(e.to_string()))?;
        let vertices = doc
            .iter()
            .map(|[x, y]| Ok((graph_core::rational::parse(x)?, graph_core::rational::parse(y)?)))
            .collect::<Result<Vec<_>, graph_core::GraphError>>()?;
        DelzantPolygon::new(vertices)
    }
}

impl fmt::Display for DelzantPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.vertices.iter().map(|(x, y)| format!("({x}, {y})")).collect();
        write!(f, "{}", pts.join(", "))
    }
}

/// Convexity, orientation and the unimodularity of consecutive normals.
pub fn validate_delzant(p: &DelzantPolygon) -> PolygonReport {
    let mut violations = Vec::new();
    let n = p.len();
    if n < 3 {
        violations.push(PolygonViolation::TooFewVertices);
        return PolygonReport { violations };
    }
    for i in 0..n {
        let (a, b) = p.edge(i);
        if a == b {
            violations.push(PolygonViolation::RepeatedVertex { index: i });
        }
    }
    if !violations.is_empty() {
        return PolygonReport { violations };
    }
    if !twice_signed_area(&p.vertices).is_positive() {
        violations.push(PolygonViolation::Clockwise);
    }
    for i in 0..n {
        let prev = &p.vertices[(i + n - 1) % n];
        if !cross(prev, &p.vertices[i], &p.vertices[(i + 1) % n]).is_positive() {
            violations.push(PolygonViolation::NotConvex { index: i });
        }
    }
    // A convex polygon turns once; more turns means self-overlap.
    let turns = (0..n)
        .filter(|&i| {
            let (u, v) = (p.direction(i), p.direction((i + 1) % n));
            !u.b.is_positive() && v.b.is_positive()
        })
        .count();
    if violations.is_empty() && turns != 1 {
        violations.push(PolygonViolation::NotConvex { index: 0 });
    }
    if violations.is_empty() {
        for i in 0..n {
            let d = det(&p.normal((i + n - 1) % n), &p.normal(i));
            if !d.is_one() {
                violations.push(PolygonViolation::Determinant { index: i, det: d });
            }
        }
    }
    PolygonReport { violations }
}

/// Canonical representative under `(x, y) -> (a ± x + m y, y)`.
///
/// The lowest-leftmost vertex is moved to `x = 0` and the first non-horizontal
/// edge gets primitive direction `(p, q)` with `0 <= p < q`. Of the two
/// reflections the lexicographically smaller vertex list is kept.
pub fn affine_normal_form(p: &DelzantPolygon) -> DelzantPolygon {
    let candidates = [1i64, -1].map(|s| {
        let q = p.transform(s, &BigInt::zero(), &Rational::zero()).rotated_to_bottom_left();
        let first = (0..q.len()).map(|i| q.direction(i)).find(|d| !d.b.is_zero()).expect("polygon has height");
        // direction (dx, dy) becomes (dx + m dy, dy)
        let m = -first.k.div_floor(&first.b);
        let sheared = q.transform(1, &m, &Rational::zero());
        let x0 = sheared.vertices[0].0.clone();
        sheared.map(|(x, y)| (x - &x0, y.clone()))
    });
    let [a, b] = candidates;
    if a.vertices <= b.vertices {
        a
    } else {
        b
    }
}

/// Whether one polygon maps to the other by `(x, y) -> (a ± x + m y, y)`.
pub fn polygon_affine_equivalent(p1: &DelzantPolygon, p2: &DelzantPolygon) -> bool {
    p1.len() == p2.len() && affine_normal_form(p1) == affine_normal_form(p2)
}

/// Cuts vertex `i` at lattice distance `t` along both adjacent edges.
pub fn polygon_chop(p: &DelzantPolygon, i: usize, t: &Rational) -> Result<DelzantPolygon, ToricError> {
    let n = p.len();
    if i >= n {
        return Err(ToricError::BadVertex(i));
    }
    if !t.is_positive() {
        return Err(ToricError::ChopSize(format!("t = {t} is not positive")));
    }
    let prev = (i + n - 1) % n;
    if t >= &p.edge_length(prev) || t >= &p.edge_length(i) {
        return Err(ToricError::ChopSize(format!("t = {t} reaches past an adjacent vertex")));
    }
    let v = &p.vertices[i];
    let back = p.direction(prev);
    let fwd = p.direction(i);
    let a = (&v.0 - t * to_rat(&back.k), &v.1 - t * to_rat(&back.b));
    let b = (&v.0 + t * to_rat(&fwd.k), &v.1 + t * to_rat(&fwd.b));
    let mut vertices = p.vertices.clone();
    vertices.splice(i..=i, [a, b]);
    DelzantPolygon::new(vertices)
}
