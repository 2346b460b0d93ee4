//! Duistermaat-Heckman densities of decorated graphs.
//!
//! The pushforward of Liouville measure under the moment map is a piecewise
//! linear density on `[y_min, y_max]`. Its initial value is the area of the
//! minimal surface (zero at an isolated minimum), its initial slope is
//! `-e_min`, and it bends down by `1/(m n)` at an interior fixed point with
//! weights `{m, -n}`. The self-intersections `e_min`, `e_max` of the extremal
//! spheres follow from a two by two linear system.
//!
//! Densities are stored by their continuous extension to the closed support:
//! the value at `y_max` is the left limit `a_max`. [`density_literal`]
//! evaluates the formula with the step convention `H(0) = 1` instead.

use std::fmt;

use graph_core::{extremal_weights, rational::int, DecoratedGraph, GraphError, Rational, Vertex, VertexKind};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DhError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has no unique minimum and maximum")]
    NoExtrema,
    #[error("degenerate graph: y_min = y_max")]
    Degenerate,
    #[error("inconsistent graph: {0}")]
    Inconsistent(String),
    #[error("invalid polygon: {0}")]
    Polygon(String),
    #[error("breakpoints must be strictly increasing with one value each")]
    Breakpoints,
}

/// Self-intersections of the extremal spheres or surfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalData {
    pub e_min: Rational,
    pub e_max: Rational,
}

impl fmt::Display for ExtremalData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_min = {}, e_max = {}", self.e_min, self.e_max)
    }
}

/// Continuous piecewise linear function, zero outside `[y_0, y_N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinearDensity {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

impl PiecewiseLinearDensity {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self, DhError> {
        if breakpoints.len() != values.len() || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DhError::Breakpoints);
        }
        Ok(PiecewiseLinearDensity { breakpoints, values })
    }

    pub fn zero() -> Self {
        PiecewiseLinearDensity { breakpoints: vec![], values: vec![] }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `(y_0, y_N)`, or `None` for the empty function.
    pub fn support(&self) -> Option<(&Rational, &Rational)> {
        Some((self.breakpoints.first()?, self.breakpoints.last()?))
    }

    pub fn eval(&self, y: &Rational) -> Rational {
        let Some((lo, hi)) = self.support() else {
            return Rational::zero();
        };
        if y < lo || y > hi {
            return Rational::zero();
        }
        let i = self.breakpoints.partition_point(|b| b <= y);
        if i == self.breakpoints.len() {
            return self.values[i - 1].clone();
        }
        let (y0, y1) = (&self.breakpoints[i - 1], &self.breakpoints[i]);
        let (v0, v1) = (&self.values[i - 1], &self.values[i]);
        v0 + (v1 - v0) * (y - y0) / (y1 - y0)
    }

    /// Slope on each segment between consecutive breakpoints.
    pub fn slopes(&self) -> Vec<Rational> {
        self.breakpoints
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(y, v)| (&v[1] - &v[0]) / (&y[1] - &y[0]))
            .collect()
    }

    /// Drops breakpoints where the slope does not change.
    pub fn normalized(&self) -> Self {
        let n = self.breakpoints.len();
        if n <= 2 {
            return self.clone();
        }
        let s = self.slopes();
        let mut out = PiecewiseLinearDensity::zero();
        for i in 0..n {
            if i == 0 || i == n - 1 || s[i - 1] != s[i] {
                out.breakpoints.push(self.breakpoints[i].clone());
                out.values.push(self.values[i].clone());
            }
        }
        out
    }

    /// Equal as functions on the real line.
    pub fn same_function(&self, other: &Self) -> bool {
        if self.support() != other.support() {
            return false;
        }
        let mut ys: Vec<&Rational> = self.breakpoints.iter().chain(&other.breakpoints).collect();
        ys.sort();
        ys.dedup();
        ys.into_iter().all(|y| self.eval(y) == other.eval(y))
    }

    pub fn shifted(&self, c: &Rational) -> Self {
        PiecewiseLinearDensity {
            breakpoints: self.breakpoints.iter().map(|y| y + c).collect(),
            values: self.values.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DensityDoc::from(self)).expect("density serializes")
    }
}

impl fmt::Display for PiecewiseLinearDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.breakpoints.iter().zip(&self.values).map(|(y, v)| format!("({y}, {v})")).collect();
        write!(f, "[{}]", pts.join(", "))
    }
}

/// Serialized form: parallel arrays of rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityDoc {
    pub breakpoints: Vec<String>,
    pub values: Vec<String>,
}

impl From<&PiecewiseLinearDensity> for DensityDoc {
    fn from(d: &PiecewiseLinearDensity) -> Self {
        DensityDoc {
            breakpoints: d.breakpoints.iter().map(|r| r.to_string()).collect(),
            values: d.values.iter().map(|r| r.to_string()).collect(),
        }
    }
}

impl TryFrom<&DensityDoc> for PiecewiseLinearDensity {
    type Error = DhError;

    fn try_from(doc: &DensityDoc) -> Result<Self, DhError> {
        let parse = |v: &Vec<String>| -> Result<Vec<Rational>, DhError> {
            v.iter().map(|s| graph_core::rational::parse(s).map_err(DhError::from)).collect()
        };
        PiecewiseLinearDensity::new(parse(&doc.breakpoints)?, parse(&doc.values)?)
    }
}

fn extrema(g: &DecoratedGraph) -> Result<(&Vertex, &Vertex), DhError> {
    let lo = g.min_vertex().ok_or(DhError::NoExtrema)?;
    let hi = g.max_vertex().ok_or(DhError::NoExtrema)?;
    if lo.moment == hi.moment {
        return Err(DhError::Degenerate);
    }
    Ok((lo, hi))
}

fn area_of(v: &Vertex) -> Rational {
    v.area().cloned().unwrap_or_else(Rational::zero)
}

/// `1/(m n)` for every interior fixed point, with its height.
fn interior_terms(g: &DecoratedGraph) -> Vec<(Rational, Rational)> {
    g.interior()
        .map(|v| {
            let m = graph_core::up_weight(g, &v.id) as i64;
            let n = graph_core::down_weight(g, &v.id) as i64;
            (v.moment.clone(), graph_core::rational::rat(1, m * n))
        })
        .collect()
}

/// Solves for `e_min`, `e_max` and cross-checks isolated extrema.
pub fn extremal_self_intersections(g: &DecoratedGraph) -> Result<ExtremalData, DhError> {
    let (lo, hi) = extrema(g)?;
    let terms = interior_terms(g);
    let sum: Rational = terms.iter().map(|(_, t)| t.clone()).sum();
    let weighted: Rational = terms.iter().map(|(y, t)| y * t).sum();
    // e_min + e_max = -sum
    // y_min e_min + y_max e_max = a_max - a_min - weighted
    let (y0, y1) = (&lo.moment, &hi.moment);
    let rhs = area_of(hi) - area_of(lo) - weighted;
    let e_max = (&rhs + y0 * &sum) / (y1 - y0);
    let e_min = -&sum - &e_max;
    for (v, e, name) in [(lo, &e_min, "minimum"), (hi, &e_max, "maximum")] {
        match v.kind {
            VertexKind::Point => {
                let (a, b) = extremal_weights(g, &v.id);
                let expected = graph_core::rational::rat(-1, (a * b) as i64);
                if *e != expected {
                    return Err(DhError::Inconsistent(format!(
                        "isolated {name} {} has weights {{{a}, {b}}} so e = {expected}, but the system gives {e}",
                        v.id
                    )));
                }
            }
            VertexKind::Surface { .. } => {
                if !e.is_integer() {
                    return Err(DhError::Inconsistent(format!(
                        "surface {name} {} has non-integral self-intersection {e}",
                        v.id
                    )));
                }
            }
        }
    }
    Ok(ExtremalData { e_min, e_max })
}

/// The density on its support, continuous at both ends.
pub fn density(g: &DecoratedGraph) -> Result<PiecewiseLinearDensity, DhError> {
    let (lo, hi) = extrema(g)?;
    let e = extremal_self_intersections(g)?;
    let terms = interior_terms(g);
    let mut ys: Vec<Rational> = terms.iter().map(|(y, _)| y.clone()).collect();
    ys.push(lo.moment.clone());
    ys.push(hi.moment.clone());
    ys.sort();
    ys.dedup();
    let a_min = area_of(lo);
    let values = ys
        .iter()
        .map(|y| {
            let mut v = &a_min - &e.e_min * (y - &lo.moment);
            for (yp, t) in &terms {
                if yp < y {
                    v -= (y - yp) * t;
                }
            }
            v
        })
        .collect();
    PiecewiseLinearDensity::new(ys, values)
}

fn step(t: &Rational) -> Rational {
    if t.is_negative() {
        Rational::zero()
    } else {
        int(1)
    }
}

fn ramp(t: &Rational) -> Rational {
    if t.is_negative() {
        Rational::zero()
    } else {
        t.clone()
    }
}

/// The closed-form density evaluated literally with `H(0) = 1`.
///
/// Agrees with [`density`] except at `y_max` when the maximum is a surface,
/// where the jump `-a_max H(0)` already applies.
pub fn density_literal(g: &DecoratedGraph, y: &Rational) -> Result<Rational, DhError> {
    let (lo, hi) = extrema(g)?;
    let e = extremal_self_intersections(g)?;
    let mut v = area_of(lo) * step(&(y - &lo.moment)) - &e.e_min * ramp(&(y - &lo.moment));
    for (yp, t) in interior_terms(g) {
        v -= t * ramp(&(y - yp));
    }
    v -= area_of(hi) * step(&(y - &hi.moment)) + &e.e_max * ramp(&(y - &hi.moment));
    Ok(v)
}

/// Exact integral.
pub fn total_mass(rho: &PiecewiseLinearDensity) -> Rational {
    rho.breakpoints.windows(2).zip(rho.values.windows(2)).map(|(y, v)| (&y[1] - &y[0]) * (&v[0] + &v[1]) / int(2)).sum()
}

/// Slopes non-increasing and values non-negative.
pub fn check_concave_nonneg(rho: &PiecewiseLinearDensity) -> bool {
    rho.values.iter().all(|v| !v.is_negative()) && rho.slopes().windows(2).all(|s| s[0] >= s[1])
}

/// Horizontal width of a convex polygon as a function of height.
///
/// Vertices are given in cyclic order. Breakpoints are the vertex heights.
pub fn polygon_width(vertices: &[(Rational, Rational)]) -> Result<PiecewiseLinearDensity, DhError> {
    if vertices.len() < 3 {
        return Err(DhError::Polygon("fewer than three vertices".into()));
    }
    let n = vertices.len();
    let mut ys: Vec<Rational> = vertices.iter().map(|(_, y)| y.clone()).collect();
    ys.sort();
    ys.dedup();
    if ys.len() < 2 {
        return Err(DhError::Polygon("zero height".into()));
    }
    let values = ys
        .iter()
        .map(|y| {
            let mut xs: Vec<Rational> = Vec::new();
            for i in 0..n {
                let (p, q) = (&vertices[i], &vertices[(i + 1) % n]);
                let (lo, hi) = if p.1 <= q.1 { (p, q) } else { (q, p) };
                if y < &lo.1 || y > &hi.1 {
                    continue;
                }
                if lo.1 == hi.1 {
                    xs.push(lo.0.clone());
                    xs.push(hi.0.clone());
                } else {
                    xs.push(&lo.0 + (&hi.0 - &lo.0) * (y - &lo.1) / (&hi.1 - &lo.1));
                }
            }
            let max = xs.iter().max().expect("every level meets the boundary");
            let min = xs.iter().min().expect("every level meets the boundary");
            max - min
        })
        .collect();
    PiecewiseLinearDensity::new(ys, values)
}
