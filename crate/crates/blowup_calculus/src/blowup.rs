//! Blow-ups as graph rewrites with labels affine in the size `λ`.

use std::fmt;

use graph_core::{
    down_weight, extremal_weights, order_pairs, rational::int, up_weight, DecoratedGraph, Edge, Rational, Vertex,
    VertexId, VertexKind,
};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::BlowupError;

/// `c0 + c1 λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub c0: Rational,
    pub c1: Rational,
}

impl Affine {
    pub fn constant(c0: Rational) -> Self {
        Affine { c0, c1: Rational::zero() }
    }

    pub fn new(c0: Rational, c1: i64) -> Self {
        Affine { c0, c1: int(c1) }
    }

    pub fn eval(&self, lambda: &Rational) -> Rational {
        &self.c0 + &self.c1 * lambda
    }

    pub fn neg(&self) -> Affine {
        Affine { c0: -&self.c0, c1: -&self.c1 }
    }

    pub fn sub(&self, o: &Affine) -> Affine {
        Affine { c0: &self.c0 - &o.c0, c1: &self.c1 - &o.c1 }
    }

    /// Positive for all small `λ > 0`.
    fn positive_near_zero(&self) -> bool {
        self.c0.is_positive() || (self.c0.is_zero() && self.c1.is_positive())
    }

    /// Supremum of `λ` keeping the value positive, `None` when unbounded.
    fn bound(&self) -> Option<Rational> {
        if self.c1.is_negative() {
            Some(&self.c0 / -&self.c1)
        } else {
            None
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            write!(f, "{}", self.c0)
        } else {
            write!(f, "{} + {}λ", self.c0, self.c1)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BlowupCase {
    Interior,
    SurfaceMin,
    SurfaceMax,
    IsolatedMinDistinct,
    IsolatedMaxDistinct,
    IsolatedMin11,
    IsolatedMax11,
}

impl BlowupCase {
    fn at_max(self) -> bool {
        matches!(self, BlowupCase::SurfaceMax | BlowupCase::IsolatedMaxDistinct | BlowupCase::IsolatedMax11)
    }

    /// The same rewrite at the other end.
    fn flipped(self) -> BlowupCase {
        match self {
            BlowupCase::Interior => BlowupCase::Interior,
            BlowupCase::SurfaceMin => BlowupCase::SurfaceMax,
            BlowupCase::SurfaceMax => BlowupCase::SurfaceMin,
            BlowupCase::IsolatedMinDistinct => BlowupCase::IsolatedMaxDistinct,
            BlowupCase::IsolatedMaxDistinct => BlowupCase::IsolatedMinDistinct,
            BlowupCase::IsolatedMin11 => BlowupCase::IsolatedMax11,
            BlowupCase::IsolatedMax11 => BlowupCase::IsolatedMin11,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BlowupSite {
    pub vertex: VertexId,
    pub case: BlowupCase,
}

impl fmt::Display for BlowupSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({:?})", self.vertex, self.case)
    }
}

fn case_of(g: &DecoratedGraph, v: &Vertex) -> BlowupCase {
    let (min, max) = (g.is_min(&v.id), g.is_max(&v.id));
    match (&v.kind, min, max) {
        (VertexKind::Surface { .. }, true, _) => BlowupCase::SurfaceMin,
        (VertexKind::Surface { .. }, _, _) => BlowupCase::SurfaceMax,
        (VertexKind::Point, false, false) => BlowupCase::Interior,
        (VertexKind::Point, min, _) => {
            let ones = extremal_weights(g, &v.id) == (1, 1);
            match (min, ones) {
                (true, true) => BlowupCase::IsolatedMin11,
                (true, false) => BlowupCase::IsolatedMinDistinct,
                (false, true) => BlowupCase::IsolatedMax11,
                (false, false) => BlowupCase::IsolatedMaxDistinct,
            }
        }
    }
}

/// One site per vertex.
pub fn blowup_sites(g: &DecoratedGraph) -> Vec<BlowupSite> {
    g.vertices().iter().map(|v| BlowupSite { vertex: v.id.clone(), case: case_of(g, v) }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolicKind {
    Point,
    Surface { area: Affine, genus: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicVertex {
    pub id: VertexId,
    pub moment: Affine,
    pub kind: SymbolicKind,
}

/// A blown-up graph with labels affine in `λ` and the order of small `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicBlowup {
    pub site: BlowupSite,
    pub vertices: Vec<SymbolicVertex>,
    pub edges: Vec<Edge>,
    /// Pairs `(v, w)` with `v < w`, carried to every `λ`.
    pub order: Vec<(VertexId, VertexId)>,
    /// Vertices not present before the blow-up.
    pub created: Vec<VertexId>,
}

fn constant_vertices(g: &DecoratedGraph) -> Vec<SymbolicVertex> {
    g.vertices()
        .iter()
        .map(|v| SymbolicVertex {
            id: v.id.clone(),
            moment: Affine::constant(v.moment.clone()),
            kind: match &v.kind {
                VertexKind::Point => SymbolicKind::Point,
                VertexKind::Surface { area, genus } => {
                    SymbolicKind::Surface { area: Affine::constant(area.clone()), genus: *genus }
                }
            },
        })
        .collect()
}

fn replace_end(e: &Edge, from: &VertexId, to: &VertexId) -> Edge {
    let swap = |x: &VertexId| if x == from { to.clone() } else { x.clone() };
    Edge { a: swap(&e.a), b: swap(&e.b), weight: e.weight }
}

/// Rewrites for the interior and minimum cases.
fn rewrite_low(g: &DecoratedGraph, v: &VertexId, case: BlowupCase) -> (Vec<SymbolicVertex>, Vec<Edge>, Vec<VertexId>) {
    let mut vs = constant_vertices(g);
    let mut edges: Vec<Edge> = g.edges().to_vec();
    let alpha = g.moment(v).expect("site vertex").clone();
    let idx = vs.iter().position(|x| &x.id == v).expect("site vertex");
    let fresh = g.fresh_id(v);
    match case {
        BlowupCase::Interior => {
            let (m, n) = (up_weight(g, v), down_weight(g, v));
            vs[idx].moment = Affine::new(alpha.clone(), -(n as i64));
            vs.push(SymbolicVertex {
                id: fresh.clone(),
                moment: Affine::new(alpha, m as i64),
                kind: SymbolicKind::Point,
            });
            edges = edges.iter().map(|e| if &e.a == v { replace_end(e, v, &fresh) } else { e.clone() }).collect();
            edges.push(Edge::new(v.clone(), fresh.clone(), m + n));
        }
        BlowupCase::SurfaceMin => {
            if let SymbolicKind::Surface { area, .. } = &mut vs[idx].kind {
                area.c1 = int(-1);
            }
            vs.push(SymbolicVertex { id: fresh.clone(), moment: Affine::new(alpha, 1), kind: SymbolicKind::Point });
        }
        BlowupCase::IsolatedMinDistinct => {
            let (n, m) = extremal_weights(g, v);
            vs[idx].moment = Affine::new(alpha.clone(), n as i64);
            vs.push(SymbolicVertex {
                id: fresh.clone(),
                moment: Affine::new(alpha, m as i64),
                kind: SymbolicKind::Point,
            });
            edges = edges
                .iter()
                .map(|e| if e.touches(v) && e.weight == m { replace_end(e, v, &fresh) } else { e.clone() })
                .collect();
            if m - n >= 2 {
                edges.push(Edge::new(v.clone(), fresh.clone(), m - n));
            }
        }
        BlowupCase::IsolatedMin11 => {
            vs[idx].moment = Affine::new(alpha, 1);
            vs[idx].kind = SymbolicKind::Surface { area: Affine::new(Rational::zero(), 1), genus: 0 };
            return (vs, edges, vec![]);
        }
        _ => unreachable!("maximum cases are handled by flipping"),
    }
    (vs, edges, vec![fresh])
}

fn instantiate_parts(vs: &[SymbolicVertex], edges: &[Edge], lambda: &Rational) -> Result<DecoratedGraph, BlowupError> {
    let vertices = vs
        .iter()
        .map(|v| Vertex {
            id: v.id.clone(),
            moment: v.moment.eval(lambda),
            kind: match &v.kind {
                SymbolicKind::Point => VertexKind::Point,
                SymbolicKind::Surface { area, genus } => VertexKind::Surface { area: area.eval(lambda), genus: *genus },
            },
        })
        .collect();
    Ok(DecoratedGraph::new(vertices, edges.to_vec())?)
}

/// A `λ` below every gap, so that the order of `c0 + c1 λ` is lexicographic.
fn small_lambda(vs: &[SymbolicVertex]) -> Rational {
    let mut eps = int(1);
    let mut consider = |a: &Affine| {
        if !a.c1.is_zero() && !a.c0.is_zero() {
            let r = a.c0.abs() / a.c1.abs();
            if r < eps {
                eps = r;
            }
        }
    };
    for v in vs {
        for w in vs {
            consider(&v.moment.sub(&w.moment));
        }
        if let SymbolicKind::Surface { area, .. } = &v.kind {
            consider(area);
        }
    }
    eps / int(2)
}

/// The blown-up graph as a function of `λ`.
pub fn blowup_symbolic(g: &DecoratedGraph, site: &BlowupSite) -> Result<SymbolicBlowup, BlowupError> {
    let v = g.require(&site.vertex)?;
    let actual = case_of(g, v);
    if actual != site.case {
        return Err(BlowupError::TagMismatch { site: site.clone(), actual });
    }
    let (vertices, edges, created) = if site.case.at_max() {
        let (vs, es, created) = rewrite_low(&g.flip(), &site.vertex, site.case.flipped());
        let vs = vs.into_iter().map(|mut v| {
            v.moment = v.moment.neg();
            v
        });
        (vs.collect(), es, created)
    } else {
        rewrite_low(g, &site.vertex, site.case)
    };
    let eps = small_lambda(&vertices);
    let order = order_pairs(&instantiate_parts(&vertices, &edges, &eps)?);
    Ok(SymbolicBlowup { site: site.clone(), vertices, edges, order, created })
}

/// The graph at size `λ > 0`, without checking monotonicity.
pub fn instantiate(sb: &SymbolicBlowup, lambda: &Rational) -> Result<DecoratedGraph, BlowupError> {
    if !lambda.is_positive() {
        return Err(BlowupError::NonPositiveSize(lambda.clone()));
    }
    instantiate_parts(&sb.vertices, &sb.edges, lambda)
}

fn moment_of<'a>(sb: &'a SymbolicBlowup, id: &VertexId) -> &'a Affine {
    &sb.vertices.iter().find(|v| &v.id == id).expect("order refers to known vertices").moment
}

/// Every quantity that must stay positive: order gaps and areas.
fn constraints(sb: &SymbolicBlowup) -> Vec<Affine> {
    let mut out: Vec<Affine> = sb.order.iter().map(|(lo, hi)| moment_of(sb, hi).sub(moment_of(sb, lo))).collect();
    for v in &sb.vertices {
        if let SymbolicKind::Surface { area, .. } = &v.kind {
            out.push(area.clone());
        }
    }
    out
}

/// Strict monotonicity along the carried order and positive areas.
pub fn monotone_check(sb: &SymbolicBlowup, lambda: &Rational) -> bool {
    lambda.is_positive() && constraints(sb).iter().all(|c| c.eval(lambda).is_positive())
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_str("inf"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxSize {
    /// `None` when every size is allowed.
    #[serde(serialize_with = "ser_opt_rational")]
    pub supremum: Option<Rational>,
    pub attainable: bool,
}

/// Supremum of the sizes with a monotone blow-up.
pub fn max_size(g: &DecoratedGraph, site: &BlowupSite) -> Result<MaxSize, BlowupError> {
    let sb = blowup_symbolic(g, site)?;
    let cs = constraints(&sb);
    debug_assert!(cs.iter().all(Affine::positive_near_zero));
    let supremum = cs.iter().filter_map(Affine::bound).min();
    let attainable = match &supremum {
        Some(s) => monotone_check(&sb, s),
        None => true,
    };
    Ok(MaxSize { supremum, attainable })
}

/// Blow-up of size `λ`, rejected unless monotone.
pub fn blowup(g: &DecoratedGraph, site: &BlowupSite, lambda: &Rational) -> Result<DecoratedGraph, BlowupError> {
    let sb = blowup_symbolic(g, site)?;
    if !monotone_check(&sb, lambda) {
        return Err(BlowupError::NotMonotone(lambda.clone()));
    }
    instantiate(&sb, lambda)
}
