//! Blow-downs: the inverse rewrites, and reduction to a minimal graph.

use std::collections::HashMap;
use std::fmt;

use dh_measure::extremal_self_intersections;
use graph_core::{
    canonical_form_unchecked, down_weight, extremal_weights, rational::int, up_weight, validate_graph, DecoratedGraph,
    Edge, Rational, ShiftMode, Vertex, VertexId, VertexKind,
};
use serde::{Serialize, Serializer};

use crate::BlowupError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pattern {
    /// An edge between two interior vertices.
    A,
    /// An edgeless interior vertex absorbed by an extremal surface.
    B,
    /// An isolated extremum and the interior vertex next to it.
    C,
    /// An extremal sphere of self-intersection -1.
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Min,
    Max,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Where and how to blow down. For `A` the vertices are the lower and upper
/// ends of the edge; for `B` the point and the surface; for `C` the extremum
/// and the interior vertex; for `D` the surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BlowdownSite {
    pub pattern: Pattern,
    pub side: Option<Side>,
    pub vertices: Vec<VertexId>,
    #[serde(serialize_with = "ser_rational")]
    pub lambda: Rational,
}

impl fmt::Display for BlowdownSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<&str> = self.vertices.iter().map(|v| v.as_str()).collect();
        write!(f, "{:?}^-1 at [{}], λ = {}", self.pattern, ids.join(", "), self.lambda)?;
        if let Some(side) = self.side {
            write!(f, " ({side:?} side)")?;
        }
        Ok(())
    }
}

/// Valid shape and a solvable, consistent self-intersection system.
pub fn is_consistent(g: &DecoratedGraph) -> bool {
    validate_graph(g).is_valid() && extremal_self_intersections(g).is_ok()
}

fn rebuild(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<DecoratedGraph, BlowupError> {
    Ok(DecoratedGraph::new(vertices, edges)?)
}

fn edge_between<'a>(g: &'a DecoratedGraph, v: &VertexId, w: &VertexId) -> Option<&'a Edge> {
    g.edges().iter().find(|e| e.touches(v) && e.touches(w))
}

/// Candidates at the minimum, before the validity filter.
fn low_candidates(g: &DecoratedGraph) -> Vec<BlowdownSite> {
    let mut out = Vec::new();
    let Some(min) = g.min_vertex() else { return out };
    match &min.kind {
        VertexKind::Point => {
            let (p, q) = extremal_weights(g, &min.id);
            for w in g.interior() {
                let j = down_weight(g, &w.id);
                let linked = match g.down_edges(&w.id).next() {
                    Some(e) => e.a == min.id,
                    None => p == 1,
                };
                if !linked {
                    continue;
                }
                let n = if j == p {
                    q
                } else if j == q {
                    p
                } else {
                    continue;
                };
                if up_weight(g, &w.id) != n + j {
                    continue;
                }
                out.push(BlowdownSite {
                    pattern: Pattern::C,
                    side: Some(Side::Min),
                    vertices: vec![min.id.clone(), w.id.clone()],
                    lambda: (&w.moment - &min.moment) / int(j as i64),
                });
            }
        }
        VertexKind::Surface { area, genus } => {
            let e_is_minus_one = extremal_self_intersections(g).is_ok_and(|e| e.e_min == int(-1));
            if *genus == 0 && e_is_minus_one {
                out.push(BlowdownSite {
                    pattern: Pattern::D,
                    side: Some(Side::Min),
                    vertices: vec![min.id.clone()],
                    lambda: area.clone(),
                });
            }
            for w in g.interior().filter(|w| g.incident(&w.id).next().is_none()) {
                out.push(BlowdownSite {
                    pattern: Pattern::B,
                    side: Some(Side::Min),
                    vertices: vec![w.id.clone(), min.id.clone()],
                    lambda: &w.moment - &min.moment,
                });
            }
        }
    }
    out
}

fn apply_low(g: &DecoratedGraph, site: &BlowdownSite) -> Result<DecoratedGraph, BlowupError> {
    let lambda = &site.lambda;
    match site.pattern {
        Pattern::B => {
            let (w, s) = (&site.vertices[0], &site.vertices[1]);
            let vertices = g
                .vertices()
                .iter()
                .filter(|v| &v.id != w)
                .map(|v| match (&v.kind, &v.id == s) {
                    (VertexKind::Surface { area, genus }, true) => {
                        Vertex::surface(v.id.clone(), v.moment.clone(), area + lambda, *genus)
                    }
                    _ => v.clone(),
                })
                .collect();
            rebuild(vertices, g.edges().to_vec())
        }
        Pattern::C => {
            let (min, w) = (&site.vertices[0], &site.vertices[1]);
            let j = down_weight(g, w);
            let (p, q) = extremal_weights(g, min);
            let n = if j == p { q } else { p };
            let y = g.moment(min).expect("site vertex") - lambda * int(n as i64);
            let vertices = g
                .vertices()
                .iter()
                .filter(|v| &v.id != w)
                .map(|v| if &v.id == min { Vertex::point(min.clone(), y.clone()) } else { v.clone() })
                .collect();
            let edges = g
                .edges()
                .iter()
                .filter(|e| !(e.touches(min) && e.touches(w)))
                .map(|e| if &e.a == w { Edge { a: min.clone(), b: e.b.clone(), weight: e.weight } } else { e.clone() })
                .collect();
            rebuild(vertices, edges)
        }
        Pattern::D => {
            let s = &site.vertices[0];
            let vertices = g
                .vertices()
                .iter()
                .map(|v| if &v.id == s { Vertex::point(s.clone(), &v.moment - lambda) } else { v.clone() })
                .collect();
            rebuild(vertices, g.edges().to_vec())
        }
        Pattern::A => unreachable!("A is handled without flipping"),
    }
}

fn a_candidates(g: &DecoratedGraph) -> Vec<BlowdownSite> {
    let mut out = Vec::new();
    for e in g.edges() {
        if g.is_extremal(&e.a) || g.is_extremal(&e.b) {
            continue;
        }
        if up_weight(g, &e.b) + down_weight(g, &e.a) != e.weight {
            continue;
        }
        let dy = g.moment(&e.b).expect("endpoint") - g.moment(&e.a).expect("endpoint");
        out.push(BlowdownSite {
            pattern: Pattern::A,
            side: None,
            vertices: vec![e.a.clone(), e.b.clone()],
            lambda: dy / int(e.weight as i64),
        });
    }
    out
}

fn apply_a(g: &DecoratedGraph, site: &BlowdownSite) -> Result<DecoratedGraph, BlowupError> {
    let (lo, hi) = (&site.vertices[0], &site.vertices[1]);
    let n = down_weight(g, lo);
    let y = g.moment(lo).expect("site vertex") + &site.lambda * int(n as i64);
    let vertices = g
        .vertices()
        .iter()
        .filter(|v| &v.id != hi)
        .map(|v| if &v.id == lo { Vertex::point(lo.clone(), y.clone()) } else { v.clone() })
        .collect();
    let edges = g
        .edges()
        .iter()
        .filter(|e| !(e.touches(lo) && e.touches(hi)))
        .map(|e| if &e.a == hi { Edge { a: lo.clone(), b: e.b.clone(), weight: e.weight } } else { e.clone() })
        .collect();
    rebuild(vertices, edges)
}

fn apply_unchecked(g: &DecoratedGraph, site: &BlowdownSite) -> Result<DecoratedGraph, BlowupError> {
    match (site.pattern, site.side) {
        (Pattern::A, _) => apply_a(g, site),
        (_, Some(Side::Max)) => {
            let mut low = site.clone();
            low.side = Some(Side::Min);
            Ok(apply_low(&g.flip(), &low)?.flip())
        }
        _ => apply_low(g, site),
    }
}

fn candidates(g: &DecoratedGraph) -> Vec<BlowdownSite> {
    let mut out = a_candidates(g);
    out.extend(low_candidates(g));
    out.extend(low_candidates(&g.flip()).into_iter().map(|mut s| {
        s.side = Some(Side::Max);
        s
    }));
    out
}

/// Every blow-down whose result is again a consistent graph.
pub fn blowdown_sites(g: &DecoratedGraph) -> Vec<BlowdownSite> {
    let mut out = candidates(g);
    out.retain(|s| apply_unchecked(g, s).is_ok_and(|h| is_consistent(&h)));
    out
}

/// Applies a site reported by [`blowdown_sites`].
pub fn blowdown(g: &DecoratedGraph, site: &BlowdownSite) -> Result<DecoratedGraph, BlowupError> {
    let not_a_site = || BlowupError::NotASite(site.to_string());
    if !candidates(g).contains(site) {
        return Err(not_a_site());
    }
    let h = apply_unchecked(g, site).map_err(|_| not_a_site())?;
    if !is_consistent(&h) {
        return Err(not_a_site());
    }
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    #[serde(skip)]
    pub minimal: DecoratedGraph,
    pub steps: Vec<BlowdownSite>,
}

fn edge_weight(g: &DecoratedGraph, s: &BlowdownSite) -> u64 {
    match s.vertices.as_slice() {
        [v, w] => edge_between(g, v, w).map(|e| e.weight).unwrap_or(1),
        _ => 1,
    }
}

/// Sites in order of preference: `A` by decreasing weight, then `C`, `D`, `B`.
fn preferred(g: &DecoratedGraph) -> Vec<BlowdownSite> {
    let mut sites = blowdown_sites(g);
    sites.sort_by(|s, t| {
        let rank = |p: Pattern| match p {
            Pattern::A => 0,
            Pattern::C => 1,
            Pattern::D => 2,
            Pattern::B => 3,
        };
        rank(s.pattern).cmp(&rank(t.pattern)).then_with(|| edge_weight(g, t).cmp(&edge_weight(g, s)))
    });
    sites
}

fn two_surfaces(g: &DecoratedGraph) -> bool {
    g.min_vertex().is_some_and(|v| v.is_surface()) && g.max_vertex().is_some_and(|v| v.is_surface())
}

/// Between two surfaces: `A` first, then `B` with the smaller `λ`, ties to the maximum.
fn ruled_step(g: &DecoratedGraph) -> Option<BlowdownSite> {
    let sites = preferred(g);
    if let Some(a) = sites.iter().find(|s| s.pattern == Pattern::A) {
        return Some(a.clone());
    }
    sites
        .into_iter()
        .filter(|s| s.pattern == Pattern::B)
        .min_by(|s, t| s.lambda.cmp(&t.lambda).then_with(|| t.side.cmp(&s.side)))
}

/// Length of the longest blow-down sequence, memoized by canonical form.
fn longest(g: &DecoratedGraph, memo: &mut HashMap<String, usize>) -> Result<usize, BlowupError> {
    let key = canonical_form_unchecked(g, ShiftMode::Exact).hash;
    if let Some(&n) = memo.get(&key) {
        return Ok(n);
    }
    let mut best = 0;
    for s in preferred(g) {
        let h = apply_unchecked(g, &s)?;
        best = best.max(1 + longest(&h, memo)?);
    }
    memo.insert(key, best);
    Ok(best)
}

/// Blows down until no site remains.
///
/// Between two surfaces every interior vertex is removed by `A` and `B`
/// moves. Otherwise the longest possible sequence is taken, so a blown-up
/// Hirzebruch surface that is also a blown-up projective plane ends at the
/// plane. Ties follow the preference order `A`, `C`, `D`, `B`.
pub fn reduce_to_minimal(g: &DecoratedGraph) -> Result<Reduction, BlowupError> {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    if two_surfaces(g) {
        while cur.interior().next().is_some() {
            let s = ruled_step(&cur)
                .ok_or_else(|| BlowupError::Internal(format!("no blow-down with interior vertices left: {cur:?}")))?;
            cur = apply_unchecked(&cur, &s)?;
            steps.push(s);
        }
        return Ok(Reduction { minimal: cur, steps });
    }
    let mut memo = HashMap::new();
    let mut remaining = longest(&cur, &mut memo)?;
    while remaining > 0 {
        let mut next = None;
        for s in preferred(&cur) {
            let h = apply_unchecked(&cur, &s)?;
            if 1 + longest(&h, &mut memo)? == remaining {
                next = Some((s, h));
                break;
            }
        }
        let (s, h) = next.ok_or_else(|| BlowupError::Internal("lost the longest reduction".into()))?;
        steps.push(s);
        cur = h;
        remaining -= 1;
    }
    Ok(Reduction { minimal: cur, steps })
}
