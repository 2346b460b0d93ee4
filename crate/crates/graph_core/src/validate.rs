//! Shape rules for decorated graphs.

use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::{isotropy_weights, DecoratedGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// Unique minimum and unique maximum.
    G1,
    /// At most one edge up and one edge down at interior vertices.
    G2,
    /// At most two edges at an extremal isolated vertex.
    G3,
    /// No edges at an extremal surface.
    G4,
    /// Interior vertices are isolated points.
    G5,
    /// Coprime isotropy weights.
    G6,
    /// All surfaces share one genus.
    G7,
    /// Edge weights are at least two.
    EdgeWeight,
    /// Edge endpoints lie on different levels.
    EdgeLevel,
    /// Surface areas are positive.
    Area,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub vertices: Vec<VertexId>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.rule, self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn push(&mut self, rule: Rule, vertices: Vec<VertexId>, message: String) {
        self.violations.push(Violation { rule, vertices, message });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

pub fn validate_graph(g: &DecoratedGraph) -> ValidationReport {
    let mut r = ValidationReport::default();
    let vs = g.vertices();

    for e in g.edges() {
        let pair = vec![e.a.clone(), e.b.clone()];
        if e.weight < 2 {
            r.push(Rule::EdgeWeight, pair.clone(), format!("edge {}-{} has weight {}", e.a, e.b, e.weight));
        }
        if g.moment(&e.a) == g.moment(&e.b) {
            r.push(Rule::EdgeLevel, pair, format!("edge {}-{} joins equal moments", e.a, e.b));
        }
    }
    for v in g.surfaces() {
        if !v.area().is_some_and(|a| a.is_positive()) {
            r.push(Rule::Area, vec![v.id.clone()], format!("surface {} has non-positive area", v.id));
        }
    }

    let (min, max) = (g.min_vertex(), g.max_vertex());
    match (min, max) {
        (Some(a), Some(b)) if a.id != b.id => {}
        _ => {
            let ids = vs.iter().map(|v| v.id.clone()).collect();
            r.push(Rule::G1, ids, "no unique minimum and maximum".into());
        }
    }

    for v in g.interior() {
        let ups = g.up_edges(&v.id).count();
        let downs = g.down_edges(&v.id).count();
        if ups > 1 || downs > 1 {
            r.push(Rule::G2, vec![v.id.clone()], format!("{} has {} edges up and {} down", v.id, ups, downs));
        }
        if v.is_surface() {
            r.push(Rule::G5, vec![v.id.clone()], format!("interior vertex {} is a surface", v.id));
        }
    }

    for v in [min, max].into_iter().flatten() {
        let deg = g.incident(&v.id).count();
        if v.is_surface() {
            if deg > 0 {
                r.push(Rule::G4, vec![v.id.clone()], format!("extremal surface {} has {} edges", v.id, deg));
            }
        } else if deg > 2 {
            r.push(Rule::G3, vec![v.id.clone()], format!("extremal point {} has {} edges", v.id, deg));
        }
    }

    if min.is_some() && max.is_some() {
        for v in vs {
            if let Ok(w) = isotropy_weights(g, &v.id) {
                if !w.coprime() {
                    r.push(Rule::G6, vec![v.id.clone()], format!("weights {} at {} are not coprime", w, v.id));
                }
            }
        }
    }

    let genera: Vec<(VertexId, u32)> = g.surfaces().map(|v| (v.id.clone(), v.genus().unwrap_or(0))).collect();
    if genera.windows(2).any(|w| w[0].1 != w[1].1) {
        r.push(Rule::G7, genera.into_iter().map(|x| x.0).collect(), "surfaces of different genus".into());
    }
    r
}
