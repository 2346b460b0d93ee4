//! Canonical labelling by colour refinement with individualisation.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::rational::{format, Rational};
use crate::{validate_graph, DecoratedGraph, GraphError, VertexId, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ShiftMode {
    /// Moment labels as given.
    Exact,
    /// Moments translated so that the minimum sits at zero.
    UpToShift,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    /// Lowercase hex SHA-256 of `listing`.
    pub hash: String,
    /// Normal form listing, one vertex or edge per line.
    pub listing: String,
}

struct Prepared {
    labels: Vec<String>,
    adj: Vec<Vec<(usize, u64)>>,
    edges: Vec<(usize, usize, u64)>,
}

fn prepare(g: &DecoratedGraph, mode: ShiftMode) -> Prepared {
    let base = match mode {
        ShiftMode::Exact => Rational::from_integer(0.into()),
        ShiftMode::UpToShift => g.vertices().first().map(|v| v.moment.clone()).unwrap_or_default(),
    };
    let labels = g
        .vertices()
        .iter()
        .map(|v| {
            let m = format(&(&v.moment - &base));
            match &v.kind {
                VertexKind::Point => format!("point {}", m),
                VertexKind::Surface { area, genus } => {
                    format!("surface {} area={} genus={}", m, format(area), genus)
                }
            }
        })
        .collect();
    let index: BTreeMap<&VertexId, usize> = g.vertices().iter().enumerate().map(|(i, v)| (&v.id, i)).collect();
    let mut adj = vec![Vec::new(); g.vertices().len()];
    let mut edges = Vec::new();
    for e in g.edges() {
        let (a, b) = (index[&e.a], index[&e.b]);
        adj[a].push((b, e.weight));
        adj[b].push((a, e.weight));
        edges.push((a, b, e.weight));
    }
    Prepared { labels, adj, edges }
}

fn refine(p: &Prepared, colours: &[usize]) -> Vec<usize> {
    let mut current = colours.to_vec();
    loop {
        let sigs: Vec<(usize, Vec<(u64, usize)>)> = (0..current.len())
            .map(|i| {
                let mut nb: Vec<(u64, usize)> = p.adj[i].iter().map(|&(j, w)| (w, current[j])).collect();
                nb.sort_unstable();
                (current[i], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).expect("present")).collect();
        let before = count_distinct(&current);
        let after = distinct.len();
        current = next;
        if after == before {
            return current;
        }
    }
}

fn count_distinct(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn listing_for(p: &Prepared, colours: &[usize]) -> String {
    let n = colours.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| colours[i]);
    let mut pos = vec![0; n];
    for (k, &i) in order.iter().enumerate() {
        pos[i] = k;
    }
    let mut out = String::new();
    for (k, &i) in order.iter().enumerate() {
        out.push_str(&format!("v{} {}\n", k, p.labels[i]));
    }
    let mut es: Vec<(usize, usize, u64)> =
        p.edges.iter().map(|&(a, b, w)| (pos[a].min(pos[b]), pos[a].max(pos[b]), w)).collect();
    es.sort_unstable();
    for (a, b, w) in es {
        out.push_str(&format!("e v{} v{} k={}\n", a, b, w));
    }
    out
}

/// Lists leaves of the individualisation tree; returns the best listing and colouring.
fn search(p: &Prepared, colours: Vec<usize>, best: &mut Option<(String, Vec<usize>)>) {
    let colours = refine(p, &colours);
    let n = colours.len();
    let mut counts = BTreeMap::new();
    for &c in &colours {
        *counts.entry(c).or_insert(0usize) += 1;
    }
    let target = counts.iter().find(|(_, &k)| k > 1).map(|(&c, _)| c);
    match target {
        None => {
            let l = listing_for(p, &colours);
            if best.as_ref().is_none_or(|(b, _)| &l < b) {
                *best = Some((l, colours));
            }
        }
        Some(c) => {
            for i in (0..n).filter(|&i| colours[i] == c) {
                // Split the cell: the chosen vertex keeps colour c, the rest move above it.
                let next: Vec<usize> = colours
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| if x > c || (x == c && j != i) { 2 * x + 1 } else { 2 * x })
                    .collect();
                search(p, next, best);
            }
        }
    }
}

fn initial(p: &Prepared) -> Vec<usize> {
    let mut sorted = p.labels.clone();
    sorted.sort();
    sorted.dedup();
    p.labels.iter().map(|l| sorted.binary_search(l).expect("present")).collect()
}

fn canonical_parts(g: &DecoratedGraph, mode: ShiftMode) -> (String, Vec<usize>) {
    let p = prepare(g, mode);
    let mut best = None;
    search(&p, initial(&p), &mut best);
    best.unwrap_or_default()
}

/// Canonical form; equal listings exactly when the graphs are isomorphic.
pub fn canonical_form(g: &DecoratedGraph, mode: ShiftMode) -> Result<CanonicalForm, GraphError> {
    let report = validate_graph(g);
    if !report.is_valid() {
        return Err(GraphError::Invalid(report.to_string()));
    }
    Ok(canonical_form_unchecked(g, mode))
}

/// Canonical form without validating the input first.
pub fn canonical_form_unchecked(g: &DecoratedGraph, mode: ShiftMode) -> CanonicalForm {
    let (listing, _) = canonical_parts(g, mode);
    let hash = hex::encode(Sha256::digest(listing.as_bytes()));
    CanonicalForm { hash, listing }
}

/// Vertex ids in canonical position order.
pub fn canonical_order(g: &DecoratedGraph) -> Vec<VertexId> {
    let (_, colours) = canonical_parts(g, ShiftMode::Exact);
    let mut order: Vec<usize> = (0..colours.len()).collect();
    order.sort_by_key(|&i| colours[i]);
    order.into_iter().map(|i| g.vertices()[i].id.clone()).collect()
}

pub fn is_isomorphic(g1: &DecoratedGraph, g2: &DecoratedGraph, mode: ShiftMode) -> Result<bool, GraphError> {
    Ok(canonical_form(g1, mode)?.listing == canonical_form(g2, mode)?.listing)
}
