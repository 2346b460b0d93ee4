//! Breadth-first enumeration of blow-ups of minimal graphs.

use std::collections::HashSet;

use blowup_calculus::{blowup_sites, blowup_symbolic, instantiate, max_size, monotone_check};
use graph_core::rational::{int, rat};
use graph_core::{canonical_form_unchecked, DecoratedGraph, Rational, ShiftMode};
use rayon::prelude::*;

use crate::families::{minimal_graph, MinimalFamily};
use crate::ClassifyError;

/// How the size of each blow-up is chosen from its admissible interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaRule {
    /// Half the supremum.
    Midpoint,
    /// These fractions of the supremum, each in `(0, 1)`.
    Grid(Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub seeds: Vec<MinimalFamily>,
    pub max_blowups: usize,
    pub rule: LambdaRule,
}

impl EnumerationConfig {
    pub fn new(seeds: Vec<MinimalFamily>, max_blowups: usize) -> Self {
        EnumerationConfig { seeds, max_blowups, rule: LambdaRule::Midpoint }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedGraph {
    pub graph: DecoratedGraph,
    /// Index of the first seed that produced the class.
    pub seed: usize,
    /// Number of blow-ups from the seed.
    pub depth: usize,
    pub hash: String,
}

fn sizes(rule: &LambdaRule, supremum: Option<Rational>) -> Vec<Rational> {
    // an unbounded site is treated as if its supremum were 2
    let sup = supremum.unwrap_or_else(|| int(2));
    match rule {
        LambdaRule::Midpoint => vec![sup * rat(1, 2)],
        LambdaRule::Grid(fs) => fs.iter().map(|f| &sup * f).collect(),
    }
}

fn children(g: &DecoratedGraph, rule: &LambdaRule) -> Vec<(DecoratedGraph, String)> {
    let mut out = Vec::new();
    for site in blowup_sites(g) {
        let (Ok(sb), Ok(size)) = (blowup_symbolic(g, &site), max_size(g, &site)) else { continue };
        for lambda in sizes(rule, size.supremum) {
            if !monotone_check(&sb, &lambda) {
                continue;
            }
            if let Ok(h) = instantiate(&sb, &lambda) {
                let hash = canonical_form_unchecked(&h, ShiftMode::Exact).hash;
                out.push((h, hash));
            }
        }
    }
    out
}

/// Isomorphism classes reachable from the seeds by at most `max_blowups`
/// blow-ups, in breadth-first order.
///
/// Frontier expansion runs in parallel. Classes are merged in a fixed order,
/// so the output does not depend on scheduling.
pub fn enumerate(config: &EnumerationConfig) -> Result<Vec<EnumeratedGraph>, ClassifyError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, f) in config.seeds.iter().enumerate() {
        let graph = minimal_graph(f)?;
        let hash = canonical_form_unchecked(&graph, ShiftMode::Exact).hash;
        if seen.insert(hash.clone()) {
            out.push(EnumeratedGraph { graph, seed: i, depth: 0, hash });
        }
    }
    let mut start = 0;
    for depth in 1..=config.max_blowups {
        let frontier = &out[start..];
        let expanded: Vec<Vec<(DecoratedGraph, String)>> =
            frontier.par_iter().map(|e| children(&e.graph, &config.rule)).collect();
        let mut next = Vec::new();
        for (parent, kids) in frontier.iter().zip(expanded) {
            for (graph, hash) in kids {
                if seen.insert(hash.clone()) {
                    next.push(EnumeratedGraph { graph, seed: parent.seed, depth, hash });
                }
            }
        }
        start = out.len();
        out.extend(next);
    }
    Ok(out)
}
