//! The minimal graphs and their recognition.

use std::fmt;

use graph_core::rational::{int, to_i64};
use graph_core::{
    down_weight, extremal_weights, is_isomorphic, up_weight, DecoratedGraph, Edge, Rational, ShiftMode, Vertex,
};
use num_traits::Signed;
use serde::Serialize;

use crate::ClassifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HirzebruchVariant {
    /// Four points, weights `c`, `d`, `nc + d`, `c`.
    Left,
    /// Four points, weights `c`, `c`, `d`, `nc - d`.
    Middle,
    /// A minimal sphere, an interior point and an isolated maximum.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    CP2 {
        m: u64,
        n: u64,
        alpha: Rational,
        beta: Rational,
    },
    CP2Surface {
        alpha: Rational,
        lambda: Rational,
    },
    /// `c` and `d` are ignored by the right variant.
    Hirzebruch {
        variant: HirzebruchVariant,
        n: u64,
        c: u64,
        d: u64,
        r: Rational,
        s: Rational,
        alpha: Rational,
    },
    /// Areas `r` and `r + ns` for `n >= 0`, `r + |n|s` and `r` otherwise.
    Ruled {
        genus: u32,
        n: i64,
        r: Rational,
        s: Rational,
        alpha: Rational,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Orientation {
    AsIs,
    Flipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinimalFamily {
    pub family: Family,
    pub orientation: Orientation,
}

impl MinimalFamily {
    pub fn new(family: Family) -> Self {
        MinimalFamily { family, orientation: Orientation::AsIs }
    }

    pub fn flipped(family: Family) -> Self {
        MinimalFamily { family, orientation: Orientation::Flipped }
    }

    pub fn cp2(m: u64, n: u64, alpha: Rational, beta: Rational) -> Self {
        Self::new(Family::CP2 { m, n, alpha, beta })
    }

    pub fn ruled(genus: u32, n: i64, r: Rational, s: Rational, alpha: Rational) -> Self {
        Self::new(Family::Ruled { genus, n, r, s, alpha })
    }
}

impl fmt::Display for MinimalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::CP2 { m, n, alpha, beta } => write!(f, "CP2(m={m}, n={n}, alpha={alpha}, beta={beta})")?,
            Family::CP2Surface { alpha, lambda } => write!(f, "CP2Surface(alpha={alpha}, lambda={lambda})")?,
            Family::Hirzebruch { variant, n, c, d, r, s, alpha } => {
                write!(f, "Hirzebruch{variant:?}(n={n}, c={c}, d={d}, r={r}, s={s}, alpha={alpha})")?
            }
            Family::Ruled { genus, n, r, s, alpha } => {
                write!(f, "Ruled(g={genus}, n={n}, r={r}, s={s}, alpha={alpha})")?
            }
        }
        if self.orientation == Orientation::Flipped {
            write!(f, " flipped")?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn require(ok: bool, what: &str) -> Result<(), ClassifyError> {
    if ok {
        Ok(())
    } else {
        Err(ClassifyError::Parameter(what.into()))
    }
}

fn edges(list: &[(&str, &str, u64)]) -> Vec<Edge> {
    list.iter().filter(|e| e.2 >= 2).map(|&(a, b, k)| Edge::new(a, b, k)).collect()
}

fn times(k: u64, x: &Rational) -> Rational {
    int(k as i64) * x
}

fn build(f: &Family) -> Result<DecoratedGraph, ClassifyError> {
    let g = match f {
        Family::CP2 { m, n, alpha, beta } => {
            require(*m >= 1 && *n >= 1 && gcd(*m, *n) == 1, "m and n must be coprime positive integers")?;
            require(beta.is_positive(), "beta must be positive")?;
            DecoratedGraph::new(
                vec![
                    Vertex::point("min", alpha - times(*n, beta)),
                    Vertex::point("p", alpha.clone()),
                    Vertex::point("max", alpha + times(*m, beta)),
                ],
                edges(&[("p", "max", *m), ("min", "p", *n), ("min", "max", m + n)]),
            )?
        }
        Family::CP2Surface { alpha, lambda } => {
            require(lambda.is_positive(), "lambda must be positive")?;
            DecoratedGraph::new(
                vec![Vertex::surface("min", alpha.clone(), lambda.clone(), 0), Vertex::point("max", alpha + lambda)],
                vec![],
            )?
        }
        Family::Hirzebruch { variant, n, c, d, r, s, alpha } => {
            require(r.is_positive() && s.is_positive(), "r and s must be positive")?;
            match variant {
                HirzebruchVariant::Left => {
                    require(*c >= 1 && *d >= 1 && gcd(*c, *d) == 1, "c and d must be coprime positive integers")?;
                    let top = alpha + times(*c, r) + times(*d, s) + times(n * c, s);
                    DecoratedGraph::new(
                        vec![
                            Vertex::point("min", alpha.clone()),
                            Vertex::point("p", alpha + times(*d, s)),
                            Vertex::point("q", alpha + times(*c, r)),
                            Vertex::point("max", top),
                        ],
                        edges(&[("min", "p", *d), ("p", "max", *c), ("min", "q", *c), ("q", "max", n * c + d)]),
                    )?
                }
                HirzebruchVariant::Middle => {
                    require(*c >= 1 && *d >= 1 && gcd(*c, *d) == 1, "c and d must be coprime positive integers")?;
                    require(n * c > *d, "nc - d must be positive")?;
                    require(r > &times(*n, s), "r must exceed ns")?;
                    DecoratedGraph::new(
                        vec![
                            Vertex::point("min", alpha.clone()),
                            Vertex::point("p", alpha + times(*d, s)),
                            Vertex::point("q", alpha + times(*d, s) + times(*c, r) - times(n * c, s)),
                            Vertex::point("max", alpha + times(*c, r)),
                        ],
                        edges(&[("min", "max", *c), ("min", "p", *d), ("p", "q", *c), ("q", "max", n * c - d)]),
                    )?
                }
                HirzebruchVariant::Right => {
                    require(*n >= 1, "n must be positive")?;
                    DecoratedGraph::new(
                        vec![
                            Vertex::surface("min", alpha.clone(), s.clone(), 0),
                            Vertex::point("p", alpha + r),
                            Vertex::point("max", alpha + r + times(*n, s)),
                        ],
                        edges(&[("p", "max", *n)]),
                    )?
                }
            }
        }
        Family::Ruled { genus, n, r, s, alpha } => {
            require(r.is_positive() && s.is_positive(), "r and s must be positive")?;
            let grown = r + times(n.unsigned_abs(), s);
            let (lo, hi) = if *n >= 0 { (r.clone(), grown) } else { (grown, r.clone()) };
            DecoratedGraph::new(
                vec![Vertex::surface("min", alpha.clone(), lo, *genus), Vertex::surface("max", alpha + s, hi, *genus)],
                vec![],
            )?
        }
    };
    Ok(g)
}

/// The labelled graph of the family, turned upside down when flipped.
pub fn minimal_graph(f: &MinimalFamily) -> Result<DecoratedGraph, ClassifyError> {
    let g = build(&f.family)?;
    Ok(match f.orientation {
        Orientation::AsIs => g,
        Orientation::Flipped => g.flip(),
    })
}

fn nonneg_int(x: &Rational) -> Option<u64> {
    if x.is_integer() && !x.is_negative() {
        to_i64(x).map(|v| v as u64)
    } else {
        None
    }
}

/// Parameter guesses read off the shape of `g`.
fn candidates(g: &DecoratedGraph) -> Vec<Family> {
    let vs = g.vertices();
    let (Some(lo), Some(hi)) = (g.min_vertex(), g.max_vertex()) else { return vec![] };
    let alpha = lo.moment.clone();
    let height = &hi.moment - &alpha;
    let interior: Vec<&Vertex> = g.interior().collect();
    let mut out = Vec::new();
    match (vs.len(), lo.area(), hi.area()) {
        (2, Some(a), Some(b)) => {
            let genus = lo.genus().unwrap_or(0);
            let diff = (b - a) / &height;
            if diff.is_integer() {
                let n = to_i64(&diff).unwrap_or(i64::MAX);
                let r = if n >= 0 { a.clone() } else { b.clone() };
                out.push(Family::Ruled { genus, n, r, s: height, alpha });
            }
        }
        (2, Some(a), None) => out.push(Family::CP2Surface { alpha, lambda: a.clone() }),
        (3, None, None) => {
            let p = &interior[0].id;
            let (m, n) = (up_weight(g, p), down_weight(g, p));
            let alpha = interior[0].moment.clone();
            let beta = (&hi.moment - &alpha) / int(m as i64);
            out.push(Family::CP2 { m, n, alpha, beta });
        }
        (3, Some(s), None) => {
            let p = &interior[0];
            if let Some(n) = nonneg_int(&((&hi.moment - &p.moment) / s)) {
                out.push(Family::Hirzebruch {
                    variant: HirzebruchVariant::Right,
                    n,
                    c: 1,
                    d: 1,
                    r: &p.moment - &alpha,
                    s: s.clone(),
                    alpha,
                });
            }
        }
        (4, None, None) => {
            let (w1, w2) = extremal_weights(g, &lo.id);
            for (c, d) in [(w1, w2), (w2, w1)] {
                for (a, b) in [(interior[0], interior[1]), (interior[1], interior[0])] {
                    let s = (&a.moment - &alpha) / int(d as i64);
                    let r = (&b.moment - &alpha) / int(c as i64);
                    let rest = &hi.moment - &alpha - times(c, &r) - times(d, &s);
                    if let Some(n) = nonneg_int(&(rest / times(c, &s))) {
                        out.push(Family::Hirzebruch {
                            variant: HirzebruchVariant::Left,
                            n,
                            c,
                            d,
                            r: r.clone(),
                            s: s.clone(),
                            alpha: alpha.clone(),
                        });
                    }
                    let r = (&hi.moment - &alpha) / int(c as i64);
                    let drop = &alpha + times(d, &s) + times(c, &r) - &b.moment;
                    if let Some(n) = nonneg_int(&(drop / times(c, &s))) {
                        out.push(Family::Hirzebruch {
                            variant: HirzebruchVariant::Middle,
                            n,
                            c,
                            d,
                            r,
                            s,
                            alpha: alpha.clone(),
                        });
                    }
                }
            }
        }
        _ => {}
    }
    out
}

fn recognize_as_is(g: &DecoratedGraph) -> Option<Family> {
    candidates(g).into_iter().find(|f| build(f).is_ok_and(|h| is_isomorphic(&h, g, ShiftMode::Exact).unwrap_or(false)))
}

/// The family and parameters of a minimal graph, up to flipping.
///
/// Weight-one edges are not stored, so the middle Hirzebruch graphs with
/// `c = 1` are reported as the left graphs they coincide with.
pub fn recognize_minimal(g: &DecoratedGraph) -> Option<MinimalFamily> {
    if let Some(f) = recognize_as_is(g) {
        return Some(MinimalFamily::new(f));
    }
    recognize_as_is(&g.flip()).map(MinimalFamily::flipped)
}
