//! The spanning curves, their pairing and their areas.

use std::fmt;

use chain_arith::{self_intersections, WeightChain};
use dh_measure::extremal_self_intersections;
use graph_core::rational::to_i64;
use graph_core::{up_weight, DecoratedGraph, Rational, VertexId};
use serde::Serialize;

use crate::HomologyError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Curve {
    Bmin,
    Bmax,
    F,
    /// Sphere `position` (from 1, bottom to top) of chain `chain`.
    E {
        chain: usize,
        position: usize,
    },
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Bmin => write!(f, "Bmin"),
            Curve::Bmax => write!(f, "Bmax"),
            Curve::F => write!(f, "F"),
            Curve::E { chain, position } => write!(f, "E{chain}.{position}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum End {
    Min,
    Max,
    Point(VertexId),
}

/// A chain sphere with its poles and the order of its stabilizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sphere {
    pub curve: Curve,
    pub south: End,
    pub north: End,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionData {
    /// `Bmin`, `Bmax`, `F`, then the chain spheres in order.
    pub curves: Vec<Curve>,
    pub spheres: Vec<Sphere>,
    pub matrix: Vec<Vec<i64>>,
    /// Indices into `curves` of `Bmax`, `F` and every `E_i` with `i >= 2`.
    pub basis: Vec<usize>,
}

impl IntersectionData {
    pub fn index(&self, c: &Curve) -> Option<usize> {
        self.curves.iter().position(|x| x == c)
    }

    pub fn pairing(&self, a: &Curve, b: &Curve) -> Option<i64> {
        Some(self.matrix[self.index(a)?][self.index(b)?])
    }

    /// Curve names, the matrix with rows in the same order, and the basis names.
    pub fn to_json(&self) -> String {
        let names = |ix: &mut dyn Iterator<Item = &Curve>| ix.map(|c| c.to_string()).collect::<Vec<_>>();
        serde_json::json!({
            "curves": names(&mut self.curves.iter()),
            "matrix": self.matrix,
            "basis": names(&mut self.basis.iter().map(|&i| &self.curves[i])),
        })
        .to_string()
    }
}

pub(crate) fn require_two_surfaces(g: &DecoratedGraph) -> Result<(), HomologyError> {
    match (g.min_vertex(), g.max_vertex()) {
        (Some(a), Some(b)) if a.is_surface() && b.is_surface() => Ok(()),
        _ => Err(HomologyError::NotTwoSurface),
    }
}

/// Chains of stored edges, each closed off by weight-one spheres to the surfaces.
pub(crate) fn chains(g: &DecoratedGraph) -> Result<Vec<Sphere>, HomologyError> {
    let mut starts: Vec<&VertexId> =
        g.interior().filter(|v| g.down_edges(&v.id).next().is_none()).map(|v| &v.id).collect();
    starts.sort_by_key(|id| (g.moment(id).cloned(), (*id).clone()));
    let mut out = Vec::new();
    let mut visited = 0;
    for (c, start) in starts.into_iter().enumerate() {
        let chain = c + 1;
        let mut ends = vec![End::Min, End::Point(start.clone())];
        let mut ks = vec![1];
        let mut cur = start.clone();
        loop {
            visited += 1;
            let ups: Vec<_> = g.up_edges(&cur).collect();
            match ups.as_slice() {
                [] => break,
                [e] => {
                    ks.push(e.weight);
                    cur = e.b.clone();
                    ends.push(End::Point(cur.clone()));
                }
                _ => return Err(HomologyError::Inconsistent(format!("{cur} has two upward edges"))),
            }
        }
        debug_assert_eq!(up_weight(g, &cur), 1);
        ends.push(End::Max);
        ks.push(1);
        for (i, (w, k)) in ends.windows(2).zip(ks).enumerate() {
            out.push(Sphere {
                curve: Curve::E { chain, position: i + 1 },
                south: w[0].clone(),
                north: w[1].clone(),
                k,
            });
        }
    }
    if visited != g.interior().count() {
        return Err(HomologyError::Inconsistent("an interior vertex lies on no chain".into()));
    }
    Ok(out)
}

fn integral(r: &Rational, what: &str) -> Result<i64, HomologyError> {
    to_i64(r).ok_or_else(|| HomologyError::Inconsistent(format!("{what} = {r} is not an integer")))
}

/// Pairing on the spanning set.
pub fn intersection_matrix(g: &DecoratedGraph) -> Result<IntersectionData, HomologyError> {
    require_two_surfaces(g)?;
    let ex = extremal_self_intersections(g).map_err(|e| HomologyError::Inconsistent(e.to_string()))?;
    let spheres = chains(g)?;
    let mut curves = vec![Curve::Bmin, Curve::Bmax, Curve::F];
    curves.extend(spheres.iter().map(|s| s.curve.clone()));
    let n = curves.len();
    let mut m = vec![vec![0i64; n]; n];
    m[0][0] = integral(&ex.e_min, "e_min")?;
    m[1][1] = integral(&ex.e_max, "e_max")?;
    m[0][2] = 1;
    m[2][0] = 1;
    m[1][2] = 1;
    m[2][1] = 1;
    let mut i = 0;
    while i < spheres.len() {
        let Curve::E { chain, .. } = spheres[i].curve else { unreachable!("chain spheres only") };
        let len =
            spheres[i..].iter().take_while(|s| matches!(s.curve, Curve::E { chain: c, .. } if c == chain)).count();
        let ks: Vec<u64> = spheres[i..i + len].iter().map(|s| s.k).collect();
        let selves = self_intersections(&WeightChain::between_surfaces(ks))
            .map_err(|e| HomologyError::Inconsistent(e.to_string()))?;
        for j in 0..len {
            let a = 3 + i + j;
            m[a][a] = selves[j];
            if j + 1 < len {
                m[a][a + 1] = 1;
                m[a + 1][a] = 1;
            }
        }
        let (first, last) = (3 + i, 3 + i + len - 1);
        m[0][first] = 1;
        m[first][0] = 1;
        m[1][last] = 1;
        m[last][1] = 1;
        i += len;
    }
    let basis = (0..n)
        .filter(|&j| match &curves[j] {
            Curve::Bmin => false,
            Curve::E { position, .. } => *position >= 2,
            _ => true,
        })
        .collect();
    Ok(IntersectionData { curves, spheres, matrix: m, basis })
}

/// Symplectic areas over `2π`, in the order of the spanning set.
pub type ClassValues = Vec<(Curve, Rational)>;

fn height(g: &DecoratedGraph, e: &End) -> Rational {
    match e {
        End::Min => g.min_vertex().expect("two surfaces").moment.clone(),
        End::Max => g.max_vertex().expect("two surfaces").moment.clone(),
        End::Point(id) => g.moment(id).expect("chain vertex").clone(),
    }
}

/// Areas of the surfaces, height of the fiber, and `Δy / k` on chain spheres.
pub fn class_values(g: &DecoratedGraph) -> Result<ClassValues, HomologyError> {
    require_two_surfaces(g)?;
    let (lo, hi) = (g.min_vertex().expect("checked"), g.max_vertex().expect("checked"));
    let mut out = vec![
        (Curve::Bmin, lo.area().expect("surface").clone()),
        (Curve::Bmax, hi.area().expect("surface").clone()),
        (Curve::F, &hi.moment - &lo.moment),
    ];
    for s in chains(g)? {
        let v = (height(g, &s.north) - height(g, &s.south)) / Rational::from_integer((s.k as i64).into());
        out.push((s.curve, v));
    }
    Ok(out)
}
