//! Writing a class with nonnegative intersections in the basis.

use graph_core::rational::int;
use graph_core::{DecoratedGraph, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::curves::{intersection_matrix, Curve, IntersectionData};
use crate::HomologyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Basis curves with their coefficients.
    pub terms: Vec<(Curve, String)>,
    #[serde(skip)]
    pub coefficients: Vec<Rational>,
}

/// Intersection numbers with the spanning set of the class with the given
/// coefficients in the basis.
pub fn intersections_of(d: &IntersectionData, coefficients: &[Rational]) -> Vec<Rational> {
    (0..d.curves.len()).map(|x| d.basis.iter().zip(coefficients).map(|(&b, c)| c * int(d.matrix[b][x])).sum()).collect()
}

/// Gaussian elimination over the rationals, `None` when singular.
fn solve(mut a: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                let t = &f * &rhs[col];
                rhs[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &a[i][i]).collect())
}

/// Coefficients in the basis of a class given by its intersection numbers
/// with the spanning curves, after checking they are nonnegative.
///
/// With the coefficients of `B_min` and of each `E_1` set to zero, pairing
/// with `F` gives the `B_max` coefficient, pairing with `B_min` gives the `F`
/// coefficient, and along each chain `α_{i+1}/k_{i+1} >= α_i/k_i >= 0`.
pub fn decompose_positive(g: &DecoratedGraph, class: &[Rational]) -> Result<Decomposition, HomologyError> {
    let d = intersection_matrix(g)?;
    if class.len() != d.curves.len() {
        return Err(HomologyError::Length { expected: d.curves.len(), got: class.len() });
    }
    if let Some(i) = class.iter().position(|c| c.is_negative()) {
        return Err(HomologyError::Negative(d.curves[i].to_string()));
    }
    let a = d.basis.iter().map(|&x| d.basis.iter().map(|&b| int(d.matrix[b][x])).collect()).collect();
    let rhs = d.basis.iter().map(|&x| class[x].clone()).collect();
    let alpha = solve(a, rhs).ok_or(HomologyError::NoSolution)?;
    if intersections_of(&d, &alpha) != class {
        return Err(HomologyError::NoSolution);
    }
    let coef = |c: &Curve| d.basis.iter().position(|&b| &d.curves[b] == c).map(|i| alpha[i].clone());
    for (c, name) in [(Curve::Bmax, "coefficient of Bmax"), (Curve::F, "coefficient of F")] {
        if coef(&c).expect("in basis").is_negative() {
            return Err(HomologyError::Inequality(format!("{name} is negative")));
        }
    }
    let mut prev: Option<(usize, Rational)> = None;
    for s in &d.spheres {
        let Curve::E { chain, position } = s.curve else { continue };
        let ratio = coef(&s.curve).unwrap_or_else(Rational::zero) / int(s.k as i64);
        if let Some((c, p)) = &prev {
            if *c == chain && &ratio < p {
                return Err(HomologyError::Inequality(format!("α/k decreases at {}", s.curve)));
            }
        }
        if ratio.is_negative() {
            return Err(HomologyError::Inequality(format!("α/k is negative at E{chain}.{position}")));
        }
        prev = Some((chain, ratio));
    }
    let terms = d.basis.iter().zip(&alpha).map(|(&b, c)| (d.curves[b].clone(), c.to_string())).collect();
    Ok(Decomposition { terms, coefficients: alpha })
}
