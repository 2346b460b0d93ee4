//! Complete smooth fans in the plane.

use std::fmt;

use chain_arith::{det, LatticeVector};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::polygon::DelzantPolygon;
use crate::ToricError;

/// Rays in counterclockwise order, consecutive determinants one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fan {
    rays: Vec<LatticeVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MinimalFanType {
    CP2,
    Hirzebruch(u64),
    NotMinimal,
}

impl fmt::Display for MinimalFanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalFanType::CP2 => write!(f, "CP2"),
            MinimalFanType::Hirzebruch(n) => write!(f, "Hirzebruch({n})"),
            MinimalFanType::NotMinimal => write!(f, "not minimal"),
        }
    }
}

fn dets(rays: &[LatticeVector]) -> Vec<BigInt> {
    let n = rays.len();
    (0..n).map(|i| det(&rays[i], &rays[(i + 1) % n])).collect()
}

impl Fan {
    /// Accepts either orientation and stores the counterclockwise one.
    pub fn new(mut rays: Vec<LatticeVector>) -> Result<Self, ToricError> {
        if rays.len() < 3 {
            return Err(ToricError::Fan("fewer than three rays".into()));
        }
        if let Some(r) = rays.iter().find(|r| !r.is_primitive()) {
            return Err(ToricError::Fan(format!("ray {r} is not primitive")));
        }
        let minus_one = -BigInt::one();
        if dets(&rays).iter().all(|d| *d == minus_one) {
            rays.reverse();
        }
        if let Some(d) = dets(&rays).iter().find(|d| !d.is_one()) {
            return Err(ToricError::Fan(format!("consecutive determinant {d}")));
        }
        // With every turn below a half-turn, count passes through the positive x-axis.
        let n = rays.len();
        let winding = (0..n).filter(|&i| !rays[i].b.is_positive() && rays[(i + 1) % n].b.is_positive()).count();
        if winding != 1 {
            return Err(ToricError::Fan(format!("rays wind {winding} times")));
        }
        Ok(Fan { rays })
    }

    pub fn from_ints(rays: &[(i64, i64)]) -> Result<Self, ToricError> {
        Fan::new(rays.iter().map(|&(x, y)| LatticeVector::new(x, y)).collect())
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// `a_i` with `u_{i-1} + u_{i+1} = a_i u_i`.
    pub fn self_intersection_coefficients(&self) -> Vec<BigInt> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let s = self.rays[(i + n - 1) % n].add(&self.rays[(i + 1) % n]);
                let u = &self.rays[i];
                // s is a multiple of u because det(s, u) = 0 for smooth fans
                if u.k.is_zero() {
                    &s.b / &u.b
                } else {
                    &s.k / &u.k
                }
            })
            .collect()
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.rays.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", rs.join(", "))
    }
}

/// Inward normals of the polygon.
pub fn polygon_to_fan(p: &DelzantPolygon) -> Result<Fan, ToricError> {
    Fan::new(p.normals().iter().map(|u| u.neg()).collect())
}

/// Indices `i` with `u_i = u_{i-1} + u_{i+1}`.
pub fn fan_blowdown_sites(f: &Fan) -> Vec<usize> {
    if f.len() <= 3 {
        return Vec::new();
    }
    f.self_intersection_coefficients().iter().enumerate().filter(|(_, a)| a.is_one()).map(|(i, _)| i).collect()
}

/// Removes ray `i`, which must be a blow-down site.
pub fn fan_blowdown(f: &Fan, i: usize) -> Result<Fan, ToricError> {
    if !fan_blowdown_sites(f).contains(&i) {
        return Err(ToricError::Fan(format!("ray {i} is not a blow-down site")));
    }
    let mut rays = f.rays.clone();
    rays.remove(i);
    Fan::new(rays)
}

/// Three rays give the projective plane, four a Hirzebruch surface.
pub fn minimal_fan_type(f: &Fan) -> MinimalFanType {
    match f.len() {
        3 => MinimalFanType::CP2,
        4 => {
            let n = f.self_intersection_coefficients().iter().map(|a| a.abs()).max().unwrap_or_else(BigInt::zero);
            MinimalFanType::Hirzebruch(n.try_into().unwrap_or(u64::MAX))
        }
        _ => MinimalFanType::NotMinimal,
    }
}
