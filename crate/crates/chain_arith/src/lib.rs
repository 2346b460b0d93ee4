//! Chains of gradient spheres.
//!
//! A chain is the bottom-to-top sequence `k_1, ..., k_l` of stabilizer orders
//! of invariant spheres joining the minimum to the maximum. Consecutive
//! orders are coprime and `(k_{i-1} + k_{i+1}) / k_i` is an integer, which is
//! minus the self-intersection of the `i`-th sphere. The lattice vectors
//! `u_i = (k_i, b_i)` with `det(u_i, u_{i+1}) = 1` assemble into a fan.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Boundary {
    /// The chain starts or ends on a fixed surface; contributes `0`.
    SurfaceEnd,
    /// The chain starts or ends at an isolated extremum whose other isotropy
    /// weight has absolute value `w`; contributes `-w`.
    IsolatedEnd(u64),
}

impl Boundary {
    fn neighbour(self) -> i64 {
        match self {
            Boundary::SurfaceEnd => 0,
            Boundary::IsolatedEnd(w) => -(w as i64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightChain {
    pub weights: Vec<u64>,
    pub bottom: Boundary,
    pub top: Boundary,
}

impl WeightChain {
    pub fn new(weights: Vec<u64>, bottom: Boundary, top: Boundary) -> Self {
        WeightChain { weights, bottom, top }
    }

    /// Chain between two fixed surfaces.
    pub fn between_surfaces(weights: Vec<u64>) -> Self {
        WeightChain::new(weights, Boundary::SurfaceEnd, Boundary::SurfaceEnd)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn k(&self, i: usize) -> i64 {
        self.weights[i] as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ChainViolation {
    Empty,
    /// A weight is zero.
    NonPositive {
        index: usize,
    },
    /// `gcd(k_i, k_{i+1}) != 1`.
    NotCoprime {
        index: usize,
    },
    /// `(k_{i-1} + k_{i+1}) / k_i` is not an integer.
    NotIntegral {
        index: usize,
    },
    /// A surface end next to a weight other than one.
    SurfaceEnd {
        top: bool,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub violations: Vec<ChainViolation>,
}

impl ChainReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("invalid chain: {0:?}")]
    Invalid(Vec<ChainViolation>),
    #[error("self-intersection of sphere {0} is not an integer")]
    NonIntegral(usize),
    #[error("seed ({b1}, {b2}) violates k1*b2 - b1*k2 = 1")]
    BadSeed { b1: BigInt, b2: BigInt },
    #[error("chain needs at least two spheres")]
    TooShort,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Integer lattice vector `(k, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub k: BigInt,
    pub b: BigInt,
}

impl LatticeVector {
    pub fn new(k: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        LatticeVector { k: k.into(), b: b.into() }
    }

    pub fn is_primitive(&self) -> bool {
        self.k.gcd(&self.b).is_one()
    }

    pub fn add(&self, o: &LatticeVector) -> LatticeVector {
        LatticeVector { k: &self.k + &o.k, b: &self.b + &o.b }
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector { k: -&self.k, b: -&self.b }
    }

    pub fn scale(&self, c: &BigInt) -> LatticeVector {
        LatticeVector { k: &self.k * c, b: &self.b * c }
    }

    pub fn is_zero(&self) -> bool {
        self.k.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.b)
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        for x in [&self.k, &self.b] {
            match x.to_i64() {
                Some(v) => t.serialize_element(&v)?,
                None => t.serialize_element(&x.to_string())?,
            }
        }
        t.end()
    }
}

/// `det(u, v) = u.k * v.b - u.b * v.k`.
pub fn det(u: &LatticeVector, v: &LatticeVector) -> BigInt {
    &u.k * &v.b - &u.b * &v.k
}

pub fn validate_chain(c: &WeightChain) -> ChainReport {
    let mut r = ChainReport::default();
    let l = c.len();
    if l == 0 {
        r.violations.push(ChainViolation::Empty);
        return r;
    }
    for i in 0..l {
        if c.weights[i] == 0 {
            r.violations.push(ChainViolation::NonPositive { index: i });
        }
    }
    if !r.violations.is_empty() {
        return r;
    }
    for i in 0..l - 1 {
        if c.weights[i].gcd(&c.weights[i + 1]) != 1 {
            r.violations.push(ChainViolation::NotCoprime { index: i });
        }
    }
    for i in 1..l.saturating_sub(1) {
        if (c.k(i - 1) + c.k(i + 1)) % c.k(i) != 0 {
            r.violations.push(ChainViolation::NotIntegral { index: i });
        }
    }
    if c.bottom == Boundary::SurfaceEnd && c.weights[0] != 1 {
        r.violations.push(ChainViolation::SurfaceEnd { top: false });
    }
    if c.top == Boundary::SurfaceEnd && c.weights[l - 1] != 1 {
        r.violations.push(ChainViolation::SurfaceEnd { top: true });
    }
    r
}

fn require_valid(c: &WeightChain) -> Result<(), ChainError> {
    let r = validate_chain(c);
    if r.is_valid() {
        Ok(())
    } else {
        Err(ChainError::Invalid(r.violations))
    }
}

/// `e_i = -(k_{i-1} + k_{i+1}) / k_i`, with the boundary markers supplying
/// `k_0` and `k_{l+1}`.
pub fn self_intersections(c: &WeightChain) -> Result<Vec<i64>, ChainError> {
    require_valid(c)?;
    let l = c.len();
    let at = |j: isize| -> i64 {
        if j < 0 {
            c.bottom.neighbour()
        } else if j as usize >= l {
            c.top.neighbour()
        } else {
            c.k(j as usize)
        }
    };
    (0..l)
        .map(|i| {
            let s = at(i as isize - 1) + at(i as isize + 1);
            if s % c.k(i) != 0 {
                Err(ChainError::NonIntegral(i))
            } else {
                Ok(-s / c.k(i))
            }
        })
        .collect()
}

/// `m - n = -e k`.
pub fn mg_check(m: i64, n: i64, e: i64, k: i64) -> bool {
    m - n == -e * k
}

/// The `b` solving `k_prev * b - b_prev * k_next = 1`, if integral.
pub fn next_b(k_prev: &BigInt, b_prev: &BigInt, k_next: &BigInt) -> Option<BigInt> {
    let num = BigInt::one() + b_prev * k_next;
    if k_prev.is_zero() || !(&num % k_prev).is_zero() {
        return None;
    }
    Some(num / k_prev)
}

/// Seed with `0 <= b_1 < k_1` and `k_1 b_2 - b_1 k_2 = 1`.
pub fn default_seed(c: &WeightChain) -> Result<(BigInt, BigInt), ChainError> {
    require_valid(c)?;
    if c.len() < 2 {
        return Ok((BigInt::zero(), BigInt::one()));
    }
    let k1 = BigInt::from(c.weights[0]);
    let k2 = BigInt::from(c.weights[1]);
    // b_1 = -k_2^{-1} mod k_1
    let e = k2.extended_gcd(&k1);
    let inv = e.x.mod_floor(&k1);
    let b1 = (-inv).mod_floor(&k1);
    let b2 = next_b(&k1, &b1, &k2).ok_or_else(|| ChainError::Internal("seed not integral".into()))?;
    Ok((b1, b2))
}

/// `b_1, ..., b_l` from the recursion `b_{i+1} = -b_{i-1} + c_i b_i`.
pub fn b_sequence(c: &WeightChain, b1: &BigInt, b2: &BigInt) -> Result<Vec<BigInt>, ChainError> {
    require_valid(c)?;
    let l = c.len();
    if l == 1 {
        return Ok(vec![b1.clone()]);
    }
    let k = |i: usize| BigInt::from(c.weights[i]);
    if &k(0) * b2 - b1 * &k(1) != BigInt::one() {
        return Err(ChainError::BadSeed { b1: b1.clone(), b2: b2.clone() });
    }
    let mut b = vec![b1.clone(), b2.clone()];
    for i in 1..l - 1 {
        let ci = (c.weights[i - 1] + c.weights[i + 1]) / c.weights[i];
        let next = -&b[i - 1] + BigInt::from(ci) * &b[i];
        b.push(next);
    }
    Ok(b)
}

/// Fan fragment `u_i = (k_i, b_i)`.
pub fn chain_fan(c: &WeightChain, b1: &BigInt, b2: &BigInt) -> Result<Vec<LatticeVector>, ChainError> {
    let b = b_sequence(c, b1, b2)?;
    Ok(c.weights.iter().zip(b).map(|(&k, b)| LatticeVector::new(k, b)).collect())
}

/// The positive integer `d` with `sum 1/(k_i k_{i+1}) = d / (k_1 k_l)`.
pub fn kho_d(c: &WeightChain) -> Result<BigInt, ChainError> {
    require_valid(c)?;
    let l = c.len();
    if l < 2 {
        return Err(ChainError::TooShort);
    }
    let mut sum = BigRational::zero();
    for w in c.weights.windows(2) {
        sum += BigRational::new(BigInt::one(), BigInt::from(w[0]) * BigInt::from(w[1]));
    }
    let scaled = sum * BigRational::from_integer(BigInt::from(c.weights[0]) * BigInt::from(c.weights[l - 1]));
    if !scaled.is_integer() || !scaled.is_positive() {
        return Err(ChainError::Internal(format!("d = {} is not a positive integer", scaled)));
    }
    let d = scaled.to_integer();
    let (b1, b2) = default_seed(c)?;
    let u = chain_fan(c, &b1, &b2)?;
    let cross = det(&u[0], &u[l - 1]);
    if cross != d {
        return Err(ChainError::Internal(format!("d = {} but det(u_1, u_l) = {}", d, cross)));
    }
    Ok(d)
}
