//! Constructors for the code families and square-design checks.

mod region;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

pub use region::{
    algorithm1, algorithm1_counterexample, algorithm1_verify, d_epsilon_points, region_lattice_points,
    Algorithm1Outcome, BoxConstraint, ConvexRegion, RationalHalfspace, RegionDocument,
};

use crate::bounds::footprint_value;
use crate::error::{Error, Result};
use crate::expsets::{reduce_set, square_support, ExpVec, MonomialSet};

/// A vector `ε ∈ {0,1}^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Epsilon(pub Vec<bool>);

impl Epsilon {
    pub fn zero(m: usize) -> Self {
        Epsilon(vec![false; m])
    }

    /// All `2^m` vectors, ordered by their binary value (first coordinate most significant).
    pub fn all(m: usize) -> impl Iterator<Item = Epsilon> {
        (0u32..1 << m).map(move |bits| Epsilon((0..m).map(|k| bits >> (m - 1 - k) & 1 == 1).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Which of the two tie-broken sets of the even-distance optimum to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvenVariant {
    /// Keep the diagonal points with small second coordinate.
    B1,
    /// Keep the diagonal points with small first coordinate.
    B2,
}

/// `{a ∈ [0,q-1]^m : a_1 + ... + a_m <= s}`.
pub fn reed_muller_set(q: u32, m: usize, s: u64) -> Result<MonomialSet> {
    MonomialSet::from_box_filter(q, m, q - 1, |a| a.iter().map(|&x| x as u64).sum::<u64>() <= s)
}

/// `{a ∈ [0,q-1]^m : Σ w_j a_j <= s}` with positive rational weights.
pub fn weighted_rm_set(q: u32, m: usize, s: &BigRational, weights: &[BigRational]) -> Result<MonomialSet> {
    if weights.len() != m {
        return Err(Error::RangeError(format!("expected {m} weights, got {}", weights.len())));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::RangeError("weights must be positive".into()));
    }
    let half = RationalHalfspace::new(weights.to_vec(), s.clone())?;
    MonomialSet::from_box_filter(q, m, q - 1, |a| half.contains_integer(a))
}

/// `{a ∈ [0,q-1]^m : Π (q - a_j) >= d}`.
pub fn hyperbolic_set(q: u32, m: usize, d: u128) -> Result<MonomialSet> {
    if d == 0 {
        return Err(Error::RangeError("designed distance d must be at least 1".into()));
    }
    MonomialSet::from_box_filter(q, m, q - 1, |a| footprint_value(q, a) >= d)
}

/// `{a ∈ [0, ⌊(q-1)/2⌋]^m : Π (q - 2 a_j) >= d}`.
pub fn half_hyperbolic_set(q: u32, m: usize, d: u128) -> Result<MonomialSet> {
    if d == 0 {
        return Err(Error::RangeError("designed distance d must be at least 1".into()));
    }
    let n = (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if d >= n {
        return Err(Error::InvalidOrder(format!("d = {d} must be below q^m = {n}")));
    }
    MonomialSet::from_box_filter(q, m, (q - 1) / 2, |a| {
        let doubled: Vec<u32> = a.iter().map(|&x| 2 * x).collect();
        footprint_value(q, &doubled) >= d
    })
}

fn even_params(q: u32, d: u64) -> Result<(u64, u64)> {
    if d == 0 {
        return Err(Error::RangeError("designed distance d must be at least 1".into()));
    }
    if d % 2 == 1 {
        return Err(Error::ParityError(d));
    }
    if d >= q as u64 {
        return Err(Error::RangeError(format!("d = {d} must be below q = {q}")));
    }
    let s = q as u64 - d / 2;
    // largest integer j with j < (q - d + 1) / 2
    let jmax = (q as u64 - d) / 2;
    Ok((s, jmax))
}

/// Explicit two-piece set: `{i + j < s} ∪ {i + j = s, j < (q-d+1)/2}` for B1,
/// with the roles of `i` and `j` swapped for B2; `s = q - d/2`.
pub fn wrm_even_explicit_set(q: u32, d: u64, variant: EvenVariant) -> Result<MonomialSet> {
    let (s, jmax) = even_params(q, d)?;
    MonomialSet::from_box_filter(q, 2, q - 1, |a| {
        let (i, j) = (a[0] as u64, a[1] as u64);
        let tail = match variant {
            EvenVariant::B1 => j,
            EvenVariant::B2 => i,
        };
        i + j < s || (i + j == s && tail <= jmax)
    })
}

/// Weights and bound of a weighted-degree cut realizing the even-distance
/// optimum: the diagonal `i + j = s` is tilted by `1/(2s)` so that exactly the
/// diagonal points with `j <= jmax` (B1) stay below the line.
pub fn wrm_even_witness(q: u32, d: u64, variant: EvenVariant) -> Result<(Vec<BigRational>, BigRational)> {
    let (s, jmax) = even_params(q, d)?;
    let s = BigInt::from(s);
    let one = BigRational::one();
    let tilt = BigRational::new(BigInt::one(), BigInt::from(2) * &s);
    let bound = BigRational::from_integer(s.clone())
        + BigRational::new(BigInt::from(2 * jmax + 1), BigInt::from(4) * &s);
    let weights = match variant {
        EvenVariant::B1 => vec![one.clone(), one + tilt],
        EvenVariant::B2 => vec![one.clone() + tilt, one],
    };
    Ok((weights, bound))
}

/// The even-distance optimal weighted Reed-Muller set, built from its witness
/// weights and checked against the explicit definition.
pub fn wrm_even_optimal_set(q: u32, d: u64, variant: EvenVariant) -> Result<MonomialSet> {
    let explicit = wrm_even_explicit_set(q, d, variant)?;
    let (weights, bound) = wrm_even_witness(q, d, variant)?;
    let weighted = weighted_rm_set(q, 2, &bound, &weights)?;
    assert_eq!(weighted, explicit, "witness cut must reproduce the two-piece set (q={q}, d={d})");
    Ok(weighted)
}

/// `B_ε = {b + (q-1)ε : b ∈ B, b_i > 0 whenever ε_i = 1}`; unreduced.
pub fn b_epsilon_set(b: &MonomialSet, eps: &Epsilon) -> Result<MonomialSet> {
    b.require_reduced()?;
    if eps.len() != b.m() {
        return Err(Error::RangeError(format!("epsilon has length {}, expected {}", eps.len(), b.m())));
    }
    let shift = b.q() - 1;
    let exps = b.iter().filter(|v| v.0.iter().zip(&eps.0).all(|(&c, &e)| !e || c > 0)).map(|v| {
        ExpVec(v.0.iter().zip(&eps.0).map(|(&c, &e)| if e { c + shift } else { c }).collect())
    });
    MonomialSet::new(b.q(), b.m(), exps)
}

/// `2A ⊆ ∪_ε B_ε`. A `false` result proves `(A + A)_q ⊄ B`.
pub fn necessary_condition_check(a: &MonomialSet, b: &MonomialSet) -> Result<bool> {
    a.require_same_ambient(b)?;
    a.require_reduced()?;
    b.require_reduced()?;
    let mut union: HashSet<ExpVec> = HashSet::new();
    for eps in Epsilon::all(b.m()) {
        union.extend(b_epsilon_set(b, &eps)?.exps().iter().cloned());
    }
    Ok(a.iter().all(|v| union.contains(&v.add(v))))
}

/// A pair of exponents whose reduced sum escapes the target set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareViolation {
    pub left: ExpVec,
    pub right: ExpVec,
    pub reduced_sum: ExpVec,
}

/// First pair `(a, b)`, `a <= b` lexicographically, with `[a + b]_q ∉ B`.
pub fn square_violation(a: &MonomialSet, b: &MonomialSet) -> Result<Option<SquareViolation>> {
    a.require_same_ambient(b)?;
    a.require_reduced()?;
    b.require_reduced()?;
    let exps = a.exps();
    for (k, x) in exps.iter().enumerate() {
        for y in &exps[k..] {
            let sum = x.add(y).reduce(a.q());
            if !b.contains(&sum) {
                return Ok(Some(SquareViolation {
                    left: x.clone(),
                    right: y.clone(),
                    reduced_sum: sum,
                }));
            }
        }
    }
    Ok(None)
}

/// `(A + A)_q ⊆ B`, which gives `d(C_A^(2)) >= d(C_B)`.
pub fn check_square_designed(a: &MonomialSet, b: &MonomialSet) -> Result<bool> {
    a.require_same_ambient(b)?;
    b.require_reduced()?;
    Ok(square_support(a)?.is_subset(b))
}

/// Full box `[0,q-1]^m`.
pub fn full_box_set(q: u32, m: usize) -> Result<MonomialSet> {
    MonomialSet::from_box_filter(q, m, q - 1, |_| true)
}

/// Doubling map used by the half-hyperbolic characterization.
pub fn doubled(a: &ExpVec) -> ExpVec {
    ExpVec(a.0.iter().map(|&c| 2 * c).collect())
}

#[cfg(test)]
pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Reduced copy of `a`; convenience re-export for callers holding raw exponents.
pub fn reduced(a: &MonomialSet) -> MonomialSet {
    reduce_set(a)
}
