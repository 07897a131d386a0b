//! The footprint bound, closed-form parameters, and the comparison results
//! between families.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::certify::{certified_min_distance, CertifiedDistance, DistanceCertificate};
use crate::error::{Error, Result};
use crate::evalcode::{generator_matrix, min_distance_exact, DEFAULT_CLASS_BUDGET};
use crate::expsets::{square_support, ExpVec, MonomialSet};
use crate::families::{
    full_box_set, half_hyperbolic_set, hyperbolic_set, reed_muller_set, wrm_even_optimal_set, EvenVariant,
};

/// `Π (q - c_j)`, saturating at `u128::MAX` and clamping negative factors to 0.
pub fn footprint_value(q: u32, coords: &[u32]) -> u128 {
    coords
        .iter()
        .fold(1u128, |acc, &c| acc.saturating_mul(q.saturating_sub(c) as u128))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Footprint {
    pub value: u128,
    /// Lexicographically first exponent attaining the minimum.
    pub witness: ExpVec,
}

/// `FB(C_A) = min_{a ∈ A} Π (q - a_j)`.
pub fn footprint_bound(a: &MonomialSet) -> Result<Footprint> {
    a.require_reduced()?;
    let q = a.q();
    a.iter()
        .map(|e| (footprint_value(q, e.coords()), e))
        .min_by_key(|(v, _)| *v)
        .map(|(value, e)| Footprint {
            value,
            witness: e.clone(),
        })
        .ok_or(Error::EmptySet)
}

/// All exponents attaining the footprint bound, in lexicographic order.
pub fn footprint_argmins(a: &MonomialSet) -> Result<Vec<ExpVec>> {
    let fb = footprint_bound(a)?.value;
    Ok(a.iter().filter(|e| footprint_value(a.q(), e.coords()) == fb).cloned().collect())
}

/// Minimum distance of `RM_q(s, m)`: write `s = a(q-1) + b` with
/// `0 <= b <= q-1`, then `d = (q-b) q^{m-1-a}`.
pub fn rm_min_distance(q: u32, m: usize, s: u64) -> Result<u128> {
    let step = q as u64 - 1;
    if m == 0 || s > step * m as u64 {
        return Err(Error::RangeError(format!("degree s = {s} must lie in [0, {}]", step * m as u64)));
    }
    let eval = |a: u64, b: u64| (q as u128 - b as u128) * (q as u128).pow((m as u64 - 1 - a) as u32);
    let (mut a, mut b) = (s / step, s % step);
    if a == m as u64 {
        a -= 1;
        b += step;
    }
    let d = eval(a, b);
    if b == 0 && a > 0 {
        assert_eq!(d, eval(a - 1, step), "both decompositions of s = {s} must agree");
    }
    Ok(d)
}

/// Closed-form dimension of `HalfHyp_q(d, 2)`, checked against enumeration.
pub fn halfhyp_dimension_formula(q: u32, d: u64) -> Result<u64> {
    let (qi, di) = (q as i64, d as i64);
    if d == 0 || di >= qi * qi {
        return Err(Error::RangeError(format!("d = {d} must lie in [1, q^2 - 1]")));
    }
    let top = (qi * qi - di) / (2 * qi);
    let total: i64 = (0..=top)
        .map(|i| {
            let num = di + (qi + 2) * (2 * i - qi);
            let den = 4 * i - 2 * qi;
            Integer::div_floor(&num, &den)
        })
        .sum();
    let enumerated = half_hyperbolic_set(q, 2, d as u128)?.len() as i64;
    assert_eq!(total, enumerated, "dimension formula disagrees with enumeration at q={q}, d={d}");
    Ok(total as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RmHypComparison {
    Equal,
    HypStrictlyLarger,
}

/// Compares `RM_q(t, 2)` with the hyperbolic code of the same minimum
/// distance: the hyperbolic one is strictly larger iff
/// `(t+5)/2 <= q <= (t+1)^2/4`.
pub fn rm_vs_hyp_comparison(q: u32, t: u64) -> Result<RmHypComparison> {
    if t > 2 * (q as u64 - 1) {
        return Err(Error::RangeError(format!("t = {t} must lie in [0, 2q - 2]")));
    }
    let q = q as u64;
    if t + 5 <= 2 * q && 4 * q <= (t + 1) * (t + 1) {
        Ok(RmHypComparison::HypStrictlyLarger)
    } else {
        Ok(RmHypComparison::Equal)
    }
}

/// `(k(RM_q(t,2)), k(Hyp_q(d,2)))` with `d = d(RM_q(t,2))`, by enumeration.
pub fn rm_vs_hyp_dimensions(q: u32, t: u64) -> Result<(usize, usize)> {
    let d = rm_min_distance(q, 2, t)?;
    Ok((reed_muller_set(q, 2, t)?.len(), hyperbolic_set(q, 2, d)?.len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum WrmDesignKind {
    /// `d = 1`: every square has distance at least 1.
    FullBox,
    ReedMuller { s: u64 },
    EvenOptimum { variant: EvenVariant },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrmDesign {
    pub set: MonomialSet,
    pub kind: WrmDesignKind,
}

/// Largest weighted Reed-Muller set in two variables whose square has
/// minimum distance at least `d < q`.
pub fn best_wrm_square_design(q: u32, d: u64) -> Result<WrmDesign> {
    if d == 0 || d >= q as u64 {
        return Err(Error::RangeError(format!("d = {d} must lie in [1, q - 1]")));
    }
    let (set, kind) = if d == 1 {
        (full_box_set(q, 2)?, WrmDesignKind::FullBox)
    } else if d % 2 == 1 {
        let s = q as u64 - (d + 1) / 2;
        (reed_muller_set(q, 2, s)?, WrmDesignKind::ReedMuller { s })
    } else {
        let variant = EvenVariant::B1;
        (wrm_even_optimal_set(q, d, variant)?, WrmDesignKind::EvenOptimum { variant })
    };
    let square_fb = footprint_bound(&square_support(&set)?)?.value;
    assert!(square_fb >= d as u128, "square of the design must have footprint bound >= {d}");
    Ok(WrmDesign { set, kind })
}

/// `d < (2 - √2) q`, tested exactly as `(2q - d)^2 > 2q^2`. When it holds the
/// best weighted Reed-Muller design is strictly larger than `HalfHyp_q(d, 2)`.
pub fn wrm_beats_halfhyp(q: u32, d: u64) -> Result<bool> {
    if d == 0 || d >= q as u64 {
        return Err(Error::RangeError(format!("d = {d} must lie in [1, q - 1]")));
    }
    let (q2, d2) = (q as u128, d as u128);
    let wins = (2 * q2 - d2).pow(2) > 2 * q2 * q2;
    if wins {
        let k_wrm = best_wrm_square_design(q, d)?.set.len();
        let k_hh = half_hyperbolic_set(q, 2, d as u128)?.len();
        assert!(k_wrm > k_hh, "q={q}, d={d}: {k_wrm} <= {k_hh}");
    }
    Ok(wins)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Effort {
    FbOnly,
    Certify,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceSource {
    Certificate,
    Exhaustive,
    Formula,
    None,
}

impl DistanceSource {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceSource::Certificate => "certificate",
            DistanceSource::Exhaustive => "exhaustive",
            DistanceSource::Formula => "formula",
            DistanceSource::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamsReport {
    pub n: u128,
    pub k: usize,
    pub fb: u128,
    pub d_exact: Option<u128>,
    pub d_source: DistanceSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<DistanceCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square: Option<Box<ParamsReport>>,
}

/// `[n, k, FB]` plus the exact distance when `effort` can establish it, for
/// `C_A` and for its square.
pub fn params_report(a: &MonomialSet, effort: Effort, budget: u64) -> Result<ParamsReport> {
    let mut report = single_report(a, effort, budget)?;
    report.square = Some(Box::new(single_report(&square_support(a)?, effort, budget)?));
    Ok(report)
}

fn single_report(a: &MonomialSet, effort: Effort, budget: u64) -> Result<ParamsReport> {
    let fb = footprint_bound(a)?.value;
    let n = (a.q() as u128).pow(a.m() as u32);
    let mut report = ParamsReport {
        n,
        k: a.len(),
        fb,
        d_exact: None,
        d_source: DistanceSource::None,
        certificate: None,
        square: None,
    };
    if effort == Effort::Exhaustive && !a.is_empty() {
        // over budget falls through to the certificate
        match min_distance_exact(&generator_matrix(a)?, budget) {
            Ok(d) => {
                report.d_exact = Some(d);
                report.d_source = DistanceSource::Exhaustive;
                return Ok(report);
            }
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if effort != Effort::FbOnly {
        if let CertifiedDistance::Exact { distance, certificate } = certified_min_distance(a)? {
            report.d_exact = Some(distance);
            report.d_source = DistanceSource::Certificate;
            report.certificate = Some(certificate);
        }
    }
    Ok(report)
}

/// `(q^k - 1) / (q - 1)`, saturating.
pub fn projective_classes(q: u32, k: usize) -> u128 {
    match (q as u128).checked_pow(k as u32) {
        Some(total) => (total - 1) / (q as u128 - 1),
        None => u128::MAX,
    }
}

/// Default budget re-exported for callers that only need the report.
pub const DEFAULT_BUDGET: u64 = DEFAULT_CLASS_BUDGET;
