//! Exact convex regions and the convex-region square designer.
//!
//! Every point that is ever tested for membership is a half-integer point,
//! so membership is evaluated on doubled integer coordinates `c2 = 2c`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Epsilon;
use crate::bounds::footprint_value;
use crate::error::{Error, Result};
use crate::expsets::{reduce_exponent, ExpVec, MonomialSet};
use crate::gf::MAX_POINTS;

/// `w · x <= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalHalfspace {
    normal: Vec<BigRational>,
    bound: BigRational,
    // Integer form: int_normal · x <= int_bound, scaled by the common denominator.
    int_normal: Vec<BigInt>,
    int_bound: BigInt,
}

impl RationalHalfspace {
    pub fn new(normal: Vec<BigRational>, bound: BigRational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::InvalidRegion("halfspace normal must have a nonzero coefficient".into()));
        }
        let lcm = normal
            .iter()
            .chain(std::iter::once(&bound))
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let scale = |r: &BigRational| (r * BigRational::from_integer(lcm.clone())).to_integer();
        let int_normal = normal.iter().map(scale).collect();
        let int_bound = scale(&bound);
        Ok(RationalHalfspace {
            normal,
            bound,
            int_normal,
            int_bound,
        })
    }

    pub fn normal(&self) -> &[BigRational] {
        &self.normal
    }

    pub fn bound(&self) -> &BigRational {
        &self.bound
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    fn dot(&self, x: &[u32]) -> BigInt {
        self.int_normal.iter().zip(x).map(|(w, &c)| w * BigInt::from(c)).sum()
    }

    pub fn contains_integer(&self, x: &[u32]) -> bool {
        self.dot(x) <= self.int_bound
    }

    /// Membership of the point `c2 / 2`.
    pub fn contains_doubled(&self, c2: &[u32]) -> bool {
        self.dot(c2) <= &self.int_bound * 2
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self.normal.iter().zip(x).map(|(w, c)| w * c).sum();
        lhs <= self.bound
    }
}

/// `[lo, hi]^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxConstraint {
    pub lo: BigRational,
    pub hi: BigRational,
}

/// Intersection of halfspaces, an optional box, and optionally the product
/// constraint `Π (q - 2 x_i) >= d`, which is only convex on a box inside
/// `[0, q/2)^m` and so always travels with one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexRegion {
    pub halfspaces: Vec<RationalHalfspace>,
    pub bbox: Option<BoxConstraint>,
    pub product: Option<u128>,
}

impl ConvexRegion {
    pub fn halfspace(normal: Vec<BigRational>, bound: BigRational) -> Result<Self> {
        Ok(ConvexRegion {
            halfspaces: vec![RationalHalfspace::new(normal, bound)?],
            bbox: None,
            product: None,
        })
    }

    pub fn full_box(q: u32) -> Self {
        ConvexRegion {
            halfspaces: Vec::new(),
            bbox: Some(BoxConstraint {
                lo: BigRational::zero(),
                hi: BigRational::from_integer((q - 1).into()),
            }),
            product: None,
        }
    }

    /// `{x ∈ [0, (q-1)/2]^m : Π (q - 2 x_i) >= d}`.
    pub fn half_hyperbolic(q: u32, d: u128) -> Self {
        ConvexRegion {
            halfspaces: Vec::new(),
            bbox: Some(BoxConstraint {
                lo: BigRational::zero(),
                hi: BigRational::new((q - 1).into(), 2.into()),
            }),
            product: Some(d),
        }
    }

    pub fn with_halfspace(mut self, h: RationalHalfspace) -> Self {
        self.halfspaces.push(h);
        self
    }

    /// Dimension and well-formedness checks against the ambient `(q, m)`.
    pub fn check(&self, q: u32, m: usize) -> Result<()> {
        if let Some(h) = self.halfspaces.iter().find(|h| h.dim() != m) {
            return Err(Error::InvalidRegion(format!("halfspace of dimension {} in a region of dimension {m}", h.dim())));
        }
        if self.product.is_some() {
            let Some(b) = &self.bbox else {
                return Err(Error::InvalidRegion("product constraint requires a box".into()));
            };
            let q_half = BigRational::new(q.into(), 2.into());
            if b.lo < BigRational::zero() || b.hi >= q_half {
                return Err(Error::InvalidRegion("product constraint requires a box inside [0, q/2)".into()));
            }
        }
        Ok(())
    }

    /// Membership of `c2 / 2` for a doubled integer point.
    pub fn contains_doubled(&self, c2: &[u32], q: u32) -> bool {
        if let Some(b) = &self.bbox {
            let two = BigRational::from_integer(2.into());
            let (lo, hi) = (&b.lo * &two, &b.hi * &two);
            if c2.iter().any(|&c| {
                let c = BigRational::from_integer(c.into());
                c < lo || c > hi
            }) {
                return false;
            }
        }
        if let Some(d) = self.product {
            if c2.iter().any(|&c| c >= q) || footprint_value(q, c2) < d {
                return false;
            }
        }
        self.halfspaces.iter().all(|h| h.contains_doubled(c2))
    }

    pub fn contains_integer(&self, x: &[u32], q: u32) -> bool {
        let c2: Vec<u32> = x.iter().map(|&c| 2 * c).collect();
        self.contains_doubled(&c2, q)
    }

    pub fn to_document(&self) -> RegionDocument {
        RegionDocument {
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| HalfspaceDocument {
                    w: h.normal.iter().map(ToString::to_string).collect(),
                    b: h.bound.to_string(),
                })
                .collect(),
            bbox: self.bbox.as_ref().map(|b| BoxDocument {
                lo: b.lo.to_string(),
                hi: b.hi.to_string(),
            }),
            product: self.product.map(|d| ProductDocument { d }),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str::<RegionDocument>(s)?.into_region()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("region documents always serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfspaceDocument {
    pub w: Vec<String>,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxDocument {
    pub lo: String,
    pub hi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductDocument {
    pub d: u128,
}

/// JSON form of a [`ConvexRegion`]; rationals are `"p/q"` or integer strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDocument {
    #[serde(default)]
    pub halfspaces: Vec<HalfspaceDocument>,
    #[serde(rename = "box", default)]
    pub bbox: Option<BoxDocument>,
    #[serde(default)]
    pub product: Option<ProductDocument>,
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

impl RegionDocument {
    pub fn into_region(self) -> Result<ConvexRegion> {
        let halfspaces = self
            .halfspaces
            .into_iter()
            .map(|h| {
                let w = h.w.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                RationalHalfspace::new(w, parse_rational(&h.b)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let bbox = match self.bbox {
            Some(b) => Some(BoxConstraint {
                lo: parse_rational(&b.lo)?,
                hi: parse_rational(&b.hi)?,
            }),
            None => None,
        };
        Ok(ConvexRegion {
            halfspaces,
            bbox,
            product: self.product.map(|p| p.d),
        })
    }
}

fn box_size(side: u32, m: usize) -> Result<u128> {
    let n = (side as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if n > MAX_POINTS {
        return Err(Error::BudgetExceeded {
            what: "region enumeration",
            needed: n,
            limit: MAX_POINTS,
        });
    }
    Ok(n)
}

fn box_point(mut idx: u128, side: u32, m: usize) -> Vec<u32> {
    let mut out = vec![0u32; m];
    for c in out.iter_mut().rev() {
        *c = (idx % side as u128) as u32;
        idx /= side as u128;
    }
    out
}

/// `C ∩ [0, q-1]^m`.
pub fn region_lattice_points(region: &ConvexRegion, q: u32, m: usize) -> Result<MonomialSet> {
    region.check(q, m)?;
    box_size(q, m)?;
    MonomialSet::from_box_filter(q, m, q - 1, |a| region.contains_integer(a, q))
}

/// Smallest doubled point `c2 ∈ [0, 2q-2]^m` with `c2/2 ∈ C` and `[c2]_q ∉ B`.
pub fn algorithm1_counterexample(region: &ConvexRegion, b: &MonomialSet) -> Result<Option<ExpVec>> {
    b.require_reduced()?;
    let (q, m) = (b.q(), b.m());
    region.check(q, m)?;
    let side = 2 * q - 1;
    let total = box_size(side, m)?;
    let bad = (0..total).into_par_iter().find_first(|&idx| {
        let c2 = box_point(idx, side, m);
        let reduced: Vec<u32> = c2.iter().map(|&c| reduce_exponent(c, q)).collect();
        !b.contains_coords(&reduced) && region.contains_doubled(&c2, q)
    });
    Ok(bad.map(|idx| ExpVec(box_point(idx, side, m))))
}

/// `true` when no half-integer point of `C` doubles to an exponent outside `B`
/// after reduction; then `A = C ∩ [0,q-1]^m` satisfies `(A + A)_q ⊆ B`.
pub fn algorithm1_verify(region: &ConvexRegion, b: &MonomialSet) -> Result<bool> {
    Ok(algorithm1_counterexample(region, b)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algorithm1Outcome {
    pub design: MonomialSet,
    pub verified: bool,
}

/// Takes `A = C ∩ [0,q-1]^m` and runs the verifier against `B`.
pub fn algorithm1(region: &ConvexRegion, b: &MonomialSet) -> Result<Algorithm1Outcome> {
    let design = region_lattice_points(region, b.q(), b.m())?;
    let verified = algorithm1_verify(region, b)?;
    Ok(Algorithm1Outcome { design, verified })
}

/// Doubled points `2b` of `D_ε`: coordinate `2b_i` in `[0, q-1]` when
/// `ε_i = 0` and in `[q, 2q-2]` when `ε_i = 1`, with
/// `Π (q + ε_i (q-1) - 2b_i) < d`.
pub fn d_epsilon_points(q: u32, m: usize, d: u128, eps: &Epsilon) -> Result<Vec<ExpVec>> {
    if eps.len() != m {
        return Err(Error::RangeError(format!("epsilon has length {}, expected {m}", eps.len())));
    }
    if d == 0 {
        return Err(Error::RangeError("designed distance d must be at least 1".into()));
    }
    let side = 2 * q - 1;
    let total = box_size(side, m)?;
    let mut out = Vec::new();
    for idx in 0..total {
        let c2 = box_point(idx, side, m);
        let in_orthant = c2.iter().zip(&eps.0).all(|(&c, &e)| if e { c >= q } else { c < q });
        if !in_orthant {
            continue;
        }
        let factors: Vec<u32> = c2.iter().zip(&eps.0).map(|(&c, &e)| if e { c - (q - 1) } else { c }).collect();
        if footprint_value(q, &factors) < d {
            out.push(ExpVec(c2));
        }
    }
    Ok(out)
}
