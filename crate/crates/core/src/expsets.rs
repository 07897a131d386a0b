//! Exponent sets `A ⊆ ℕ^m` indexing monomials, and their algebra.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf;

/// Hard cap on the number of variables.
pub const MAX_VARS: usize = 8;

/// Exponent vector `(i_1, ..., i_m)` of the monomial `X_1^{i_1} ... X_m^{i_m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(pub Vec<u32>);

impl ExpVec {
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        ExpVec(coords.into())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn reduce(&self, q: u32) -> ExpVec {
        ExpVec(self.0.iter().map(|&i| reduce_exponent(i, q)).collect())
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Reduction forced by `z^q = z`: 0 stays 0, anything else lands in `[1, q-1]`.
pub fn reduce_exponent(i: u32, q: u32) -> u32 {
    if i == 0 {
        0
    } else {
        (i - 1) % (q - 1) + 1
    }
}

/// A finite, duplicate-free, lexicographically sorted exponent set together
/// with its ambient `(q, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSet {
    q: u32,
    m: usize,
    exps: Vec<ExpVec>,
    reduced: bool,
}

impl MonomialSet {
    pub fn new(q: u32, m: usize, exps: impl IntoIterator<Item = ExpVec>) -> Result<Self> {
        check_ambient(q, m)?;
        let mut exps: Vec<ExpVec> = exps.into_iter().collect();
        if let Some(bad) = exps.iter().find(|e| e.dim() != m) {
            return Err(Error::InvalidExponent(format!("{bad} has {} coordinates, expected {m}", bad.dim())));
        }
        exps.sort_unstable();
        exps.dedup();
        Ok(Self::from_sorted(q, m, exps))
    }

    pub(crate) fn from_sorted(q: u32, m: usize, exps: Vec<ExpVec>) -> Self {
        debug_assert!(exps.windows(2).all(|w| w[0] < w[1]));
        let reduced = exps.iter().all(|e| e.0.iter().all(|&c| c < q));
        MonomialSet { q, m, exps, reduced }
    }

    /// Builds from plain coordinate rows, e.g. `&[[0, 0], [1, 0]]`.
    pub fn from_rows<R: AsRef<[u32]>>(q: u32, m: usize, rows: impl IntoIterator<Item = R>) -> Result<Self> {
        Self::new(q, m, rows.into_iter().map(|r| ExpVec(r.as_ref().to_vec())))
    }

    pub fn empty(q: u32, m: usize) -> Result<Self> {
        Self::new(q, m, std::iter::empty())
    }

    /// `[0, q-1]^m` filtered by `keep`, in canonical order.
    pub fn from_box_filter(q: u32, m: usize, hi: u32, keep: impl Fn(&[u32]) -> bool) -> Result<Self> {
        check_ambient(q, m)?;
        let side = hi as u128 + 1;
        let total = side.checked_pow(m as u32).unwrap_or(u128::MAX);
        if total > gf::MAX_POINTS {
            return Err(Error::BudgetExceeded {
                what: "box enumeration",
                needed: total,
                limit: gf::MAX_POINTS,
            });
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; m];
        for _ in 0..total {
            if keep(&cur) {
                out.push(ExpVec(cur.clone()));
            }
            for c in cur.iter_mut().rev() {
                *c += 1;
                if *c <= hi {
                    break;
                }
                *c = 0;
            }
        }
        Ok(Self::from_sorted(q, m, out))
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn exps(&self) -> &[ExpVec] {
        &self.exps
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExpVec> {
        self.exps.iter()
    }

    pub fn contains(&self, e: &ExpVec) -> bool {
        self.exps.binary_search(e).is_ok()
    }

    pub fn contains_coords(&self, c: &[u32]) -> bool {
        self.exps.binary_search_by(|e| e.0.as_slice().cmp(c)).is_ok()
    }

    pub fn is_subset(&self, other: &MonomialSet) -> bool {
        self.exps.iter().all(|e| other.contains(e))
    }

    pub(crate) fn require_reduced(&self) -> Result<()> {
        if self.reduced {
            Ok(())
        } else {
            Err(Error::NotReduced)
        }
    }

    pub(crate) fn require_same_ambient(&self, other: &MonomialSet) -> Result<()> {
        if self.q == other.q && self.m == other.m {
            Ok(())
        } else {
            Err(Error::MismatchedAmbient {
                q1: self.q,
                m1: self.m,
                q2: other.q,
                m2: other.m,
            })
        }
    }

    pub fn to_document(&self) -> SetDocument {
        SetDocument {
            q: self.q,
            m: self.m,
            exponents: self.exps.iter().map(|e| e.0.clone()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("set documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SetDocument = serde_json::from_str(s)?;
        doc.into_set()
    }
}

impl<'a> IntoIterator for &'a MonomialSet {
    type Item = &'a ExpVec;
    type IntoIter = std::slice::Iter<'a, ExpVec>;

    fn into_iter(self) -> Self::IntoIter {
        self.exps.iter()
    }
}

fn check_ambient(q: u32, m: usize) -> Result<()> {
    if q > gf::MAX_FIELD_ORDER || gf::prime_power(q as u64).is_none() {
        return Err(Error::InvalidFieldOrder(q as u64));
    }
    if m == 0 || m > MAX_VARS {
        return Err(Error::RangeError(format!("number of variables m = {m} must be in [1, {MAX_VARS}]")));
    }
    Ok(())
}

/// Interchange form of a [`MonomialSet`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetDocument {
    pub q: u32,
    pub m: usize,
    pub exponents: Vec<Vec<u32>>,
}

impl SetDocument {
    pub fn into_set(self) -> Result<MonomialSet> {
        MonomialSet::from_rows(self.q, self.m, self.exponents)
    }
}

/// Coordinate-wise exponent reduction, deduplicated and re-sorted.
pub fn reduce_set(a: &MonomialSet) -> MonomialSet {
    let mut exps: Vec<ExpVec> = a.exps.iter().map(|e| e.reduce(a.q)).collect();
    exps.sort_unstable();
    exps.dedup();
    MonomialSet::from_sorted(a.q, a.m, exps)
}

/// `A + B = {a + b}`; not reduced.
pub fn minkowski_sum(a: &MonomialSet, b: &MonomialSet) -> Result<MonomialSet> {
    a.require_same_ambient(b)?;
    let mut seen = HashSet::with_capacity(a.len() * b.len());
    for x in &a.exps {
        for y in &b.exps {
            seen.insert(x.add(y));
        }
    }
    let mut exps: Vec<ExpVec> = seen.into_iter().collect();
    exps.sort_unstable();
    Ok(MonomialSet::from_sorted(a.q, a.m, exps))
}

/// `(A + A)_q`, the support of the Schur square of `C_A`.
pub fn square_support(a: &MonomialSet) -> Result<MonomialSet> {
    a.require_reduced()?;
    Ok(reduce_set(&minkowski_sum(a, a)?))
}

/// Downward closure under the componentwise order.
pub fn is_lower_set(a: &MonomialSet) -> bool {
    // Closed under unit decrements implies closed under all decrements.
    a.exps.iter().all(|e| {
        (0..e.dim()).all(|k| {
            if e.0[k] == 0 {
                return true;
            }
            let mut d = e.0.clone();
            d[k] -= 1;
            a.contains_coords(&d)
        })
    })
}
