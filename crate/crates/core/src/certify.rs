//! Explicit low-weight codewords proving `d(C_A)` exactly.
//!
//! A certificate is a product of univariate factors, one per axis. Its
//! weight is never trusted: every certificate handed out here has been
//! expanded to monomials, checked to lie in `A`, and evaluated.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::bounds::{footprint_argmins, footprint_bound, footprint_value};
use crate::error::{Error, Result};
use crate::evalcode::weight_of_witness;
use crate::expsets::{ExpVec, MonomialSet};
use crate::gf::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    /// Product of linear factors over a box of exponents below the argmin.
    Box,
    /// Products of binomials `X^l - β` with `l | q - 1`.
    Divisor,
    /// A box certificate after factoring a common power of some variables out.
    Shifted,
    None,
}

/// `X^power - constant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binomial {
    pub power: u32,
    pub constant: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorShape {
    /// `Π (X - r)`.
    Roots(Vec<Elem>),
    /// `Π (X^l - β)`.
    Binomials(Vec<Binomial>),
}

/// `X_axis^shift · shape(X_axis)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisFactor {
    pub axis: usize,
    pub shift: u32,
    pub roots_or_binomials: FactorShape,
}

impl AxisFactor {
    /// Dense coefficients, constant term first.
    pub fn univariate(&self, field: &Field) -> Vec<Elem> {
        let mut poly = vec![Elem::ZERO; self.shift as usize];
        poly.push(Elem::ONE);
        match &self.roots_or_binomials {
            FactorShape::Roots(roots) => {
                for &r in roots {
                    poly = poly_mul(field, &poly, &[field.neg(r), Elem::ONE]);
                }
            }
            FactorShape::Binomials(terms) => {
                for t in terms {
                    let mut b = vec![Elem::ZERO; t.power as usize + 1];
                    b[0] = field.neg(t.constant);
                    b[t.power as usize] = field.add(b[t.power as usize], Elem::ONE);
                    poly = poly_mul(field, &poly, &b);
                }
            }
        }
        poly
    }
}

fn poly_mul(field: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

fn eval_univariate(field: &Field, poly: &[Elem], x: Elem) -> Elem {
    poly.iter().rev().fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceCertificate {
    pub kind: CertificateKind,
    /// Exponent of `A` the certificate is built around.
    pub alpha: Vec<u32>,
    pub factors: Vec<AxisFactor>,
    #[serde(rename = "weight")]
    pub claimed_weight: u128,
}

impl DistanceCertificate {
    /// Expands the witness into `(exponent, coefficient)` terms with nonzero coefficients.
    pub fn expand(&self, field: &Field, m: usize) -> Result<Vec<(ExpVec, Elem)>> {
        let mut per_axis: Vec<Vec<Elem>> = vec![vec![Elem::ONE]; m];
        for f in &self.factors {
            if f.axis >= m {
                return Err(Error::RangeError(format!("factor on axis {} with m = {m}", f.axis)));
            }
            per_axis[f.axis] = poly_mul(field, &per_axis[f.axis], &f.univariate(field));
        }
        let mut terms = vec![(Vec::new(), Elem::ONE)];
        for poly in &per_axis {
            let mut next = Vec::new();
            for (exp, coef) in &terms {
                for (k, &c) in poly.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut e: Vec<u32> = exp.clone();
                    e.push(k as u32);
                    next.push((e, field.mul(*coef, c)));
                }
            }
            terms = next;
        }
        let mut out: Vec<(ExpVec, Elem)> = terms.into_iter().map(|(e, c)| (ExpVec(e), c)).collect();
        out.sort();
        Ok(out)
    }

    /// Weight as the product of per-axis nonzero counts over F_q.
    pub fn factorized_weight(&self, field: &Field, m: usize) -> u128 {
        let mut per_axis: Vec<Vec<Elem>> = vec![vec![Elem::ONE]; m];
        for f in &self.factors {
            per_axis[f.axis] = poly_mul(field, &per_axis[f.axis], &f.univariate(field));
        }
        per_axis
            .iter()
            .map(|p| field.elements().filter(|&x| !eval_univariate(field, p, x).is_zero()).count() as u128)
            .product()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates always serialize")
    }
}

/// Number of F_q-roots of `X^l - α^j` for the primitive element `α`:
/// `gcd(l, q-1)` when it divides `j`, else 0.
pub fn root_count_binomial(l: u64, j: u64, field: &Field) -> Result<u64> {
    let n = field.order() as u64 - 1;
    if l == 0 {
        return Err(Error::RangeError("l must be at least 1".into()));
    }
    if j >= n.max(1) {
        return Err(Error::RangeError(format!("j = {j} must lie in [0, q-2]")));
    }
    let g = l.gcd(&n);
    Ok(if j % g == 0 { g } else { 0 })
}

fn box_inside(a: &MonomialSet, lo: &[u32], hi: &[u32]) -> bool {
    let m = lo.len();
    let mut cur = lo.to_vec();
    loop {
        if !a.contains_coords(&cur) {
            return false;
        }
        let mut k = m;
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
        }
    }
}

fn verified(cert: DistanceCertificate, a: &MonomialSet) -> Result<Option<DistanceCertificate>> {
    match weight_of_witness(&cert, a) {
        Ok(w) if w == cert.claimed_weight => Ok(Some(cert)),
        Ok(_) | Err(Error::SupportOutsideA(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Box certificate: if `[0, α] ⊆ A` for an argmin `α` of the footprint
/// bound, `Π_i Π_{t < α_i} (X_i - P_t)` has weight `FB(A)`, where `P_t`
/// are the first field elements in canonical order.
pub fn box_certificate(a: &MonomialSet) -> Result<Option<DistanceCertificate>> {
    let fb = footprint_bound(a)?.value;
    for alpha in footprint_argmins(a)? {
        let zero = vec![0u32; a.m()];
        if !box_inside(a, &zero, alpha.coords()) {
            continue;
        }
        let factors = alpha
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(axis, &k)| AxisFactor {
                axis,
                shift: 0,
                roots_or_binomials: FactorShape::Roots((0..k).map(Elem).collect()),
            })
            .collect();
        let cert = DistanceCertificate {
            kind: CertificateKind::Box,
            alpha: alpha.0.clone(),
            factors,
            claimed_weight: fb,
        };
        if let Some(c) = verified(cert, a)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// One way of realizing `α_i` roots on a single axis.
#[derive(Clone, Debug)]
struct AxisOption {
    factor: Option<AxisFactor>,
    exponents: Vec<u32>,
    uses_binomials: bool,
}

fn axis_options(field: &Field, axis: usize, alpha: u32) -> Vec<AxisOption> {
    let q = field.order();
    if alpha == 0 {
        return vec![AxisOption {
            factor: None,
            exponents: vec![0],
            uses_binomials: false,
        }];
    }
    let mut out = vec![AxisOption {
        factor: Some(AxisFactor {
            axis,
            shift: 0,
            roots_or_binomials: FactorShape::Roots((0..alpha).map(Elem).collect()),
        }),
        exponents: (0..=alpha).collect(),
        uses_binomials: false,
    }];
    let g = field.primitive_element();
    for offset in [0u32, 1] {
        if alpha <= offset {
            continue;
        }
        let rest = alpha - offset;
        for l in 2..q {
            if (q - 1) % l != 0 || rest % l != 0 {
                continue;
            }
            // k distinct l-th powers of nonzero elements exist while k <= (q-1)/l
            let k = rest / l;
            if k > (q - 1) / l {
                continue;
            }
            let terms = (0..k)
                .map(|t| Binomial {
                    power: l,
                    constant: field.pow(g, (l * t) as u64),
                })
                .collect();
            out.push(AxisOption {
                factor: Some(AxisFactor {
                    axis,
                    shift: offset,
                    roots_or_binomials: FactorShape::Binomials(terms),
                }),
                exponents: (0..=k).map(|t| offset + t * l).collect(),
                uses_binomials: true,
            });
        }
    }
    out
}

fn grid_inside(a: &MonomialSet, axes: &[&[u32]]) -> bool {
    let mut idx = vec![0usize; axes.len()];
    loop {
        let point: Vec<u32> = idx.iter().zip(axes).map(|(&i, ax)| ax[i]).collect();
        if !a.contains_coords(&point) {
            return false;
        }
        let mut k = axes.len();
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Certificates built from binomials `X_i^l - β` with `l | q - 1`, optionally
/// times `X_i`, whose sparse supports can fit inside `A` where a full box
/// does not. Each axis `i` realizes `α_i = o + k l` roots with
/// `Π_{t<k} (X_i^l - α^{lt})`, the `α^{lt}` being distinct `l`-th powers.
pub fn divisor_certificate(a: &MonomialSet) -> Result<Option<DistanceCertificate>> {
    let fb = footprint_bound(a)?.value;
    let field = Field::new(a.q())?;
    for alpha in footprint_argmins(a)? {
        let options: Vec<Vec<AxisOption>> = alpha
            .coords()
            .iter()
            .enumerate()
            .map(|(axis, &k)| axis_options(&field, axis, k))
            .collect();
        let mut choice = vec![0usize; options.len()];
        loop {
            let picked: Vec<&AxisOption> = choice.iter().zip(&options).map(|(&c, o)| &o[c]).collect();
            let any_binomial = picked.iter().any(|o| o.uses_binomials);
            let exps: Vec<&[u32]> = picked.iter().map(|o| o.exponents.as_slice()).collect();
            if any_binomial && grid_inside(a, &exps) {
                let cert = DistanceCertificate {
                    kind: CertificateKind::Divisor,
                    alpha: alpha.0.clone(),
                    factors: picked.iter().filter_map(|o| o.factor.clone()).collect(),
                    claimed_weight: fb,
                };
                if let Some(c) = verified(cert, a)? {
                    return Ok(Some(c));
                }
            }
            let mut k = options.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < options[k].len() {
                    break;
                }
                choice[k] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    Ok(None)
}

/// `A` with the common power of `X_axis` factored out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftReduction {
    pub set: MonomialSet,
    pub axis: usize,
    pub shift: u32,
}

/// When every exponent of `A` has `axis`-coordinate at least `s > 0`, returns
/// `B = A - s e_axis`. Every codeword of `C_A` vanishes on `x_axis = 0`, and
/// `f = X^s g` has the same weight as `g` restricted to `x_axis ≠ 0`, so
/// `d(C_A)` equals the distance of `C_B` punctured at `x_axis = 0`.
pub fn shift_reduce(a: &MonomialSet, axis: usize) -> Result<Option<ShiftReduction>> {
    a.require_reduced()?;
    if axis >= a.m() {
        return Err(Error::RangeError(format!("axis {axis} with m = {}", a.m())));
    }
    let s = a.iter().map(|e| e.coords()[axis]).min().ok_or(Error::EmptySet)?;
    if s == 0 {
        return Ok(None);
    }
    let exps = a.iter().map(|e| {
        let mut c = e.0.clone();
        c[axis] -= s;
        ExpVec(c)
    });
    Ok(Some(ShiftReduction {
        set: MonomialSet::new(a.q(), a.m(), exps)?,
        axis,
        shift: s,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum CertifiedDistance {
    Exact {
        distance: u128,
        certificate: DistanceCertificate,
    },
    /// No certificate applies; `bound <= d(C_A)`.
    LowerBound { bound: u128 },
}

impl CertifiedDistance {
    pub fn exact(&self) -> Option<u128> {
        match self {
            CertifiedDistance::Exact { distance, .. } => Some(*distance),
            CertifiedDistance::LowerBound { .. } => None,
        }
    }

    pub fn bound(&self) -> u128 {
        match self {
            CertifiedDistance::Exact { distance, .. } => *distance,
            CertifiedDistance::LowerBound { bound } => *bound,
        }
    }
}

/// Footprint bound of `B` on the grid where punctured axes have `q - 1` points.
fn punctured_bound(b: &MonomialSet, punctured: &[bool]) -> (u128, Vec<ExpVec>) {
    let q = b.q();
    let value = |e: &ExpVec| {
        e.coords().iter().zip(punctured).fold(1u128, |acc, (&c, &p)| {
            let side = if p { q - 1 } else { q };
            acc.saturating_mul(side.saturating_sub(c) as u128)
        })
    };
    let best = b.iter().map(value).min().unwrap_or(0);
    let argmins = b.iter().filter(|e| value(e) == best).cloned().collect();
    (best, argmins)
}

/// Exact minimum distance with a verified certificate, or a lower bound.
///
/// Common powers of the variables are factored out first. Without any, the
/// box and divisor certificates are tried against `FB(A)`. With some, the
/// reduced set is bounded on the punctured grid (which is never below
/// `FB(A)`) and a shifted box certificate is tried against that bound.
pub fn certified_min_distance(a: &MonomialSet) -> Result<CertifiedDistance> {
    let fb = footprint_bound(a)?.value;
    let mut reduced = a.clone();
    let mut shifts = vec![0u32; a.m()];
    for axis in 0..a.m() {
        if let Some(r) = shift_reduce(&reduced, axis)? {
            shifts[axis] = r.shift;
            reduced = r.set;
        }
    }
    if shifts.iter().all(|&s| s == 0) {
        if let Some(cert) = box_certificate(a)? {
            return Ok(CertifiedDistance::Exact {
                distance: fb,
                certificate: cert,
            });
        }
        if let Some(cert) = divisor_certificate(a)? {
            return Ok(CertifiedDistance::Exact {
                distance: fb,
                certificate: cert,
            });
        }
        return Ok(CertifiedDistance::LowerBound { bound: fb });
    }

    let punctured: Vec<bool> = shifts.iter().map(|&s| s > 0).collect();
    let (bound, argmins) = punctured_bound(&reduced, &punctured);
    debug_assert!(bound >= fb);
    for beta in argmins {
        let zero = vec![0u32; a.m()];
        if !box_inside(&reduced, &zero, beta.coords()) {
            continue;
        }
        let factors = beta
            .coords()
            .iter()
            .enumerate()
            .filter(|&(axis, &k)| k > 0 || shifts[axis] > 0)
            .map(|(axis, &k)| {
                // punctured axes take their roots among the nonzero elements
                let first = punctured[axis] as u32;
                AxisFactor {
                    axis,
                    shift: shifts[axis],
                    roots_or_binomials: FactorShape::Roots((first..first + k).map(Elem).collect()),
                }
            })
            .collect();
        let alpha: Vec<u32> = beta.coords().iter().zip(&shifts).map(|(b, s)| b + s).collect();
        let cert = DistanceCertificate {
            kind: CertificateKind::Shifted,
            alpha,
            factors,
            claimed_weight: bound,
        };
        if let Some(cert) = verified(cert, a)? {
            return Ok(CertifiedDistance::Exact {
                distance: bound,
                certificate: cert,
            });
        }
    }
    if let Some(cert) = divisor_certificate(a)? {
        return Ok(CertifiedDistance::Exact {
            distance: fb,
            certificate: cert,
        });
    }
    Ok(CertifiedDistance::LowerBound { bound })
}

/// Punctured-grid footprint value of a single exponent; exposed for tests.
pub fn footprint_on_grid(q: u32, coords: &[u32], punctured: &[bool]) -> u128 {
    if punctured.iter().all(|p| !p) {
        return footprint_value(q, coords);
    }
    coords.iter().zip(punctured).fold(1u128, |acc, (&c, &p)| {
        let side = if p { q - 1 } else { q };
        acc.saturating_mul(side.saturating_sub(c) as u128)
    })
}
