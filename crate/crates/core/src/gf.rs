//! Exact arithmetic in F_q for prime powers q <= 2^16.
//!
//! Elements are named by an index in `0..q`. For a prime field the index is
//! the residue itself. For an extension F_{p^e} the index encodes the
//! coefficient vector of the element over F_p (coefficient of x^k is the k-th
//! base-p digit), reduced modulo a fixed monic irreducible polynomial. Index 0
//! is always the additive identity and index 1 the multiplicative identity.
//!
//! Multiplication in extension fields goes through exp/log tables keyed by the
//! primitive element of smallest index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// Upper bound on the number of points `q^m` any enumeration may touch.
pub const MAX_POINTS: u128 = 1 << 24;

/// An element of F_q under the canonical enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    /// Monic irreducible modulus, low degree first. `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    primitive: Elem,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidFieldOrder(q as u64));
        }
        let (p, e) = prime_power(q as u64).ok_or(Error::InvalidFieldOrder(q as u64))?;
        if e == 1 {
            let mut f = Field {
                p,
                e,
                q,
                modulus: vec![0, 1],
                exp: Vec::new(),
                log: Vec::new(),
                primitive: Elem::ONE,
            };
            f.primitive = f.search_primitive(|a, b| Elem(((a.0 as u64 * b.0 as u64) % p as u64) as u32));
            return Ok(f);
        }

        let modulus = smallest_irreducible(p, e);
        let mut f = Field {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            primitive: Elem::ONE,
        };
        let g = f.search_primitive(|a, b| f.poly_mul(a, b));
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut cur = Elem::ONE;
        for k in 0..q - 1 {
            exp.push(cur.0);
            log[cur.0 as usize] = k;
            cur = f.poly_mul(cur, g);
        }
        debug_assert_eq!(cur, Elem::ONE);
        f.primitive = g;
        f.exp = exp;
        f.log = log;
        Ok(f)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elem(&self, index: u32) -> Result<Elem> {
        if index < self.q {
            Ok(Elem(index))
        } else {
            Err(Error::MismatchedFields { element: index, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// The element `k * 1` is not meaningful for extension fields; this maps a
    /// prime-field residue into F_q via the canonical index.
    pub fn from_residue(&self, r: u64) -> Elem {
        Elem((r % self.p as u64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.e == 1 {
            return Elem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 {
            let d = x % self.p;
            out += ((self.p - d) % self.p) * place;
            place *= self.p;
            x /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if self.e == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::InversionOfZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    /// Checked entry point: validates both operands belong to this field.
    pub fn apply(&self, op: FieldOp, a: Elem, b: Elem) -> Result<Elem> {
        self.elem(a.0)?;
        self.elem(b.0)?;
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Inv => self.inv(a),
            FieldOp::Pow(n) => Ok(self.pow(a, n)),
        }
    }

    /// Smallest-index element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    /// Multiplicative order of a nonzero element, by direct power enumeration.
    pub fn multiplicative_order(&self, a: Elem) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::InversionOfZero);
        }
        let mut cur = a;
        let mut k = 1;
        while cur != Elem::ONE {
            cur = self.mul(cur, a);
            k += 1;
        }
        Ok(k)
    }

    fn search_primitive(&self, mul: impl Fn(Elem, Elem) -> Elem) -> Elem {
        let n = (self.q - 1) as u64;
        let factors = distinct_prime_factors(n);
        let pow = |a: Elem, mut k: u64| {
            let (mut base, mut acc) = (a, Elem::ONE);
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                k >>= 1;
            }
            acc
        };
        (1..self.q)
            .map(Elem)
            .find(|&g| factors.iter().all(|&r| pow(g, n / r) != Elem::ONE))
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn digits(&self, a: Elem) -> Vec<u32> {
        let mut x = a.0;
        (0..self.e)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn from_digits(&self, ds: &[u32]) -> Elem {
        Elem(ds.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    fn poly_mul(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = poly_mul_mod_p(&x, &y, self.p);
        poly_rem_monic(&mut prod, &self.modulus, self.p);
        prod.resize(self.e as usize, 0);
        self.from_digits(&prod)
    }

    /// All `q^m` points of F_q^m in lexicographic order of element indices
    /// (first coordinate most significant).
    pub fn enumerate_points(&self, m: usize) -> Result<Vec<Vec<Elem>>> {
        let n = point_count(self.q, m)?;
        let mut out = Vec::with_capacity(n);
        let mut cur = vec![Elem::ZERO; m];
        for _ in 0..n {
            out.push(cur.clone());
            for c in cur.iter_mut().rev() {
                c.0 += 1;
                if c.0 < self.q {
                    break;
                }
                c.0 = 0;
            }
        }
        Ok(out)
    }
}

/// `q^m`, checked against [`MAX_POINTS`].
pub fn point_count(q: u32, m: usize) -> Result<usize> {
    if m == 0 {
        return Err(Error::RangeError("dimension m must be at least 1".into()));
    }
    let n = (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if n > MAX_POINTS {
        return Err(Error::BudgetExceeded {
            what: "point enumeration",
            needed: n,
            limit: MAX_POINTS,
        });
    }
    Ok(n as usize)
}

fn poly_mul_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x as u64 * y as u64;
        }
    }
    out.into_iter().map(|c| (c % p as u64) as u32).collect()
}

/// In-place remainder of `f` modulo the monic polynomial `g`.
fn poly_rem_monic(f: &mut Vec<u32>, g: &[u32], p: u32) {
    let dg = g.len() - 1;
    while f.len() > dg {
        let lead = f.pop().unwrap();
        if lead != 0 {
            let shift = f.len() - dg;
            for (k, &gk) in g[..dg].iter().enumerate() {
                let sub = (lead as u64 * gk as u64 % p as u64) as u32;
                f[shift + k] = (f[shift + k] + p - sub) % p;
            }
        }
    }
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let e = f.len() - 1;
    for k in 1..=e / 2 {
        // every monic polynomial of degree k
        for code in 0..(p as u64).pow(k as u32) {
            let mut g: Vec<u32> = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            let mut r = f.to_vec();
            poly_rem_monic(&mut r, &g, p);
            if r.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `e` over
/// F_p, comparing coefficients from `x^{e-1}` down to the constant term.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let total = (p as u64).pow(e);
    for code in 0..total {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut c = code;
        for _ in 0..e {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
