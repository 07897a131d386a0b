//! Ground-truth oracle: generator matrices by monomial evaluation, row
//! spaces, explicit Schur squares and exhaustive minimum distance.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::certify::DistanceCertificate;
use crate::error::{Error, Result};
use crate::expsets::{ExpVec, MonomialSet};
use crate::gf::{point_count, Elem, Field, MAX_POINTS};

/// Default cap on the number of projective message classes enumerated.
pub const DEFAULT_CLASS_BUDGET: u64 = 10_000_000;

/// Cap on `rows * columns` for any dense matrix built here.
pub const MAX_MATRIX_ENTRIES: u128 = 1 << 26;

const CHUNK: u128 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    field: Arc<Field>,
    m: usize,
    n: usize,
    rows: Vec<Vec<Elem>>,
}

impl GeneratorMatrix {
    pub fn new(field: Arc<Field>, m: usize, n: usize, rows: Vec<Vec<Elem>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a matrix with {n} columns", r.len())));
        }
        Ok(GeneratorMatrix { field, m, n, rows })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        row_reduce(&self.field, &mut rows)
    }

    /// Reduced row echelon basis of the row space.
    pub fn basis(&self) -> GeneratorMatrix {
        let mut rows = self.rows.clone();
        row_reduce(&self.field, &mut rows);
        GeneratorMatrix {
            rows,
            ..self.clone()
        }
    }

    /// Plain-text dump: one row per line, space-separated element indices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|e| e.0.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

fn check_entries(rows: u128, cols: u128) -> Result<()> {
    let needed = rows.saturating_mul(cols);
    if needed > MAX_MATRIX_ENTRIES {
        return Err(Error::BudgetExceeded {
            what: "matrix entries",
            needed,
            limit: MAX_MATRIX_ENTRIES,
        });
    }
    Ok(())
}

/// Evaluation points of F_q^m in canonical order; axes flagged in `punctured`
/// skip the zero element.
pub fn evaluation_points(field: &Field, m: usize, punctured: &[bool]) -> Result<Vec<Vec<Elem>>> {
    let pts = field.enumerate_points(m)?;
    Ok(pts
        .into_iter()
        .filter(|p| p.iter().zip(punctured).all(|(x, &skip)| !(skip && x.is_zero())))
        .collect())
}

fn evaluate_rows(field: &Field, exps: &[ExpVec], points: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    exps.par_iter()
        .map(|e| {
            points
                .iter()
                .map(|p| {
                    p.iter()
                        .zip(e.coords())
                        .fold(Elem::ONE, |acc, (&x, &k)| field.mul(acc, field.pow(x, k as u64)))
                })
                .collect()
        })
        .collect()
}

/// One row `(X^a(P_1), ..., X^a(P_n))` per exponent of `A`, in `A`'s order.
pub fn generator_matrix(a: &MonomialSet) -> Result<GeneratorMatrix> {
    generator_matrix_in(Arc::new(Field::new(a.q())?), a)
}

pub fn generator_matrix_in(field: Arc<Field>, a: &MonomialSet) -> Result<GeneratorMatrix> {
    generator_matrix_on_grid(field, a, &vec![false; a.m()])
}

/// Generator matrix of `C_A` evaluated on the grid that omits `x_i = 0` for
/// each punctured axis.
pub fn generator_matrix_on_grid(field: Arc<Field>, a: &MonomialSet, punctured: &[bool]) -> Result<GeneratorMatrix> {
    if field.order() != a.q() {
        return Err(Error::MismatchedAmbient {
            q1: field.order(),
            m1: a.m(),
            q2: a.q(),
            m2: a.m(),
        });
    }
    let n = point_count(a.q(), a.m())?;
    check_entries(a.len() as u128, n as u128)?;
    let points = evaluation_points(&field, a.m(), punctured)?;
    let rows = evaluate_rows(&field, a.exps(), &points);
    Ok(GeneratorMatrix {
        field,
        m: a.m(),
        n: points.len(),
        rows,
    })
}

/// Gauss-Jordan elimination in place; keeps only the nonzero rows and returns the rank.
pub fn row_reduce(field: &Field, rows: &mut Vec<Vec<Elem>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = field.neg(row[col]);
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.add(*x, field.mul(factor, p));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rank
}

fn check_compatible(g1: &GeneratorMatrix, g2: &GeneratorMatrix) -> Result<()> {
    if g1.field != g2.field || g1.n != g2.n {
        return Err(Error::DimensionMismatch(format!(
            "F_{} length {} vs F_{} length {}",
            g1.field.order(),
            g1.n,
            g2.field.order(),
            g2.n
        )));
    }
    Ok(())
}

/// Whether two generator matrices span the same code.
pub fn row_space_equal(g1: &GeneratorMatrix, g2: &GeneratorMatrix) -> Result<bool> {
    check_compatible(g1, g2)?;
    let (r1, r2) = (g1.rank(), g2.rank());
    if r1 != r2 {
        return Ok(false);
    }
    let mut both: Vec<Vec<Elem>> = g1.rows.iter().chain(&g2.rows).cloned().collect();
    Ok(row_reduce(&g1.field, &mut both) == r1)
}

/// Basis of the span of all componentwise products of pairs of rows.
pub fn schur_square_matrix(g: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    let k = g.k() as u128;
    check_entries(k * (k + 1) / 2, g.n as u128)?;
    let f = &g.field;
    let mut rows = Vec::with_capacity((k * (k + 1) / 2) as usize);
    for i in 0..g.rows.len() {
        for j in i..g.rows.len() {
            rows.push(g.rows[i].iter().zip(&g.rows[j]).map(|(&a, &b)| f.mul(a, b)).collect());
        }
    }
    row_reduce(f, &mut rows);
    Ok(GeneratorMatrix { rows, ..g.clone() })
}

fn weight(c: &[Elem]) -> u128 {
    c.iter().filter(|x| !x.is_zero()).count() as u128
}

/// Exact minimum Hamming weight of the nonzero codewords, enumerating one
/// message per projective class (first nonzero coordinate equal to 1).
pub fn min_distance_exhaustive(g: &GeneratorMatrix, budget: u64) -> Result<u128> {
    let basis = g.basis();
    let k = basis.k();
    if k == 0 {
        return Err(Error::EmptySet);
    }
    let q = g.field.order() as u128;
    let classes = crate::bounds::projective_classes(g.field.order(), k);
    if classes > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "projective message classes",
            needed: classes,
            limit: budget as u128,
        });
    }
    // One task per contiguous range of tail indices under a fixed leading position.
    let mut tasks = Vec::new();
    for lead in 0..k {
        let tail_len = k - 1 - lead;
        let count = q.pow(tail_len as u32);
        let mut start = 0;
        while start < count {
            let end = (start + CHUNK).min(count);
            tasks.push((lead, start, end));
            start = end;
        }
    }
    let field = &g.field;
    let rows = &basis.rows;
    // deltas[v] = elem(v + 1) - elem(v), wrapping to 0 after q - 1
    let deltas: Vec<Elem> = (0..q as u32)
        .map(|v| {
            let next = if v as u128 + 1 == q { 0 } else { v + 1 };
            field.sub(Elem(next), Elem(v))
        })
        .collect();

    let best = tasks
        .par_iter()
        .map(|&(lead, start, end)| {
            let tail_rows = &rows[lead + 1..];
            let t = tail_rows.len();
            let mut digits = vec![0u32; t];
            let mut idx = start;
            for d in digits.iter_mut().rev() {
                *d = (idx % q) as u32;
                idx /= q;
            }
            let mut word = rows[lead].clone();
            for (d, row) in digits.iter().zip(tail_rows) {
                if *d != 0 {
                    for (x, &y) in word.iter_mut().zip(row) {
                        *x = field.add(*x, field.mul(Elem(*d), y));
                    }
                }
            }
            let mut best = weight(&word);
            for _ in start + 1..end {
                // odometer step on the least significant digit, carrying left
                let mut pos = t;
                loop {
                    pos -= 1;
                    let v = digits[pos];
                    let delta = deltas[v as usize];
                    let row = &tail_rows[pos];
                    if delta == Elem::ONE {
                        for (x, &y) in word.iter_mut().zip(row) {
                            *x = field.add(*x, y);
                        }
                    } else {
                        for (x, &y) in word.iter_mut().zip(row) {
                            *x = field.add(*x, field.mul(delta, y));
                        }
                    }
                    if v as u128 + 1 == q {
                        digits[pos] = 0;
                    } else {
                        digits[pos] = v + 1;
                        break;
                    }
                }
                best = best.min(weight(&word));
            }
            best
        })
        .min()
        .expect("at least one class");
    Ok(best)
}

/// Parity-check matrix: rows span the dual code.
pub fn parity_check_rows(g: &GeneratorMatrix) -> Vec<Vec<Elem>> {
    let basis = g.basis();
    let field = &g.field;
    let pivots: Vec<usize> = basis
        .rows
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("reduced rows are nonzero"))
        .collect();
    (0..g.n)
        .filter(|j| !pivots.contains(j))
        .map(|j| {
            let mut h = vec![Elem::ZERO; g.n];
            h[j] = Elem::ONE;
            for (row, &p) in basis.rows.iter().zip(&pivots) {
                h[p] = field.neg(row[j]);
            }
            h
        })
        .collect()
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn columns_dependent(field: &Field, cols: &[&[Elem]]) -> bool {
    let mut rows: Vec<Vec<Elem>> = cols.iter().map(|c| c.to_vec()).collect();
    row_reduce(field, &mut rows) < cols.len()
}

/// Exact minimum distance as the size of the smallest linearly dependent set
/// of parity-check columns, trying sizes `1, 2, ...`. `budget` caps the total
/// number of column subsets examined.
pub fn min_distance_dependent_columns(g: &GeneratorMatrix, budget: u64) -> Result<u128> {
    if g.rank() == 0 {
        return Err(Error::EmptySet);
    }
    let h = parity_check_rows(g);
    let n = g.n;
    if h.is_empty() {
        return Ok(1);
    }
    let columns: Vec<Vec<Elem>> = (0..n).map(|j| h.iter().map(|row| row[j]).collect()).collect();
    let field = &g.field;
    let mut spent = 0u128;
    for w in 1..=h.len() + 1 {
        spent = spent.saturating_add(binomial(n as u128, w as u128));
        if spent > budget as u128 {
            return Err(Error::BudgetExceeded {
                what: "parity-check column subsets",
                needed: spent,
                limit: budget as u128,
            });
        }
        let found = (0..n).into_par_iter().any(|first| {
            if n - first < w {
                return false;
            }
            let mut idx: Vec<usize> = (first..first + w).collect();
            loop {
                let cols: Vec<&[Elem]> = idx.iter().map(|&j| columns[j].as_slice()).collect();
                if columns_dependent(field, &cols) {
                    return true;
                }
                // next combination with idx[0] fixed
                let mut pos = w;
                loop {
                    if pos <= 1 {
                        return false;
                    }
                    pos -= 1;
                    if idx[pos] < n - (w - pos) {
                        idx[pos] += 1;
                        for t in pos + 1..w {
                            idx[t] = idx[t - 1] + 1;
                        }
                        break;
                    }
                }
            }
        });
        if found {
            return Ok(w as u128);
        }
    }
    unreachable!("any n - k + 1 columns of a parity-check matrix are dependent")
}

/// Exact minimum distance by whichever search fits the budget: message
/// enumeration for low dimension, dependent parity-check columns otherwise.
pub fn min_distance_exact(g: &GeneratorMatrix, budget: u64) -> Result<u128> {
    let k = g.rank();
    if crate::bounds::projective_classes(g.field.order(), k) <= budget as u128 {
        return min_distance_exhaustive(g, budget);
    }
    min_distance_dependent_columns(g, budget)
}

/// Hamming weight of the codeword of `C_A` given by a certificate's witness.
/// The witness is expanded to monomials, each of which must lie in `A`.
pub fn weight_of_witness(cert: &DistanceCertificate, a: &MonomialSet) -> Result<u128> {
    let field = Field::new(a.q())?;
    let terms = cert.expand(&field, a.m())?;
    if let Some((e, _)) = terms.iter().find(|(e, _)| !a.contains(e)) {
        return Err(Error::SupportOutsideA(e.0.clone()));
    }
    let n = (a.q() as u128).checked_pow(a.m() as u32).unwrap_or(u128::MAX);
    if n <= MAX_POINTS {
        let points = field.enumerate_points(a.m())?;
        let count = points
            .par_iter()
            .filter(|p| {
                let v = terms.iter().fold(Elem::ZERO, |acc, (e, c)| {
                    let mono = p
                        .iter()
                        .zip(e.coords())
                        .fold(*c, |m, (&x, &k)| field.mul(m, field.pow(x, k as u64)));
                    field.add(acc, mono)
                });
                !v.is_zero()
            })
            .count();
        Ok(count as u128)
    } else {
        // The witness is a product of univariate factors, so its weight is the
        // product of the per-axis nonzero counts.
        Ok(cert.factorized_weight(&field, a.m()))
    }
}

/// Codeword of `C_A` for a message given on `A`'s monomial basis.
pub fn encode(g: &GeneratorMatrix, message: &[Elem]) -> Result<Vec<Elem>> {
    if message.len() != g.k() {
        return Err(Error::DimensionMismatch(format!("message of length {} for k = {}", message.len(), g.k())));
    }
    let f = &g.field;
    let mut out = vec![Elem::ZERO; g.n];
    for (c, row) in message.iter().zip(&g.rows) {
        if c.is_zero() {
            continue;
        }
        for (x, &y) in out.iter_mut().zip(row) {
            *x = f.add(*x, f.mul(*c, y));
        }
    }
    Ok(out)
}
