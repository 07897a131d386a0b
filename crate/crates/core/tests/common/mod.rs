//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's family constructors or bounds.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use schur_codes::{ExpVec, MonomialSet};

pub type Point = Vec<u32>;

/// `0 -> 0`, otherwise the representative of `i mod (q-1)` in `[1, q-1]`.
pub fn reduce(i: u32, q: u32) -> u32 {
    if i == 0 {
        0
    } else {
        (i - 1) % (q - 1) + 1
    }
}

/// `min Π (q - a_i)` over the set.
pub fn footprint(q: u32, pts: &BTreeSet<Point>) -> u128 {
    pts.iter()
        .map(|p| p.iter().map(|&c| (q - c) as u128).product::<u128>())
        .min()
        .unwrap_or(0)
}

pub fn reduced_square(q: u32, pts: &BTreeSet<Point>) -> BTreeSet<Point> {
    let mut out = BTreeSet::new();
    for a in pts {
        for b in pts {
            out.insert(a.iter().zip(b).map(|(&x, &y)| reduce(x + y, q)).collect());
        }
    }
    out
}

pub fn to_set(q: u32, m: usize, pts: &BTreeSet<Point>) -> MonomialSet {
    MonomialSet::new(q, m, pts.iter().map(|p| ExpVec(p.clone()))).unwrap()
}

pub fn to_points(a: &MonomialSet) -> BTreeSet<Point> {
    a.iter().map(|e| e.0.clone()).collect()
}

fn box_points(hi: u32, m: usize) -> Vec<Point> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=hi).map(move |c| {
                    let mut v = p.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn is_lower(pts: &BTreeSet<Point>) -> bool {
    pts.iter().all(|p| {
        (0..p.len()).all(|i| {
            p[i] == 0 || {
                let mut below = p.clone();
                below[i] -= 1;
                pts.contains(&below)
            }
        })
    })
}

/// Every nonempty downward-closed subset of `[0, hi]^m`, by filtering all subsets.
pub fn all_lower_sets(hi: u32, m: usize) -> Vec<BTreeSet<Point>> {
    let cells = box_points(hi, m);
    assert!(cells.len() <= 20, "subset enumeration is exponential");
    (1u32..1 << cells.len())
        .map(|mask| {
            cells
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| p.clone())
                .collect::<BTreeSet<Point>>()
        })
        .filter(is_lower)
        .collect()
}

/// Downward closure of a few random points of `[0, q-1]^m`, grown until it
/// would exceed `max_len`.
pub fn random_lower_set<R: Rng>(rng: &mut R, q: u32, m: usize, max_len: usize) -> BTreeSet<Point> {
    let mut pts: BTreeSet<Point> = BTreeSet::new();
    pts.insert(vec![0; m]);
    for _ in 0..4 * max_len {
        let p: Point = (0..m).map(|_| rng.gen_range(0..q)).collect();
        let closure: BTreeSet<Point> = box_points(q - 1, m)
            .into_iter()
            .filter(|b| b.iter().zip(&p).all(|(x, y)| x <= y))
            .collect();
        let merged: BTreeSet<Point> = pts.union(&closure).cloned().collect();
        if merged.len() <= max_len {
            pts = merged;
        }
    }
    pts
}

/// Random nonempty subset of `[0, q-1]^m` with at most `max_len` points.
pub fn random_reduced_set<R: Rng>(rng: &mut R, q: u32, m: usize, max_len: usize) -> BTreeSet<Point> {
    let len = rng.gen_range(1..=max_len);
    let mut pts = BTreeSet::new();
    while pts.len() < len {
        pts.insert((0..m).map(|_| rng.gen_range(0..q)).collect());
    }
    pts
}

/// Every distinct set `{(i, j) ∈ [0,q-1]^2 : i + t j <= λ}` over all rational
/// slopes `t > 0` and all thresholds `λ`. The order of points along
/// `i + t j` only changes at slopes `a/b` with `1 <= a, b <= q-1`, so the
/// slopes tried are those, the midpoints between consecutive ones, and one
/// beyond each end; every prefix of each order is taken.
pub fn all_wrm_sets(q: u32) -> BTreeSet<BTreeSet<Point>> {
    // slopes as (num, den)
    let mut critical: Vec<(u64, u64)> = Vec::new();
    for a in 1..q as u64 {
        for b in 1..q as u64 {
            critical.push((a, b));
        }
    }
    critical.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
    critical.dedup_by(|x, y| x.0 * y.1 == y.0 * x.1);
    let mut slopes = critical.clone();
    for w in critical.windows(2) {
        let ((a1, b1), (a2, b2)) = (w[0], w[1]);
        slopes.push((a1 * b2 + a2 * b1, 2 * b1 * b2));
    }
    let (lo, hi) = (critical[0], critical[critical.len() - 1]);
    slopes.push((lo.0, 2 * lo.1));
    slopes.push((2 * hi.0, hi.1));

    let cells = box_points(q - 1, 2);
    let mut out = BTreeSet::new();
    for (num, den) in slopes {
        // weighted degree scaled by den: den * i + num * j
        let mut keyed: Vec<(u64, Point)> = cells
            .iter()
            .map(|p| (den * p[0] as u64 + num * p[1] as u64, p.clone()))
            .collect();
        keyed.sort();
        let mut prefix = BTreeSet::new();
        for (idx, (key, p)) in keyed.iter().enumerate() {
            prefix.insert(p.clone());
            if keyed.get(idx + 1).map_or(true, |(next, _)| next != key) {
                out.insert(prefix.clone());
            }
        }
    }
    out
}

/// All roots of `x^l - α^j` in F_q by evaluation.
pub fn brute_root_count(field: &schur_codes::Field, l: u64, j: u64) -> u64 {
    let target = field.pow(field.primitive_element(), j);
    field.elements().filter(|&x| field.pow(x, l) == target).count() as u64
}

pub fn prime_powers_up_to(n: u32) -> Vec<u32> {
    (2..=n).filter(|&q| schur_codes::gf::prime_power(q as u64).is_some()).collect()
}
