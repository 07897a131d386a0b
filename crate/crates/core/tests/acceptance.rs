//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use schur_codes::bounds::{best_wrm_square_design, footprint_bound, halfhyp_dimension_formula, rm_min_distance};
use schur_codes::certify::{box_certificate, root_count_binomial, CertificateKind};
use schur_codes::evalcode::{
    generator_matrix, min_distance_exact, min_distance_exhaustive, row_space_equal, schur_square_matrix,
    weight_of_witness, DEFAULT_CLASS_BUDGET,
};
use schur_codes::families::{
    algorithm1_verify, check_square_designed, half_hyperbolic_set, hyperbolic_set, reed_muller_set,
    region_lattice_points, weighted_rm_set, wrm_even_optimal_set, ConvexRegion, EvenVariant, RationalHalfspace,
};
use schur_codes::{square_support, Field, MonomialSet};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `[n, k, d]` with `d` from the footprint bound, confirmed by a verified box certificate.
fn nkd_by_box(a: &MonomialSet) -> (u128, usize, u128) {
    let fb = footprint_bound(a).unwrap().value;
    let cert = box_certificate(a).unwrap().expect("box certificate");
    assert_eq!(cert.kind, CertificateKind::Box);
    assert_eq!(cert.claimed_weight, fb);
    assert_eq!(weight_of_witness(&cert, a).unwrap(), fb);
    ((a.q() as u128).pow(a.m() as u32), a.len(), fb)
}

fn criterion_1() -> String {
    let rows = [
        ("RM_11(6,2)", reed_muller_set(11, 2, 6).unwrap(), (121, 28, 55)),
        ("Hyp_11(6,2)", hyperbolic_set(11, 2, 6).unwrap(), (121, 111, 6)),
        ("Hyp_11(55,2)", hyperbolic_set(11, 2, 55).unwrap(), (121, 30, 55)),
        (
            "WRM_11(15,2,(5,3))",
            weighted_rm_set(11, 2, &int(15), &[int(5), int(3)]).unwrap(),
            (121, 13, 66),
        ),
    ];
    for (name, set, want) in &rows {
        assert_eq!(&nkd_by_box(set), want, "{name}");
    }
    "four reference codes match exactly".into()
}

fn criterion_2() -> String {
    let hh12 = half_hyperbolic_set(11, 2, 12).unwrap();
    assert_eq!(nkd_by_box(&hh12), (121, 24, 56));
    let hh6 = half_hyperbolic_set(11, 2, 6).unwrap();
    assert_eq!(nkd_by_box(&hh6), (121, 31, 49));
    assert_eq!(halfhyp_dimension_formula(11, 6).unwrap(), 31);
    "HalfHyp_11(12,2) = [121,24,56]; HalfHyp_11(6,2) = [121,31,49]".into()
}

fn criterion_3() -> String {
    let target = hyperbolic_set(11, 2, 6).unwrap();
    let designs = [
        ("HalfHyp_11(6,2)", half_hyperbolic_set(11, 2, 6).unwrap()),
        ("B1 q=11 d=6", wrm_even_optimal_set(11, 6, EvenVariant::B1).unwrap()),
    ];
    let mut fbs = Vec::new();
    for (name, a) in &designs {
        assert!(check_square_designed(a, &target).unwrap(), "{name}");
        let fb = footprint_bound(&square_support(a).unwrap()).unwrap().value;
        assert!(fb >= 6, "{name}: {fb}");
        fbs.push(fb);
    }
    format!("both squares inside Hyp_11(6,2); square FBs {fbs:?}")
}

fn criterion_4() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut agreed = 0;
    for case in 0..200 {
        let q = [3u32, 4, 5, 7][case % 4];
        let pts = random_reduced_set(&mut rng, q, 2, 8);
        let a = to_set(q, 2, &pts);
        let g = generator_matrix(&a).unwrap();
        let explicit = schur_square_matrix(&g).unwrap();
        let via_support = generator_matrix(&to_set(q, 2, &reduced_square(q, &pts))).unwrap();
        assert!(row_space_equal(&explicit, &via_support).unwrap(), "q={q} A={pts:?}");
        agreed += 1;
    }
    format!("{agreed}/200 random sets")
}

fn check_lower_set(q: u32, pts: &std::collections::BTreeSet<Point>) {
    let a = to_set(q, 2, pts);
    let d = min_distance_exhaustive(&generator_matrix(&a).unwrap(), DEFAULT_CLASS_BUDGET).unwrap();
    assert_eq!(d, footprint(q, pts), "q={q} A={pts:?}");
    let cert = box_certificate(&a).unwrap().expect("lower sets have box certificates");
    assert_eq!(weight_of_witness(&cert, &a).unwrap(), d, "q={q} A={pts:?}");
}

fn criterion_5() -> String {
    let all = all_lower_sets(2, 2);
    for pts in &all {
        check_lower_set(3, pts);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..500 {
        let (q, cap) = if case % 2 == 0 { (4, 10) } else { (5, 8) };
        check_lower_set(q, &random_lower_set(&mut rng, q, 2, cap));
    }
    format!("{} lower sets over q=3 and 500 random lower sets over q=4,5", all.len())
}

fn criterion_6() -> String {
    let mut checked = 0;
    for q in [3u32, 4, 5] {
        for s in 0..=2 * (q as u64 - 1) {
            let g = generator_matrix(&reed_muller_set(q, 2, s).unwrap()).unwrap();
            let d = min_distance_exact(&g, DEFAULT_CLASS_BUDGET).unwrap();
            assert_eq!(rm_min_distance(q, 2, s).unwrap(), d, "q={q} s={s}");
            checked += 1;
        }
    }
    format!("{checked} (q, s) pairs")
}

fn criterion_7() -> String {
    let mut summary = Vec::new();
    for q in [5u32, 7] {
        let sweep = all_wrm_sets(q);
        let scored: Vec<(usize, u128)> = sweep
            .iter()
            .map(|s| (s.len(), footprint(q, &reduced_square(q, s))))
            .collect();
        for d in 1..q as u64 {
            let best = scored
                .iter()
                .filter(|(_, fb)| *fb >= d as u128)
                .map(|(k, _)| *k)
                .max()
                .unwrap();
            let design = best_wrm_square_design(q, d).unwrap();
            let pts = to_points(&design.set);
            assert!(sweep.contains(&pts), "q={q} d={d}: design is not a weighted Reed-Muller set");
            assert!(footprint(q, &reduced_square(q, &pts)) >= d as u128);
            assert_eq!(design.set.len(), best, "q={q} d={d}");
        }
        summary.push(format!("q={q}: {} sets", sweep.len()));
    }
    summary.join(", ")
}

fn criterion_8() -> String {
    let mut checked = 0;
    for q in [7u32, 11, 13, 17, 19, 23] {
        let (q2, q_sq) = (2 * q as u64, 2 * (q as u64).pow(2));
        for d in (1..q as u64).filter(|&d| (q2 - d).pow(2) > q_sq) {
            let k_wrm = best_wrm_square_design(q, d).unwrap().set.len();
            let k_hh = half_hyperbolic_set(q, 2, d as u128).unwrap().len();
            assert!(k_wrm > k_hh, "q={q} d={d}: {k_wrm} <= {k_hh}");
            checked += 1;
        }
    }
    format!("{checked} (q, d) pairs below the threshold")
}

fn criterion_9() -> String {
    let mut checked = 0;
    for q in prime_powers_up_to(25) {
        let f = Field::new(q).unwrap();
        for l in 1..q as u64 {
            for j in 0..=q as u64 - 2 {
                assert_eq!(root_count_binomial(l, j, &f).unwrap(), brute_root_count(&f, l, j), "q={q} l={l} j={j}");
                checked += 1;
            }
        }
    }
    format!("{checked} (q, l, j) triples")
}

fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(0..=max_num)), BigInt::from(rng.gen_range(1..=max_den)))
}

fn criterion_10() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut verified = 0;
    for case in 0..100 {
        let q = [5u32, 7, 11][case % 3];
        let qi = q as i64;
        let weights: Vec<BigRational> = (0..2)
            .map(|_| random_rational(&mut rng, 4, 3) + BigRational::new(1.into(), 4.into()))
            .collect();
        let bound = random_rational(&mut rng, 2 * qi, 2);
        let region = ConvexRegion {
            halfspaces: vec![RationalHalfspace::new(weights, bound).unwrap()],
            bbox: None,
            product: None,
        };
        let d = rng.gen_range(1..=(q as u128) * (q as u128) / 2);
        let b = hyperbolic_set(q, 2, d).unwrap();
        if algorithm1_verify(&region, &b).unwrap() {
            verified += 1;
            let a = region_lattice_points(&region, q, 2).unwrap();
            assert!(check_square_designed(&a, &b).unwrap(), "q={q} d={d} region={}", region.to_json());
        }
    }
    assert!(verified > 0, "no region was verified");
    format!("100 regions, {verified} verified, all square-designed")
}

fn main() {
    let criteria: [(&str, fn() -> String); 10] = [
        ("reference parameter table", criterion_1),
        ("half-hyperbolic instances", criterion_2),
        ("square-design verification", criterion_3),
        ("Schur square equals square support code", criterion_4),
        ("footprint bound sharp on lower sets", criterion_5),
        ("Reed-Muller distance formula", criterion_6),
        ("weighted Reed-Muller optimality", criterion_7),
        ("threshold comparison", criterion_8),
        ("binomial root counting", criterion_9),
        ("half-integer verifier soundness", criterion_10),
    ];
    // keep assertion messages but not the default hook's backtrace noise
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(payload) => {
                failures += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:>2} FAIL  {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
