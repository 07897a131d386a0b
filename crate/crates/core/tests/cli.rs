mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use schur_codes::families::check_square_designed;
use schur_codes::MonomialSet;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_schur-codes"));
    cmd.env_remove(schur_codes::cli::BUDGET_ENV);
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

#[test]
fn table_matches_golden() {
    let o = run(&["table"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("table.csv"));
}

#[test]
fn compare_matches_golden() {
    for d in ["1", "6", "12"] {
        let o = run(&["compare", "--q", "11", "--d", d]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), golden(&format!("compare_q11_d{d}.csv")), "d = {d}");
    }
}

#[test]
fn construct_matches_golden() {
    for (args, name, len) in [
        (["--family", "halfhyp", "--q", "11", "--d", "6"], "halfhyp_q11_d6.json", 31),
        (["--family", "hyp", "--q", "11", "--d", "6"], "hyp_q11_d6.json", 111),
        (["--family", "wrm-even-b1", "--q", "11", "--d", "6"], "wrm_even_b1_q11_d6.json", 39),
    ] {
        let o = bin().arg("construct").args(args).output().unwrap();
        assert_eq!(stdout(&o), golden(name));
        assert_eq!(MonomialSet::from_json(&stdout(&o)).unwrap().len(), len);
    }
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let cases: [&[&str]; 4] = [
        &["table", "--format", "json"],
        &["compare", "--q", "7", "--d", "3", "--effort", "exhaustive"],
        &["params", "--family", "hyp", "--q", "5", "--d", "4", "--effort", "exhaustive"],
        &["certify", "--family", "wrm", "--q", "7", "--s", "4", "--weights", "1,3/2"],
    ];
    for args in cases {
        let outputs: Vec<Vec<u8>> = ["1", "4", "1"]
            .iter()
            .map(|threads| bin().args(args).env("RAYON_NUM_THREADS", threads).output().unwrap().stdout)
            .collect();
        assert!(!outputs[0].is_empty());
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn verify_examples() {
    let o = run(&[
        "verify",
        "--a",
        fixture("halfhyp_q11_d6.json").to_str().unwrap(),
        "--b",
        fixture("hyp_q11_d6.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"passed\":true"));

    let o = run(&["verify", "--a", fixture("wrm_even_b1_q11_d6.json").to_str().unwrap(), "--hyp", "6"]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&["verify", "--a", fixture("hyp_q11_d6.json").to_str().unwrap(), "--hyp", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"violation\":{"));

    let dir = tempdir();
    let full = dir.join("full.json");
    let pts = (0..5u32).flat_map(|i| (0..5u32).map(move |j| vec![i, j])).collect();
    std::fs::write(&full, to_set(5, 2, &pts).to_json()).unwrap();
    let f = full.to_str().unwrap();
    assert_eq!(run(&["verify", "--a", f, "--b", f]).status.code(), Some(0));
}

#[test]
fn verify_with_a_region() {
    let dir = tempdir();
    let region = dir.join("region.json");
    std::fs::write(&region, r#"{"halfspaces":[],"box":{"lo":"0","hi":"5"},"product":{"d":6}}"#).unwrap();
    let o = run(&["verify", "--region", region.to_str().unwrap(), "--q", "11", "--hyp", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\"a_size\":31"));
    assert!(text.contains("\"algorithm1_verified\":true"));
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("schur-codes-cli-{}-{:?}", std::process::id(), std::thread::current().id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_exit_status_matches_library() {
    let dir = tempdir();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut passed, mut failed) = (0, 0);
    for case in 0..100 {
        let q = [3u32, 4, 5, 7][case % 4];
        let a = random_reduced_set(&mut rng, q, 2, 4);
        let b = if rng.gen_bool(0.5) {
            let mut b = reduced_square(q, &a);
            b.extend(random_reduced_set(&mut rng, q, 2, 3));
            if rng.gen_bool(0.3) {
                let first = b.iter().next().cloned().unwrap();
                b.remove(&first);
                b.insert(vec![q - 1, q - 1]);
            }
            b
        } else {
            random_reduced_set(&mut rng, q, 2, (q * q) as usize)
        };
        let (sa, sb) = (to_set(q, 2, &a), to_set(q, 2, &b));
        let (pa, pb) = (dir.join(format!("a{case}.json")), dir.join(format!("b{case}.json")));
        std::fs::write(&pa, sa.to_json()).unwrap();
        std::fs::write(&pb, sb.to_json()).unwrap();
        let expected = check_square_designed(&sa, &sb).unwrap();
        let o = run(&["verify", "--a", pa.to_str().unwrap(), "--b", pb.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(if expected { 0 } else { 1 }), "case {case}");
        if expected {
            passed += 1;
        } else {
            failed += 1;
        }
    }
    assert!(passed > 10 && failed > 10, "{passed} passed, {failed} failed");
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempdir();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"q":6,"m":2,"exponents":[[0,0]]}"#).unwrap();
    let garbage = dir.join("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    let mismatch = dir.join("mismatch.json");
    std::fs::write(&mismatch, r#"{"q":5,"m":2,"exponents":[[0,0]]}"#).unwrap();
    let good = fixture("hyp_q11_d6.json");
    let g = good.to_str().unwrap();
    for args in [
        vec!["verify", "--a", bad.to_str().unwrap(), "--hyp", "3"],
        vec!["verify", "--a", garbage.to_str().unwrap(), "--hyp", "3"],
        vec!["verify", "--a", g, "--b", mismatch.to_str().unwrap()],
        vec!["verify", "--a", "/nonexistent.json", "--hyp", "3"],
        vec!["verify", "--a", g],
        vec!["construct", "--family", "file"],
        vec!["compare", "--q", "11", "--d", "0"],
        vec!["compare", "--q", "11", "--d", "6.0"],
        vec!["construct", "--family", "halfhyp", "--q", "11", "--d", "121"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn budget_comes_from_the_environment() {
    let args = ["params", "--family", "rm", "--q", "5", "--s", "3", "--effort", "exhaustive", "--format", "csv"];
    let exhaustive = stdout(&run(&args));
    assert!(exhaustive.contains(",exhaustive,"), "{exhaustive}");
    let limited = stdout(&bin().args(args).env(schur_codes::cli::BUDGET_ENV, "10").output().unwrap());
    assert!(limited.contains(",certificate,"), "{limited}");
    let flag = stdout(&bin().args(args).args(["--budget", "10"]).output().unwrap());
    assert_eq!(flag, limited);
    let o = bin().args(args).env(schur_codes::cli::BUDGET_ENV, "1e3").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn file_family_round_trips() {
    let o = run(&["construct", "--family", "file", "--file", fixture("halfhyp_q11_d6.json").to_str().unwrap()]);
    assert_eq!(stdout(&o), golden("halfhyp_q11_d6.json"));
    let o = run(&["square", "--family", "rm", "--q", "5", "--s", "1"]);
    let sq = MonomialSet::from_json(&stdout(&o)).unwrap();
    assert_eq!(sq.len(), 6);
}
