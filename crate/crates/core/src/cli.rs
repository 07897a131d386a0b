//! Command-line front end. Every subcommand writes to the given sinks and
//! returns a process exit code: 0 on success, 1 when `verify` finds a
//! violation, 2 on invalid input.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::bounds::{
    best_wrm_square_design, footprint_bound, params_report, rm_min_distance, DistanceSource, Effort, ParamsReport,
    WrmDesignKind, DEFAULT_BUDGET,
};
use crate::certify::certified_min_distance;
use crate::error::{Error, Result};
use crate::expsets::{square_support, MonomialSet};
use crate::families::{
    algorithm1, algorithm1_verify, half_hyperbolic_set, hyperbolic_set, reed_muller_set, square_violation,
    weighted_rm_set, wrm_even_optimal_set, wrm_even_witness, ConvexRegion, EvenVariant, SquareViolation,
};

/// Environment variable overriding the exhaustive-search budget.
pub const BUDGET_ENV: &str = "SCHUR_CODES_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "schur-codes", version, about = "Monomial evaluation codes with designed Schur-square distance")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the exponent set of a family as JSON.
    Construct(ConstructArgs),
    /// Length, dimension, footprint bound and distance of a code and its square.
    Params(ParamsArgs),
    /// Print the reduced square support (A+A)_q.
    Square(ConstructArgs),
    /// Check (A+A)_q ⊆ B; exit 1 with the first violating pair otherwise.
    Verify(VerifyArgs),
    /// Exact minimum distance with an explicit certificate.
    Certify(ConstructArgs),
    /// Half-hyperbolic design against the best weighted Reed-Muller design.
    Compare(CompareArgs),
    /// Parameter table of the reference instances.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Rm,
    Wrm,
    Hyp,
    Halfhyp,
    WrmEvenB1,
    WrmEvenB2,
    File,
}

impl FamilyKind {
    fn label(self) -> &'static str {
        match self {
            FamilyKind::Rm => "rm",
            FamilyKind::Wrm => "wrm",
            FamilyKind::Hyp => "hyp",
            FamilyKind::Halfhyp => "halfhyp",
            FamilyKind::WrmEvenB1 => "wrm-even-b1",
            FamilyKind::WrmEvenB2 => "wrm-even-b2",
            FamilyKind::File => "file",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EffortArg {
    FbOnly,
    Certify,
    Exhaustive,
}

impl From<EffortArg> for Effort {
    fn from(e: EffortArg) -> Self {
        match e {
            EffortArg::FbOnly => Effort::FbOnly,
            EffortArg::Certify => Effort::Certify,
            EffortArg::Exhaustive => Effort::Exhaustive,
        }
    }
}

/// Selects one exponent set.
#[derive(Args, Debug, Clone)]
pub struct FamilySelector {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Designed distance (hyp, halfhyp, wrm-even-*).
    #[arg(long)]
    pub d: Option<u128>,
    /// Degree bound: an integer, or "p/q" for wrm.
    #[arg(long)]
    pub s: Option<String>,
    /// Comma-separated positive weights for wrm, integers or "p/q".
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<String>>,
    /// JSON set document for `--family file`.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub family: FamilySelector,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub family: FamilySelector,
    #[arg(long, value_enum, default_value_t = EffortArg::Certify)]
    pub effort: EffortArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Maximum number of projective classes for exhaustive search.
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Set A as a JSON document.
    #[arg(long, required_unless_present = "region", conflicts_with = "region")]
    pub a: Option<PathBuf>,
    /// Convex region whose lattice points form A; the half-integer verifier also runs.
    #[arg(long)]
    pub region: Option<PathBuf>,
    /// Target set B as a JSON document.
    #[arg(long, required_unless_present = "hyp", conflicts_with = "hyp")]
    pub b: Option<PathBuf>,
    /// Use B = Hyp_q(d, m) with the ambient of A.
    #[arg(long)]
    pub hyp: Option<u128>,
    /// Field order, required with --region.
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub d: u64,
    #[arg(long, value_enum, default_value_t = EffortArg::Certify)]
    pub effort: EffortArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Parses an integer or `p/q` rational; decimals are rejected.
pub fn parse_exact_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let valid = !t.is_empty()
        && t.split('/').count() <= 2
        && t.split('/').all(|part| {
            let digits = part.strip_prefix('-').unwrap_or(part);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        });
    if !valid {
        return Err(Error::Parse(format!("{s:?} is not an integer or p/q rational")));
    }
    BigRational::from_str(t).map_err(|_| Error::Parse(format!("{s:?} is not an integer or p/q rational")))
}

fn require<T>(value: Option<T>, flag: &str, family: FamilyKind) -> Result<T> {
    value.ok_or_else(|| Error::RangeError(format!("--{flag} is required for --family {}", family.label())))
}

fn read_set(path: &PathBuf) -> Result<MonomialSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    MonomialSet::from_json(&text)
}

fn small_d(d: u128) -> Result<u64> {
    u64::try_from(d).map_err(|_| Error::RangeError(format!("d = {d} is too large")))
}

/// A constructed set together with the row metadata used in reports.
#[derive(Clone, Debug)]
pub struct Selected {
    pub label: &'static str,
    pub d_design: Option<u128>,
    pub set: MonomialSet,
    rm_degree: Option<u64>,
}

pub fn select(sel: &FamilySelector) -> Result<Selected> {
    let fam = sel.family;
    let mut rm_degree = None;
    let (set, d_design) = match fam {
        FamilyKind::File => {
            let path = require(sel.file.as_ref(), "file", fam)?;
            (read_set(path)?, None)
        }
        _ => {
            let q = require(sel.q, "q", fam)?;
            match fam {
                FamilyKind::Rm => {
                    let s = parse_exact_rational(require(sel.s.as_deref(), "s", fam)?)?;
                    if !s.is_integer() || s.is_negative() {
                        return Err(Error::RangeError(format!("--s = {s} must be a nonnegative integer for rm")));
                    }
                    let s: u64 = s
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::RangeError(format!("--s = {s} is too large")))?;
                    let set = reed_muller_set(q, sel.m, s)?;
                    rm_degree = Some(s);
                    (set, None)
                }
                FamilyKind::Wrm => {
                    let s = parse_exact_rational(require(sel.s.as_deref(), "s", fam)?)?;
                    let weights = match &sel.weights {
                        Some(w) => w.iter().map(|x| parse_exact_rational(x)).collect::<Result<Vec<_>>>()?,
                        None => vec![BigRational::one(); sel.m],
                    };
                    if weights.len() != sel.m {
                        return Err(Error::DimensionMismatch(format!(
                            "{} weights given for m = {}",
                            weights.len(),
                            sel.m
                        )));
                    }
                    (weighted_rm_set(q, sel.m, &s, &weights)?, None)
                }
                FamilyKind::Hyp => {
                    let d = require(sel.d, "d", fam)?;
                    (hyperbolic_set(q, sel.m, d)?, Some(d))
                }
                FamilyKind::Halfhyp => {
                    let d = require(sel.d, "d", fam)?;
                    (half_hyperbolic_set(q, sel.m, d)?, Some(d))
                }
                FamilyKind::WrmEvenB1 | FamilyKind::WrmEvenB2 => {
                    if sel.m != 2 {
                        return Err(Error::RangeError(format!("--family {} requires m = 2", fam.label())));
                    }
                    let d = require(sel.d, "d", fam)?;
                    let variant = if fam == FamilyKind::WrmEvenB1 {
                        EvenVariant::B1
                    } else {
                        EvenVariant::B2
                    };
                    (wrm_even_optimal_set(q, small_d(d)?, variant)?, Some(d))
                }
                FamilyKind::File => unreachable!(),
            }
        }
    };
    Ok(Selected {
        label: fam.label(),
        d_design,
        set,
        rm_degree,
    })
}

/// Report for a selection; Reed-Muller sets take the closed-form distance
/// when no certificate or search was requested.
pub fn selected_report(sel: &Selected, effort: Effort, budget: u64) -> Result<ParamsReport> {
    let mut report = params_report(&sel.set, effort, budget)?;
    if let (Some(s), Effort::FbOnly) = (sel.rm_degree, effort) {
        report.d_exact = Some(rm_min_distance(sel.set.q(), sel.set.m(), s)?);
        report.d_source = DistanceSource::Formula;
        if let Some(sq) = report.square.as_mut() {
            if 2 * s <= sel.set.m() as u64 * (sel.set.q() as u64 - 1) {
                sq.d_exact = Some(rm_min_distance(sel.set.q(), sel.set.m(), 2 * s)?);
                sq.d_source = DistanceSource::Formula;
            }
        }
    }
    Ok(report)
}

pub const CSV_HEADER: &str = "family,q,m,d_design,n,k,fb,d_exact,d_source,square_fb";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One CSV row in the fixed column order of [`CSV_HEADER`].
pub fn csv_row(label: &str, q: u32, m: usize, d_design: Option<u128>, r: &ParamsReport) -> String {
    format!(
        "{label},{q},{m},{},{},{},{},{},{},{}",
        opt(d_design),
        r.n,
        r.k,
        r.fb,
        opt(r.d_exact),
        r.d_source.as_str(),
        opt(r.square.as_ref().map(|s| s.fb)),
    )
}

fn text_report(r: &ParamsReport) -> String {
    let mut out = format!("[n, k, FB] = [{}, {}, {}]\n", r.n, r.k, r.fb);
    match r.d_exact {
        Some(d) => writeln!(out, "d = {d} ({})", r.d_source.as_str()).unwrap(),
        None => writeln!(out, "d >= {}", r.fb).unwrap(),
    }
    if let Some(c) = &r.certificate {
        writeln!(out, "certificate = {}", c.to_json()).unwrap();
    }
    if let Some(sq) = &r.square {
        write!(out, "square: [n, k, FB] = [{}, {}, {}]", sq.n, sq.k, sq.fb).unwrap();
        match sq.d_exact {
            Some(d) => writeln!(out, ", d = {d} ({})", sq.d_source.as_str()).unwrap(),
            None => out.push('\n'),
        }
    }
    out
}

#[derive(Serialize)]
struct LabeledReport<'a> {
    family: &'a str,
    q: u32,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    d_design: Option<u128>,
    #[serde(flatten)]
    report: &'a ParamsReport,
}

fn set_text(a: &MonomialSet) -> String {
    let mut out = String::new();
    for e in a {
        writeln!(out, "{e}").unwrap();
    }
    out
}

fn emit_set(a: &MonomialSet, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(a.to_json() + "\n"),
        Format::Text => Ok(set_text(a)),
        Format::Csv => {
            let mut out = String::new();
            for e in a {
                out.push_str(&e.coords().iter().map(u32::to_string).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn cmd_construct(args: &ConstructArgs) -> Result<String> {
    emit_set(&select(&args.family)?.set, args.format)
}

fn cmd_square(args: &ConstructArgs) -> Result<String> {
    let sq = square_support(&select(&args.family)?.set)?;
    match args.format {
        Format::Text => Ok(format!("k = {}, FB = {}\n{}", sq.len(), footprint_bound(&sq)?.value, set_text(&sq))),
        f => emit_set(&sq, f),
    }
}

fn cmd_params(args: &ParamsArgs) -> Result<String> {
    let sel = select(&args.family)?;
    let r = selected_report(&sel, args.effort.into(), args.budget)?;
    let (q, m) = (sel.set.q(), sel.set.m());
    Ok(match args.format {
        Format::Json => {
            let doc = LabeledReport {
                family: sel.label,
                q,
                m,
                d_design: sel.d_design,
                report: &r,
            };
            serde_json::to_string(&doc)? + "\n"
        }
        Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(sel.label, q, m, sel.d_design, &r)),
        Format::Text => text_report(&r),
    })
}

fn cmd_certify(args: &ConstructArgs) -> Result<String> {
    let sel = select(&args.family)?;
    let got = certified_min_distance(&sel.set)?;
    Ok(match args.format {
        Format::Text => match &got {
            crate::certify::CertifiedDistance::Exact { distance, certificate } => {
                format!("d = {distance}\ncertificate = {}\n", certificate.to_json())
            }
            crate::certify::CertifiedDistance::LowerBound { bound } => format!("d >= {bound}\n"),
        },
        _ => serde_json::to_string(&got)? + "\n",
    })
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    q: u32,
    m: usize,
    a_size: usize,
    square_size: usize,
    square_fb: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<SquareViolation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    algorithm1_verified: Option<bool>,
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let (a, region) = match (&args.a, &args.region) {
        (Some(path), _) => (read_set(path)?, None),
        (None, Some(path)) => {
            let q = args
                .q
                .ok_or_else(|| Error::RangeError("--q is required with --region".into()))?;
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let region = ConvexRegion::from_json(&text)?;
            let placeholder = MonomialSet::empty(q, args.m)?;
            region.check(q, args.m)?;
            (placeholder, Some(region))
        }
        (None, None) => return Err(Error::RangeError("one of --a or --region is required".into())),
    };
    let (q, m) = (a.q(), a.m());
    let b = match (&args.b, args.hyp) {
        (Some(path), _) => read_set(path)?,
        (None, Some(d)) => hyperbolic_set(q, m, d)?,
        (None, None) => return Err(Error::RangeError("one of --b or --hyp is required".into())),
    };
    let (a, alg1) = match region {
        Some(region) => {
            let outcome = algorithm1(&region, &b)?;
            (outcome.design, Some(outcome.verified))
        }
        None => (a, None),
    };
    a.require_same_ambient(&b)?;
    b.require_reduced()?;
    let violation = square_violation(&a, &b)?;
    let sq = square_support(&a)?;
    let report = VerifyReport {
        passed: violation.is_none(),
        q,
        m,
        a_size: a.len(),
        square_size: sq.len(),
        square_fb: if sq.is_empty() { 0 } else { footprint_bound(&sq)?.value },
        violation,
        algorithm1_verified: alg1,
    };
    let text = match args.format {
        Format::Text => {
            let mut out = format!(
                "{}: |A| = {}, |(A+A)_q| = {}, FB((A+A)_q) = {}\n",
                if report.passed { "pass" } else { "fail" },
                report.a_size,
                report.square_size,
                report.square_fb
            );
            if let Some(v) = &report.violation {
                writeln!(out, "violation: {} + {} -> {}", v.left, v.right, v.reduced_sum).unwrap();
            }
            if let Some(ok) = report.algorithm1_verified {
                writeln!(out, "half-integer verifier: {}", if ok { "pass" } else { "fail" }).unwrap();
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("passed,q,m,a_size,square_size,square_fb,violation_left,violation_right,violation_sum\n");
            let pair = |e: Option<&crate::expsets::ExpVec>| opt(e.map(|e| format!("\"{e}\"")));
            let v = report.violation.as_ref();
            writeln!(
                out,
                "{},{q},{m},{},{},{},{},{},{}",
                report.passed,
                report.a_size,
                report.square_size,
                report.square_fb,
                pair(v.map(|v| &v.left)),
                pair(v.map(|v| &v.right)),
                pair(v.map(|v| &v.reduced_sum)),
            )
            .unwrap();
            out
        }
        Format::Json => serde_json::to_string(&report)? + "\n",
    };
    Ok((text, report.passed))
}

/// One row of a comparison.
#[derive(Clone, Debug, Serialize)]
pub struct CompareRow {
    pub family: String,
    pub q: u32,
    pub m: usize,
    pub d_design: u128,
    #[serde(flatten)]
    pub report: ParamsReport,
    pub algorithm1_verified: bool,
    pub square_designed: bool,
    pub winner: bool,
}

pub const COMPARE_HEADER: &str = "family,q,m,d_design,n,k,fb,d_exact,d_source,square_fb,algorithm1_verified,square_designed,winner";

/// `HalfHyp_q(d, 2)` and, when `d < q`, the best weighted Reed-Muller design,
/// each checked against `Hyp_q(d, 2)`.
pub fn compare_rows(q: u32, d: u64, effort: Effort, budget: u64) -> Result<Vec<CompareRow>> {
    let q2 = (q as u64).pow(2);
    if d == 0 || d >= q2 {
        return Err(Error::RangeError(format!("d = {d} must lie in [1, q^2 - 1]")));
    }
    let target = hyperbolic_set(q, 2, d as u128)?;
    let mut rows = Vec::new();

    let hh = half_hyperbolic_set(q, 2, d as u128)?;
    let hh_region = ConvexRegion::half_hyperbolic(q, d as u128);
    rows.push(CompareRow {
        family: "halfhyp".into(),
        q,
        m: 2,
        d_design: d as u128,
        report: params_report(&hh, effort, budget)?,
        algorithm1_verified: algorithm1_verify(&hh_region, &target)?,
        square_designed: square_support(&hh)?.is_subset(&target),
        winner: false,
    });

    if d < q as u64 {
        let design = best_wrm_square_design(q, d)?;
        let (label, region) = match design.kind {
            WrmDesignKind::FullBox => ("wrm-full-box".to_string(), ConvexRegion::full_box(q)),
            WrmDesignKind::ReedMuller { s } => (
                "rm".to_string(),
                ConvexRegion::halfspace(vec![BigRational::one(); 2], BigRational::from_integer(s.into()))?,
            ),
            WrmDesignKind::EvenOptimum { variant } => {
                let (w, bound) = wrm_even_witness(q, d, variant)?;
                let label = match variant {
                    EvenVariant::B1 => "wrm-even-b1",
                    EvenVariant::B2 => "wrm-even-b2",
                };
                (label.to_string(), ConvexRegion::halfspace(w, bound)?)
            }
        };
        rows.push(CompareRow {
            family: label,
            q,
            m: 2,
            d_design: d as u128,
            report: params_report(&design.set, effort, budget)?,
            algorithm1_verified: algorithm1_verify(&region, &target)?,
            square_designed: square_support(&design.set)?.is_subset(&target),
            winner: false,
        });
    }
    let best = rows.iter().map(|r| r.report.k).max().unwrap_or(0);
    let winners = rows.iter().filter(|r| r.report.k == best).count();
    if winners == 1 {
        for r in &mut rows {
            r.winner = r.report.k == best;
        }
    }
    Ok(rows)
}

fn cmd_compare(args: &CompareArgs) -> Result<String> {
    let rows = compare_rows(args.q, args.d, args.effort.into(), args.budget)?;
    Ok(match args.format {
        Format::Json => serde_json::to_string(&rows)? + "\n",
        Format::Csv => {
            let mut out = format!("{COMPARE_HEADER}\n");
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{}",
                    csv_row(&r.family, r.q, r.m, Some(r.d_design), &r.report),
                    r.algorithm1_verified,
                    r.square_designed,
                    r.winner
                )
                .unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                writeln!(
                    out,
                    "{}{}: k = {}, FB = {}, square FB = {}, half-integer verifier {}, (A+A)_q ⊆ B {}",
                    r.family,
                    if r.winner { " (winner)" } else { "" },
                    r.report.k,
                    r.report.fb,
                    opt(r.report.square.as_ref().map(|s| s.fb)),
                    if r.algorithm1_verified { "pass" } else { "fail" },
                    if r.square_designed { "holds" } else { "fails" },
                )
                .unwrap();
            }
            out
        }
    })
}

/// Reference instances over F_11 in two variables.
pub fn table_rows() -> Result<Vec<(Selected, ParamsReport)>> {
    let base = |family, d: Option<u128>, s: Option<&str>, weights: Option<&[&str]>| FamilySelector {
        family,
        q: Some(11),
        m: 2,
        d,
        s: s.map(str::to_string),
        weights: weights.map(|w| w.iter().map(|x| x.to_string()).collect()),
        file: None,
    };
    let selectors = [
        base(FamilyKind::Rm, None, Some("6"), None),
        base(FamilyKind::Hyp, Some(6), None, None),
        base(FamilyKind::Hyp, Some(55), None, None),
        base(FamilyKind::Wrm, None, Some("15"), Some(&["5", "3"])),
        base(FamilyKind::Halfhyp, Some(6), None, None),
        base(FamilyKind::Halfhyp, Some(12), None, None),
        base(FamilyKind::WrmEvenB1, Some(6), None, None),
        base(FamilyKind::WrmEvenB2, Some(6), None, None),
    ];
    selectors
        .iter()
        .map(|s| {
            let sel = select(s)?;
            let r = selected_report(&sel, Effort::Certify, DEFAULT_BUDGET)?;
            Ok((sel, r))
        })
        .collect()
}

fn cmd_table(args: &TableArgs) -> Result<String> {
    let rows = table_rows()?;
    Ok(match args.format {
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for (sel, r) in &rows {
                writeln!(out, "{}", csv_row(sel.label, sel.set.q(), sel.set.m(), sel.d_design, r)).unwrap();
            }
            out
        }
        Format::Json => {
            let docs: Vec<LabeledReport> = rows
                .iter()
                .map(|(sel, r)| LabeledReport {
                    family: sel.label,
                    q: sel.set.q(),
                    m: sel.set.m(),
                    d_design: sel.d_design,
                    report: r,
                })
                .collect();
            serde_json::to_string(&docs)? + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for (sel, r) in &rows {
                writeln!(
                    out,
                    "{} (q = {}, d = {}): [{}, {}, {}]",
                    sel.label,
                    sel.set.q(),
                    opt(sel.d_design),
                    r.n,
                    r.k,
                    opt(r.d_exact)
                )
                .unwrap();
            }
            out
        }
    })
}

/// Runs a parsed command; returns the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a).map(|s| (s, true)),
        Command::Params(a) => cmd_params(a).map(|s| (s, true)),
        Command::Square(a) => cmd_square(a).map(|s| (s, true)),
        Command::Verify(a) => cmd_verify(a),
        Command::Certify(a) => cmd_certify(a).map(|s| (s, true)),
        Command::Compare(a) => cmd_compare(a).map(|s| (s, true)),
        Command::Table(a) => cmd_table(a).map(|s| (s, true)),
    };
    match result {
        Ok((text, ok)) => {
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return 2;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            code
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
