//! Sweeps over primes, the corollary-level checks, and report files.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Pow, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::arith::{is_prime, mod_pow, PrimeContext};
use crate::cyclotomic::{tan_cross_sides, verify_gi, verify_gi_plus, verify_tan_cross, CycloRing};
use crate::error::{Error, Result};
use crate::numeric::{
    pmd_lemma_identity, pmd_theorem14_numeric, tan_product, verify_theorem_main_numeric,
    SignedMagnitude, DEFAULT_REL_TOL,
};
use crate::quadforms::{check_lemma31, cornacchia, two_residue_criterion, Representation};
use crate::record::{Check, Status, VerificationRecord};
use crate::residues::{require_two_in_residues, residue_sum_check, symbol_sign};

/// Corollaries get a floating-point cross-check up to this prime.
pub const NUMERIC_CROSS_CHECK_MAX_P: u64 = 2000;

const REPORT_FIELDS: [&str; 8] = [
    "p",
    "m",
    "a",
    "check",
    "status",
    "expected",
    "actual",
    "elapsed_ms",
];

fn require_unit(ctx: &PrimeContext, a: i64) -> Result<()> {
    if ctx.residue(a) == 0 {
        return Err(Error::InvalidInput(format!(
            "a = {a} is divisible by {}",
            ctx.p()
        )));
    }
    Ok(())
}

fn neg_one_pow(e: u64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Shared body of the two corollaries: the product over `R_m(p)` equals
/// `sign · (-2)^{(p-1)/(2m)}` where `sign` comes from the representation.
fn verify_corollary(
    ctx: &PrimeContext,
    m: u64,
    a: i64,
    rep: Representation,
    sign: i64,
    check: Check,
) -> Result<VerificationRecord> {
    require_two_in_residues(ctx, m)?;
    let p = ctx.p();
    let e = ((p - 1) / (2 * m)) as u32;
    let claimed = BigInt::from(sign) * BigInt::from(-2).pow(e);

    let ring = CycloRing::<BigInt>::for_prime(p)?;
    let (lhs, rhs) = tan_cross_sides(&ring, ctx, m, a, &claimed)?;
    let delta = symbol_sign(-2, ctx, m)?.value as i64;
    let derived = BigInt::from(delta) * BigInt::from(-2).pow(e);

    let mut notes = Vec::new();
    if lhs != rhs {
        notes.push("ring identity fails".to_string());
    }
    if delta != sign {
        notes.push(format!(
            "symbol {delta:+} vs {sign:+} from x={} y={}",
            rep.x, rep.y
        ));
    }
    if p <= NUMERIC_CROSS_CHECK_MAX_P {
        let numeric = tan_product::<f64>(ctx, m, a)?;
        let want = SignedMagnitude::<f64>::power_of_two(
            if claimed.is_negative() { -1 } else { 1 },
            e as u64,
        );
        if !numeric.approx_eq(&want, DEFAULT_REL_TOL) {
            notes.push(format!("numeric {numeric}"));
        }
    }
    let actual = if notes.is_empty() {
        derived.to_string()
    } else {
        format!("{derived} [{}]", notes.join("; "))
    };
    Ok(VerificationRecord::exact(
        p,
        m,
        a,
        check,
        claimed.to_string(),
        actual,
    ))
}

/// The `m = 3` tangent product for `p = x² + 27y²`: `(-1)^{xy/2} (-2)^{(p-1)/6}`.
pub fn verify_cor11(ctx: &PrimeContext, a: i64) -> Result<VerificationRecord> {
    require_unit(ctx, a)?;
    let rep = cornacchia(ctx, 27).ok_or(Error::NotRepresentable { p: ctx.p(), d: 27 })?;
    let sign = neg_one_pow(rep.x * rep.y / 2);
    verify_corollary(ctx, 3, a, rep, sign, Check::Cor11)
}

/// The `m = 4` tangent product for `p = x² + 64y²`: `(-1)^y (-2)^{(p-1)/8}`.
///
/// Also checks `(-2)^{(p-1)/8} ≡ (-1)^y (mod p)` on its own.
pub fn verify_cor12(ctx: &PrimeContext, a: i64) -> Result<VerificationRecord> {
    require_unit(ctx, a)?;
    let rep = cornacchia(ctx, 64).ok_or(Error::NotRepresentable { p: ctx.p(), d: 64 })?;
    let sign = neg_one_pow(rep.y);
    let mut record = verify_corollary(ctx, 4, a, rep, sign, Check::Cor12)?;
    if !cor12_congruence_holds(ctx, &rep) {
        record
            .actual
            .push_str(" [congruence (-2)^((p-1)/8) = (-1)^y fails]");
        record.status = Status::Fail;
    }
    Ok(record)
}

fn cor12_congruence_holds(ctx: &PrimeContext, rep: &Representation) -> bool {
    let p = ctx.p();
    let lhs = mod_pow(-2, (p - 1) / 8, p);
    lhs == ctx.residue(neg_one_pow(rep.y))
}

/// `(-2)^{(p-1)/8} ≡ (-1)^y (mod p)` for `p = x² + 64y²`.
pub fn cor12_congruence(ctx: &PrimeContext) -> Result<bool> {
    let rep = cornacchia(ctx, 64).ok_or(Error::NotRepresentable { p: ctx.p(), d: 64 })?;
    Ok(cor12_congruence_holds(ctx, &rep))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MPolicy {
    /// Every `m` with `2m | p - 1`.
    All,
    List(Vec<u64>),
}

impl FromStr for MPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(MPolicy::All);
        }
        parse_list(s).map(MPolicy::List)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum APolicy {
    /// `{1..A} ∩ [1, p-1]` plus `p - 1`.
    Sample(u64),
    All,
}

impl FromStr for APolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(APolicy::All);
        }
        s.parse()
            .map(APolicy::Sample)
            .map_err(|_| Error::InvalidInput(format!("bad a-count {s:?}")))
    }
}

impl APolicy {
    pub fn values(self, p: u64) -> Vec<i64> {
        let mut out: BTreeSet<u64> = match self {
            APolicy::Sample(count) => (1..=count.min(p - 1)).collect(),
            APolicy::All => (1..p).collect(),
        };
        out.insert(p - 1);
        out.into_iter().map(|a| a as i64).collect()
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad integer {t:?} in list {s:?}")))
        })
        .collect()
}

/// Parses `all` or a comma-separated list of check names.
pub fn parse_checks(s: &str) -> Result<BTreeSet<Check>> {
    if s == "all" {
        return Ok(Check::ALL.into_iter().collect());
    }
    s.split(',').map(|t| t.trim().parse()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Jsonl,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(ReportFormat::Jsonl),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::InvalidInput(format!("unknown report format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub p_min: u64,
    pub p_max: u64,
    pub m_policy: MPolicy,
    pub a_policy: APolicy,
    pub checks: BTreeSet<Check>,
    pub tolerance: f64,
    /// Worker threads; `None` uses every core.
    pub threads: Option<usize>,
    /// Record wall-clock time per check. Off by default so that reports
    /// are reproducible byte for byte.
    pub timing: bool,
    pub output: Option<(PathBuf, ReportFormat)>,
}

impl ScanConfig {
    pub fn new(p_min: u64, p_max: u64) -> Self {
        Self {
            p_min,
            p_max,
            m_policy: MPolicy::All,
            a_policy: APolicy::Sample(5),
            checks: Check::ALL.into_iter().collect(),
            tolerance: DEFAULT_REL_TOL,
            threads: None,
            timing: false,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_min < 3 {
            return Err(Error::InvalidInput(format!(
                "p_min = {} must be at least 3",
                self.p_min
            )));
        }
        if self.a_policy == APolicy::Sample(0) {
            return Err(Error::InvalidInput("a-count must be at least 1".into()));
        }
        if let MPolicy::List(ms) = &self.m_policy {
            if ms.contains(&0) {
                return Err(Error::InvalidInput("m must be positive".into()));
            }
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidInput(format!(
                "tolerance {} must be positive",
                self.tolerance
            )));
        }
        Ok(())
    }

    fn m_values(&self, p: u64) -> Vec<u64> {
        match &self.m_policy {
            MPolicy::All => (1..p).filter(|m| (p - 1) % (2 * m) == 0).collect(),
            MPolicy::List(ms) => ms
                .iter()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        }
    }
}

/// One `(p, m, a, check)` unit of work; ordering is the report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct WorkItem {
    pub p: u64,
    pub m: u64,
    pub a: i64,
    pub check: Check,
}

/// Expands a configuration into its sorted list of work items.
///
/// Checks that do not depend on `m` or `a` use a fixed `m` (3 for the
/// `x² + 27y²` checks, 4 for `x² + 64y²`, 2 for the quadratic product,
/// 1 for the full-period lemma) and `a = 0`.
pub fn work_items(config: &ScanConfig) -> Vec<WorkItem> {
    let mut items = Vec::new();
    let wants = |c: Check| config.checks.contains(&c);
    for p in (config.p_min..=config.p_max).filter(|&p| p >= 3 && is_prime(p)) {
        let a_values = config.a_policy.values(p);
        let mut push = |m: u64, a: i64, check: Check| {
            if wants(check) {
                items.push(WorkItem { p, m, a, check });
            }
        };
        for m in config.m_values(p) {
            push(m, 0, Check::Lemma21);
            for &a in &a_values {
                for check in [
                    Check::Gi,
                    Check::GiPlus,
                    Check::ThmMainExact,
                    Check::ThmMainNumeric,
                ] {
                    push(m, a, check);
                }
            }
        }
        push(3, 0, Check::Lemma31);
        push(3, 0, Check::Criterion);
        push(4, 0, Check::Criterion);
        for &a in &a_values {
            push(3, a, Check::Cor11);
            push(4, a, Check::Cor12);
            push(2, a, Check::PmdThm14);
            push(1, a, Check::PmdLemma);
        }
    }
    items.sort_unstable();
    items.dedup();
    items
}

fn lemma21_record(ctx: &PrimeContext, m: u64) -> Result<VerificationRecord> {
    let (_, sum) = residue_sum_check(ctx, m)?;
    let p = ctx.p() as u128;
    let expected = p * (p - 1) / (2 * m as u128);
    Ok(VerificationRecord::exact(
        ctx.p(),
        m,
        0,
        Check::Lemma21,
        expected.to_string(),
        sum.to_string(),
    ))
}

fn dispatch(item: &WorkItem, ctx: &PrimeContext, tol: f64) -> Result<VerificationRecord> {
    let WorkItem { m, a, .. } = *item;
    match item.check {
        Check::Gi => verify_gi(ctx, m, a),
        Check::GiPlus => verify_gi_plus(ctx, m, a),
        Check::ThmMainExact => verify_tan_cross(ctx, m, a),
        Check::ThmMainNumeric => verify_theorem_main_numeric(ctx, m, a, tol),
        Check::Lemma21 => lemma21_record(ctx, m),
        Check::Lemma31 => check_lemma31(ctx),
        Check::Criterion => two_residue_criterion(ctx, m),
        Check::Cor11 => verify_cor11(ctx, a),
        Check::Cor12 => verify_cor12(ctx, a),
        Check::PmdThm14 => pmd_theorem14_numeric(ctx, a, tol),
        // full period n = p at x = a/p, which never meets a pole or a zero
        Check::PmdLemma => {
            let x = a.to_f64().unwrap() / ctx.p() as f64;
            pmd_lemma_identity(ctx.p(), x, tol)
        }
    }
}

/// Runs a single work item, turning errors into skipped/error records.
pub fn run_item(item: &WorkItem, tol: f64, timing: bool) -> VerificationRecord {
    let start = Instant::now();
    let result = PrimeContext::new(item.p).and_then(|ctx| dispatch(item, &ctx, tol));
    let mut record = match result {
        Ok(r) => r,
        Err(e) => VerificationRecord::from_error(item.p, item.m, item.a, item.check, &e),
    };
    record.p = item.p;
    record.m = item.m;
    record.a = item.a;
    record.check = item.check;
    record.elapsed_ms = if timing {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    record
}

/// Runs every selected check over the configured range, in parallel, and
/// returns the records in `(p, m, a, check)` order. Writes the report when
/// the config names an output.
pub fn scan(config: &ScanConfig) -> Result<Vec<VerificationRecord>> {
    config.validate()?;
    let items = work_items(config);
    let run = || -> Vec<VerificationRecord> {
        items
            .par_iter()
            .map(|item| run_item(item, config.tolerance, config.timing))
            .collect()
    };
    let records = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?
            .install(run),
        None => run(),
    };
    if let Some((path, format)) = &config.output {
        emit_report(&records, *format, path)?;
    }
    Ok(records)
}

pub fn write_report<W: Write>(
    records: &[VerificationRecord],
    format: ReportFormat,
    out: W,
) -> Result<()> {
    match format {
        ReportFormat::Jsonl => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(out);
            w.write_record(REPORT_FIELDS)?;
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Writes records as JSONL (one object per line) or CSV (with header).
pub fn emit_report(
    records: &[VerificationRecord],
    format: ReportFormat,
    path: &Path,
) -> Result<()> {
    let file = File::create(path)?;
    write_report(records, format, BufWriter::new(file))
}

pub fn read_report<R: Read>(input: R, format: ReportFormat) -> Result<Vec<VerificationRecord>> {
    match format {
        ReportFormat::Jsonl => BufReader::new(input)
            .lines()
            .filter(|l| !l.as_ref().is_ok_and(|l| l.is_empty()))
            .map(|line| Ok(serde_json::from_str(&line?)?))
            .collect(),
        ReportFormat::Csv => {
            let mut r = csv::Reader::from_reader(input);
            let header = r.headers()?.clone();
            if header.iter().ne(REPORT_FIELDS) {
                return Err(Error::InvalidInput(format!(
                    "unexpected CSV header {header:?}"
                )));
            }
            r.deserialize().map(|rec| Ok(rec?)).collect()
        }
    }
}

pub fn parse_report(path: &Path, format: ReportFormat) -> Result<Vec<VerificationRecord>> {
    read_report(File::open(path)?, format)
}

/// True when no record failed or errored; the CLI's exit status.
pub fn all_clear(records: &[VerificationRecord]) -> bool {
    !records.iter().any(|r| r.status.is_failure())
}
