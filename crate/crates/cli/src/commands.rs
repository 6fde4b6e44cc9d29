//! Subcommand bodies and their output records.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use serde::{Deserialize, Serialize};

use abelian3::asymptotics::{asymptotic_reports, h3_and_h3prime};
use abelian3::rank3::{self, count_by_order, count_cyclic, count_total, enumerate_subgroups};
use abelian3::tables::{table1, table2, table3};
use abelian3::typecounts::{
    gaussian_binomial, gcd_sum_poly, general_form, h_closed_form, symbolic_count, symbolic_count_by_order,
    type_count, Partition,
};
use abelian3::verify::{check_group, check_group_with, check_rank2, GroupCheck};
use abelian3::{Group3, IntPoly};

use crate::output::{Format, Record, Sink};

/// Failure of a subcommand, mapped to an exit code in `main`.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
    Io(io::Error),
}

impl From<abelian3::Error> for Failure {
    fn from(e: abelian3::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

pub type Outcome = std::result::Result<(), Failure>;

fn poly_text(p: &IntPoly) -> String {
    p.to_string()
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn eval_at(poly: &IntPoly, p: Option<u64>) -> Result<Option<i128>, Failure> {
    match p {
        None => Ok(None),
        Some(p) => poly
            .eval(i128::from(p))
            .map(Some)
            .ok_or_else(|| Failure::Usage(format!("value at p = {p} overflows 128 bits"))),
    }
}

// ---- count ----

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CountRecord {
    pub m: u64,
    pub n: u64,
    pub r: u64,
    pub kind: String,
    pub order: Option<u128>,
    pub count: u128,
}

impl Record for CountRecord {
    fn csv_header() -> &'static [&'static str] {
        &["m", "n", "r", "kind", "order", "count"]
    }

    fn csv_row(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.n.to_string(),
            self.r.to_string(),
            self.kind.clone(),
            opt(&self.order),
            self.count.to_string(),
        ]
    }

    fn text(&self) -> String {
        self.count.to_string()
    }
}

pub fn count<W: Write>(sink: &mut Sink<W>, group: Group3, order: Option<u128>, cyclic: bool) -> Outcome {
    let (kind, count) = match (order, cyclic) {
        (Some(delta), _) => ("order", count_by_order(group, delta)?),
        (None, true) => ("cyclic", count_cyclic(group)?),
        (None, false) => ("total", count_total(group)?),
    };
    sink.emit(&CountRecord { m: group.m, n: group.n, r: group.r, kind: kind.into(), order, count })?;
    Ok(())
}

// ---- enumerate ----

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SubgroupRecord {
    /// Sextuple `(a, b, c, t, w, z)`.
    pub sextuple: [u64; 6],
    /// Triangular basis `(a, s, u, b, v, c)`.
    pub basis: [u64; 6],
    pub order: u128,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elements: Option<Vec<[u64; 3]>>,
}

fn join<T: std::fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn elements_text(elements: &[[u64; 3]]) -> String {
    let mut out = String::new();
    for (i, e) in elements.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "({},{},{})", e[0], e[1], e[2]);
    }
    out
}

impl Record for SubgroupRecord {
    fn csv_header() -> &'static [&'static str] {
        &["a", "b", "c", "t", "w", "z", "s", "u", "v", "order", "elements"]
    }

    fn csv_row(&self) -> Vec<String> {
        let [a, b, c, t, w, z] = self.sextuple;
        let [_, s, u, _, v, _] = self.basis;
        let mut row: Vec<String> = [a, b, c, t, w, z, s, u, v].iter().map(u64::to_string).collect();
        row.push(self.order.to_string());
        row.push(self.elements.as_deref().map(elements_text).unwrap_or_default());
        row
    }

    fn text(&self) -> String {
        let mut line = format!(
            "({}) basis ({}) order {}",
            join(&self.sextuple, ","),
            join(&self.basis, ","),
            self.order
        );
        if let Some(elements) = &self.elements {
            line.push_str(": ");
            line.push_str(&elements_text(elements));
        }
        line
    }
}

pub fn enumerate<W: Write>(sink: &mut Sink<W>, group: Group3, elements: bool, bound: u64) -> Outcome {
    if elements && group.order() > u128::from(bound) {
        return Err(abelian3::Error::BoundExceeded { order: group.order(), bound: u128::from(bound) }.into());
    }
    for item in enumerate_subgroups(group)? {
        let (sx, basis) = item?;
        let elements = if elements { Some(basis.elements(bound)?) } else { None };
        sink.emit(&SubgroupRecord {
            sextuple: [sx.a, sx.b, sx.c, sx.t, sx.w, sx.z],
            basis: [basis.a, basis.s, basis.u, basis.b, basis.v, basis.c],
            order: basis.order(),
            elements,
        })?;
    }
    Ok(())
}

// ---- table ----

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct Table1Record {
    pub n: u64,
    pub s: u128,
}

impl Record for Table1Record {
    fn csv_header() -> &'static [&'static str] {
        &["n", "s"]
    }

    fn csv_row(&self) -> Vec<String> {
        vec![self.n.to_string(), self.s.to_string()]
    }

    fn text(&self) -> String {
        format!("{} & {}", self.n, self.s)
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct Table2Record {
    pub nu: u32,
    pub coefficients: Vec<i128>,
}

impl Record for Table2Record {
    fn csv_header() -> &'static [&'static str] {
        &["nu", "polynomial"]
    }

    fn csv_row(&self) -> Vec<String> {
        vec![self.nu.to_string(), poly_text(&IntPoly::new(self.coefficients.clone()))]
    }

    fn text(&self) -> String {
        format!("{} & {}", self.nu, poly_text(&IntPoly::new(self.coefficients.clone())))
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct Table3Record {
    pub nu: [u32; 3],
    pub coefficients: Vec<i128>,
}

impl Record for Table3Record {
    fn csv_header() -> &'static [&'static str] {
        &["nu1", "nu2", "nu3", "polynomial"]
    }

    fn csv_row(&self) -> Vec<String> {
        let mut row: Vec<String> = self.nu.iter().map(u32::to_string).collect();
        row.push(poly_text(&IntPoly::new(self.coefficients.clone())));
        row
    }

    fn text(&self) -> String {
        format!("({}) & {}", join(&self.nu, ","), poly_text(&IntPoly::new(self.coefficients.clone())))
    }
}

pub fn table<W: Write>(sink: &mut Sink<W>, which: u8, limit: Option<u32>) -> Outcome {
    match which {
        1 => {
            for (n, s) in table1(u64::from(limit.unwrap_or(50)))? {
                sink.emit(&Table1Record { n, s })?;
            }
        }
        2 => {
            for (nu, poly) in table2(limit.unwrap_or(10)) {
                sink.emit(&Table2Record { nu, coefficients: poly.coeffs().to_vec() })?;
            }
        }
        3 => {
            for (nu, poly) in table3(limit.unwrap_or(4)) {
                sink.emit(&Table3Record { nu, coefficients: poly.coeffs().to_vec() })?;
            }
        }
        _ => return Err(Failure::Usage(format!("no table {which}; expected 1, 2 or 3"))),
    }
    Ok(())
}

// ---- poly / type-count ----

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyRecord {
    pub name: String,
    pub coefficients: Vec<i128>,
    pub p: Option<u64>,
    pub value: Option<i128>,
}

impl Record for PolyRecord {
    fn csv_header() -> &'static [&'static str] {
        &["name", "polynomial", "p", "value"]
    }

    fn csv_row(&self) -> Vec<String> {
        vec![
            self.name.clone(),
            poly_text(&IntPoly::new(self.coefficients.clone())),
            opt(&self.p),
            opt(&self.value),
        ]
    }

    fn text(&self) -> String {
        let poly = poly_text(&IntPoly::new(self.coefficients.clone()));
        match (self.p, self.value) {
            (Some(p), Some(v)) => format!("{} = {poly}; at p = {p}: {v}", self.name),
            _ => format!("{} = {poly}", self.name),
        }
    }
}

/// Which polynomial `poly` prints.
pub enum PolyKind {
    Symbolic { nu: [u32; 3], order: Option<u32> },
    General { nu: u32 },
    Gaussian { r: u32, k: u32 },
    H { nu: u32 },
    GcdSum { nu: u32 },
}

fn emit_poly<W: Write>(sink: &mut Sink<W>, name: String, poly: IntPoly, at: Option<u64>) -> Outcome {
    let value = eval_at(&poly, at)?;
    sink.emit(&PolyRecord { name, coefficients: poly.coeffs().to_vec(), p: at, value })?;
    Ok(())
}

pub fn poly<W: Write>(sink: &mut Sink<W>, kind: PolyKind, at: Option<u64>) -> Outcome {
    let (name, poly) = match kind {
        PolyKind::Symbolic { nu: [a, b, c], order: None } => {
            (format!("s(p^{a},p^{b},p^{c})"), symbolic_count(a, b, c))
        }
        PolyKind::Symbolic { nu: [a, b, c], order: Some(k) } => {
            (format!("s_(p^{k})(p^{a},p^{b},p^{c})"), symbolic_count_by_order(a, b, c, k))
        }
        PolyKind::General { nu } => (format!("closed form s(p^{nu})"), general_form(nu)),
        PolyKind::Gaussian { r, k } => (format!("[{r} {k}]_p"), gaussian_binomial(r, k)),
        PolyKind::H { nu } => (format!("h(p^{nu})"), h_closed_form(nu)),
        PolyKind::GcdSum { nu } => (format!("P(p^{nu})"), gcd_sum_poly(nu)),
    };
    emit_poly(sink, name, poly, at)
}

pub fn type_count_cmd<W: Write>(
    sink: &mut Sink<W>,
    lambda: Vec<u32>,
    mu: Vec<u32>,
    at: Option<u64>,
) -> Outcome {
    let (lambda, mu) = (Partition::new(lambda), Partition::new(mu));
    let poly = type_count(&lambda, &mu)?;
    emit_poly(sink, format!("alpha_{lambda}({mu})"), poly, at)
}

// ---- verify ----

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct VerifyRecord {
    pub m: u64,
    pub n: u64,
    pub r: u64,
    pub oracle: usize,
    pub enumerated: usize,
    pub formula: u128,
    pub passed: bool,
    pub detail: String,
}

impl Record for VerifyRecord {
    fn csv_header() -> &'static [&'static str] {
        &["m", "n", "r", "oracle", "enumerated", "formula", "passed", "detail"]
    }

    fn csv_row(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.n.to_string(),
            self.r.to_string(),
            self.oracle.to_string(),
            self.enumerated.to_string(),
            self.formula.to_string(),
            self.passed.to_string(),
            self.detail.clone(),
        ]
    }

    fn text(&self) -> String {
        format!(
            "FAIL ({},{},{}): oracle {}, enumerated {}, formula {}; {}",
            self.m, self.n, self.r, self.oracle, self.enumerated, self.formula, self.detail
        )
    }
}

fn describe(check: &GroupCheck, rank2_mismatches: usize) -> String {
    let mut parts = Vec::new();
    let sets = |sets: &[abelian3::oracle::ElementSet]| {
        sets.iter().map(|s| format!("{{{}}}", elements_text(s.elements()))).collect::<Vec<_>>().join(" ")
    };
    if !check.missing.is_empty() {
        parts.push(format!("missing {}", sets(&check.missing)));
    }
    if !check.spurious.is_empty() {
        parts.push(format!("spurious {}", sets(&check.spurious)));
    }
    if check.duplicates > 0 {
        parts.push(format!("{} duplicates", check.duplicates));
    }
    for e in &check.errors {
        parts.push(format!("error: {e}"));
    }
    if rank2_mismatches > 0 {
        parts.push(format!("{rank2_mismatches} rank-2 mismatches"));
    }
    parts.join("; ")
}

fn verify_one(group: Group3, bound: u64, fault: bool) -> abelian3::Result<VerifyRecord> {
    let check = if fault {
        check_group_with(group, bound, |a, b, c, g| {
            let mut params = rank3::derived_params(a, b, c, g)?;
            params.coupling = 1;
            Ok(params)
        })?
    } else {
        check_group(group, bound)?
    };
    let rank2 = if group.r == 1 { check_rank2(group.m, group.n, bound)? } else { 0 };
    Ok(VerifyRecord {
        m: group.m,
        n: group.n,
        r: group.r,
        oracle: check.oracle_count,
        enumerated: check.enumerated,
        formula: check.formula_count,
        passed: check.passed() && rank2 == 0,
        detail: describe(&check, rank2),
    })
}

/// Checks every group in parallel; results come back in input order.
fn verify_all(groups: &[Group3], bound: u64, fault: bool) -> Vec<abelian3::Result<VerifyRecord>> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(groups.len().max(1));
    let next = AtomicUsize::new(0);
    let mut results: Vec<(usize, abelian3::Result<VerifyRecord>)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(&group) = groups.get(i) else { break };
                        done.push((i, verify_one(group, bound, fault)));
                    }
                    done
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("verify worker panicked")).collect()
    });
    results.sort_by_key(|(i, _)| *i);
    results.into_iter().map(|(_, r)| r).collect()
}

pub fn verify<W: Write>(sink: &mut Sink<W>, max_order: u64, bound: u64, fault: bool) -> Outcome {
    if u128::from(max_order) > u128::from(bound) {
        return Err(abelian3::Error::BoundExceeded { order: max_order.into(), bound: bound.into() }.into());
    }
    let groups = Group3::all_up_to(max_order);
    let mut failed = Vec::new();
    let mut subgroups = 0usize;
    for result in verify_all(&groups, bound, fault) {
        let record = result?;
        subgroups += record.oracle;
        if !record.passed {
            failed.push(format!("({},{},{})", record.m, record.n, record.r));
        }
        if sink.format() != Format::Text || !record.passed {
            sink.emit(&record)?;
        }
    }
    if failed.is_empty() {
        sink.note(&format!(
            "PASS: {} group shapes with mnr <= {max_order} checked, {subgroups} subgroups",
            groups.len()
        ))?;
        Ok(())
    } else {
        let summary = format!(
            "FAIL: {} of {} group shapes with mnr <= {max_order} disagree: {}",
            failed.len(),
            groups.len(),
            failed.join(" ")
        );
        sink.note(&summary)?;
        Err(Failure::Verification(format!("verification failed for {}", failed.join(" "))))
    }
}

// ---- asymptotic ----

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct AsymptoticRecord {
    pub x: u64,
    pub exact_sum: u128,
    pub main_term: f64,
    pub relative_error: f64,
    pub error_exponent_estimate: f64,
    pub h3: f64,
    pub h3_bound: f64,
    pub h3_prime: f64,
    pub h3_prime_bound: f64,
    pub prime_limit: u64,
}

impl Record for AsymptoticRecord {
    fn csv_header() -> &'static [&'static str] {
        &[
            "x",
            "exact_sum",
            "main_term",
            "relative_error",
            "error_exponent_estimate",
            "h3",
            "h3_bound",
            "h3_prime",
            "h3_prime_bound",
            "prime_limit",
        ]
    }

    fn csv_row(&self) -> Vec<String> {
        vec![
            self.x.to_string(),
            self.exact_sum.to_string(),
            self.main_term.to_string(),
            self.relative_error.to_string(),
            self.error_exponent_estimate.to_string(),
            self.h3.to_string(),
            format!("{:e}", self.h3_bound),
            self.h3_prime.to_string(),
            format!("{:e}", self.h3_prime_bound),
            self.prime_limit.to_string(),
        ]
    }

    fn text(&self) -> String {
        format!(
            "x = {}: sum {} main {:.6e} relative error {:.3e} exponent {:.4}",
            self.x, self.exact_sum, self.main_term, self.relative_error, self.error_exponent_estimate
        )
    }
}

/// Largest `x` the sieve is allowed to reach (16 bytes per entry).
pub const MAX_X: u64 = 20_000_000;

pub fn asymptotic<W: Write>(sink: &mut Sink<W>, xs: &[u64], prime_limit: u64) -> Outcome {
    if let Some(&x) = xs.iter().find(|&&x| x > MAX_X) {
        return Err(Failure::Usage(format!("x = {x} exceeds the sieve memory budget ({MAX_X})")));
    }
    let constants = h3_and_h3prime(prime_limit)?;
    sink.note(&format!(
        "# H(3) = {:.12} (+/- {:.1e}), H'(3) = {:.12} (+/- {:.1e}), primes <= {}",
        constants.value, constants.value_bound, constants.derivative, constants.derivative_bound, prime_limit
    ))?;
    for report in asymptotic_reports(xs, &constants)? {
        sink.emit(&AsymptoticRecord {
            x: report.x,
            exact_sum: report.exact_sum,
            main_term: report.main_term,
            relative_error: report.relative_error,
            error_exponent_estimate: report.error_exponent_estimate,
            h3: constants.value,
            h3_bound: constants.value_bound,
            h3_prime: constants.derivative,
            h3_prime_bound: constants.derivative_bound,
            prime_limit,
        })?;
    }
    Ok(())
}
