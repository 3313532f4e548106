//! Report rows for each subcommand. Rows are computed on the current rayon
//! pool and sorted by their key before they are returned.

use g2n_core::lefschetz::projective::{pn_commutator_check, pn_sigma, tau};
use g2n_core::lefschetz::{evaluate_sigma, sigma_closed};
use g2n_core::racah::{
    certify_needed, needed_with_table, orthogonality_from_rows, racah_table, ScanPoint, ScanReport,
};
use g2n_core::{Rational, SigmaInstance, SigmaMethod, VerdictReport};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::sequence::LoadedSequence;
use crate::table::{Cell, Kind, TableRow};
use crate::CliError;

/// Rows that carry a pass/fail verdict.
pub trait Checked {
    fn ok(&self) -> bool;
    /// Inverts the verdict, simulating a broken comparison.
    fn corrupt(&mut self);
}

fn method_name(m: SigmaMethod) -> &'static str {
    match m {
        SigmaMethod::Direct => "direct",
        SigmaMethod::Closed => "closed",
        SigmaMethod::Both => "both",
    }
}

#[derive(Clone, Debug)]
pub struct SigmaRow {
    pub report: VerdictReport,
    pub passed: bool,
}

impl TableRow for SigmaRow {
    fn schema() -> &'static [(&'static str, Kind)] {
        &[
            ("N", Kind::Int),
            ("k", Kind::Int),
            ("n", Kind::Int),
            ("T", Kind::Int),
            ("method", Kind::Text),
            ("sigma", Kind::Rational),
            ("positive", Kind::Bool),
            ("agree", Kind::Bool),
            ("passed", Kind::Bool),
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        let r = &self.report;
        vec![
            r.big_n.into(),
            r.k.into(),
            r.n.into(),
            r.t.into(),
            method_name(r.method).into(),
            r.sigma.clone().into(),
            r.positive.into(),
            r.agree.into(),
            self.passed.into(),
        ]
    }
}

impl Checked for SigmaRow {
    fn ok(&self) -> bool {
        self.passed
    }
    fn corrupt(&mut self) {
        self.passed = !self.passed;
    }
}

pub fn sigma_rows(instances: &[SigmaInstance], method: SigmaMethod) -> Vec<SigmaRow> {
    let mut rows: Vec<SigmaRow> = instances
        .par_iter()
        .map(|inst| {
            let report = evaluate_sigma(inst, method);
            let passed = report.passed();
            SigmaRow { report, passed }
        })
        .collect();
    rows.sort_by_key(|r| (r.report.big_n, r.report.k));
    rows
}

#[derive(Clone, Debug)]
pub struct PnRow {
    pub n: u32,
    pub tau: Rational,
    pub sigma: Rational,
    pub commutator: bool,
    pub passed: bool,
}

impl TableRow for PnRow {
    fn schema() -> &'static [(&'static str, Kind)] {
        &[
            ("n", Kind::Int),
            ("tau", Kind::Rational),
            ("sigma", Kind::Rational),
            ("commutator", Kind::Bool),
            ("passed", Kind::Bool),
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.n.into(),
            self.tau.clone().into(),
            self.sigma.clone().into(),
            self.commutator.into(),
            self.passed.into(),
        ]
    }
}

impl Checked for PnRow {
    fn ok(&self) -> bool {
        self.passed
    }
    fn corrupt(&mut self) {
        self.passed = !self.passed;
    }
}

pub fn pn_rows(n_max: u32) -> Vec<PnRow> {
    let mut rows: Vec<PnRow> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let tau = tau(n);
            let sigma = pn_sigma(n);
            let commutator = pn_commutator_check(n);
            let passed = commutator && tau.is_positive() && sigma == tau;
            PnRow {
                n,
                tau,
                sigma,
                commutator,
                passed,
            }
        })
        .collect();
    rows.sort_by_key(|r| r.n);
    rows
}

#[derive(Clone, Debug)]
pub struct OrthoRow {
    pub t: u32,
    pub n: u32,
    /// `Σ_s (2s+1) R_n(s,T)^2`
    pub norm: Rational,
    pub expected: Rational,
    /// Every `m != n` gives zero.
    pub orthogonal: bool,
    pub passed: bool,
}

impl TableRow for OrthoRow {
    fn schema() -> &'static [(&'static str, Kind)] {
        &[
            ("T", Kind::Int),
            ("n", Kind::Int),
            ("norm", Kind::Rational),
            ("expected", Kind::Rational),
            ("orthogonal", Kind::Bool),
            ("passed", Kind::Bool),
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.t.into(),
            self.n.into(),
            self.norm.clone().into(),
            self.expected.clone().into(),
            self.orthogonal.into(),
            self.passed.into(),
        ]
    }
}

impl Checked for OrthoRow {
    fn ok(&self) -> bool {
        self.passed
    }
    fn corrupt(&mut self) {
        self.passed = !self.passed;
    }
}

pub fn ortho_rows(t_min: u32, t_max: u32) -> Result<Vec<OrthoRow>, CliError> {
    let per_t: Vec<Vec<OrthoRow>> = (t_min..=t_max)
        .into_par_iter()
        .map(|t| -> Result<Vec<OrthoRow>, CliError> {
            let table = racah_table(t)?;
            let mut rows = Vec::with_capacity(t as usize);
            for n in 0..t {
                let rn = &table[n as usize];
                let (norm, diag_ok) = orthogonality_from_rows(t, n, n, rn, rn);
                let orthogonal = (0..t)
                    .filter(|&m| m != n)
                    .all(|m| orthogonality_from_rows(t, n, m, rn, &table[m as usize]).1);
                let tt = (t as i64) * (t as i64);
                rows.push(OrthoRow {
                    t,
                    n,
                    norm,
                    expected: Rational::frac(tt, 2 * n as i64 + 1),
                    orthogonal,
                    passed: diag_ok && orthogonal,
                });
            }
            Ok(rows)
        })
        .collect::<Result<_, _>>()?;
    let mut rows: Vec<OrthoRow> = per_t.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.t, r.n));
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct NeededRow {
    pub t: u32,
    pub n: u32,
    pub sequence: String,
    /// Certifying argument, or `exploratory` for sequences outside the
    /// concave class.
    pub branch: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub passed: bool,
}

impl TableRow for NeededRow {
    fn schema() -> &'static [(&'static str, Kind)] {
        &[
            ("T", Kind::Int),
            ("n", Kind::Int),
            ("sequence", Kind::Text),
            ("branch", Kind::Text),
            ("lhs", Kind::Rational),
            ("rhs", Kind::Rational),
            ("holds", Kind::Bool),
            ("passed", Kind::Bool),
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.t.into(),
            self.n.into(),
            self.sequence.as_str().into(),
            self.branch.as_str().into(),
            self.lhs.clone().into(),
            self.rhs.clone().into(),
            self.holds.into(),
            self.passed.into(),
        ]
    }
}

impl Checked for NeededRow {
    fn ok(&self) -> bool {
        self.passed
    }
    fn corrupt(&mut self) {
        self.passed = !self.passed;
    }
}

fn branch_name(b: g2n_core::racah::Branch) -> String {
    serde_json::to_value(b)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn needed_rows(
    t_min: u32,
    t_max: u32,
    sequence: &LoadedSequence,
    exploratory: bool,
) -> Result<Vec<NeededRow>, CliError> {
    let per_t: Vec<Vec<NeededRow>> = (t_min..=t_max)
        .into_par_iter()
        .map(|t| -> Result<Vec<NeededRow>, CliError> {
            let seq = sequence.for_t(t);
            let label = sequence.label();
            if exploratory {
                let table = racah_table(t)?;
                Ok(needed_with_table(&table, &seq)?
                    .into_iter()
                    .map(|r| NeededRow {
                        t: r.t,
                        n: r.n,
                        sequence: label.clone(),
                        branch: "exploratory".into(),
                        passed: r.holds,
                        holds: r.holds,
                        lhs: r.lhs,
                        rhs: r.rhs,
                    })
                    .collect())
            } else {
                let report = certify_needed(&seq, t)?;
                Ok(report
                    .rows
                    .into_iter()
                    .map(|r| NeededRow {
                        t,
                        n: r.n,
                        sequence: label.clone(),
                        branch: branch_name(r.branch),
                        passed: r.direct.holds,
                        holds: r.direct.holds,
                        lhs: r.direct.lhs,
                        rhs: r.direct.rhs,
                    })
                    .collect())
            }
        })
        .collect::<Result<_, _>>()?;
    let mut rows: Vec<NeededRow> = per_t.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.t, r.n));
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct ScanRow {
    pub t: u32,
    pub points: u64,
    pub equality_cases: u64,
    pub strictness_exceptions: Vec<ScanPoint>,
    pub violations: Vec<ScanPoint>,
    pub passed: bool,
}

fn points_json(points: &[ScanPoint]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| match &p.value {
                Some(v) => json!({"n": p.n, "s": p.s, "value": v.to_string()}),
                None => json!({"n": p.n, "s": p.s}),
            })
            .collect(),
    )
}

impl TableRow for ScanRow {
    fn schema() -> &'static [(&'static str, Kind)] {
        &[
            ("T", Kind::Int),
            ("points", Kind::Int),
            ("equality_cases", Kind::Int),
            ("strictness_exceptions", Kind::Json),
            ("violations", Kind::Json),
            ("passed", Kind::Bool),
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.t.into(),
            self.points.into(),
            self.equality_cases.into(),
            Cell::Json(points_json(&self.strictness_exceptions)),
            Cell::Json(points_json(&self.violations)),
            self.passed.into(),
        ]
    }
}

impl Checked for ScanRow {
    fn ok(&self) -> bool {
        self.passed
    }
    fn corrupt(&mut self) {
        self.passed = !self.passed;
    }
}

/// Splits a scan report into one row per `T`.
pub fn scan_rows(report: &ScanReport) -> Vec<ScanRow> {
    let [t_min, t_max] = report.t_range;
    let mut rows: Vec<ScanRow> = (t_min..=t_max)
        .map(|t| ScanRow {
            t,
            points: (t as u64) * (t as u64 + 1) / 2,
            equality_cases: 0,
            strictness_exceptions: Vec::new(),
            violations: Vec::new(),
            passed: true,
        })
        .collect();
    let idx = |t: u32| (t - t_min) as usize;
    for p in &report.equality_cases {
        rows[idx(p.t)].equality_cases += 1;
    }
    for p in &report.strictness_exceptions {
        rows[idx(p.t)].strictness_exceptions.push(p.clone());
    }
    for p in &report.violations {
        rows[idx(p.t)].violations.push(p.clone());
    }
    for r in &mut rows {
        r.passed = r.violations.is_empty() && r.strictness_exceptions.is_empty();
    }
    rows
}

/// The full scan report as one JSON object with a trailing `passed` field.
pub fn scan_json(report: &ScanReport, corrupt: bool) -> Result<Value, CliError> {
    let mut v = serde_json::to_value(report)?;
    if let Value::Object(map) = &mut v {
        map.insert("passed".into(), Value::Bool(report.passed() != corrupt));
    }
    Ok(v)
}

#[derive(Clone, Debug)]
pub struct RacahValueRow {
    pub t: u32,
    pub n: u32,
    pub s: u32,
    pub value: Rational,
}

impl TableRow for RacahValueRow {
    fn schema() -> &'static [(&'static str, Kind)] {
        &[
            ("T", Kind::Int),
            ("n", Kind::Int),
            ("s", Kind::Int),
            ("value", Kind::Rational),
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.t.into(),
            self.n.into(),
            self.s.into(),
            self.value.clone().into(),
        ]
    }
}

pub fn racah_value_rows(t_min: u32, t_max: u32) -> Result<Vec<RacahValueRow>, CliError> {
    let per_t: Vec<Vec<RacahValueRow>> = (t_min..=t_max)
        .into_par_iter()
        .map(|t| -> Result<Vec<RacahValueRow>, CliError> {
            let table = racah_table(t)?;
            Ok(table
                .into_iter()
                .enumerate()
                .flat_map(|(n, row)| {
                    row.into_iter()
                        .enumerate()
                        .map(move |(s, value)| RacahValueRow {
                            t,
                            n: n as u32,
                            s: s as u32,
                            value,
                        })
                })
                .collect())
        })
        .collect::<Result<_, _>>()?;
    let mut rows: Vec<RacahValueRow> = per_t.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.t, r.n, r.s));
    Ok(rows)
}

#[derive(Clone, Debug)]
pub struct SigmaValueRow {
    pub big_n: u32,
    pub k: u32,
    pub n: u32,
    pub t: u32,
    pub sigma: Rational,
}

impl TableRow for SigmaValueRow {
    fn schema() -> &'static [(&'static str, Kind)] {
        &[
            ("N", Kind::Int),
            ("k", Kind::Int),
            ("n", Kind::Int),
            ("T", Kind::Int),
            ("sigma", Kind::Rational),
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.big_n.into(),
            self.k.into(),
            self.n.into(),
            self.t.into(),
            self.sigma.clone().into(),
        ]
    }
}

pub fn sigma_value_rows(instances: &[SigmaInstance]) -> Vec<SigmaValueRow> {
    let mut rows: Vec<SigmaValueRow> = instances
        .par_iter()
        .map(|inst| SigmaValueRow {
            big_n: inst.big_n(),
            k: inst.k(),
            n: inst.n(),
            t: inst.t(),
            sigma: sigma_closed(inst),
        })
        .collect();
    rows.sort_by_key(|r| (r.big_n, r.k));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use g2n_core::racah::bound_scan;

    #[test]
    fn sigma_rows_sorted_and_passing() {
        let rows = sigma_rows(&SigmaInstance::all_up_to(6), SigmaMethod::Both);
        let keys: Vec<(u32, u32)> = rows.iter().map(|r| (r.report.big_n, r.report.k)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(rows.iter().all(|r| r.passed));
    }

    #[test]
    fn racah_rows_sorted() {
        let rows = racah_value_rows(3, 5).unwrap();
        assert_eq!(rows.len(), 9 + 16 + 25);
        assert!(rows
            .windows(2)
            .all(|w| (w[0].t, w[0].n, w[0].s) < (w[1].t, w[1].n, w[1].s)));
    }

    #[test]
    fn scan_rows_split_by_t() {
        let report = bound_scan(3, 10, false).unwrap();
        let rows = scan_rows(&report);
        assert_eq!(rows.len(), 8);
        assert!(rows
            .iter()
            .all(|r| r.passed && r.equality_cases == r.t as u64));
        let v = scan_json(&report, false).unwrap();
        assert_eq!(v["T_range"], json!([3, 10]));
        assert_eq!(v["violations"], json!([]));
        assert_eq!(v["elapsed_ms"], 0);
        assert_eq!(v["passed"], true);
        assert_eq!(scan_json(&report, true).unwrap()["passed"], false);
    }

    #[test]
    fn ortho_and_pn_pass() {
        assert!(ortho_rows(3, 9).unwrap().iter().all(|r| r.passed));
        let pn = pn_rows(6);
        assert!(pn.iter().all(|r| r.passed));
        assert_eq!(pn[4].tau, Rational::frac(87, 10));
    }
}
