//! The alternating Racah inequality
//!
//! ```text
//! Σ_{s=1..T-1} (-1)^{s+1} R_n(s,T) H_s  <  Σ_{s=1..T-1} H_s
//! ```
//!
//! and the three routes that certify it for a concave increasing `H`:
//! the Cauchy–Schwarz bound from orthogonality, the closed forms for small
//! `n` and `n = T-1`, and the Legendre comparison for `T` exponentially
//! large in `n`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{validate_concave, Rational};

use super::{racah_row, racah_table};

/// Certified comparison of `e^x` (integer `x >= 0`) against an integer.
/// Returns `Greater` when `e^x > target`, `Less` when `e^x < target`.
fn exp_cmp(x: u32, target: &BigInt) -> Ordering {
    if x == 0 {
        return BigInt::one().cmp(target);
    }
    let xr = Rational::from(x);
    let target = Rational::from(target.clone());
    let mut partial = Rational::one();
    let mut term = Rational::one();
    for k in 1u32.. {
        term = &term * &xr / Rational::from(k);
        partial += &term;
        if partial > target {
            return Ordering::Greater;
        }
        // Tail after x^k/k! is at most term * x/(k+1) / (1 - x/(k+2)) once k+2 > x.
        if k + 2 > x {
            let ratio = Rational::frac(x as i64, k as i64 + 2);
            let next = &term * &Rational::frac(x as i64, k as i64 + 1);
            let tail = next / (Rational::one() - ratio);
            if &partial + &tail < target {
                return Ordering::Less;
            }
        }
    }
    unreachable!("e^x is irrational for x >= 1")
}

/// `e^x > target`, decided with certified rational bounds.
pub fn e_power_exceeds(x: u32, target: &BigInt) -> bool {
    exp_cmp(x, target) == Ordering::Greater
}

/// `log T < n + 1/2`, i.e. `T^2 < e^{2n+1}`.
pub fn goodrange(n: u32, t: u32) -> bool {
    let t2 = BigInt::from(t) * BigInt::from(t);
    e_power_exceeds(2 * n + 1, &t2)
}

/// `n < log T`, i.e. `T > e^n`.
pub fn n_below_log_t(n: u32, t: u32) -> bool {
    exp_cmp(n, &BigInt::from(t)) == Ordering::Less
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeededReport {
    pub n: u32,
    #[serde(rename = "T")]
    pub t: u32,
    /// `Σ_{s=1..T-1} (-1)^{s+1} R_n(s,T) H_s`
    pub lhs: Rational,
    /// `Σ_{s=1..T-1} H_s`
    pub rhs: Rational,
    pub holds: bool,
}

fn check_sequence(seq: &[Rational], t: u32) -> Result<()> {
    if t < 3 {
        return Err(Error::SmallT(t));
    }
    let needed = t as usize - 1;
    if seq.len() < needed {
        return Err(Error::SequenceTooShort {
            got: seq.len(),
            needed,
        });
    }
    Ok(())
}

fn check_n(n: u32, t: u32) -> Result<()> {
    if n >= t {
        return Err(Error::OutOfRange {
            index: n as i64,
            lo: 0,
            hi: t as i64 - 1,
        });
    }
    Ok(())
}

/// Evaluates both sides exactly. `seq[k-1]` is `H_k`; any positive sequence
/// is accepted.
pub fn needed_inequality(seq: &[Rational], n: u32, t: u32) -> Result<NeededReport> {
    check_sequence(seq, t)?;
    check_n(n, t)?;
    let row = racah_row(n, t)?;
    Ok(needed_with_row(&row, seq, n, t))
}

pub(crate) fn needed_with_row(row: &[Rational], seq: &[Rational], n: u32, t: u32) -> NeededReport {
    let mut lhs = Rational::zero();
    let mut rhs = Rational::zero();
    for s in 1..t as usize {
        let h = &seq[s - 1];
        let term = &row[s] * h;
        if s % 2 == 1 {
            lhs += term;
        } else {
            lhs -= term;
        }
        rhs += h;
    }
    let holds = lhs < rhs;
    NeededReport {
        n,
        t,
        lhs,
        rhs,
        holds,
    }
}

/// All `n = 0..T-1` against one precomputed Racah table.
pub fn needed_with_table(table: &[Vec<Rational>], seq: &[Rational]) -> Result<Vec<NeededReport>> {
    let t = table.len() as u32;
    check_sequence(seq, t)?;
    Ok((0..t)
        .map(|n| needed_with_row(&table[n as usize], seq, n, t))
        .collect())
}

/// Both sides of `Σ_{s=0..T-1} H_s^2/(2s+1) < (2n+1) ((1/T) Σ_{s=0..T-1} H_s)^2`.
pub fn cauchy_sides(seq: &[Rational], n: u32, t: u32) -> Result<(Rational, Rational)> {
    check_sequence(seq, t)?;
    check_n(n, t)?;
    let mut lhs = Rational::zero();
    let mut mean = Rational::zero();
    for s in 1..t as usize {
        let h = &seq[s - 1];
        lhs += h * h / Rational::from(2 * s as i64 + 1);
        mean += h;
    }
    let mean = mean / Rational::from(t);
    let rhs = Rational::from(2 * n as i64 + 1) * &mean * &mean;
    Ok((lhs, rhs))
}

/// The orthogonality/Cauchy–Schwarz sufficient condition for the inequality.
pub fn cauchy_sufficient(seq: &[Rational], n: u32, t: u32) -> Result<bool> {
    let (lhs, rhs) = cauchy_sides(seq, n, t)?;
    Ok(lhs < rhs)
}

/// Which argument certifies the inequality at `(n, T)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// The Cauchy–Schwarz condition holds for this sequence.
    Cauchy,
    /// `n <= 3` or `n = T-1`, with `|R_n(s,T)| <= 1` on the row and equality
    /// only at `s = 0` or `n = 0`.
    ClosedForm,
    /// `T >= 90` and `n < log T`: the Legendre comparison applies.
    Legendre,
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificationRow {
    pub n: u32,
    pub branch: Branch,
    pub direct: NeededReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    #[serde(rename = "T")]
    pub t: u32,
    pub rows: Vec<CertificationRow>,
    pub all_certified: bool,
    pub all_hold: bool,
}

impl CertificationReport {
    pub fn passed(&self) -> bool {
        self.all_certified && self.all_hold
    }
}

fn row_bounded_strictly(row: &[Rational], n: u32) -> bool {
    let one = Rational::one();
    row.iter().enumerate().all(|(s, r)| {
        let a = r.abs();
        a < one || (a == one && (n == 0 || s == 0))
    })
}

/// Labels each `n = 0..T-1` with a certifying branch and confirms the
/// inequality by direct exact evaluation. `seq` must be concave increasing.
pub fn certify_needed(seq: &[Rational], t: u32) -> Result<CertificationReport> {
    check_sequence(seq, t)?;
    if !validate_concave(seq) {
        return Err(Error::NotConcave);
    }
    let table = racah_table(t)?;
    let mut rows = Vec::with_capacity(t as usize);
    for n in 0..t {
        let row = &table[n as usize];
        let direct = needed_with_row(row, seq, n, t);
        let branch = if cauchy_sufficient(seq, n, t)? {
            Branch::Cauchy
        } else if (n <= 3 || n == t - 1) && row_bounded_strictly(row, n) {
            Branch::ClosedForm
        } else if t >= 90 && n_below_log_t(n, t) {
            Branch::Legendre
        } else {
            Branch::Uncertified
        };
        rows.push(CertificationRow { n, branch, direct });
    }
    let all_certified = rows.iter().all(|r| r.branch != Branch::Uncertified);
    let all_hold = rows.iter().all(|r| r.direct.holds);
    Ok(CertificationReport {
        t,
        rows,
        all_certified,
        all_hold,
    })
}
