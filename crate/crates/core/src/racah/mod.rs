//! Racah polynomials `R_n(s,T) = R_n(s(s+1); 0, 0, T, -T)`.
//!
//! The value is the terminating hypergeometric sum
//!
//! ```text
//! R_n(s,T) = Σ_{r=0..min(n,s)} (-n)_r (n+1)_r (-s)_r (s+1)_r / ((1)_r (1+T)_r (1-T)_r r!)
//! ```
//!
//! evaluated exactly. Consecutive terms differ by a ratio of small integers,
//! so the sum is folded Horner-style into one numerator/denominator pair of
//! big integers with a single reduction at the end.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{pochhammer, Rational};

pub mod inequality;
pub mod legendre;
pub mod scan;

pub use inequality::{
    cauchy_sides, cauchy_sufficient, certify_needed, e_power_exceeds, goodrange, n_below_log_t,
    needed_inequality, needed_with_table, Branch, CertificationReport, CertificationRow,
    NeededReport,
};
pub use legendre::{
    legendre_bounds_check, legendre_deviation_check, legendre_eval, legendre_values, node_t,
    p_eval, p_values, rescale_factor, LatticeNode, LegendreBoundReport, LegendreBoundSamples,
    LegendreDeviationReport,
};
pub use scan::{bound_scan, ScanPoint, ScanReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RacahParams {
    pub n: u32,
    pub s: u32,
    #[serde(rename = "T")]
    pub t: u32,
}

impl RacahParams {
    pub fn new(n: u32, s: u32, t: u32) -> Result<Self> {
        let p = RacahParams { n, s, t };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.t < 3 {
            return Err(Error::SmallT(self.t));
        }
        if self.n.min(self.s) >= self.t {
            return Err(Error::RacahDomain {
                n: self.n,
                s: self.s,
                t: self.t,
            });
        }
        Ok(())
    }
}

/// `R_n(s,T)` as an unreduced fraction `(numerator, denominator)` with a
/// nonzero denominator. The caller must have validated the parameters.
pub(crate) fn racah_fraction(n: u32, s: u32, t: u32) -> (BigInt, BigInt) {
    let (n, s, t) = (n as i64, s as i64, t as i64);
    let m = n.min(s);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    // ratio t_{j+1}/t_j = (j-n)(j+n+1)(j-s)(j+s+1) / ((j+1)^2 (T+1+j)(j+1-T))
    for j in (0..m).rev() {
        let p = (j - n) * (j + n + 1) * (j - s) * (j + s + 1);
        let q = (j + 1) * (j + 1) * (t + 1 + j) * (j + 1 - t);
        num = &den * q + num * p;
        den *= q;
    }
    (num, den)
}

/// Exact `R_n(s,T)`.
pub fn racah_eval(p: RacahParams) -> Result<Rational> {
    p.validate()?;
    let (num, den) = racah_fraction(p.n, p.s, p.t);
    Rational::new(num, den)
}

/// Term-by-term evaluation straight from the Pochhammer definition. Slow;
/// kept as an independent route for cross-checks.
pub fn racah_eval_termwise(p: RacahParams) -> Result<Rational> {
    p.validate()?;
    let (n, s, t) = (p.n as i64, p.s as i64, p.t as i64);
    let mut acc = Rational::zero();
    for r in 0..=n.min(s) as u32 {
        let num =
            pochhammer(-n, r) * pochhammer(n + 1, r) * pochhammer(-s, r) * pochhammer(s + 1, r);
        let den = pochhammer(1, r) * pochhammer(1 + t, r) * pochhammer(1 - t, r) * pochhammer(1, r);
        acc += Rational::new(num, den)?;
    }
    Ok(acc)
}

/// `|R_n(s,T)|` compared with 1, without reducing the fraction.
pub(crate) fn racah_abs_cmp_one(n: u32, s: u32, t: u32) -> std::cmp::Ordering {
    let (num, den) = racah_fraction(n, s, t);
    num.abs().cmp(&den.abs())
}

/// `R_n(s,T) == R_s(n,T)`.
pub fn racah_symmetry_check(n: u32, s: u32, t: u32) -> Result<bool> {
    Ok(racah_eval(RacahParams::new(n, s, t)?)? == racah_eval(RacahParams::new(s, n, t)?)?)
}

/// `R_n(s,T)` for `s = 0..T-1`.
pub fn racah_row(n: u32, t: u32) -> Result<Vec<Rational>> {
    (0..t)
        .map(|s| racah_eval(RacahParams::new(n, s, t)?))
        .collect()
}

/// `table[n][s] = R_n(s,T)` for `0 <= n, s <= T-1`, filled using symmetry.
pub fn racah_table(t: u32) -> Result<Vec<Vec<Rational>>> {
    if t < 3 {
        return Err(Error::SmallT(t));
    }
    let mut table = vec![vec![Rational::zero(); t as usize]; t as usize];
    for n in 0..t {
        for s in n..t {
            let v = racah_eval(RacahParams::new(n, s, t)?)?;
            table[s as usize][n as usize] = v.clone();
            table[n as usize][s as usize] = v;
        }
    }
    Ok(table)
}

/// `R_{T-1}(s,T) = Π_{j=1..s} (j-T)/(j+T)`.
pub fn closed_form_last(s: u32, t: u32) -> Result<Rational> {
    if t < 3 {
        return Err(Error::SmallT(t));
    }
    if s >= t {
        return Err(Error::OutOfRange {
            index: s as i64,
            lo: 0,
            hi: t as i64 - 1,
        });
    }
    let t = t as i64;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 1..=s as i64 {
        num *= j - t;
        den *= j + t;
    }
    Rational::new(num, den)
}

/// `Σ_{s=0..T-1} (2s+1) R_n(s,T) R_m(s,T)` and whether it equals
/// `T^2/(2n+1) δ_{nm}`.
pub fn orthogonality_check(t: u32, n: u32, m: u32) -> Result<(Rational, bool)> {
    let rn = racah_row(n, t)?;
    let rm = if n == m { rn.clone() } else { racah_row(m, t)? };
    Ok(orthogonality_from_rows(t, n, m, &rn, &rm))
}

/// Orthogonality sum for two precomputed rows `R_n(·,T)`, `R_m(·,T)`.
pub fn orthogonality_from_rows(
    t: u32,
    n: u32,
    m: u32,
    rn: &[Rational],
    rm: &[Rational],
) -> (Rational, bool) {
    let sum: Rational = rn
        .iter()
        .zip(rm)
        .enumerate()
        .map(|(s, (x, y))| Rational::from(2 * s as i64 + 1) * x * y)
        .sum();
    let expected = if n == m {
        Rational::frac((t as i64) * (t as i64), 2 * n as i64 + 1)
    } else {
        Rational::zero()
    };
    let ok = sum == expected;
    (sum, ok)
}

/// Full orthogonality matrix check for one `T`: every pair `n, m <= T-1`.
pub fn orthogonality_all(t: u32) -> Result<bool> {
    let table = racah_table(t)?;
    for n in 0..t {
        for m in n..t {
            let (_, ok) = orthogonality_from_rows(t, n, m, &table[n as usize], &table[m as usize]);
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
