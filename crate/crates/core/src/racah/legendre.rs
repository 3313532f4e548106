//! Legendre polynomials, the rescaled Racah polynomials `p_n(t)`, and the
//! bounds comparing them.
//!
//! Lattice points `s = 0..T-1` sit at `t_s = (2s+1)^2/(2T^2) - 1`, which is the
//! inverse of `s(s+1) = -1/4 + T^2 (1+t)/2`. At those nodes
//! `p_n(t_s) = (-1)^n Π_{i=1..n} (T^2-i^2)/T^2 · R_n(s,T)`; away from them
//! `p_n` is defined by its three-term recurrence.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::Rational;

use super::inequality::n_below_log_t;

/// `P_0(t), ..., P_{n_max}(t)` from
/// `(m+1) P_{m+1} = (2m+1) t P_m - m P_{m-1}`.
pub fn legendre_values(n_max: u32, t: &Rational) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(Rational::one());
    if n_max == 0 {
        return out;
    }
    out.push(t.clone());
    for m in 1..n_max as i64 {
        let prev = &out[m as usize - 1];
        let cur = &out[m as usize];
        let next = (Rational::from(2 * m + 1) * t * cur - Rational::from(m) * prev)
            / Rational::from(m + 1);
        out.push(next);
    }
    out
}

pub fn legendre_eval(n: u32, t: &Rational) -> Rational {
    legendre_values(n, t).pop().expect("nonempty")
}

/// `p_0(t), ..., p_{n_max}(t)` from
/// `t p_m = (m+1)/(2m+1) p_{m+1} - (2m^2+2m+1)/(2T^2) p_m + (1 - m^2/T^2)^2 m/(2m+1) p_{m-1}`
/// with `p_0 = 1`, `p_1 = t + 1/(2T^2)`.
pub fn p_values(n_max: u32, t_param: u32, t: &Rational) -> Vec<Rational> {
    let tt = (t_param as i64) * (t_param as i64);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(Rational::one());
    if n_max == 0 {
        return out;
    }
    out.push(t + &Rational::frac(1, 2 * tt));
    for m in 1..n_max as i64 {
        let prev = &out[m as usize - 1];
        let cur = &out[m as usize];
        let shift = t + &Rational::frac(2 * m * m + 2 * m + 1, 2 * tt);
        let damp = Rational::frac(tt - m * m, tt).pow(2) * Rational::frac(m, 2 * m + 1);
        let next = (shift * cur - damp * prev) * Rational::frac(2 * m + 1, m + 1);
        out.push(next);
    }
    out
}

pub fn p_eval(n: u32, t_param: u32, t: &Rational) -> Result<Rational> {
    if t_param < 3 {
        return Err(Error::SmallT(t_param));
    }
    Ok(p_values(n, t_param, t).pop().expect("nonempty"))
}

/// `(-1)^n Π_{i=1..n} (T^2 - i^2)/T^2`.
pub fn rescale_factor(n: u32, t_param: u32) -> Rational {
    let tt = (t_param as i64) * (t_param as i64);
    let prod: Rational = (1..=n as i64)
        .map(|i| Rational::frac(tt - i * i, tt))
        .product();
    if n.is_multiple_of(2) {
        prod
    } else {
        -prod
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeNode {
    pub s: u32,
    #[serde(rename = "T")]
    pub t_param: u32,
    pub t: Rational,
}

impl LatticeNode {
    /// `-1/4 + T^2 (1+t)/2`, which equals `s(s+1)`.
    pub fn x(&self) -> Rational {
        let tt = Rational::from((self.t_param as i64) * (self.t_param as i64));
        Rational::frac(-1, 4) + tt * (Rational::one() + &self.t) / Rational::from(2i64)
    }
}

/// `t_s = (2s+1)^2/(2T^2) - 1` for `0 <= s <= T-1`.
pub fn node_t(s: u32, t_param: u32) -> Result<LatticeNode> {
    if s >= t_param {
        return Err(Error::OutOfRange {
            index: s as i64,
            lo: 0,
            hi: t_param as i64 - 1,
        });
    }
    let odd = 2 * s as i64 + 1;
    let tt = (t_param as i64) * (t_param as i64);
    Ok(LatticeNode {
        s,
        t_param,
        t: Rational::frac(odd * odd, 2 * tt) - Rational::one(),
    })
}

/// `count + 1` equally spaced rationals from `lo` to `hi`.
pub fn rational_grid(lo: &Rational, hi: &Rational, count: u32) -> Vec<Rational> {
    let count = count.max(1);
    let step = (hi - lo) / Rational::from(count);
    (0..=count)
        .map(|i| lo + &(&step * &Rational::from(i)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LegendreDeviationReport {
    pub n: u32,
    #[serde(rename = "T")]
    pub t_param: u32,
    pub grid_points: u32,
    pub max_deviation: Rational,
    /// `(3/2) 4^n / T^2`.
    pub bound: Rational,
    pub holds: bool,
    /// `max_deviation <= 1/10`, checked only when `T >= 90` and `n < log T`.
    pub tenth_bound: Option<bool>,
}

/// Max of `|p_n(t) - P_n(t)|` over `grid_size + 1` equally spaced points of
/// `[-1, 1]`, against `(3/2) 4^n / T^2`. Requires `1 + 2n + 2n^2 < T^2/10`.
pub fn legendre_deviation_check(
    n: u32,
    t_param: u32,
    grid_size: u32,
) -> Result<LegendreDeviationReport> {
    let (ni, tt) = (n as i64, (t_param as i64) * (t_param as i64));
    if t_param < 3 || 10 * (1 + 2 * ni + 2 * ni * ni) >= tt {
        return Err(Error::DeviationHypothesis { n, t: t_param });
    }
    let grid = rational_grid(&Rational::from(-1i64), &Rational::one(), grid_size);
    let max_deviation = grid
        .iter()
        .map(|t| (p_eval(n, t_param, t).expect("T >= 3") - legendre_eval(n, t)).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let bound = Rational::new(
        BigInt::from(3) * BigInt::from(4).pow(n),
        BigInt::from(2 * tt),
    )?;
    let tenth_bound = (t_param >= 90 && n_below_log_t(n, t_param))
        .then(|| max_deviation <= Rational::frac(1, 10));
    Ok(LegendreDeviationReport {
        n,
        t_param,
        grid_points: grid.len() as u32,
        holds: max_deviation <= bound,
        max_deviation,
        bound,
        tenth_bound,
    })
}

/// Sample grids for [`legendre_bounds_check`].
#[derive(Clone, Debug)]
pub struct LegendreBoundSamples {
    /// Degrees `2..=n_max` for the `3/4` bound.
    pub n_max: u32,
    /// Intervals of the exact rational grid on `[-9/10, 9/10]`.
    pub t_grid: u32,
    /// Points of the floating-point θ-grid on `[0, π]`.
    pub theta_grid: u32,
    /// Absolute slack for the floating-point bound.
    pub theta_tolerance: f64,
    /// `T` range for the node window; `T >= 10` is enforced.
    pub window_t_range: (u32, u32),
    /// `T` samples for the product bound; values below 90 are skipped.
    pub product_t_samples: Vec<u32>,
}

impl Default for LegendreBoundSamples {
    fn default() -> Self {
        LegendreBoundSamples {
            n_max: 40,
            t_grid: 180,
            theta_grid: 10_000,
            theta_tolerance: 1e-9,
            window_t_range: (10, 200),
            product_t_samples: vec![90, 91, 100, 150, 200, 500, 1000, 5000, 10_000, 100_000],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LegendreBoundReport {
    /// Largest `|P_n(t)|` seen on the exact grid, `2 <= n <= n_max`.
    pub bound_max_abs: Rational,
    pub bound_holds: bool,
    /// Largest `sqrt(sin θ)|P_n(cos θ)| - sqrt(2/(π n))` in floating point.
    pub envelope_max_excess: f64,
    pub envelope_holds: bool,
    pub window_checked: usize,
    pub window_holds: bool,
    pub product_checked: usize,
    pub product_holds: bool,
}

impl LegendreBoundReport {
    pub fn passed(&self) -> bool {
        self.bound_holds && self.envelope_holds && self.window_holds && self.product_holds
    }
}

fn legendre_f64(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return prev;
    }
    for m in 1..n {
        let m = m as f64;
        let next = ((2.0 * m + 1.0) * x * cur - m * prev) / (m + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// - Bound: `|P_n(t)| <= 3/4` on `|t| <= 9/10` for `n >= 2` (exact).
/// - Envelope: floating-point smoke test of `sqrt(sin θ)|P_n(cos θ)| < sqrt(2/(π n))`.
/// - Window: `|t_s| <= 9/10` whenever `√5/10 <= s/T <= 4/5`, `T >= 10`, with
///   the lower endpoint tested as `(10 s)^2 >= 5 T^2`.
/// - Product: `Π_{i=1..n} (T^2-i^2) / T^{2n} > 40/41` for `T >= 90`, `n < log T`.
pub fn legendre_bounds_check(samples: &LegendreBoundSamples) -> LegendreBoundReport {
    let nine_tenths = Rational::frac(9, 10);
    let three_quarters = Rational::frac(3, 4);

    let mut bound_max_abs = Rational::zero();
    for t in rational_grid(&-&nine_tenths, &nine_tenths, samples.t_grid) {
        let values = legendre_values(samples.n_max, &t);
        for v in values.iter().skip(2) {
            let v = v.abs();
            if v > bound_max_abs {
                bound_max_abs = v;
            }
        }
    }
    let bound_holds = bound_max_abs <= three_quarters;

    let mut envelope_max_excess = f64::NEG_INFINITY;
    let steps = samples.theta_grid.max(2) - 1;
    for i in 0..=steps {
        let theta = std::f64::consts::PI * i as f64 / steps as f64;
        let (sin, cos) = theta.sin_cos();
        let weight = sin.max(0.0).sqrt();
        for n in 1..=samples.n_max {
            let lhs = weight * legendre_f64(n, cos).abs();
            let rhs = (2.0 / (std::f64::consts::PI * n as f64)).sqrt();
            envelope_max_excess = envelope_max_excess.max(lhs - rhs);
        }
    }
    let envelope_holds = envelope_max_excess < samples.theta_tolerance;

    let mut window_checked = 0;
    let mut window_holds = true;
    let (b_lo, b_hi) = samples.window_t_range;
    for t_param in b_lo.max(10)..=b_hi {
        let ti = t_param as i64;
        for s in 0..t_param {
            let si = s as i64;
            if 100 * si * si < 5 * ti * ti || 5 * si > 4 * ti {
                continue;
            }
            window_checked += 1;
            let node = node_t(s, t_param).expect("s < T");
            if node.t.abs() > nine_tenths {
                window_holds = false;
            }
        }
    }

    let mut product_checked = 0;
    let mut product_holds = true;
    let threshold = Rational::frac(40, 41);
    for &t_param in samples.product_t_samples.iter().filter(|&&t| t >= 90) {
        for n in 0.. {
            if !n_below_log_t(n, t_param) {
                break;
            }
            product_checked += 1;
            let factor = rescale_factor(n, t_param).abs();
            if factor <= threshold {
                product_holds = false;
            }
        }
    }

    LegendreBoundReport {
        bound_max_abs,
        bound_holds,
        envelope_max_excess,
        envelope_holds,
        window_checked,
        window_holds,
        product_checked,
        product_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::racah::{racah_eval, RacahParams};

    #[test]
    fn legendre_examples() {
        for n in 0..=50 {
            assert_eq!(legendre_eval(n, &Rational::one()), Rational::one());
            let at_minus = legendre_eval(n, &Rational::from(-1i64));
            assert_eq!(at_minus, Rational::from(if n % 2 == 0 { 1i64 } else { -1 }));
        }
        assert_eq!(legendre_eval(2, &Rational::zero()), Rational::frac(-1, 2));
        let t = Rational::frac(3, 7);
        assert_eq!(legendre_eval(1, &t), t);
        assert_eq!(
            legendre_eval(2, &Rational::frac(9, 10)),
            Rational::frac(143, 200)
        );
    }

    #[test]
    fn legendre_leading_coefficient_is_positive() {
        // The leading coefficient is the n-th forward difference at unit
        // steps divided by n!; its sign is the sign of the difference.
        for n in 0..=30u32 {
            let mut diffs: Vec<Rational> = (0..=n)
                .map(|i| legendre_eval(n, &Rational::from(i)))
                .collect();
            for _ in 0..n {
                diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
            }
            assert!(diffs[0].is_positive(), "n={n}");
        }
    }

    #[test]
    fn p_examples() {
        let t = Rational::frac(-2, 5);
        for tp in 3..10 {
            assert_eq!(p_eval(0, tp, &t).unwrap(), Rational::one());
            let tt = (tp * tp) as i64;
            assert_eq!(p_eval(1, tp, &t).unwrap(), &t + &Rational::frac(1, 2 * tt));
        }
        assert!(p_eval(1, 2, &t).is_err());
    }

    #[test]
    fn lattice_agreement() {
        for tp in 3..=14u32 {
            for s in 0..tp {
                let node = node_t(s, tp).unwrap();
                let ps = p_values(tp - 1, tp, &node.t);
                for n in 0..tp {
                    let r = racah_eval(RacahParams::new(n, s, tp).unwrap()).unwrap();
                    assert_eq!(
                        ps[n as usize],
                        rescale_factor(n, tp) * r,
                        "n={n} s={s} T={tp}"
                    );
                }
            }
        }
    }

    #[test]
    fn node_examples() {
        for tp in 3..20u32 {
            let tt = (tp * tp) as i64;
            assert_eq!(
                node_t(0, tp).unwrap().t,
                Rational::frac(1, 2 * tt) - Rational::one()
            );
            let odd = 2 * tp as i64 - 1;
            assert_eq!(
                node_t(tp - 1, tp).unwrap().t,
                Rational::frac(odd * odd, 2 * tt) - Rational::one()
            );
            for s in 0..tp {
                let node = node_t(s, tp).unwrap();
                assert_eq!(node.x(), Rational::from((s * (s + 1)) as i64));
                assert!(node.t >= -Rational::one() && node.t < Rational::one());
            }
        }
        assert!(node_t(5, 5).is_err());
    }

    #[test]
    fn deviation_examples() {
        let r0 = legendre_deviation_check(0, 10, 20).unwrap();
        assert!(r0.max_deviation.is_zero());
        for tp in [8u32, 13, 20] {
            let r1 = legendre_deviation_check(1, tp, 50).unwrap();
            assert_eq!(r1.max_deviation, Rational::frac(1, 2 * (tp * tp) as i64));
            assert!(r1.holds);
        }
        let r4 = legendre_deviation_check(4, 40, 200).unwrap();
        assert_eq!(r4.bound, Rational::frac(3 * 256, 2 * 1600));
        assert!(r4.holds);
        assert_eq!(r4.grid_points, 201);
        assert!(matches!(
            legendre_deviation_check(4, 10, 10),
            Err(Error::DeviationHypothesis { .. })
        ));
    }

    #[test]
    fn deviation_tenth_bound() {
        let r = legendre_deviation_check(3, 90, 40).unwrap();
        assert_eq!(r.tenth_bound, Some(true));
        assert_eq!(
            legendre_deviation_check(3, 40, 40).unwrap().tenth_bound,
            None
        );
    }

    #[test]
    fn bounds_small_samples() {
        let samples = LegendreBoundSamples {
            n_max: 8,
            t_grid: 36,
            theta_grid: 500,
            theta_tolerance: 1e-9,
            window_t_range: (10, 40),
            product_t_samples: vec![90, 1000],
        };
        let report = legendre_bounds_check(&samples);
        assert!(report.passed(), "{report:?}");
        assert!(report.bound_max_abs >= Rational::frac(143, 200));
        assert!(report.window_checked > 0);
        // n = 0..=4 at T=90, n = 0..=6 at T=1000
        assert_eq!(report.product_checked, 5 + 7);
    }

    #[test]
    fn node_window_example() {
        // T=10, s=3: (10*3)^2 = 900 >= 5*100 and 5*3 <= 40.
        let node = node_t(3, 10).unwrap();
        assert_eq!(node.t, Rational::frac(49, 200) - Rational::one());
        assert!(node.t.abs() <= Rational::frac(9, 10));
    }

    #[test]
    fn product_bound_example() {
        assert!(rescale_factor(4, 90).abs() > Rational::frac(40, 41));
    }
}
