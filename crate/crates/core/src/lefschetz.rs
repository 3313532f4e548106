//! The arithmetic correction operator `U` on `G(N,2)` and the Hodge-index
//! quantity `Σ(N,k)`, computed both from the Chow ring directly and from
//! its closed-form binomial coefficients.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::chowring::{alpha, pairing, pieri_l, ChowElement, Partition2};
use crate::error::{Error, Result};
use crate::exactmath::{binom, harmonic, Rational};

pub mod projective;

/// A pair `(N, k)` with `2k <= N`, together with its shifted coordinates
/// `n = N - 2k` and `T = N + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SigmaInstance {
    big_n: u32,
    k: u32,
}

impl SigmaInstance {
    pub fn new(big_n: u32, k: u32) -> Result<Self> {
        if big_n == 0 || 2 * k > big_n {
            return Err(Error::InvalidInstance {
                n_ambient: big_n,
                k,
            });
        }
        Ok(SigmaInstance { big_n, k })
    }

    /// The Grassmannian parameter `N`.
    pub fn big_n(&self) -> u32 {
        self.big_n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `n = N - 2k`.
    pub fn n(&self) -> u32 {
        self.big_n - 2 * self.k
    }

    /// `T = N + 2`.
    pub fn t(&self) -> u32 {
        self.big_n + 2
    }

    /// Every valid instance with `N <= max_n`, ordered by `(N, k)`.
    pub fn all_up_to(max_n: u32) -> Vec<SigmaInstance> {
        (1..=max_n)
            .flat_map(|big_n| (0..=big_n / 2).map(move |k| SigmaInstance { big_n, k }))
            .collect()
    }
}

/// `Σ_{i=0..N+1} H_i`.
fn harmonic_total(big_n: u32) -> Rational {
    (0..=big_n + 1).map(harmonic).sum()
}

/// The operator `U`: zero on `s_{a,b}` with `a < N`, and
/// `U s_{N,b} = (Σ_{i=0..N+1} H_i) s_{N,b} - Σ_{i=0..⌊(N-b)/2⌋} (H_{N-b+1-i} - H_i) s_{N-i,b+i}`.
pub fn u_op(x: &ChowElement) -> ChowElement {
    let big_n = x.ambient();
    let ni = big_n as i64;
    let total = harmonic_total(big_n);
    let mut out = ChowElement::zero(big_n);
    for (p, c) in x.terms().filter(|(p, _)| p.a == ni) {
        out.add_term(*p, c * &total);
        let span = (ni - p.b) as u32;
        for i in 0..=span / 2 {
            let w = harmonic(span + 1 - i) - harmonic(i);
            out.add_term(Partition2::new(ni - i as i64, p.b + i as i64), -(c * &w));
        }
    }
    out
}

/// `L^0 α_k, ..., L^{2n} α_k` by repeated Pieri steps.
fn lefschetz_orbit(inst: &SigmaInstance) -> Vec<ChowElement> {
    let a = alpha(inst.big_n, inst.k).expect("instance is valid");
    let mut orbit = Vec::with_capacity(2 * inst.n() as usize + 1);
    orbit.push(a);
    for _ in 0..2 * inst.n() {
        let next = pieri_l(orbit.last().expect("nonempty"));
        orbit.push(next);
    }
    orbit
}

/// `Σ(N,k) = ∫ Σ_{b=0..n} L^{n-b} α_k ∧ U L^{n+b} α_k` assembled from the
/// Chow ring operations.
pub fn sigma_direct(inst: &SigmaInstance) -> Rational {
    let orbit = lefschetz_orbit(inst);
    let n = inst.n() as usize;
    (0..=n)
        .map(|b| pairing(&orbit[n - b], &u_op(&orbit[n + b])).expect("same ambient"))
        .sum()
}

/// The unreindexed sum `Σ_{i=0..2n} ∫ L^{2n-i} α_k ∧ U L^i α_k`; the terms
/// with `i < n` vanish because `U` kills every class without an `s_{N,·}`
/// component.
pub fn sigma_full_range(inst: &SigmaInstance) -> Rational {
    let orbit = lefschetz_orbit(inst);
    let top = 2 * inst.n() as usize;
    (0..=top)
        .map(|i| pairing(&orbit[top - i], &u_op(&orbit[i])).expect("same ambient"))
        .sum()
}

/// `C_b = C(N+1-b, 2k+1) C(N-2k+b, N-2k)` for `0 <= b <= N-2k`.
pub fn coeff_c(inst: &SigmaInstance, b: u32) -> Result<BigInt> {
    if b > inst.n() {
        return Err(Error::OutOfRange {
            index: b as i64,
            lo: 0,
            hi: inst.n() as i64,
        });
    }
    let (big_n, k, b) = (inst.big_n as i64, inst.k as i64, b as i64);
    Ok(binom(big_n + 1 - b, 2 * k + 1) * binom(big_n - 2 * k + b, big_n - 2 * k))
}

/// `A_{N,k} = C(N+1, N-2k) C(2N-2k+2, N+2)`.
pub fn coeff_a(inst: &SigmaInstance) -> BigInt {
    let (big_n, k) = (inst.big_n as i64, inst.k as i64);
    binom(big_n + 1, big_n - 2 * k) * binom(2 * big_n - 2 * k + 2, big_n + 2)
}

/// `A` in shifted coordinates: `C(T-1, n) C(T+n, T)`.
pub fn coeff_a_shifted(n: u32, t: u32) -> BigInt {
    let (n, t) = (n as i64, t as i64);
    binom(t - 1, n) * binom(t + n, t)
}

/// `B^i_{n,T} = Σ_j (-1)^j C(n+j, n) C(T-1-j, n) C(T-1-n+i-j, i-j) C(T+n, n-i+j)`.
///
/// Defined for any `0 <= n <= T-1`, not only for `n ≡ T (mod 2)`.
pub fn coeff_b_shifted(n: u32, t: u32, i: u32) -> BigInt {
    let (n, t, i) = (n as i64, t as i64, i as i64);
    let mut acc = BigInt::zero();
    for j in 0..=i {
        let term = binom(n + j, n)
            * binom(t - 1 - j, n)
            * binom(t - 1 - n + i - j, i - j)
            * binom(t + n, n - i + j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn check_b_index(inst: &SigmaInstance, i: u32) -> Result<()> {
    if i == 0 || i > inst.big_n + 1 {
        return Err(Error::OutOfRange {
            index: i as i64,
            lo: 1,
            hi: inst.big_n as i64 + 1,
        });
    }
    Ok(())
}

/// `B^i_{N,k}` for `1 <= i <= N+1`, via the single sum in `(n, T)` coordinates.
pub fn coeff_b(inst: &SigmaInstance, i: u32) -> Result<BigInt> {
    check_b_index(inst, i)?;
    Ok(coeff_b_shifted(inst.n(), inst.t(), i))
}

/// `B^i_{N,k} = Σ_{j,b} (-1)^j C(N+1-j, N-2k) C(N-2k+j, N-2k) C(N-2k-b, i-j) C_b`,
/// the original double sum. `j` runs over `0..=2k+1`, the full support of
/// `C(N+1-j, N-2k)`.
pub fn coeff_b_double_sum(inst: &SigmaInstance, i: u32) -> Result<BigInt> {
    check_b_index(inst, i)?;
    let (big_n, k, i) = (inst.big_n as i64, inst.k as i64, i as i64);
    let n = big_n - 2 * k;
    let mut acc = BigInt::zero();
    for j in 0..=2 * k + 1 {
        let outer = binom(big_n + 1 - j, n) * binom(n + j, n);
        if outer.is_zero() {
            continue;
        }
        let inner: BigInt = (0..=n)
            .map(|b| binom(n - b, i - j) * coeff_c(inst, b as u32).expect("b in range"))
            .sum();
        let term = outer * inner;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// The summand dropped from `B^r` when `N - b = 2r - 1` is odd:
/// `Σ_j (-1)^j C(N+1-j, N-2k) C(N-2k+j, N-2k) C(2r-2k-1, r-j)` (the common
/// factor `C_b H_r` omitted). `None` when `N - b` is even.
pub fn middle_summand(inst: &SigmaInstance, b: u32) -> Option<BigInt> {
    let (big_n, k, b) = (inst.big_n as i64, inst.k as i64, b as i64);
    if (big_n - b) % 2 == 0 {
        return None;
    }
    let r = (big_n - b + 1) / 2;
    let n = big_n - 2 * k;
    let mut acc = BigInt::zero();
    for j in 0..=2 * k + 1 {
        let term = binom(big_n + 1 - j, n) * binom(n + j, n) * binom(2 * r - 2 * k - 1, r - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Some(acc)
}

/// `Σ(n,T) = A Σ_{i=1..T-1} H_i + Σ_{i=1..T-1} B^i H_i`.
pub fn sigma_closed(inst: &SigmaInstance) -> Rational {
    sigma_closed_shifted(inst.n(), inst.t())
}

/// The closed form in `(n, T)` coordinates.
pub fn sigma_closed_shifted(n: u32, t: u32) -> Rational {
    let a = Rational::from(coeff_a_shifted(n, t));
    (1..t)
        .map(|i| (&a + &Rational::from(coeff_b_shifted(n, t, i))) * harmonic(i))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaMethod {
    Direct,
    Closed,
    Both,
}

/// Outcome of one `Σ(N,k)` evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    #[serde(rename = "N")]
    pub big_n: u32,
    pub k: u32,
    pub n: u32,
    #[serde(rename = "T")]
    pub t: u32,
    pub sigma: Rational,
    pub positive: bool,
    pub method: SigmaMethod,
    /// Direct and closed values coincide; vacuously true for a single method.
    pub agree: bool,
}

impl VerdictReport {
    pub fn passed(&self) -> bool {
        self.positive && self.agree
    }
}

/// Evaluates `Σ(N,k)`. With [`SigmaMethod::Both`] the reported value is the
/// closed form and `agree` records exact equality with the direct route.
pub fn evaluate_sigma(inst: &SigmaInstance, method: SigmaMethod) -> VerdictReport {
    let (sigma, agree) = match method {
        SigmaMethod::Direct => (sigma_direct(inst), true),
        SigmaMethod::Closed => (sigma_closed(inst), true),
        SigmaMethod::Both => {
            let closed = sigma_closed(inst);
            let agree = sigma_direct(inst) == closed;
            (closed, agree)
        }
    };
    VerdictReport {
        big_n: inst.big_n,
        k: inst.k,
        n: inst.n(),
        t: inst.t(),
        positive: sigma.is_positive(),
        sigma,
        method,
        agree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chowring::l_power;

    fn inst(big_n: u32, k: u32) -> SigmaInstance {
        SigmaInstance::new(big_n, k).unwrap()
    }

    #[test]
    fn instance_validation() {
        assert!(SigmaInstance::new(3, 2).is_err());
        assert!(SigmaInstance::new(0, 0).is_err());
        let x = inst(6, 2);
        assert_eq!((x.n(), x.t()), (2, 8));
        assert_eq!(SigmaInstance::all_up_to(4).len(), 1 + 2 + 2 + 3);
    }

    #[test]
    fn u_examples() {
        for big_n in 2..8u32 {
            let ni = big_n as i64;
            let total = harmonic_total(big_n);
            for a in 0..ni {
                assert!(u_op(&ChowElement::schubert(big_n, a, 0)).is_zero());
            }
            let top = ChowElement::schubert(big_n, ni, ni);
            assert_eq!(u_op(&top), top.scale(&(&total - &Rational::one())));
            let next = ChowElement::schubert(big_n, ni, ni - 1);
            assert_eq!(u_op(&next), next.scale(&(&total - &Rational::frac(3, 2))));
        }
    }

    #[test]
    fn sigma_small_values() {
        // Frozen from an independent dictionary-based prototype of the
        // direct pairing computation.
        assert_eq!(sigma_direct(&inst(1, 0)), Rational::from(10i64));
        assert_eq!(sigma_direct(&inst(2, 0)), Rational::from(129i64));
        assert_eq!(sigma_direct(&inst(2, 1)), Rational::from(3i64));
        assert_eq!(sigma_direct(&inst(4, 2)), Rational::frac(43, 6));
        assert_eq!(sigma_direct(&inst(8, 4)), Rational::frac(7351, 420));
    }

    #[test]
    fn degenerate_n_zero() {
        for k in 1..6u32 {
            let x = inst(2 * k, k);
            assert_eq!(x.n(), 0);
            assert_eq!(sigma_direct(&x), sigma_closed(&x));
            // R_0 = 1 forces B^i = (-1)^i A.
            let a = coeff_a(&x);
            for i in 1..=2 * k + 1 {
                let b = coeff_b(&x, i).unwrap();
                let expected = if i % 2 == 0 { a.clone() } else { -a.clone() };
                assert_eq!(b, expected);
            }
        }
    }

    #[test]
    fn direct_equals_closed() {
        for x in SigmaInstance::all_up_to(12) {
            let d = sigma_direct(&x);
            assert_eq!(d, sigma_closed(&x), "{x:?}");
            assert!(d.is_positive());
        }
    }

    #[test]
    fn low_l_exponents_contribute_nothing() {
        for x in SigmaInstance::all_up_to(9) {
            assert_eq!(sigma_full_range(&x), sigma_direct(&x), "{x:?}");
        }
    }

    #[test]
    fn coefficient_examples() {
        let x = inst(4, 1);
        assert_eq!(coeff_c(&x, 1).unwrap(), BigInt::from(12));
        assert!(coeff_c(&x, 3).is_err());
        for big_n in 1..10 {
            for k in 0..=big_n / 2 {
                let x = inst(big_n, k);
                assert_eq!(
                    coeff_c(&x, 0).unwrap(),
                    binom(big_n as i64 + 1, 2 * k as i64 + 1)
                );
            }
        }
        assert_eq!(coeff_a(&inst(2, 1)), BigInt::from(1));
        assert_eq!(coeff_a(&inst(2, 0)), BigInt::from(45));
        assert_eq!(coeff_a(&inst(4, 1)), BigInt::from(280));
        for x in SigmaInstance::all_up_to(20) {
            assert_eq!(coeff_a(&x), coeff_a_shifted(x.n(), x.t()));
            assert!(coeff_a(&x) > BigInt::zero());
        }
    }

    #[test]
    fn b_index_range() {
        let x = inst(4, 1);
        assert!(coeff_b(&x, 0).is_err());
        assert!(coeff_b(&x, 6).is_err());
        assert!(coeff_b(&x, 5).is_ok());
    }

    #[test]
    fn b_single_sum_matches_double_sum() {
        for x in SigmaInstance::all_up_to(14) {
            for i in 1..=x.big_n() + 1 {
                assert_eq!(
                    coeff_b(&x, i).unwrap(),
                    coeff_b_double_sum(&x, i).unwrap(),
                    "{x:?} i={i}"
                );
            }
        }
    }

    #[test]
    fn c_is_the_top_coefficient_of_l_iterates() {
        for x in SigmaInstance::all_up_to(20) {
            let a = alpha(x.big_n(), x.k()).unwrap();
            for b in 0..=x.n() {
                let img = l_power(&a, x.n() + b);
                let c = img.coeff(&Partition2::new(x.big_n() as i64, b as i64));
                assert_eq!(c, Rational::from(coeff_c(&x, b).unwrap()), "{x:?} b={b}");
            }
        }
    }

    #[test]
    fn c_sum_identity() {
        for big_n in 1..=60u32 {
            for k in 0..=big_n / 2 {
                let x = inst(big_n, k);
                let total: BigInt = (0..=x.n()).map(|b| coeff_c(&x, b).unwrap()).sum();
                let (ni, ki) = (big_n as i64, k as i64);
                assert_eq!(total, binom(2 * ni - 2 * ki + 2, ni + 2));
            }
        }
    }

    #[test]
    fn middle_summands_vanish() {
        for x in SigmaInstance::all_up_to(24) {
            for b in 0..=x.n() {
                if let Some(v) = middle_summand(&x, b) {
                    assert!(v.is_zero(), "{x:?} b={b}");
                } else {
                    assert_eq!((x.big_n() - b) % 2, 0);
                }
            }
        }
    }

    #[test]
    fn verdict_json() {
        let r = evaluate_sigma(&inst(2, 1), SigmaMethod::Both);
        assert!(r.passed());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"N":2,"k":1,"n":0,"T":4,"sigma":"3","positive":true,"method":"both","agree":true}"#
        );
    }
}
