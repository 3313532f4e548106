//! Projective space `P^n` over `Spec Z`, with the arithmetic Lefschetz
//! operator `L̂` and its explicit adjoint `Λ̂` written on the basis
//! `ω̂^0..ω̂^n, ω^0..ω^n`.
//!
//! `L̂` walks the chain `1̂, ω̂, ..., ω̂^n, τ_n, τ_n ω, ..., τ_n ω^n` one step
//! to the right and kills the last element. `τ_n = Σ_{k=1..n} H_k` is kept as
//! an explicit field rather than folded into the basis.

use crate::error::{Error, Result};
use crate::exactmath::{harmonic, Rational};

/// `τ_n = H_1 + ... + H_n`.
pub fn tau(n: u32) -> Rational {
    (1..=n).map(harmonic).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PnElement {
    n: u32,
    /// Coefficients of `ω̂^0..ω̂^n`.
    hat: Vec<Rational>,
    /// Coefficients of `ω^0..ω^n`.
    form: Vec<Rational>,
}

impl PnElement {
    pub fn zero(n: u32) -> Self {
        PnElement {
            n,
            hat: vec![Rational::zero(); n as usize + 1],
            form: vec![Rational::zero(); n as usize + 1],
        }
    }

    pub fn new(hat: Vec<Rational>, form: Vec<Rational>) -> Result<Self> {
        if hat.is_empty() || hat.len() != form.len() {
            return Err(Error::OutOfRange {
                index: form.len() as i64,
                lo: hat.len() as i64,
                hi: hat.len() as i64,
            });
        }
        Ok(PnElement {
            n: hat.len() as u32 - 1,
            hat,
            form,
        })
    }

    /// `ω̂^i`.
    pub fn hat_basis(n: u32, i: usize) -> Self {
        let mut x = PnElement::zero(n);
        x.hat[i] = Rational::one();
        x
    }

    /// `ω^i`.
    pub fn form_basis(n: u32, i: usize) -> Self {
        let mut x = PnElement::zero(n);
        x.form[i] = Rational::one();
        x
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn hat(&self) -> &[Rational] {
        &self.hat
    }

    pub fn form(&self) -> &[Rational] {
        &self.form
    }

    fn scale(&self, c: &Rational) -> Self {
        PnElement {
            n: self.n,
            hat: self.hat.iter().map(|x| x * c).collect(),
            form: self.form.iter().map(|x| x * c).collect(),
        }
    }

    fn sub(&self, other: &PnElement) -> Self {
        PnElement {
            n: self.n,
            hat: self
                .hat
                .iter()
                .zip(&other.hat)
                .map(|(x, y)| x - y)
                .collect(),
            form: self
                .form
                .iter()
                .zip(&other.form)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }
}

/// `L̂`: `ω̂^i -> ω̂^{i+1}` (`i < n`), `ω̂^n -> τ_n ω^n`, `ω^i -> ω^{i+1}`
/// (`i < n`), `ω^n -> 0`.
pub fn pn_lhat(x: &PnElement, tau: &Rational) -> PnElement {
    let n = x.n as usize;
    let mut out = PnElement::zero(x.n);
    for i in 0..n {
        out.hat[i + 1] += &x.hat[i];
        out.form[i + 1] += &x.form[i];
    }
    out.form[n] += &x.hat[n] * tau;
    out
}

/// `Λ̂`: `ω̂^i -> i(n+2-i) ω̂^{i-1}` and
/// `ω^i -> ((n+1)/τ_n) ω̂^i + i(n-i) ω^{i-1}`.
pub fn pn_lambdahat(x: &PnElement, tau: &Rational) -> Result<PnElement> {
    let n = x.n as i64;
    let lift = Rational::from(n + 1).checked_div(tau)?;
    let mut out = PnElement::zero(x.n);
    for i in 0..=n {
        let iu = i as usize;
        if i > 0 {
            out.hat[iu - 1] += &x.hat[iu] * &Rational::from(i * (n + 2 - i));
            out.form[iu - 1] += &x.form[iu] * &Rational::from(i * (n - i));
        }
        out.hat[iu] += &x.form[iu] * &lift;
    }
    Ok(out)
}

/// Checks `(Λ̂ L̂ - L̂ Λ̂) x = (n + 1 - 2p) x` on every basis element, where
/// `ω̂^i` has degree `p = i` and `ω^i` has degree `p = i + 1`.
pub fn pn_commutator_check(n: u32) -> bool {
    if n == 0 {
        return false;
    }
    let tau = tau(n);
    let basis = (0..=n as usize)
        .map(|i| (PnElement::hat_basis(n, i), i as i64))
        .chain((0..=n as usize).map(|i| (PnElement::form_basis(n, i), i as i64 + 1)));
    for (x, p) in basis {
        let Ok(lambda_l) = pn_lambdahat(&pn_lhat(&x, &tau), &tau) else {
            return false;
        };
        let Ok(lambda_x) = pn_lambdahat(&x, &tau) else {
            return false;
        };
        let commutator = lambda_l.sub(&pn_lhat(&lambda_x, &tau));
        if commutator != x.scale(&Rational::from(n as i64 + 1 - 2 * p)) {
            return false;
        }
    }
    true
}

/// `U(ω^i) = δ_{i,n} τ_n ω^n` on the form part.
pub fn pn_u(x: &PnElement) -> PnElement {
    let n = x.n as usize;
    let mut out = PnElement::zero(x.n);
    out.form[n] = &x.form[n] * &tau(x.n);
    out
}

/// `Σ_{i=0..n} ∫ ω^{n-i} ∧ U(ω^i)` for the unit class; equals `τ_n`.
pub fn pn_sigma(n: u32) -> Rational {
    let n_us = n as usize;
    (0..=n_us)
        .map(|i| {
            let u = pn_u(&PnElement::form_basis(n, i));
            // ∫ ω^{n-i} ∧ c ω^j is c when (n-i) + j = n.
            u.form[i].clone()
        })
        .sum()
}
