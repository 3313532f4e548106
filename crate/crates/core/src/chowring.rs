//! The classical Chow ring of the Grassmannian `G(N,2)` in the Schubert basis.
//!
//! Classes `s_{a,b}` are indexed by two-row partitions `N >= a >= b >= 0`.
//! Multiplication by `s_1` is the Lefschetz operator `L`, given on the basis
//! by the Pieri rule `L s_{a,b} = s_{a+1,b} + s_{a,b+1}`, where any symbol
//! outside the `2 x N` box is zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{binom, factorial, Rational};
use crate::linalg;

/// A partition with at most two rows, `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition2 {
    pub a: i64,
    pub b: i64,
}

impl Partition2 {
    pub const fn new(a: i64, b: i64) -> Self {
        Partition2 { a, b }
    }

    /// Fits in the `2 x N` box: `N >= a >= b >= 0`.
    pub fn is_valid(&self, n: u32) -> bool {
        n as i64 >= self.a && self.a >= self.b && self.b >= 0
    }

    pub fn size(&self) -> i64 {
        self.a + self.b
    }

    pub fn contains(&self, mu: &Partition2) -> bool {
        self.a >= mu.a && self.b >= mu.b
    }
}

/// All partitions of `p` that fit in the `2 x N` box, ordered by `a` descending.
pub fn degree_basis(n: u32, p: i64) -> Vec<Partition2> {
    let n = n as i64;
    if p < 0 || p > 2 * n {
        return Vec::new();
    }
    let lo = (p + 1) / 2;
    let hi = p.min(n);
    (lo..=hi).rev().map(|a| Partition2::new(a, p - a)).collect()
}

/// Sparse rational combination of Schubert classes on `G(N,2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowElement {
    n: u32,
    terms: BTreeMap<Partition2, Rational>,
}

impl ChowElement {
    pub fn zero(n: u32) -> Self {
        ChowElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The class `s_{a,b}`; zero when `(a,b)` lies outside the box.
    pub fn schubert(n: u32, a: i64, b: i64) -> Self {
        let mut x = ChowElement::zero(n);
        x.add_term(Partition2::new(a, b), Rational::one());
        x
    }

    pub fn from_terms(n: u32, terms: impl IntoIterator<Item = (Partition2, Rational)>) -> Self {
        let mut x = ChowElement::zero(n);
        for (p, c) in terms {
            x.add_term(p, c);
        }
        x
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    /// Adds `coeff * s_p`. Out-of-box symbols and zero results are dropped.
    pub fn add_term(&mut self, p: Partition2, coeff: Rational) {
        if !p.is_valid(self.n) || coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(p).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Partition2) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition2, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct degrees `|λ|` present, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(Partition2::size).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The single degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ChowElement::from_terms(self.n, self.terms.iter().map(|(p, x)| (*p, x * c)))
    }

    pub fn add(&self, other: &ChowElement) -> Result<Self> {
        check_ambient(self, other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ChowElement) -> Result<Self> {
        self.add(&other.scale(&Rational::from(-1i64)))
    }

    /// Coefficients on `degree_basis(N, p)`.
    pub fn dense(&self, p: i64) -> Vec<Rational> {
        degree_basis(self.n, p)
            .iter()
            .map(|q| self.coeff(q))
            .collect()
    }

    /// `Some(c)` with `self = c * other` when both are nonzero and proportional.
    pub fn ratio_to(&self, other: &ChowElement) -> Option<Rational> {
        if self.n != other.n || self.is_zero() || other.is_zero() {
            return None;
        }
        if self.terms.keys().ne(other.terms.keys()) {
            return None;
        }
        let (p, x) = self.terms.iter().next()?;
        let c = x.checked_div(&other.terms[p]).ok()?;
        other
            .terms
            .iter()
            .all(|(q, y)| y * &c == self.terms[q])
            .then_some(c)
    }
}

fn check_ambient(x: &ChowElement, y: &ChowElement) -> Result<()> {
    if x.n != y.n {
        return Err(Error::AmbientMismatch {
            left: x.n,
            right: y.n,
        });
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    a: i64,
    b: i64,
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct ChowRepr {
    #[serde(rename = "N")]
    n: u32,
    terms: Vec<TermRepr>,
}

impl Serialize for ChowElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(p, c)| TermRepr {
                a: p.a,
                b: p.b,
                coeff: c.clone(),
            })
            .collect();
        ChowRepr { n: self.n, terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChowElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ChowRepr::deserialize(deserializer)?;
        if let Some(t) = repr
            .terms
            .iter()
            .find(|t| !Partition2::new(t.a, t.b).is_valid(repr.n))
        {
            return Err(serde::de::Error::custom(format!(
                "partition ({},{}) does not fit in the 2x{} box",
                t.a, t.b, repr.n
            )));
        }
        Ok(ChowElement::from_terms(
            repr.n,
            repr.terms
                .into_iter()
                .map(|t| (Partition2::new(t.a, t.b), t.coeff)),
        ))
    }
}

/// One application of the Lefschetz operator via the Pieri rule.
pub fn pieri_l(x: &ChowElement) -> ChowElement {
    let mut out = ChowElement::zero(x.n);
    for (p, c) in &x.terms {
        out.add_term(Partition2::new(p.a + 1, p.b), c.clone());
        out.add_term(Partition2::new(p.a, p.b + 1), c.clone());
    }
    out
}

/// Number of standard Young tableaux of the two-row skew shape `λ/μ`.
pub fn skew_f(lambda: Partition2, mu: Partition2) -> Result<BigInt> {
    if !lambda.contains(&mu) {
        return Err(Error::NotContained {
            lambda_a: lambda.a,
            lambda_b: lambda.b,
            mu_a: mu.a,
            mu_b: mu.b,
        });
    }
    Ok(skew_f_unchecked(lambda, mu))
}

fn skew_f_unchecked(lambda: Partition2, mu: Partition2) -> BigInt {
    let m = lambda.size() - mu.size();
    binom(m, lambda.a - mu.a) - binom(m, lambda.a - mu.b + 1)
}

/// `L^r x` through the skew `f`-number expansion
/// `L^r s_μ = Σ_{λ ⊇ μ, |λ| = |μ| + r} f^{λ/μ} s_λ`, restricted to the box.
pub fn l_power(x: &ChowElement, r: u32) -> ChowElement {
    let n = x.n as i64;
    let r = r as i64;
    let mut out = ChowElement::zero(x.n);
    for (mu, c) in &x.terms {
        let target = mu.size() + r;
        for a in mu.a..=n.min(target) {
            let lambda = Partition2::new(a, target - a);
            if lambda.b < mu.b || !lambda.is_valid(x.n) {
                continue;
            }
            let f = skew_f_unchecked(lambda, *mu);
            if !f.is_zero() {
                out.add_term(lambda, c * &Rational::from(f));
            }
        }
    }
    out
}

/// `r`-fold application of [`pieri_l`].
pub fn pieri_power(x: &ChowElement, r: u32) -> ChowElement {
    (0..r).fold(x.clone(), |acc, _| pieri_l(&acc))
}

/// Hodge star coefficient `(a+1)! b! / ((N-a)! (N-b+1)!)` of `s_{a,b}`.
pub fn hodge_star_coeff(n: u32, p: &Partition2) -> Rational {
    let num = factorial(p.a as u32 + 1) * factorial(p.b as u32);
    let den = factorial(n - p.a as u32) * factorial(n - p.b as u32 + 1);
    Rational::new(num, den).expect("factorials are positive")
}

/// `⋆ s_{a,b} = [(a+1)! b! / ((N-a)! (N-b+1)!)] s_{N-b,N-a}`, extended linearly.
pub fn hodge_star(x: &ChowElement) -> ChowElement {
    let n = x.n as i64;
    ChowElement::from_terms(
        x.n,
        x.terms.iter().map(|(p, c)| {
            (
                Partition2::new(n - p.b, n - p.a),
                c * &hodge_star_coeff(x.n, p),
            )
        }),
    )
}

/// Intersection pairing `<s_{a,b}, s_{a',b'}> = δ_{(a,b),(N-b',N-a')}`.
pub fn pairing(x: &ChowElement, y: &ChowElement) -> Result<Rational> {
    check_ambient(x, y)?;
    let n = x.n as i64;
    Ok(x.terms
        .iter()
        .filter_map(|(p, c)| {
            y.terms
                .get(&Partition2::new(n - p.b, n - p.a))
                .map(|d| c * d)
        })
        .sum())
}

/// The primitive class
/// `α_k = Σ_{j=0..k} (-1)^j C(N+1-j, N-2k) C(N-2k+j, N-2k) s_{2k-j,j}`.
pub fn alpha(n: u32, k: u32) -> Result<ChowElement> {
    if 2 * k > n || n == 0 {
        return Err(Error::InvalidInstance { n_ambient: n, k });
    }
    let (ni, ki) = (n as i64, k as i64);
    let mut out = ChowElement::zero(n);
    for j in 0..=ki {
        let c = binom(ni + 1 - j, ni - 2 * ki) * binom(ni - 2 * ki + j, ni - 2 * ki);
        let c = if j % 2 == 0 { c } else { -c };
        out.add_term(Partition2::new(2 * ki - j, j), Rational::from(c));
    }
    Ok(out)
}

/// The closed-form generator `Σ_{j=0..k} (-1)^j s_{N-j, N-2k+j}` of
/// `Ker(L : CH^{2N-2k} -> CH^{2N-2k+1})`.
pub fn kernel_generator(n: u32, k: u32) -> Result<ChowElement> {
    if 2 * k > n || n == 0 {
        return Err(Error::InvalidInstance { n_ambient: n, k });
    }
    let (ni, ki) = (n as i64, k as i64);
    Ok(ChowElement::from_terms(
        n,
        (0..=ki).map(|j| {
            let sign: i64 = if j % 2 == 0 { 1 } else { -1 };
            (
                Partition2::new(ni - j, ni - 2 * ki + j),
                Rational::from(sign),
            )
        }),
    ))
}

/// Matrix of `L : CH^p -> CH^{p+1}` with rows indexed by `degree_basis(N, p+1)`
/// and columns by `degree_basis(N, p)`.
pub fn lefschetz_matrix(n: u32, p: i64) -> Vec<Vec<Rational>> {
    let src = degree_basis(n, p);
    let dst = degree_basis(n, p + 1);
    let images: Vec<ChowElement> = src
        .iter()
        .map(|q| pieri_l(&ChowElement::schubert(n, q.a, q.b)))
        .collect();
    dst.iter()
        .map(|row| images.iter().map(|img| img.coeff(row)).collect())
        .collect()
}

/// Exact basis of `Ker(L : CH^p -> CH^{p+1})` by Gaussian elimination.
pub fn kernel_of_l(n: u32, p: i64) -> Vec<ChowElement> {
    let src = degree_basis(n, p);
    if src.is_empty() {
        return Vec::new();
    }
    let m = lefschetz_matrix(n, p);
    linalg::nullspace(&m, src.len())
        .into_iter()
        .map(|v| ChowElement::from_terms(n, src.iter().copied().zip(v)))
        .collect()
}

/// `dim CH^p(G(N,2))`: the number of `(a,b)` with `N >= a >= b >= 0`, `a+b = p`.
pub fn betti(n: u32, p: i64) -> usize {
    degree_basis(n, p).len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitiveProfile {
    #[serde(rename = "N")]
    pub n: u32,
    /// `dim CH^p_prim` for `p = 0..=N`.
    pub dims: Vec<usize>,
    /// Whenever `dims[p] > 0`, `dims[p-1] == 0`.
    pub no_adjacent_primitives: bool,
}

/// Primitive dimensions for `0 <= p <= N`, computed from Betti numbers and
/// cross-checked against the rank of `⋆ Ker(L : CH^{2N-p} -> CH^{2N-p+1})`.
pub fn primitive_profile(n: u32) -> Result<PrimitiveProfile> {
    let mut dims = Vec::with_capacity(n as usize + 1);
    for p in 0..=n as i64 {
        let from_betti = betti(n, p).saturating_sub(betti(n, p - 1));
        let starred: Vec<ChowElement> = kernel_of_l(n, 2 * n as i64 - p)
            .iter()
            .map(hodge_star)
            .collect();
        let rows: Vec<Vec<Rational>> = starred.iter().map(|x| x.dense(p)).collect();
        let from_kernel = linalg::rank(&rows, betti(n, p));
        if from_betti != from_kernel {
            return Err(Error::PrimitiveMismatch {
                n_ambient: n,
                p: p as u32,
                from_betti,
                from_kernel,
            });
        }
        dims.push(from_betti);
    }
    let no_adjacent_primitives = dims.windows(2).all(|w| w[1] == 0 || w[0] == 0);
    Ok(PrimitiveProfile {
        n,
        dims,
        no_adjacent_primitives,
    })
}

/// `1/(N! (N+1)!)`, the star coefficient of the unit class.
pub fn unit_star_coefficient(n: u32) -> Rational {
    Rational::new(BigInt::one(), factorial(n) * factorial(n + 1)).expect("nonzero")
}
