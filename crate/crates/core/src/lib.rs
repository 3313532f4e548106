//! Exact verification of the arithmetic hard Lefschetz and Hodge index
//! inequalities for the Grassmannian `G(2,N)`.
//!
//! - [`exactmath`]: exact rationals, binomials, Pochhammer symbols, harmonic
//!   numbers and concave sequences.
//! - [`chowring`]: Schubert calculus on `G(N,2)`: Pieri rule, Hodge star,
//!   intersection pairing, primitive classes.
//! - [`lefschetz`]: the correction operator `U`, `Σ(N,k)` by direct pairing
//!   and in closed form, and the projective-space model.
//! - [`racah`]: Racah and Legendre polynomials, orthogonality, the alternating
//!   inequality and the `|R_n(s,T)| <= 1` scanner.

pub mod chowring;
pub mod error;
pub mod exactmath;
pub mod lefschetz;
mod linalg;
pub mod racah;

pub use chowring::{ChowElement, Partition2};
pub use error::{Error, Result};
pub use exactmath::{binomial, harmonic, pochhammer, validate_concave, ConcaveSequence, Rational};
pub use lefschetz::{SigmaInstance, SigmaMethod, VerdictReport};
pub use racah::{RacahParams, ScanReport};
