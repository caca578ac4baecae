//! Exact-arithmetic toolkit for Lévy processes specified by cumulants.
//!
//! Everything symbolic runs over arbitrary-precision rationals: moment
//! functions m_n(t) as polynomials in t, the monic polynomial martingales
//! M_n(x,t), their product expansions and cross moments, orthogonal
//! polynomials of the marginal law, and the reversed-martingale
//! classification. A seeded Monte Carlo simulator verifies the same claims
//! statistically on sampled paths.
//!
//! Identity checks are decidable: polynomials are kept in canonical form, so
//! "the identity holds" is literal equality of terms. Wherever two
//! independent routes to the same object exist (a recursion and a generating
//! function, a closed form and a series solution), both are implemented and
//! compared.

pub mod arbitration;
pub mod closed_form;
pub mod cumulant;
pub mod error;
pub mod martingale;
pub mod moments;
pub mod orthogonal;
pub mod poly;
pub mod rational;
pub mod reversed;
pub mod series;
pub mod simulate;

pub use error::{Error, Result};
pub use poly::MultiPoly;
pub use rational::Rational;
