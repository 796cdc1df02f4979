//! Ground rings: Gaussian integers, polynomials in `a`, `Q(i)` and Laurent
//! polynomials for graded counts.

mod gaussian;
mod laurent;
mod poly;
mod rational;
mod ring;

pub use gaussian::GaussianInt;
pub use laurent::{LaurentPoly, TwoVarLaurent};
pub use poly::{GaussianPolynomial, A_DEGREE};
pub use rational::GaussianRational;
pub use ring::Coefficient;
