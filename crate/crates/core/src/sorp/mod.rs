//! Generalized absorptive polynomials: antichains of monomials with exponents
//! in `N ∪ {inf}`, with the operations needed by both solvers.

mod monomial;
mod polynomial;

pub use monomial::{Exponent, Monomial};
pub use polynomial::{maximals, Sorp, SorpPolynomial};
