//! Least and greatest solutions of polynomial equation systems over
//! absorptive, fully-continuous semirings.
//!
//! Two independent routes are provided:
//!
//! * [`eqsys`]: the closed forms `lfp = F^l(0)` and `gfp = F^l(F^l(1)^inf)`
//!   for a system of `l` equations, computed directly in the target semiring;
//! * [`symbolic`]: elimination of indeterminates one at a time over
//!   generalized absorptive polynomials ([`sorp`]), using
//!   `P(0)` / `P(0) + P'(1)^inf` for a single equation.
//!
//! [`oracle`] holds the derivation-tree and brute-force machinery used to
//! cross-check both.

pub mod eqsys;
pub mod error;
pub mod oracle;
pub mod semiring;
pub mod semirings;
pub mod sorp;
pub mod symbolic;

pub use eqsys::{EquationSystem, FixpointKind, SysPolynomial, Term, Valuation};
pub use error::{EvalError, OracleError, SystemError, ValueError, Violation};
pub use semiring::{FiniteSemiring, Semiring};
pub use sorp::{Exponent, Monomial, Sorp, SorpPolynomial};
