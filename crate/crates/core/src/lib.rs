//! Exact and numerical tools for Laurent-polynomial degree bounds, with
//! small quantum counting experiments to check them against.
//!
//! * [`poly`]: exact rational polynomials, Chebyshev machinery, certified ranges.
//! * [`bounds`]: Markov, Paturi, shrunken-domain and discrete-range checkers.
//! * [`degree`]: the inverse-integer-point degree problem: tight construction,
//!   exact validation, LP degree certificates and the Laurent frontier.
//! * [`symmetry`]: symmetrization, Laurent exponent-window fitting and the
//!   u/v explosion engine.
//! * [`qsim`]: small statevector simulation of QSample + membership-oracle
//!   algorithms and the three upper-bound distinguishers.
//! * [`trace`]: trace distance between `k`-copy subset-state ensembles.

pub mod bounds;
pub mod degree;
pub mod error;
pub mod poly;
pub mod qsim;
pub mod symmetry;
pub mod trace;

pub use error::{Error, Result};
pub use poly::{Basis, LaurentPoly, Polynomial, RangeReport, Rational};
