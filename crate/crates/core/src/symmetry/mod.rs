//! Symmetrization of multilinear polynomials, exponent-window fits of
//! acceptance curves, and the alternating lower-bound iteration on the two
//! halves `u`, `v` of a Laurent polynomial.

mod explosion;
mod fit;
mod multilinear;

pub use explosion::{
    explosion_iterate, explosion_region_scan, ExplosionCell, ExplosionGrid, ExplosionParams,
    ExplosionRun, ExplosionState, Quantities, Side,
};
pub use fit::{
    fit_laurent, fit_laurent_f64, fit_window, fit_window_least_squares, FitCoefficients, FitMethod,
    FitResult,
};
pub use multilinear::{symmetrize, MultilinearPoly, SYMMETRIZE_MAX_VARS};
