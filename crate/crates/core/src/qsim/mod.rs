//! Dense statevector simulation of algorithms that receive copies of the
//! subset state `|S⟩` and make phase queries to `S`, plus the three simple
//! `w` versus `2w` distinguishers.

mod algorithm;
mod distinguish;
mod state;

pub use algorithm::{
    acceptance_curve, full_curve, random_unitary, run_algorithm, unitarity_error, AlgorithmKind,
    AlgorithmSpec, SimResult, CURVE_MAX_N, SIM_MAX_DIM, UNITARITY_TOL,
};
pub use distinguish::{
    birthday_distinguisher, grover_distinguisher, grover_iterations, projection_distinguisher,
    BirthdayReport, GroverReport, ProjectionReport, BIRTHDAY_COPY_CONSTANT, GROVER_MAX_N,
    GROVER_QUERY_CONSTANT, PROJECTION_COPY_CONSTANT,
};
pub use state::{prepare_subset_state, subsets, OracleSet};
