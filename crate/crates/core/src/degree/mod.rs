//! Degree questions for polynomials bounded on inverse-integer points: the
//! explicit `O(w^{1/3})` construction, exact validation, LP-certified
//! minimal degrees and the `(deg u, deg v)` feasibility frontier for Laurent
//! polynomials on integer points.

mod fedja;
mod frontier;
pub mod lp;
pub mod simplex;

pub use fedja::{
    cube_root_ceil, default_degree_cap, degree_scaling_scan, fedja_all_pass, fedja_construct,
    fedja_construct_detailed, least_squares_slope, min_degree_lp, validate_fedja,
    vanishes_on_first_inverse_points, DegreeRow, DegreeScan, FedjaCheck, FedjaConstraint,
    FedjaConstruction, FedjaInstance, MinDegree, FEDJA_DEGREE_SLACK,
};
pub use frontier::{
    laurent_cell, laurent_frontier_lp, laurent_instance, FrontierCell, FrontierGrid,
};
pub use lp::{
    solve_certified, CertificateKind, DegreeCertificate, LpConstraint, LpFamily, LpInstance,
    Relation,
};
