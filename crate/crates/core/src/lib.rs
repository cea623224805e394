//! Certified efficiency radii for multi-objective quadratic fractional programs.
//!
//! A problem instance minimizes a vector of ratios of quadratics
//!
//! ```text
//!     minimize ( f_1(x)/g_1(x), ..., f_m(x)/g_m(x) )
//!     subject to C x <= b            (optional)
//! ```
//!
//! where `f_i(x) = x'A_i x + a_i'x + a0_i` and `g_i(x) = x'B_i x + b_i'x + b0_i`
//! with every `B_i` positive semidefinite and `g_i > 0` on all of `R^n`
//! (guaranteed by the validity checks in [`problem::validate_instance`]).
//!
//! Given a candidate point `x*`, the library answers: *how far from `x*` can
//! any dominating point lie?* The pipeline is
//!
//! 1. [`associated::build_associated`] — replaces each ratio by a quadratic
//!    model `p_i` whose sign changes match ratio dominance exactly,
//! 2. [`directional::classify`] — along a unit direction `d`, splits the
//!    objectives into labels that block, cap, or floor a dominating step and
//!    intersects the resulting step interval,
//! 3. [`radius::sweep`] / [`radius::certify`] — samples the direction sphere
//!    (or the feasible tangent cone), aggregates per-direction intervals into
//!    the inner radius `beta`, the outer reach `P`, an eigenvalue-based lower
//!    bound `rho/(-gamma)`, and a gradient-based upper bound `M`, and emits a
//!    verdict: certified-up-to-sampling, dominated-with-witness, or
//!    inconclusive,
//! 4. [`oracle`] — an independent brute-force sampler used to cross-check
//!    every claim the analytic machinery makes.
//!
//! All randomized components take explicit seeds and produce identical output
//! across runs and thread counts; reductions over parallel sweeps use total
//! orders, never first-come-first-served.

pub mod associated;
pub mod directional;
pub mod eigen;
pub mod fixtures;
pub mod generate;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod problem;
pub mod radius;
mod sampling;
pub mod tol;

pub use associated::{build_associated, p_delta, p_dominance, AssociatedModel};
pub use directional::{classify, DirectionProfile, DominanceWindow, Interval, Label};
pub use oracle::{brute_force_dominator, local_efficiency_check, stationarity_residual, OracleResult};
pub use problem::{
    active_set, dominates, eval_form, grad_form, is_feasible, ratio_value, validate_instance,
    LinearConstraints, QuadraticForm, RatioObjective, ValidationReport, VqfpInstance,
};
pub use radius::{certify, search_shell, sweep, RadiusReport, SweepConfig, Verdict};
