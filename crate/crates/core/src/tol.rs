//! Centralized numeric tolerances with their rationale.
//!
//! Every threshold used by the library is defined here; no module hides its
//! own magic numbers. Thresholds that guard a *relative* comparison document
//! the scale they are multiplied by at the use site.

/// Symmetry slack for quadratic-form matrices: `|A_ij - A_ji|` must not
/// exceed `SYMMETRY * (1 + max|A|)`. Instances are supplied symmetric; this
/// only absorbs serialization round-trip noise.
pub const SYMMETRY: f64 = 1e-12;

/// Positive-semidefiniteness slack for denominator matrices: the smallest
/// eigenvalue must satisfy `lambda_min >= -PSD_EIG * (1 + max|B|)`.
/// The Jacobi eigensolver is accurate to ~1e-14 relative, so 1e-10 tolerates
/// four orders of accumulated rounding without admitting genuinely
/// indefinite matrices.
pub const PSD_EIG: f64 = 1e-10;

/// Residual bound for the denominator minimizer solve `2 B w + b = 0`:
/// the least-squares solution must satisfy
/// `||2 B w + b|| <= MINIMIZER_RESIDUAL * (1 + ||b||)`. A larger residual
/// means `b` has a component in the kernel of `B`, i.e. the denominator is
/// unbounded below and the instance is invalid.
pub const MINIMIZER_RESIDUAL: f64 = 1e-8;

/// Strict-positivity margin for the denominator at its minimizer:
/// `g(w) > POSITIVE_G * (1 + |b0|)` is required. Equality to zero anywhere
/// would put a pole inside the feasible set.
pub const POSITIVE_G: f64 = 1e-12;

/// Absolute tolerance for dominance comparisons of ratio values and of the
/// quadratic-model deltas: `u <= v + DOMINANCE` counts as "no worse",
/// `u < v - DOMINANCE` as "strictly better". Desk-scale objective values
/// make an absolute 1e-9 roughly 1e6 ULPs of headroom.
pub const DOMINANCE: f64 = 1e-9;

/// Default zero-test width for the per-direction linear and quadratic terms.
/// A term `t` counts as zero when `|t| <= CLASSIFY_EPS * scale_i` with
/// `scale_i = 1 + ||grad p_i|| + max|hess p_i|`, so the test is invariant
/// under rescaling the instance.
pub const CLASSIFY_EPS: f64 = 1e-9;

/// Relative equality width used when comparing step-interval endpoints
/// (detecting collapsed intervals and shared roots):
/// `|u - v| <= INTERVAL_EQ * (1 + |v|)`.
pub const INTERVAL_EQ: f64 = 1e-9;

/// Right-endpoint shrink used to represent a half-open step interval by a
/// closed one: when no objective caps the step but a constraint does, the
/// interval is open on the right and we shrink the endpoint by
/// `OPEN_END_SHRINK * (1 + endpoint)` before intersecting.
pub const OPEN_END_SHRINK: f64 = 1e-9;

/// Inclusion threshold for constraint rows entering the limiting-step
/// minimum: a row participates only when `C_j d > ROW_DIRECTION * (1 + ||C_j||)`.
/// Rows grazed this closely to parallel would produce step bounds at scales
/// where the bound itself is numerically meaningless.
pub const ROW_DIRECTION: f64 = 1e-12;

/// Default tolerance for active-set membership and feasibility probes:
/// row `j` is active when `|C_j x - b_j| <= ACTIVE * (1 + |b_j|)`.
pub const ACTIVE: f64 = 1e-9;

/// Reconstruction contract for the symmetric eigendecomposition:
/// `||V L V' - A||_F <= EIG_RECONSTRUCT * max(1, ||A||_F)`.
pub const EIG_RECONSTRUCT: f64 = 1e-10;

/// Eigenvalues above `-NEGATIVE_EIG * (1 + max|H|)` are treated as
/// non-negative when hunting for the most negative curvature; this keeps
/// rounding noise on a PSD matrix from masquerading as concavity.
pub const NEGATIVE_EIG: f64 = 1e-10;

/// Guard width for asserting sign agreement between the quadratic-model
/// delta and the ratio difference: agreement is only asserted when
/// `|p_delta| > SIGN_GUARD * (1 + |f_i(x)|)`; inside the band both signs are
/// legitimately noise.
pub const SIGN_GUARD: f64 = 1e-8;
