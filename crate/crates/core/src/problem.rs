//! Problem data model: quadratic-over-quadratic vector objectives with
//! optional linear constraints, plus validation and pointwise predicates.
//!
//! An instance asks to minimize the vector of ratios
//! `f_i(x) / g_i(x)`, `i = 1..m`, over `S = { x : C x <= b }` (all of
//! `R^n` when no constraints are given), where both `f_i` and `g_i` are
//! quadratic polynomials
//!
//! ```text
//!   f_i(x) = x' A_i x + a_i' x + a0_i
//!   g_i(x) = x' B_i x + b_i' x + b0_i
//! ```
//!
//! Well-posedness requires each denominator to be positive everywhere,
//! which for quadratic `g_i` is equivalent to: `B_i` PSD, the stationarity
//! system `2 B_i w + b_i = 0` solvable, and `g_i(w) > 0` at any solution
//! `w`. [`validate_instance`] checks exactly that, plus shape and symmetry
//! hygiene, and reports every check individually so a CLI can print a
//! useful audit trail instead of a bare boolean.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eigen::{self, EigenError};
use crate::linalg::{dot, mat_vec, max_abs, norm, quad_value};
use crate::tol;

/// One quadratic polynomial `x' Q x + c' x + d` in dense row-major form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuadraticForm {
    /// Symmetric coefficient matrix `Q` (n x n).
    pub quad: Vec<Vec<f64>>,
    /// Linear coefficient vector `c` (length n).
    pub lin: Vec<f64>,
    /// Constant offset `d`.
    pub constant: f64,
}

impl QuadraticForm {
    /// The zero polynomial plus a constant, used for trivial denominators.
    pub fn constant(n: usize, value: f64) -> Self {
        QuadraticForm { quad: crate::linalg::zeros(n), lin: vec![0.0; n], constant: value }
    }
}

/// One ratio objective `f / g`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RatioObjective {
    pub numerator: QuadraticForm,
    pub denominator: QuadraticForm,
}

/// Polyhedral feasible set `{ x : mat x <= rhs }` with dense rows.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LinearConstraints {
    pub mat: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
}

/// A full problem instance.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VqfpInstance {
    /// Ambient dimension.
    pub n: usize,
    /// Ratio objectives, at least one.
    pub objectives: Vec<RatioObjective>,
    /// Optional feasible polyhedron; `None` means all of `R^n`.
    pub constraints: Option<LinearConstraints>,
}

/// Evaluate `x' Q x + c' x + d`.
pub fn eval_form(form: &QuadraticForm, x: &[f64]) -> f64 {
    quad_value(&form.quad, x) + dot(&form.lin, x) + form.constant
}

/// Gradient `2 Q x + c` of a quadratic form.
pub fn grad_form(form: &QuadraticForm, x: &[f64]) -> Vec<f64> {
    let mut g = mat_vec(&form.quad, x);
    for (gk, ck) in g.iter_mut().zip(&form.lin) {
        *gk = 2.0 * *gk + ck;
    }
    g
}

/// Value of objective `i` at `x`: `f_i(x) / g_i(x)`.
pub fn ratio_value(instance: &VqfpInstance, i: usize, x: &[f64]) -> f64 {
    let obj = &instance.objectives[i];
    eval_form(&obj.numerator, x) / eval_form(&obj.denominator, x)
}

/// Whether `x` satisfies every constraint row up to `tol_feas` of slack,
/// scaled per row: `C_j x <= b_j + tol_feas * (1 + |b_j|)`.
pub fn is_feasible(instance: &VqfpInstance, x: &[f64], tol_feas: f64) -> bool {
    match &instance.constraints {
        None => true,
        Some(c) => c
            .mat
            .iter()
            .zip(&c.rhs)
            .all(|(row, &b)| dot(row, x) <= b + tol_feas * (1.0 + b.abs())),
    }
}

/// 1-based indices of constraint rows active at `x`:
/// `|C_j x - b_j| <= tol_active * (1 + |b_j|)`, sorted ascending.
pub fn active_set(instance: &VqfpInstance, x: &[f64], tol_active: f64) -> Vec<usize> {
    match &instance.constraints {
        None => Vec::new(),
        Some(c) => c
            .mat
            .iter()
            .zip(&c.rhs)
            .enumerate()
            .filter(|(_, (row, &b))| (dot(row, x) - b).abs() <= tol_active * (1.0 + b.abs()))
            .map(|(j, _)| j + 1)
            .collect(),
    }
}

/// Whether `y` dominates `x` in the ratio objectives: every component of
/// the value vector at `y` is `<= value(x) + tol` and at least one is
/// `< value(x) - tol`. Both points are assumed feasible; feasibility is the
/// caller's concern so that the predicate stays a pure value comparison.
pub fn dominates(instance: &VqfpInstance, y: &[f64], x: &[f64], tol_dom: f64) -> bool {
    let mut strict = false;
    for i in 0..instance.objectives.len() {
        let diff = ratio_value(instance, i, y) - ratio_value(instance, i, x);
        if diff > tol_dom {
            return false;
        }
        if diff < -tol_dom {
            strict = true;
        }
    }
    strict
}

/// Reasons an instance can fail validation.
#[derive(Debug, Error, PartialEq)]
pub enum ProblemError {
    #[error("instance must have at least one objective")]
    NoObjectives,
    #[error("objective {index}: {field} has wrong shape (expected {expected}, got {got})")]
    BadShape { index: usize, field: &'static str, expected: String, got: String },
    #[error("constraints: {0}")]
    BadConstraintShape(String),
    #[error("objective {index}: {which} matrix is not symmetric (max asymmetry {delta:e})")]
    NotSymmetric { index: usize, which: &'static str, delta: f64 },
    #[error("objective {index}: denominator matrix has negative eigenvalue {value:e}")]
    DenominatorNotPsd { index: usize, value: f64 },
    #[error("objective {index}: denominator has no stationary point (residual {residual:e})")]
    DenominatorNoMinimizer { index: usize, residual: f64 },
    #[error("objective {index}: denominator minimum {value:e} is not positive")]
    DenominatorNotPositive { index: usize, value: f64 },
    #[error("objective {index}: eigen solver failed: {source}")]
    Eigen { index: usize, source: EigenError },
}

/// One named validation check with its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`validate_instance`]: per-check audit trail plus the first
/// hard error, if any.
#[derive(Debug)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
    pub error: Option<ProblemError>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.error.is_none()
    }
}

fn check_shape(
    index: usize,
    which: &'static str,
    form: &QuadraticForm,
    n: usize,
) -> Result<(), ProblemError> {
    if form.quad.len() != n || form.quad.iter().any(|r| r.len() != n) {
        return Err(ProblemError::BadShape {
            index,
            field: which,
            expected: format!("{n}x{n} matrix"),
            got: format!(
                "{}x{} matrix",
                form.quad.len(),
                form.quad.first().map_or(0, |r| r.len())
            ),
        });
    }
    if form.lin.len() != n {
        return Err(ProblemError::BadShape {
            index,
            field: which,
            expected: format!("length-{n} vector"),
            got: format!("length-{} vector", form.lin.len()),
        });
    }
    Ok(())
}

fn check_symmetry(
    index: usize,
    which: &'static str,
    quad: &[Vec<f64>],
) -> Result<f64, ProblemError> {
    let n = quad.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((quad[i][j] - quad[j][i]).abs());
        }
    }
    let bound = tol::SYMMETRY * (1.0 + max_abs(quad));
    if worst > bound {
        return Err(ProblemError::NotSymmetric { index, which, delta: worst });
    }
    Ok(worst)
}

/// Validate an instance: shapes, symmetry of both quadratic matrices, and
/// positivity of every denominator over the whole space (PSD matrix +
/// attained positive minimum). Returns every check's outcome; the first
/// failing check also sets `error` and later checks for that objective are
/// skipped (they would be meaningless on malformed data).
pub fn validate_instance(instance: &VqfpInstance) -> ValidationReport {
    let mut checks = Vec::new();
    let mut error = None;
    let n = instance.n;

    if instance.objectives.is_empty() {
        return ValidationReport {
            checks: vec![ValidationCheck {
                name: "objectives.nonempty".into(),
                passed: false,
                detail: "instance has no objectives".into(),
            }],
            error: Some(ProblemError::NoObjectives),
        };
    }
    checks.push(ValidationCheck {
        name: "objectives.nonempty".into(),
        passed: true,
        detail: format!("{} objective(s), dimension {}", instance.objectives.len(), n),
    });

    if let Some(c) = &instance.constraints {
        let rows = c.mat.len();
        let ok = c.rhs.len() == rows && c.mat.iter().all(|r| r.len() == n);
        checks.push(ValidationCheck {
            name: "constraints.shape".into(),
            passed: ok,
            detail: format!("{} row(s), rhs length {}", rows, c.rhs.len()),
        });
        if !ok && error.is_none() {
            error = Some(ProblemError::BadConstraintShape(format!(
                "{} rows of width {} with rhs length {}",
                rows,
                c.mat.first().map_or(0, |r| r.len()),
                c.rhs.len()
            )));
        }
    }

    for (idx, obj) in instance.objectives.iter().enumerate() {
        let mut record = |name: String, result: Result<String, ProblemError>| match result {
            Ok(detail) => {
                checks.push(ValidationCheck { name, passed: true, detail });
                true
            }
            Err(e) => {
                checks.push(ValidationCheck { name, passed: false, detail: e.to_string() });
                if error.is_none() {
                    error = Some(e);
                }
                false
            }
        };

        if !record(
            format!("objective[{idx}].shapes"),
            check_shape(idx, "numerator", &obj.numerator, n)
                .and_then(|_| check_shape(idx, "denominator", &obj.denominator, n))
                .map(|_| format!("numerator and denominator are {n}x{n}")),
        ) {
            continue;
        }
        if !record(
            format!("objective[{idx}].symmetry"),
            check_symmetry(idx, "numerator", &obj.numerator.quad).and_then(|w1| {
                check_symmetry(idx, "denominator", &obj.denominator.quad)
                    .map(|w2| format!("max asymmetry {:.1e}", w1.max(w2)))
            }),
        ) {
            continue;
        }

        // Positivity of g_i everywhere: PSD + attained minimum > 0. The
        // minimum is attained iff 2 B w + b = 0 is solvable, which the
        // pseudo-inverse residual certifies.
        let b_mat = &obj.denominator.quad;
        let b_lin = &obj.denominator.lin;
        let psd = match eigen::smallest_negative_eigenvalue(b_mat) {
            Err(source) => {
                record(format!("objective[{idx}].denominator_psd"), Err(ProblemError::Eigen { index: idx, source }));
                continue;
            }
            Ok(Some(lo)) if lo < -tol::PSD_EIG * (1.0 + max_abs(b_mat)) => {
                record(
                    format!("objective[{idx}].denominator_psd"),
                    Err(ProblemError::DenominatorNotPsd { index: idx, value: lo }),
                );
                continue;
            }
            Ok(other) => other,
        };
        record(
            format!("objective[{idx}].denominator_psd"),
            Ok(match psd {
                Some(lo) => format!("smallest eigenvalue {lo:.1e} within PSD tolerance"),
                None => "all eigenvalues non-negative".to_string(),
            }),
        );

        let scaled_b: Vec<Vec<f64>> = b_mat.iter().map(|r| r.iter().map(|v| 2.0 * v).collect()).collect();
        let neg_b: Vec<f64> = b_lin.iter().map(|v| -v).collect();
        let (w, residual) = match eigen::solve_psd_least_squares(&scaled_b, &neg_b) {
            Ok(pair) => pair,
            Err(source) => {
                record(format!("objective[{idx}].denominator_minimizer"), Err(ProblemError::Eigen { index: idx, source }));
                continue;
            }
        };
        let res_bound = tol::MINIMIZER_RESIDUAL * (1.0 + norm(b_lin));
        if !record(
            format!("objective[{idx}].denominator_minimizer"),
            if residual <= res_bound {
                Ok(format!("stationarity residual {residual:.1e}"))
            } else {
                Err(ProblemError::DenominatorNoMinimizer { index: idx, residual })
            },
        ) {
            continue;
        }

        let g_min = eval_form(&obj.denominator, &w);
        record(
            format!("objective[{idx}].denominator_positive"),
            if g_min > tol::POSITIVE_G * (1.0 + obj.denominator.constant.abs()) {
                Ok(format!("denominator minimum {g_min:.6e}"))
            } else {
                Err(ProblemError::DenominatorNotPositive { index: idx, value: g_min })
            },
        );
    }

    ValidationReport { checks, error }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple_instance() -> VqfpInstance {
        // Objectives (x1^2 + x2^2)/1 and (x1 - 1)/1 in dimension 2.
        VqfpInstance {
            n: 2,
            objectives: vec![
                RatioObjective {
                    numerator: QuadraticForm {
                        quad: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
                        lin: vec![0.0, 0.0],
                        constant: 0.0,
                    },
                    denominator: QuadraticForm::constant(2, 1.0),
                },
                RatioObjective {
                    numerator: QuadraticForm {
                        quad: crate::linalg::zeros(2),
                        lin: vec![1.0, 0.0],
                        constant: -1.0,
                    },
                    denominator: QuadraticForm::constant(2, 1.0),
                },
            ],
            constraints: None,
        }
    }

    #[test]
    fn evaluation_and_gradient() {
        let form = QuadraticForm {
            quad: vec![vec![2.0, 1.0], vec![1.0, 3.0]],
            lin: vec![1.0, -1.0],
            constant: 5.0,
        };
        let x = [1.0, -1.0];
        // x'Qx = 3, c'x = 2, d = 5.
        assert_eq!(eval_form(&form, &x), 10.0);
        // 2Qx + c = 2*(1,-2) + (1,-1) = (3,-5).
        assert_eq!(grad_form(&form, &x), vec![3.0, -5.0]);
    }

    #[test]
    fn validation_accepts_well_posed_instance() {
        let report = validate_instance(&simple_instance());
        assert!(report.is_valid(), "{:?}", report.error);
        assert!(report.checks.iter().all(|c| c.passed));
    }

    #[test]
    fn validation_rejects_indefinite_denominator() {
        let mut inst = simple_instance();
        inst.objectives[0].denominator = QuadraticForm {
            quad: vec![vec![-1.0, 0.0], vec![0.0, 1.0]],
            lin: vec![0.0, 0.0],
            constant: 1.0,
        };
        let report = validate_instance(&inst);
        assert!(matches!(report.error, Some(ProblemError::DenominatorNotPsd { index: 0, .. })));
    }

    #[test]
    fn validation_rejects_unattained_denominator_minimum() {
        // g(x) = x1^2 + x2 + 1: B = diag(1, 0), b = (0, 1); 2Bw + b = 0 has
        // no solution in the second coordinate, so g has no minimum.
        let mut inst = simple_instance();
        inst.objectives[0].denominator = QuadraticForm {
            quad: vec![vec![1.0, 0.0], vec![0.0, 0.0]],
            lin: vec![0.0, 1.0],
            constant: 1.0,
        };
        let report = validate_instance(&inst);
        assert!(matches!(report.error, Some(ProblemError::DenominatorNoMinimizer { index: 0, .. })));
    }

    #[test]
    fn validation_rejects_nonpositive_denominator() {
        // g(x) = x1^2 + x2^2: PSD, minimized at 0 with value 0 — not positive.
        let mut inst = simple_instance();
        inst.objectives[0].denominator = QuadraticForm {
            quad: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            lin: vec![0.0, 0.0],
            constant: 0.0,
        };
        let report = validate_instance(&inst);
        assert!(matches!(report.error, Some(ProblemError::DenominatorNotPositive { index: 0, .. })));
    }

    #[test]
    fn feasibility_and_active_set() {
        let mut inst = simple_instance();
        inst.constraints = Some(LinearConstraints {
            mat: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            rhs: vec![1.0, 2.0],
        });
        assert!(is_feasible(&inst, &[0.5, 0.5], 0.0));
        assert!(!is_feasible(&inst, &[1.5, 0.5], 1e-9));
        assert!(is_feasible(&inst, &[1.0 + 1e-12, 0.0], 1e-9));
        assert_eq!(active_set(&inst, &[1.0, 2.0], 1e-9), vec![1, 2]);
        assert_eq!(active_set(&inst, &[1.0, 0.0], 1e-9), vec![1]);
        assert_eq!(active_set(&inst, &[0.0, 0.0], 1e-9), Vec::<usize>::new());
    }

    #[test]
    fn dominance_requires_strict_improvement() {
        let inst = simple_instance();
        // Values at (1,0): (1, 0). At (0.5, 0): (0.25, -0.5) — dominates.
        assert!(dominates(&inst, &[0.5, 0.0], &[1.0, 0.0], 1e-9));
        // Equal points never dominate.
        assert!(!dominates(&inst, &[1.0, 0.0], &[1.0, 0.0], 1e-9));
        // Trade-off: (0, 0) has values (0, -1); (0.5, 0) has (0.25, -0.5).
        // Moving from (0,0) to (0.5,0) worsens both? No: 0.25 > 0 and
        // -0.5 > -1, so (0.5,0) does NOT dominate (0,0).
        assert!(!dominates(&inst, &[0.5, 0.0], &[0.0, 0.0], 1e-9));
        assert!(dominates(&inst, &[0.0, 0.0], &[0.5, 0.0], 1e-9));
    }

    #[test]
    fn ratio_values_divide_by_denominator() {
        let mut inst = simple_instance();
        inst.objectives[0].denominator = QuadraticForm {
            quad: crate::linalg::zeros(2),
            lin: vec![0.0, 0.0],
            constant: 2.0,
        };
        assert_eq!(ratio_value(&inst, 0, &[2.0, 0.0]), 2.0);
    }
}
