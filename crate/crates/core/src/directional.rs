//! Per-direction classification and exact dominance windows along rays.
//!
//! Restricting the i-th associated quadratic to the ray `x* + λ d` gives
//!
//! ```text
//!   p_i(x* + λ d) = λ (l_i + (λ / 2) q_i),   l_i = ∇p_i(x*)·d,
//!                                            q_i = d' ∇²p_i d,
//! ```
//!
//! so the sign history of each objective along the ray is decided entirely
//! by the pair `(l_i, q_i)`. With zero tests made relative to each
//! objective's magnitude (`|t| <= eps * scale_i`), the pairs fall into five
//! behaviours:
//!
//! | label           | signs                          | meaning for `λ > 0`            |
//! |-----------------|--------------------------------|--------------------------------|
//! | `X0`            | `(q>0, l>=0)` or `(q>=0, l>0)` | strictly worse for every step   |
//! | `X1`            | `q>0, l<0`                     | better until the root `-2l/q`  |
//! | `X2`            | `q<0, l>0`                     | worse until the root `-2l/q`, better after |
//! | `Neutral`       | `q=0, l=0`                     | unchanged along the whole ray  |
//! | `NonIncreasing` | `(q<=0, l<0)` or `(q<0, l<=0)` | strictly better for every step |
//!
//! Intersecting these behaviours yields the set of step lengths at which
//! `x* + λ d` dominates `x*`:
//!
//! * any `X0` objective forbids dominance outright;
//! * every `X2` objective must first cross its root, giving the lower
//!   endpoint `λ₂ = max` of the `X2` roots;
//! * every `X1` objective caps the step at its root, and the feasible set
//!   caps it at the exit step `λ_ℓ`, giving the upper endpoint `λ₁`;
//! * if all objectives are `Neutral` the ray carries no information at all
//!   (`condition2_violated`);
//! * if the window collapses to the single step where every root sits, no
//!   objective is strictly better there and the window is declared empty
//!   (`condition1_degenerate`).
//!
//! Two kinds of window can result (see [`DominanceWindow`]): a *step*
//! window `[λ₂, λ₁]` bounded away from zero — the base point is locally
//! efficient along `d` yet dominated further out — and a *descent* window
//! `(0, cap)` when no `X0`/`X2` objective exists but something strictly
//! improves, meaning the base point is not even locally efficient in this
//! direction.

use crate::associated::AssociatedModel;
use crate::linalg::{dot, norm, quad_value};
use crate::problem::VqfpInstance;
use crate::tol;

/// Behaviour of one objective along one ray; see the module table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    X0,
    X1,
    X2,
    Neutral,
    NonIncreasing,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Label::X0 => "X0",
            Label::X1 => "X1",
            Label::X2 => "X2",
            Label::Neutral => "Neutral",
            Label::NonIncreasing => "NonIncreasing",
        })
    }
}

/// One objective's restriction to a ray: label plus the two Taylor
/// coefficients that determine it.
#[derive(Debug, Clone, Copy)]
pub struct ObjectiveDirection {
    pub label: Label,
    /// First-order coefficient `l_i = ∇p_i(x*)·d`.
    pub linear: f64,
    /// Second-order coefficient `q_i = d' ∇²p_i d`.
    pub quadratic: f64,
}

impl ObjectiveDirection {
    /// Positive root `-2 l / q` of the restriction, defined exactly for the
    /// sign-change labels `X1` and `X2`.
    pub fn root(&self) -> Option<f64> {
        match self.label {
            Label::X1 | Label::X2 => Some(-2.0 * self.linear / self.quadratic),
            _ => None,
        }
    }
}

/// Closed interval of step lengths; `hi` may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, lambda: f64) -> bool {
        self.lo <= lambda && lambda <= self.hi
    }
}

/// The dominance structure a single direction exposes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DominanceWindow {
    /// Dominating steps form `[λ₂, λ₁]` bounded away from zero: the base
    /// point survives small steps along `d` but loses further out.
    Step(Interval),
    /// Every step in `(0, cap)` dominates: the base point is not locally
    /// efficient along `d`. `cap` may be `+∞`.
    Descent { cap: f64 },
}

/// Full directional analysis for one ray.
#[derive(Debug, Clone)]
pub struct DirectionProfile {
    /// The (unit) direction analysed.
    pub direction: Vec<f64>,
    /// Per-objective labels and coefficients.
    pub objectives: Vec<ObjectiveDirection>,
    /// `max` of the `X2` roots, `None` when no objective is `X2`.
    pub lambda2: Option<f64>,
    /// `min` of the `X1` roots and the feasibility cap; `+∞` when neither
    /// binds.
    pub lambda1: f64,
    /// Feasible exit step `λ_ℓ` along this ray (`+∞` when unconstrained).
    pub lambda_limit: f64,
    /// Step window `[λ₂, λ₁]` when nonempty.
    pub interval: Option<Interval>,
    /// The candidate window collapsed to a single step at which every
    /// sign-change objective sits exactly on its root — no strict
    /// improvement exists there, so the window is empty by degeneracy.
    pub condition1_degenerate: bool,
    /// Every objective is `Neutral`: the ray carries no information.
    pub condition2_violated: bool,
    /// Smallest relative magnitude `min_i min(|l_i|, |q_i|) / scale_i`; a
    /// near-zero margin marks a direction whose labels sit close to a
    /// boundary of the sign table.
    pub margin: f64,
}

impl DirectionProfile {
    pub fn has_label(&self, label: Label) -> bool {
        self.objectives.iter().any(|o| o.label == label)
    }

    /// Roots of the `X1` objectives.
    pub fn x1_roots(&self) -> Vec<f64> {
        self.objectives
            .iter()
            .filter(|o| o.label == Label::X1)
            .filter_map(|o| o.root())
            .collect()
    }

    /// Roots of the `X2` objectives.
    pub fn x2_roots(&self) -> Vec<f64> {
        self.objectives
            .iter()
            .filter(|o| o.label == Label::X2)
            .filter_map(|o| o.root())
            .collect()
    }

    /// The dominance window this direction exposes, if any.
    ///
    /// A step window takes precedence (it is the certificate-relevant
    /// object); otherwise, when no objective ever worsens (`X0` and `X2`
    /// both absent) but at least one strictly improves, the direction is an
    /// immediate-descent ray with window `(0, cap)`.
    pub fn dominance_window(&self) -> Option<DominanceWindow> {
        if let Some(interval) = self.interval {
            return Some(DominanceWindow::Step(interval));
        }
        if self.condition2_violated || self.has_label(Label::X0) || self.has_label(Label::X2) {
            return None;
        }
        if self.has_label(Label::X1) || self.has_label(Label::NonIncreasing) {
            return Some(DominanceWindow::Descent { cap: self.lambda1 });
        }
        None
    }
}

/// Largest step `λ` with `x* + λ d` still feasible: the minimum, over
/// constraint rows moving against the ray (`C_j d > 0` relative to the row
/// norm), of `slack_j / (C_j d)` with the slack clamped at zero so active
/// rows with rounding-level negative slack report an exit step of `0`
/// rather than a negative one. `+∞` when no row limits the ray.
pub fn lambda_limiting(instance: &VqfpInstance, base: &[f64], direction: &[f64]) -> f64 {
    match &instance.constraints {
        None => f64::INFINITY,
        Some(c) => {
            let mut best = f64::INFINITY;
            for (row, &b) in c.mat.iter().zip(&c.rhs) {
                let speed = dot(row, direction);
                if speed > tol::ROW_DIRECTION * (1.0 + norm(row)) {
                    let slack = (b - dot(row, base)).max(0.0);
                    best = best.min(slack / speed);
                }
            }
            best
        }
    }
}

/// Whether `d` points into the feasible set from `base`, i.e. `C_j d <= 0`
/// (up to row-scaled tolerance) for every constraint row active at `base`.
/// Directions failing this leave the feasible set immediately and carry no
/// usable window.
pub fn in_tangent_cone(instance: &VqfpInstance, base: &[f64], direction: &[f64], tol_active: f64) -> bool {
    match &instance.constraints {
        None => true,
        Some(c) => c.mat.iter().zip(&c.rhs).all(|(row, &b)| {
            let active = (dot(row, base) - b).abs() <= tol_active * (1.0 + b.abs());
            !active || dot(row, direction) <= tol::ROW_DIRECTION * (1.0 + norm(row))
        }),
    }
}

/// Classify one direction against a prepared associated model.
///
/// `eps` sets the relative zero band for the Taylor coefficients:
/// `|t| <= eps * scale_i` is treated as zero (see
/// [`crate::tol::CLASSIFY_EPS`] for the default). The direction is used as
/// given; callers normalise beforehand so that roots are comparable across
/// directions.
pub fn classify(model: &AssociatedModel, direction: &[f64], eps: f64) -> DirectionProfile {
    let m = model.num_objectives();
    let mut objectives = Vec::with_capacity(m);
    let mut margin = f64::INFINITY;

    for i in 0..m {
        let l = dot(&model.gradients[i], direction);
        let q = quad_value(&model.hessians[i], direction);
        let band = eps * model.scales[i];
        let l_zero = l.abs() <= band;
        let q_zero = q.abs() <= band;
        let label = match (q_zero, l_zero) {
            (true, true) => Label::Neutral,
            (true, false) => {
                if l > 0.0 {
                    Label::X0
                } else {
                    Label::NonIncreasing
                }
            }
            (false, true) => {
                if q > 0.0 {
                    Label::X0
                } else {
                    Label::NonIncreasing
                }
            }
            (false, false) => match (q > 0.0, l > 0.0) {
                (true, true) => Label::X0,
                (true, false) => Label::X1,
                (false, true) => Label::X2,
                (false, false) => Label::NonIncreasing,
            },
        };
        margin = margin.min(l.abs().min(q.abs()) / model.scales[i]);
        objectives.push(ObjectiveDirection { label, linear: l, quadratic: q });
    }

    let lambda_limit = lambda_limiting(model.instance, &model.base_point, direction);
    let x1_roots: Vec<f64> = objectives
        .iter()
        .filter(|o| o.label == Label::X1)
        .map(|o| -2.0 * o.linear / o.quadratic)
        .collect();
    let x2_roots: Vec<f64> = objectives
        .iter()
        .filter(|o| o.label == Label::X2)
        .map(|o| -2.0 * o.linear / o.quadratic)
        .collect();

    let condition2_violated = objectives.iter().all(|o| o.label == Label::Neutral);
    let any_x0 = objectives.iter().any(|o| o.label == Label::X0);
    let any_nonincreasing = objectives.iter().any(|o| o.label == Label::NonIncreasing);

    let min_x1_root = x1_roots.iter().copied().fold(f64::INFINITY, f64::min);
    let lambda1 = min_x1_root.min(lambda_limit);
    let lambda2 = x2_roots.iter().copied().fold(None, |acc: Option<f64>, r| {
        Some(acc.map_or(r, |a| a.max(r)))
    });

    let mut condition1_degenerate = false;
    let interval = if condition2_violated || any_x0 {
        None
    } else if let Some(l2) = lambda2 {
        if x1_roots.is_empty() {
            // The upper endpoint comes from the feasibility cap alone; the
            // window is open on the right, so shrink the stored endpoint to
            // keep every contained step strictly inside the feasible set.
            let hi = if lambda1.is_infinite() {
                f64::INFINITY
            } else {
                lambda1 - tol::OPEN_END_SHRINK * (1.0 + lambda1)
            };
            if l2 > hi {
                None
            } else {
                Some(Interval { lo: l2, hi })
            }
        } else {
            let eq_tol = tol::INTERVAL_EQ * (1.0 + lambda1.abs());
            if l2 > lambda1 + eq_tol {
                None
            } else if (l2 - lambda1).abs() <= eq_tol {
                // The window shrinks to (at most) one step. It survives only
                // if some objective is strictly better exactly there: a
                // NonIncreasing objective, or a sign-change root bounded away
                // from the step.
                let mut root_min = f64::INFINITY;
                let mut root_max = f64::NEG_INFINITY;
                for r in x1_roots.iter().chain(&x2_roots) {
                    root_min = root_min.min(*r);
                    root_max = root_max.max(*r);
                }
                if !any_nonincreasing && root_max - root_min <= eq_tol {
                    condition1_degenerate = true;
                    None
                } else {
                    Some(Interval { lo: lambda1, hi: lambda1 })
                }
            } else {
                Some(Interval { lo: l2, hi: lambda1 })
            }
        }
    } else {
        None
    };

    DirectionProfile {
        direction: direction.to_vec(),
        objectives,
        lambda2,
        lambda1,
        lambda_limit,
        interval,
        condition1_degenerate,
        condition2_violated,
        margin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::associated::{build_associated, p_delta};
    use crate::fixtures;
    use crate::linalg::add_scaled;
    use crate::problem::{LinearConstraints, QuadraticForm, RatioObjective, VqfpInstance};
    use approx::assert_relative_eq;

    const EPS: f64 = tol::CLASSIFY_EPS;

    fn one_dim(objs: Vec<(f64, f64)>, constraints: Option<(f64, f64)>) -> VqfpInstance {
        // Objectives x -> a2 x^2 + a1 x over g = 1, optional row c x <= b.
        VqfpInstance {
            n: 1,
            objectives: objs
                .into_iter()
                .map(|(a2, a1)| RatioObjective {
                    numerator: QuadraticForm { quad: vec![vec![a2]], lin: vec![a1], constant: 0.0 },
                    denominator: QuadraticForm::constant(1, 1.0),
                })
                .collect(),
            constraints: constraints.map(|(c, b)| LinearConstraints { mat: vec![vec![c]], rhs: vec![b] }),
        }
    }

    #[test]
    fn descent_direction_at_origin_of_reference_instance() {
        let inst = fixtures::example1();
        let model = build_associated(&inst, &[0.0, 0.0]);
        let s = 5.0f64.sqrt();
        let d = [1.0 / s, -2.0 / s];
        let profile = classify(&model, &d, EPS);
        assert_eq!(profile.objectives[0].label, Label::Neutral);
        assert_eq!(profile.objectives[1].label, Label::X1);
        assert_relative_eq!(profile.lambda1, 4.0 / s, max_relative = 1e-12);
        assert_eq!(profile.interval, None);
        assert_eq!(
            profile.dominance_window(),
            Some(DominanceWindow::Descent { cap: profile.lambda1 })
        );
        // The window is real: mid-cap steps strictly improve objective 2
        // while objective 1 stays put.
        let lam = 0.5 * profile.lambda1;
        let mut y = model.base_point.clone();
        add_scaled(&mut y, lam, &d);
        assert!(p_delta(&model, 1, &y) < 0.0);
        assert!(p_delta(&model, 0, &y).abs() < 1e-12);
    }

    #[test]
    fn descent_direction_at_second_branch_point() {
        let inst = fixtures::example1();
        let model = build_associated(&inst, &[2.0, -1.0]);
        assert_eq!(model.gradients[0], vec![16.0, 2.0]);
        assert_eq!(model.gradients[1], vec![0.0, 0.0]);
        let s = 5.0f64.sqrt();
        let d = [-2.0 / s, 1.0 / s];
        let profile = classify(&model, &d, EPS);
        assert_eq!(profile.objectives[0].label, Label::X1);
        assert_eq!(profile.objectives[1].label, Label::Neutral);
        assert_relative_eq!(profile.lambda1, 2.0 * s, max_relative = 1e-12);
    }

    #[test]
    fn step_window_on_dominated_stationary_point() {
        // Stationary point with weight 5 on the trade-off curve's parameter:
        // x* = (-2/19, 4) is dominated along d = (0, -1) exactly on [8, 10].
        let inst = fixtures::example1();
        let model = build_associated(&inst, &[-2.0 / 19.0, 4.0]);
        let d = [0.0, -1.0];
        let profile = classify(&model, &d, EPS);
        assert_eq!(profile.objectives[0].label, Label::X2);
        assert_eq!(profile.objectives[1].label, Label::X1);
        let interval = profile.interval.expect("window must be nonempty");
        assert_relative_eq!(interval.lo, 8.0, max_relative = 1e-12);
        assert_relative_eq!(interval.hi, 10.0, max_relative = 1e-12);
        assert!(matches!(profile.dominance_window(), Some(DominanceWindow::Step(_))));
        // Verify dominance at the midpoint by direct evaluation.
        let mut y = model.base_point.clone();
        add_scaled(&mut y, 9.0, &d);
        assert!(p_delta(&model, 0, &y) < 0.0);
        assert!(p_delta(&model, 1, &y) < 0.0);
    }

    #[test]
    fn worsening_objective_blocks_every_window() {
        let inst = fixtures::example1();
        let model = build_associated(&inst, &[2.0, -1.0]);
        let profile = classify(&model, &[1.0, 0.0], EPS);
        assert_eq!(profile.objectives[0].label, Label::X0);
        assert_eq!(profile.interval, None);
        assert_eq!(profile.dominance_window(), None);
    }

    #[test]
    fn all_neutral_ray_is_flagged_uninformative() {
        // Single objective x1^2 in dimension 2: the x2-axis changes nothing.
        let inst = VqfpInstance {
            n: 2,
            objectives: vec![RatioObjective {
                numerator: QuadraticForm {
                    quad: vec![vec![1.0, 0.0], vec![0.0, 0.0]],
                    lin: vec![0.0, 0.0],
                    constant: 0.0,
                },
                denominator: QuadraticForm::constant(2, 1.0),
            }],
            constraints: None,
        };
        let model = build_associated(&inst, &[0.0, 0.0]);
        let profile = classify(&model, &[0.0, 1.0], EPS);
        assert!(profile.condition2_violated);
        assert_eq!(profile.dominance_window(), None);
    }

    #[test]
    fn coinciding_roots_collapse_to_empty_window() {
        // p1 = x - x^2 (X2, root 1) and p2 = x^2 - x = -p1 (X1, root 1):
        // both vanish only at the shared root, so no step strictly improves
        // anything and the window must be rejected as degenerate.
        let inst = one_dim(vec![(-1.0, 1.0), (1.0, -1.0)], None);
        let model = build_associated(&inst, &[0.0]);
        let profile = classify(&model, &[1.0], EPS);
        assert_eq!(profile.objectives[0].label, Label::X2);
        assert_eq!(profile.objectives[1].label, Label::X1);
        assert!(profile.condition1_degenerate);
        assert_eq!(profile.interval, None);
        assert_eq!(profile.dominance_window(), None);
    }

    #[test]
    fn coinciding_roots_survive_with_a_strict_improver() {
        // Same coinciding roots plus p3 = -x, strictly better at every step:
        // the single shared step is a genuine dominator.
        let inst = one_dim(vec![(-1.0, 1.0), (1.0, -1.0), (0.0, -1.0)], None);
        let model = build_associated(&inst, &[0.0]);
        let profile = classify(&model, &[1.0], EPS);
        assert_eq!(profile.objectives[2].label, Label::NonIncreasing);
        let interval = profile.interval.expect("singleton window expected");
        assert!(interval.is_singleton());
        assert_relative_eq!(interval.lo, 1.0, max_relative = 1e-12);
        let y = [interval.lo];
        assert!(p_delta(&model, 2, &y) < 0.0);
        assert!(p_delta(&model, 0, &y).abs() < 1e-12);
    }

    #[test]
    fn feasibility_cap_closes_an_unbounded_window() {
        // p = x - x^2 alone: X2 with root 1 and no X1, so the window would be
        // [1, inf); the row x <= 3 caps it just inside 3.
        let inst = one_dim(vec![(-1.0, 1.0)], Some((1.0, 3.0)));
        let model = build_associated(&inst, &[0.0]);
        let profile = classify(&model, &[1.0], EPS);
        assert_eq!(profile.lambda_limit, 3.0);
        let interval = profile.interval.expect("capped window expected");
        assert_relative_eq!(interval.lo, 1.0, max_relative = 1e-12);
        assert!(interval.hi < 3.0 && interval.hi > 3.0 - 1e-7);

        let unbounded = one_dim(vec![(-1.0, 1.0)], None);
        let model = build_associated(&unbounded, &[0.0]);
        let profile = classify(&model, &[1.0], EPS);
        let interval = profile.interval.expect("unbounded window expected");
        assert_eq!(interval.hi, f64::INFINITY);
    }

    #[test]
    fn exit_step_and_tangent_cone_respect_active_rows() {
        let inst = one_dim(vec![(1.0, 0.0)], Some((1.0, 1.0)));
        assert_eq!(lambda_limiting(&inst, &[0.0], &[1.0]), 1.0);
        assert_eq!(lambda_limiting(&inst, &[0.0], &[-1.0]), f64::INFINITY);
        // At the boundary point the inward direction stays in the cone, the
        // outward one does not; rounding-level negative slack clamps to 0.
        assert!(in_tangent_cone(&inst, &[1.0], &[-1.0], tol::ACTIVE));
        assert!(!in_tangent_cone(&inst, &[1.0], &[1.0], tol::ACTIVE));
        assert_eq!(lambda_limiting(&inst, &[1.0 + 1e-15], &[1.0]), 0.0);
    }

    #[test]
    fn margin_flags_near_boundary_labels() {
        let inst = fixtures::example1();
        let model = build_associated(&inst, &[-2.0 / 19.0, 4.0]);
        let clear = classify(&model, &[0.0, -1.0], EPS);
        // Rotate the direction to nearly annihilate l_2; margin collapses.
        let g = &model.gradients[1];
        let mut d = vec![-g[1], g[0]];
        let nrm = crate::linalg::norm(&d);
        d.iter_mut().for_each(|v| *v /= nrm);
        let boundary = classify(&model, &d, EPS);
        assert!(boundary.margin < 1e-12);
        assert!(clear.margin > 1e-3);
    }
}
