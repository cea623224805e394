//! Associated quadratic model at a candidate point.
//!
//! Fix a feasible base point `x*` and let `r_i = f_i(x*) / g_i(x*)`. The
//! i-th associated polynomial is
//!
//! ```text
//!   p_i(x) = f_i(x) - r_i g_i(x),
//! ```
//!
//! an exact (not truncated) quadratic with `p_i(x*) = 0`. Because every
//! `g_i` is positive, `p_i(x)` has the same sign as
//! `f_i(x)/g_i(x) - r_i`: the ratio landscape around `x*` is faithfully
//! mirrored by a family of plain quadratics, which is what makes exact
//! directional analysis possible.
//!
//! This module precomputes, once per base point, everything the
//! per-direction classifier needs: gradients `∇p_i(x*)`, Hessians
//! `∇²p_i = 2 (A_i - r_i B_i)`, and per-objective magnitude scales used to
//! make zero tests relative.

use crate::linalg::{add_scaled, max_abs, norm, sub};
use crate::problem::{eval_form, grad_form, VqfpInstance};
use crate::tol;

/// Precomputed associated model for one `(instance, base point)` pair.
#[derive(Debug, Clone)]
pub struct AssociatedModel<'a> {
    pub instance: &'a VqfpInstance,
    /// The candidate point `x*`.
    pub base_point: Vec<f64>,
    /// Ratio values `r_i = f_i(x*) / g_i(x*)`.
    pub ratios: Vec<f64>,
    /// Gradients `∇p_i(x*) = ∇f_i(x*) - r_i ∇g_i(x*)`.
    pub gradients: Vec<Vec<f64>>,
    /// Constant Hessians `∇²p_i = 2 (A_i - r_i B_i)`.
    pub hessians: Vec<Vec<Vec<f64>>>,
    /// Per-objective magnitude scale `1 + ||∇p_i|| + max|∇²p_i|`, the
    /// reference for relative zero tests on directional coefficients.
    pub scales: Vec<f64>,
    /// Numerator values `f_i(x*)`.
    pub base_f: Vec<f64>,
    /// Denominator values `g_i(x*)`.
    pub base_g: Vec<f64>,
}

/// Build the associated model at `base_point`.
///
/// Assumes the instance has already passed validation (denominators
/// positive); the only pointwise requirement checked here is implicit —
/// a division by a non-positive `g_i(x*)` would poison every ratio, and
/// validated instances cannot produce one.
pub fn build_associated<'a>(instance: &'a VqfpInstance, base_point: &[f64]) -> AssociatedModel<'a> {
    let m = instance.objectives.len();
    let mut ratios = Vec::with_capacity(m);
    let mut gradients = Vec::with_capacity(m);
    let mut hessians = Vec::with_capacity(m);
    let mut scales = Vec::with_capacity(m);
    let mut base_f = Vec::with_capacity(m);
    let mut base_g = Vec::with_capacity(m);

    for obj in &instance.objectives {
        let fv = eval_form(&obj.numerator, base_point);
        let gv = eval_form(&obj.denominator, base_point);
        let r = fv / gv;

        let grad_f = grad_form(&obj.numerator, base_point);
        let grad_g = grad_form(&obj.denominator, base_point);
        let mut grad_p = grad_f;
        add_scaled(&mut grad_p, -r, &grad_g);

        let n = instance.n;
        let mut hess = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                hess[i][j] = 2.0 * (obj.numerator.quad[i][j] - r * obj.denominator.quad[i][j]);
            }
        }

        let scale = 1.0 + norm(&grad_p) + max_abs(&hess);
        ratios.push(r);
        gradients.push(grad_p);
        hessians.push(hess);
        scales.push(scale);
        base_f.push(fv);
        base_g.push(gv);
    }

    AssociatedModel {
        instance,
        base_point: base_point.to_vec(),
        ratios,
        gradients,
        hessians,
        scales,
        base_f,
        base_g,
    }
}

impl<'a> AssociatedModel<'a> {
    /// Number of objectives.
    pub fn num_objectives(&self) -> usize {
        self.ratios.len()
    }

    /// Displacement `x - x*`.
    pub fn offset(&self, x: &[f64]) -> Vec<f64> {
        sub(x, &self.base_point)
    }
}

/// Exact associated value `p_i(x)`, computed in difference form
/// `(f_i(x) - f_i(x*)) - r_i (g_i(x) - g_i(x*))` so that the defining
/// identity `p_i(x*) = 0` holds bit-exactly rather than merely up to
/// rounding.
pub fn p_delta(model: &AssociatedModel, i: usize, x: &[f64]) -> f64 {
    let obj = &model.instance.objectives[i];
    let df = eval_form(&obj.numerator, x) - model.base_f[i];
    let dg = eval_form(&obj.denominator, x) - model.base_g[i];
    df - model.ratios[i] * dg
}

/// Whether `y` dominates the base point in the associated values:
/// `p_i(y) <= tol_dom * scale_i` for all `i` and `< -tol_dom * scale_i`
/// for at least one. Positive denominators make this equivalent to ratio
/// dominance, but evaluated without any division.
pub fn p_dominance(model: &AssociatedModel, y: &[f64], tol_dom: f64) -> bool {
    let mut strict = false;
    for i in 0..model.num_objectives() {
        let v = p_delta(model, i, y);
        let band = tol_dom * model.scales[i];
        if v > band {
            return false;
        }
        if v < -band {
            strict = true;
        }
    }
    strict
}

/// Default dominance tolerance re-export for callers that want the same
/// band as [`p_dominance`] used with library defaults.
pub const DEFAULT_DOMINANCE_TOL: f64 = tol::DOMINANCE;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::problem::dominates;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn base_point_values_are_exactly_zero() {
        let inst = fixtures::example1();
        let base = vec![0.3, -1.7];
        let model = build_associated(&inst, &base);
        for i in 0..model.num_objectives() {
            assert_eq!(p_delta(&model, i, &base), 0.0);
        }
    }

    #[test]
    fn known_gradients_and_hessians_at_origin() {
        let inst = fixtures::example1();
        let model = build_associated(&inst, &[0.0, 0.0]);
        // Both numerators vanish at the origin and all denominators are 1,
        // so r = (0, 0) and the model reduces to the raw numerators.
        assert_eq!(model.ratios, vec![0.0, 0.0]);
        assert_eq!(model.gradients[0], vec![0.0, 0.0]);
        assert_eq!(model.gradients[1], vec![4.0, 8.0]);
        assert_eq!(model.hessians[0], vec![vec![8.0, 0.0], vec![0.0, -2.0]]);
        assert_eq!(model.hessians[1], vec![vec![-2.0, 0.0], vec![0.0, 8.0]]);
    }

    #[test]
    fn sign_of_p_matches_sign_of_ratio_difference() {
        let inst = fixtures::example1();
        let base = vec![0.7, 0.2];
        let model = build_associated(&inst, &base);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let x = vec![rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            for i in 0..model.num_objectives() {
                let p = p_delta(&model, i, &x);
                let dr = crate::problem::ratio_value(&inst, i, &x)
                    - crate::problem::ratio_value(&inst, i, &base);
                if p.abs() > 1e-12 {
                    assert_eq!(p.signum(), dr.signum(), "x = {x:?}, objective {i}");
                }
            }
        }
    }

    #[test]
    fn p_dominance_agrees_with_ratio_dominance() {
        let inst = fixtures::example1();
        let base = vec![1.1, -0.4];
        let model = build_associated(&inst, &base);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut agreements = 0;
        for _ in 0..2000 {
            let y = vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
            // Skip points in the tolerance band where the two predicates may
            // legitimately differ; the equivalence claim is about clear cases.
            let clear = (0..2).all(|i| {
                let v = p_delta(&model, i, &y);
                v.abs() > 10.0 * tol::DOMINANCE * model.scales[i]
            });
            if !clear {
                continue;
            }
            assert_eq!(
                p_dominance(&model, &y, tol::DOMINANCE),
                dominates(&inst, &y, &base, tol::DOMINANCE),
                "y = {y:?}"
            );
            agreements += 1;
        }
        assert!(agreements > 1000, "too few clear-margin samples: {agreements}");
    }
}
