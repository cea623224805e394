//! Brute-force dominance search, used as an independent check on the
//! analytic machinery.
//!
//! The oracle knows nothing about associated models, labels, or windows: it
//! evaluates the raw ratio objectives at explicitly enumerated feasible
//! points and reports the closest one that dominates the base point. Slow
//! and exact-by-sampling, it is the ground truth the fast path is tested
//! against — which is why nothing in this module may call into
//! [`crate::associated`] or [`crate::directional`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{add_scaled, distance, norm};
use crate::problem::{dominates, eval_form, grad_form, is_feasible, VqfpInstance};
use crate::sampling::ball_point;
use crate::tol;

/// Radius of the probe ball used by [`local_efficiency_check`].
pub const LOCAL_RADIUS: f64 = 1e-3;

/// Outcome of a brute-force search.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Closest dominating feasible point found, if any.
    pub dominator: Option<Vec<f64>>,
    /// Euclidean distance from the base point to the dominator.
    pub distance: Option<f64>,
    /// Number of candidate points generated (feasible or not).
    pub samples: usize,
}

impl OracleResult {
    pub fn found(&self) -> bool {
        self.dominator.is_some()
    }
}

/// Search the closed ball of the given radius around `base` for a feasible
/// point dominating `base`, returning the closest hit.
///
/// Two complementary candidate streams are scanned:
///
/// * `budget` points drawn uniformly from the ball (seeded, deterministic),
///   which cover the bulk of the volume, and
/// * a regular lattice over the ball's bounding box with roughly `budget`
///   nodes, which catches thin or low-volume dominance regions that random
///   sampling can miss.
///
/// Candidates are screened with strict feasibility (zero slack tolerance)
/// and the instance-level dominance predicate at the shared relative
/// tolerance. Ties in distance keep the earliest candidate in generation
/// order, so results are reproducible bit for bit.
pub fn brute_force_dominator(
    instance: &VqfpInstance,
    base: &[f64],
    radius: f64,
    budget: usize,
    seed: u64,
) -> OracleResult {
    let n = instance.n;
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut samples = 0usize;

    let consider = |y: Vec<f64>, best: &mut Option<(f64, Vec<f64>)>| {
        if is_feasible(instance, &y, 0.0) && dominates(instance, &y, base, tol::DOMINANCE) {
            let d = distance(&y, base);
            if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                *best = Some((d, y));
            }
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let y = ball_point(&mut rng, base, radius);
        samples += 1;
        consider(y, &mut best);
    }

    // Lattice pass: k nodes per axis so that k^n is close to the budget,
    // capped to avoid a combinatorial blow-up in higher dimensions.
    let mut k = (budget as f64).powf(1.0 / n as f64).ceil() as usize;
    while k > 2 && (k as f64).powi(n as i32) > 8.0 * budget as f64 {
        k -= 1;
    }
    if k >= 2 && (k as f64).powi(n as i32) <= 8.0 * budget as f64 {
        let mut index = vec![0usize; n];
        loop {
            let y: Vec<f64> = (0..n)
                .map(|axis| base[axis] - radius + 2.0 * radius * index[axis] as f64 / (k - 1) as f64)
                .collect();
            if distance(&y, base) <= radius {
                samples += 1;
                consider(y, &mut best);
            }
            // Odometer increment over the n-digit base-k index.
            let mut axis = 0;
            loop {
                if axis == n {
                    break;
                }
                index[axis] += 1;
                if index[axis] < k {
                    break;
                }
                index[axis] = 0;
                axis += 1;
            }
            if axis == n {
                break;
            }
        }
    }

    match best {
        Some((d, y)) => OracleResult { dominator: Some(y), distance: Some(d), samples },
        None => OracleResult { dominator: None, distance: None, samples },
    }
}

/// Probe a small ball (radius [`LOCAL_RADIUS`]) around `base` for
/// dominators. Finding one refutes local efficiency; finding none is
/// sampling evidence in its favour.
pub fn local_efficiency_check(
    instance: &VqfpInstance,
    base: &[f64],
    budget: usize,
    seed: u64,
) -> OracleResult {
    brute_force_dominator(instance, base, LOCAL_RADIUS, budget, seed)
}

/// First-order stationarity residual of the weighted ratio objective at
/// `x`:
///
/// ```text
///   || sum_i w_i * (∇f_i(x) - r_i(x) ∇g_i(x)) / g_i(x) ||,
///   r_i(x) = f_i(x) / g_i(x),
/// ```
///
/// which is the norm of the gradient of `sum_i w_i f_i/g_i` by the quotient
/// rule. A residual at rounding level certifies the point is a
/// weighted-sum stationary point for these weights.
///
/// # Panics
/// Panics when `weights` and the objective list disagree in length.
pub fn stationarity_residual(instance: &VqfpInstance, x: &[f64], weights: &[f64]) -> f64 {
    assert_eq!(
        weights.len(),
        instance.objectives.len(),
        "one weight per objective is required"
    );
    let mut total = vec![0.0; instance.n];
    for (obj, &w) in instance.objectives.iter().zip(weights) {
        let g = eval_form(&obj.denominator, x);
        let r = eval_form(&obj.numerator, x) / g;
        let mut grad = grad_form(&obj.numerator, x);
        let grad_g = grad_form(&obj.denominator, x);
        add_scaled(&mut grad, -r, &grad_g);
        add_scaled(&mut total, w / g, &grad);
    }
    norm(&total)
}
