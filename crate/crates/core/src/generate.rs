//! Deterministic random instance generators.
//!
//! Everything here is valid **by construction**, not by rejection: PSD
//! denominator matrices are built as Gram products, denominator linear
//! terms are placed inside the matrix range so the minimum is attained, and
//! the constant lifts the minimum to a strictly positive value. Constraint
//! rows are unit-norm with controlled slack around an anchor point, so the
//! anchor is strictly interior except for rows requested to be exactly
//! active. Generators consume a seeded stream and are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::solve_psd_least_squares;
use crate::linalg::{add_scaled, mat_vec, normalize, quad_value, zeros};
use crate::problem::{
    eval_form, grad_form, LinearConstraints, QuadraticForm, RatioObjective, VqfpInstance,
};
use crate::sampling::gaussian_vector;

/// Knobs for [`random_instance`].
#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    /// Ambient dimension (>= 1).
    pub n: usize,
    /// Number of ratio objectives (>= 1).
    pub m: usize,
    /// Attach a polyhedron of unit-norm rows around the anchor.
    pub constrained: bool,
    /// Exact number of constraint rows; `None` picks a count in
    /// `n+1 ..= 2n+2` from the stream.
    pub constraint_rows: Option<usize>,
    /// Make one constraint row exactly active at the anchor (implies
    /// `constrained`).
    pub exact_active_facet: bool,
    /// Force every denominator to a positive constant (`g_i = const`).
    pub constant_denominators: bool,
    /// Stream seed.
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(n: usize, m: usize, seed: u64) -> Self {
        GeneratorConfig {
            n,
            m,
            constrained: false,
            constraint_rows: None,
            exact_active_facet: false,
            constant_denominators: false,
            seed,
        }
    }
}

fn random_symmetric<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Vec<Vec<f64>> {
    let mut m = zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let v = rng.gen_range(-scale..scale);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

/// Gram-product PSD matrix of the given rank: `V V' / n` with `V` an
/// `n x rank` Gaussian factor.
fn random_psd<R: Rng>(rng: &mut R, n: usize, rank: usize) -> Vec<Vec<f64>> {
    let factors: Vec<Vec<f64>> = (0..rank).map(|_| gaussian_vector(rng, n)).collect();
    let mut m = zeros(n);
    for f in &factors {
        for i in 0..n {
            for j in 0..n {
                m[i][j] += f[i] * f[j] / n as f64;
            }
        }
    }
    m
}

/// One well-posed denominator: either a positive constant, or a PSD
/// quadratic with attained strictly positive minimum. The linear term is
/// `-2 B w` for a random `w`, which keeps it inside the range of `B`, and
/// the constant lifts `g(w)` to a value in `[0.5, 2]`.
fn random_denominator<R: Rng>(rng: &mut R, n: usize, force_constant: bool) -> QuadraticForm {
    if force_constant || rng.gen_bool(1.0 / 3.0) {
        return QuadraticForm::constant(n, rng.gen_range(0.5..2.0));
    }
    let rank = if rng.gen_bool(0.5) { n } else { 1 + rng.gen_range(0..n.max(2) - 1) };
    let quad = random_psd(rng, n, rank.max(1));
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut lin = mat_vec(&quad, &w);
    lin.iter_mut().for_each(|v| *v *= -2.0);
    // g(w) = w'Bw - 2 w'Bw + b0 = b0 - w'Bw; pick b0 so g(w) is in [0.5, 2].
    let constant = rng.gen_range(0.5..2.0) + quad_value(&quad, &w);
    QuadraticForm { quad, lin, constant }
}

/// A generic instance plus an anchor point that is strictly feasible
/// (except for rows requested exactly active, which pass through it).
pub fn random_instance(config: &GeneratorConfig) -> (VqfpInstance, Vec<f64>) {
    assert!(config.n >= 1 && config.m >= 1, "dimensions must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.n;

    let anchor: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.5..1.5)).collect();

    let objectives: Vec<RatioObjective> = (0..config.m)
        .map(|_| RatioObjective {
            numerator: QuadraticForm {
                quad: random_symmetric(&mut rng, n, 2.0),
                lin: (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect(),
                constant: rng.gen_range(-1.0..1.0),
            },
            denominator: random_denominator(&mut rng, n, config.constant_denominators),
        })
        .collect();

    let constraints = if config.constrained || config.exact_active_facet {
        let rows = match config.constraint_rows {
            Some(rows) => rows,
            None => rng.gen_range(n + 1..=2 * n + 2),
        };
        let mut mat = Vec::with_capacity(rows);
        let mut rhs = Vec::with_capacity(rows);
        for k in 0..rows {
            let row = loop {
                let mut r = gaussian_vector(&mut rng, n);
                if normalize(&mut r) {
                    break r;
                }
            };
            // Unit rows; slack in [0.1, 1.1] keeps the anchor well interior,
            // except for the designated exactly-active facet.
            let exact = config.exact_active_facet && k == 0;
            let slack = if exact { 0.0 } else { rng.gen_range(0.1..1.1) };
            let b = crate::linalg::dot(&row, &anchor) + slack;
            mat.push(row);
            rhs.push(b);
        }
        Some(LinearConstraints { mat, rhs })
    } else {
        None
    };

    (VqfpInstance { n, objectives, constraints }, anchor)
}

/// A jointly convex instance: every numerator is positive definite and all
/// numerators share one unconstrained minimizer, while denominators are
/// positive constants. The shared minimizer attains the ideal point, so it
/// is efficient — the canonical "must certify" case. Returns the instance
/// and the minimizer.
pub fn convex_common_minimizer(n: usize, m: usize, seed: u64) -> (VqfpInstance, Vec<f64>) {
    assert!(n >= 1 && m >= 1, "dimensions must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let minimizer: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.5..1.5)).collect();
    let objectives: Vec<RatioObjective> = (0..m)
        .map(|_| {
            let mut quad = random_psd(&mut rng, n, n);
            for (j, row) in quad.iter_mut().enumerate() {
                row[j] += rng.gen_range(0.2..1.0);
            }
            // Gradient 2 A x + a vanishes at the minimizer: a = -2 A x̂.
            let mut lin = mat_vec(&quad, &minimizer);
            lin.iter_mut().for_each(|v| *v *= -2.0);
            let constant = rng.gen_range(-1.0..1.0);
            RatioObjective {
                numerator: QuadraticForm { quad, lin, constant },
                denominator: QuadraticForm::constant(n, rng.gen_range(0.5..2.0)),
            }
        })
        .collect();
    (VqfpInstance { n, objectives, constraints: None }, minimizer)
}

/// Recover the shared minimizer of a [`convex_common_minimizer`] instance
/// from its first objective by solving the stationarity system
/// `2 A_1 x = -a_1`.
pub fn recover_common_minimizer(instance: &VqfpInstance) -> Vec<f64> {
    let num = &instance.objectives[0].numerator;
    let scaled: Vec<Vec<f64>> = num.quad.iter().map(|r| r.iter().map(|v| 2.0 * v).collect()).collect();
    let neg: Vec<f64> = num.lin.iter().map(|v| -v).collect();
    let (x, residual) = solve_psd_least_squares(&scaled, &neg).expect("numerator matrix is symmetric");
    debug_assert!(residual < 1e-8, "stationarity system should be consistent, residual {residual:e}");
    x
}

/// Rewrite the first objective so that `x` becomes an exact weighted-sum
/// stationary point with weights `weights` and first-objective value
/// `rho1`. All other objectives are left untouched; only `a_1` and `a0_1`
/// move. The construction solves the stationarity equation
///
/// ```text
///   sum_i w_i (∇f_i - r_i ∇g_i) / g_i = 0      (at x)
/// ```
///
/// for `∇f_1(x)`, then shifts `a0_1` so that `f_1(x) = rho1 * g_1(x)`,
/// making `r_1 = rho1` hold exactly. Stationarity therefore holds to
/// rounding, not to a solver tolerance.
///
/// # Panics
/// Panics when `weights[0] <= 0` or the weight count mismatches.
pub fn plant_stationary_point(
    instance: &mut VqfpInstance,
    x: &[f64],
    weights: &[f64],
    rho1: f64,
) {
    assert_eq!(weights.len(), instance.objectives.len());
    assert!(weights[0] > 0.0, "the first weight must be positive to solve for objective 1");

    let g1 = eval_form(&instance.objectives[0].denominator, x);
    let mut u = vec![0.0; instance.n];
    for (i, obj) in instance.objectives.iter().enumerate().skip(1) {
        let gi = eval_form(&obj.denominator, x);
        let ri = eval_form(&obj.numerator, x) / gi;
        let mut grad_p = grad_form(&obj.numerator, x);
        let grad_g = grad_form(&obj.denominator, x);
        add_scaled(&mut grad_p, -ri, &grad_g);
        add_scaled(&mut u, -(g1 / weights[0]) * weights[i] / gi, &grad_p);
    }

    // ∇f_1(x) must equal rho1 ∇g_1(x) + u, and ∇f_1 = 2 A_1 x + a_1.
    let obj1 = &mut instance.objectives[0];
    let grad_g1 = grad_form(&obj1.denominator, x);
    let two_ax = {
        let mut v = mat_vec(&obj1.numerator.quad, x);
        v.iter_mut().for_each(|t| *t *= 2.0);
        v
    };
    let mut a1 = u;
    add_scaled(&mut a1, rho1, &grad_g1);
    add_scaled(&mut a1, -1.0, &two_ax);
    obj1.numerator.lin = a1;
    // f_1(x) = x'A_1 x + a_1'x + a0_1 = rho1 * g_1(x).
    obj1.numerator.constant =
        rho1 * g1 - quad_value(&obj1.numerator.quad, x) - crate::linalg::dot(&obj1.numerator.lin, x);
}
