//! Built-in reference instance shared by tests, the demonstration
//! subcommand, and the documentation examples.

use crate::problem::{QuadraticForm, RatioObjective, VqfpInstance};

/// Two-objective unconstrained instance in the plane with unit
/// denominators:
///
/// ```text
///   minimize ( 4 x1^2 - x2^2 ,  -x1^2 + 4 x2^2 + 4 x1 + 8 x2 )
/// ```
///
/// Its weighted-sum stationary points form two hyperbola branches (see
/// [`example1_stationary_point`]); the branch over weights in `(1/4, 4)` is
/// globally efficient, while points on the outer branches are dominated at
/// a positive distance — which makes this instance a compact exercise for
/// every verdict the analysis can produce.
pub fn example1() -> VqfpInstance {
    VqfpInstance {
        n: 2,
        objectives: vec![
            RatioObjective {
                numerator: QuadraticForm {
                    quad: vec![vec![4.0, 0.0], vec![0.0, -1.0]],
                    lin: vec![0.0, 0.0],
                    constant: 0.0,
                },
                denominator: QuadraticForm::constant(2, 1.0),
            },
            RatioObjective {
                numerator: QuadraticForm {
                    quad: vec![vec![-1.0, 0.0], vec![0.0, 4.0]],
                    lin: vec![4.0, 8.0],
                    constant: 0.0,
                },
                denominator: QuadraticForm::constant(2, 1.0),
            },
        ],
        constraints: None,
    }
}

/// The stationary point of the weighted objective
/// `tau * f1 + f2` for [`example1`]:
///
/// ```text
///   x1 = 2 / (1 - 4 tau),    x2 = 4 / (tau - 4),
/// ```
///
/// defined for `tau` away from the poles `1/4` and `4`. Stationarity of the
/// weighted sum makes every such point a candidate the certifier should
/// either certify (weights in `(1/4, 4)`) or refute with a dominator.
///
/// # Panics
/// Panics when `tau` sits within `1e-12` of a pole.
pub fn example1_stationary_point(tau: f64) -> Vec<f64> {
    assert!(
        (1.0 - 4.0 * tau).abs() > 1e-12 && (tau - 4.0).abs() > 1e-12,
        "tau = {tau} is at or next to a pole of the stationary-point map"
    );
    vec![2.0 / (1.0 - 4.0 * tau), 4.0 / (tau - 4.0)]
}
