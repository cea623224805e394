//! Scratch investigation of battery case 11 (not part of the suite).

use pareto_radius::eigen::symmetric_eigen;
use pareto_radius::generate::{plant_stationary_point, random_instance, GeneratorConfig};
use pareto_radius::linalg::{add_scaled, dot, mat_vec, norm, normalize, zeros};
use pareto_radius::problem::VqfpInstance;
use pareto_radius::{
    brute_force_dominator, build_associated, certify, classify, stationarity_residual, tol,
    validate_instance, SweepConfig,
};

fn anchor_is_second_order_efficient(
    instance: &VqfpInstance,
    anchor: &[f64],
    weights: &[f64],
) -> bool {
    let model = build_associated(instance, anchor);
    let n = instance.n;
    let mut span: Vec<Vec<f64>> = Vec::new();
    for gradient in &model.gradients {
        let mut v = gradient.clone();
        for b in &span {
            let c = dot(&v, b);
            add_scaled(&mut v, -c, b);
        }
        if norm(&v) > 1e-9 * (1.0 + norm(gradient)) && normalize(&mut v) {
            span.push(v);
        }
    }
    if span.len() == n {
        return true;
    }
    let mut complement: Vec<Vec<f64>> = Vec::new();
    for j in 0..n {
        let mut v = vec![0.0; n];
        v[j] = 1.0;
        for b in span.iter().chain(&complement) {
            let c = dot(&v, b);
            add_scaled(&mut v, -c, b);
        }
        if norm(&v) > 1e-6 && normalize(&mut v) {
            complement.push(v);
        }
    }
    let mut weighted = zeros(n);
    for (w, hessian) in weights.iter().zip(&model.hessians) {
        for (acc_row, row) in weighted.iter_mut().zip(hessian) {
            for (acc, v) in acc_row.iter_mut().zip(row) {
                *acc += w * v;
            }
        }
    }
    let k = complement.len();
    let mut reduced = vec![vec![0.0; k]; k];
    for a in 0..k {
        let image = mat_vec(&weighted, &complement[a]);
        for b in a..k {
            let value = dot(&complement[b], &image);
            reduced[a][b] = value;
            reduced[b][a] = value;
        }
    }
    let eigen = symmetric_eigen(&reduced).expect("projected weighted Hessian is symmetric");
    let scale = 1.0 + eigen.values.iter().fold(0f64, |acc, v| acc.max(v.abs()));
    eigen.values[0] > 0.05 * scale
}

#[test]
#[ignore]
fn probe_case_11() {
    let k: u64 = 11;
    let n = 2 + (k as usize % 3);
    let m = 2 + ((k as usize / 3) % 3);
    let weights: Vec<f64> = (0..m).map(|i| 1.0 + 0.25 * ((k as usize + i) % 4) as f64).collect();

    let (instance, anchor) = (0..200u64)
        .find_map(|attempt| {
            let generator = GeneratorConfig {
                constrained: k % 2 == 1,
                exact_active_facet: k % 4 == 3,
                constant_denominators: k % 5 == 0,
                ..GeneratorConfig::new(n, m, 9000 + k * 101 + attempt * 100_000)
            };
            let (mut instance, anchor) = random_instance(&generator);
            plant_stationary_point(&mut instance, &anchor, &weights, 0.3 + 0.1 * (k % 4) as f64);
            anchor_is_second_order_efficient(&instance, &anchor, &weights)
                .then_some((instance, anchor))
        })
        .unwrap();
    assert!(validate_instance(&instance).is_valid());
    println!("n={n} m={m} weights={weights:?}");
    println!("anchor={anchor:?}");
    println!("residual={:e}", stationarity_residual(&instance, &anchor, &weights));
    println!("constraints rows: {}", instance.constraints.as_ref().map_or(0, |c| c.rhs.len()));

    let config =
        SweepConfig { num_directions: 16_384, refine_rounds: 5, seed: 42 + k, ..SweepConfig::new(n) };
    let report = certify(&instance, &anchor, &config);
    println!(
        "verdict={:?} beta={} P={} rho={} gamma={:?} lower={} M={}",
        report.verdict, report.beta, report.p, report.rho, report.gamma, report.lower_bound, report.m
    );
    println!("diagnostics={:?}", report.diagnostics);
    println!("beta_direction={:?}", report.beta_direction);

    let inner = report.beta * (1.0 - 1e-3);
    let oracle = brute_force_dominator(&instance, &anchor, inner, 100_000, 4242 + k);
    println!("oracle: found={} distance={:?}", oracle.found(), oracle.distance);
    let y = oracle.dominator.clone().unwrap();
    let dist = oracle.distance.unwrap();
    let mut dstar: Vec<f64> = y.iter().zip(&anchor).map(|(a, b)| a - b).collect();
    assert!(normalize(&mut dstar));
    println!("dominator direction={dstar:?}");

    let model = build_associated(&instance, &anchor);
    let profile = classify(&model, &dstar, tol::CLASSIFY_EPS);
    println!(
        "profile along dominator dir: labels={:?} l={:?} q={:?}",
        profile.objectives.iter().map(|o| o.label).collect::<Vec<_>>(),
        profile.objectives.iter().map(|o| o.linear).collect::<Vec<_>>(),
        profile.objectives.iter().map(|o| o.quadratic).collect::<Vec<_>>(),
    );
    println!(
        "lambda2={:?} lambda1={} lambda_limit={} interval={:?} margin={:e}",
        profile.lambda2, profile.lambda1, profile.lambda_limit, profile.interval, profile.margin
    );
    println!("dominator distance along ray = {dist}");

    // How close does the sweep get to this direction?
    use pareto_radius::sweep;
    let profiles = sweep(&model, &config);
    let mut best_cos = -1.0f64;
    let mut best_lo = f64::INFINITY;
    for p in &profiles {
        let c = dot(&p.direction, &dstar);
        if c > best_cos {
            best_cos = c;
        }
        if let Some(iv) = p.interval {
            if iv.lo < best_lo {
                best_lo = iv.lo;
            }
        }
    }
    println!("closest sweep direction: cos={best_cos} (angle={} rad)", best_cos.acos());
    println!("best interval lo over sweep = {best_lo}");

    // Window onsets in a shrinking neighbourhood of the dominator direction.
    for radius in [0.1f64, 0.03, 0.01] {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut best = f64::INFINITY;
        let mut windows = 0usize;
        for _ in 0..20_000 {
            let mut d = dstar.clone();
            for v in d.iter_mut() {
                *v += rng.gen_range(-1.0..1.0) * radius;
            }
            if !normalize(&mut d) {
                continue;
            }
            let p = classify(&model, &d, tol::CLASSIFY_EPS);
            if let Some(iv) = p.interval {
                windows += 1;
                if iv.lo < best {
                    best = iv.lo;
                }
            }
        }
        println!("perturb radius {radius}: {windows} windows, min onset {best}");
    }
}
