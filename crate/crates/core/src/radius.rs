//! Direction sweeps, radius bounds, and the certification verdict.
//!
//! The per-direction analysis in [`crate::directional`] is exact along each
//! ray; this module aggregates it over many rays. Writing `L` for the set of
//! sampled directions with a nonempty step window `[λ₂ᵈ, λ₁ᵈ]`, the report
//! carries four distances (all `+∞` when the relevant set is empty — an
//! infinite value always reads "no evidence of dominance at any distance"):
//!
//! * `beta  = min_{d ∈ L} λ₂ᵈ` — the closest step-dominance seen; no sampled
//!   direction dominates strictly inside this radius.
//! * `P     = sup_{d ∈ L} λ₁ᵈ` — the farthest reach of any window; beyond it
//!   no sampled window extends.
//! * `lower = rho / (-gamma)` — an eigenvalue argument: every `X2` root
//!   satisfies `-2l/q >= 2l/(-gamma)` because `q >= gamma` (the most
//!   negative Hessian eigenvalue), so with `rho = min_d max_{i ∈ X2} 2 l_i`
//!   the quantity `rho/(-gamma)` under-estimates every window's onset. When
//!   every Hessian is positive semidefinite no `X2` label can occur at all
//!   and the bound is vacuously infinite (`psd_shortcut`).
//! * `M` — a gradient argument: `X1` roots obey
//!   `-2l/q <= 2 ||∇p_i|| / alpha` with `alpha` the smallest `X1` curvature
//!   seen, capped by the feasible set's diameter when that is available
//!   from coordinate bounds.
//!
//! The verdict is decided in strict precedence order: a verified step-window
//! witness, then a verified descent witness (the candidate is not even
//! locally efficient), then inconclusive if any sampled ray was entirely
//! neutral or a witness failed verification, and only when nothing above
//! fires: certified, explicitly *up to sampling*. Witness verification uses
//! the instance-level ratio predicate — never the associated model that
//! proposed the witness — so a certificate and its check share no code path.
//!
//! Determinism: directions are generated sequentially from a seeded stream
//! and classified in parallel with index-stable collection; every reduction
//! breaks ties by first index. Reports for the same inputs are
//! byte-identical across runs and thread counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::associated::{build_associated, AssociatedModel};
use crate::directional::{classify, in_tangent_cone, DirectionProfile, DominanceWindow, Interval, Label};
use crate::linalg::{add_scaled, distance, dot, norm, normalize};
use crate::problem::{dominates, is_feasible, VqfpInstance};
use crate::sampling::{gaussian_vector, shell_point, unit_direction};
use crate::tol;

/// Number of evenly spaced angles added to every sweep in dimension 2,
/// where exhausting the circle is cheap and removes all sampling luck.
const ANGULAR_GRID: usize = 100_000;

/// Attempts allowed when drawing or repairing a direction into the tangent
/// cone before the slot is abandoned.
const CONE_ATTEMPTS: usize = 64;

/// Perturbed samples drawn around each refinement pick per round.
const REFINE_FAN: usize = 16;

/// Sweep parameters. All fields are plain data so configurations can be
/// logged and reproduced.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Random unit directions to draw (the dimension-2 angular grid and
    /// refinement rounds come on top of these).
    pub num_directions: usize,
    /// Seed for the direction stream; equal seeds give identical reports.
    pub seed: u64,
    /// Relative zero band for the directional Taylor coefficients.
    pub eps: f64,
    /// Local refinement rounds around the most critical directions.
    pub refine_rounds: usize,
    /// Relative tolerance for the final witness dominance check.
    pub dominance_tol: f64,
}

impl SweepConfig {
    /// Defaults for an `n`-dimensional instance: `4096 * n` directions,
    /// seed 0, standard tolerances, three refinement rounds.
    pub fn new(n: usize) -> Self {
        SweepConfig {
            num_directions: 4096 * n.max(1),
            seed: 0,
            eps: tol::CLASSIFY_EPS,
            refine_rounds: 3,
            dominance_tol: tol::DOMINANCE,
        }
    }
}

/// Final verdict for a candidate point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// No sampled direction carries any dominance window and no sampled ray
    /// was degenerate: within sampling resolution the point is efficient.
    CertifiedGlobalUpToSampling,
    /// A dominating feasible point was constructed and verified.
    DominatedWithWitness,
    /// The analysis could not commit: a proposed witness failed its
    /// independent verification, an entirely neutral ray was met, or no
    /// usable direction could be sampled.
    Inconclusive,
}

/// A verified dominating point.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Witness {
    /// The dominating feasible point.
    pub point: Vec<f64>,
    /// Step length along `direction` from the base point.
    pub lambda: f64,
    /// Unit direction along which the witness was constructed.
    pub direction: Vec<f64>,
    /// Euclidean distance from the base point.
    pub distance: f64,
}

/// Sweep-level tallies, mostly for diagnosing why a verdict came out the
/// way it did.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Diagnostics {
    /// Directions with at least one strictly worsening (`X0`) objective.
    pub x0_hits: usize,
    /// Directions whose step window came out empty.
    pub empty_interval: usize,
    /// Directions whose window collapsed to a degenerate touching point.
    pub cond1: usize,
    /// Directions along which every objective was neutral.
    pub cond2: usize,
    /// Every associated Hessian is positive semidefinite, so step windows
    /// are impossible and the eigenvalue lower bound is vacuous.
    pub psd_shortcut: bool,
    /// Directions carrying a descent window (local inefficiency).
    pub descent_windows: usize,
    /// Directions carrying a step window.
    pub step_windows: usize,
    /// Directions actually classified (random + grid + refinement).
    pub directions_total: usize,
}

/// Everything the analysis knows about one candidate point.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RadiusReport {
    /// Closest onset of step dominance over all sampled windows.
    #[serde(with = "crate::io::ext_real")]
    pub beta: f64,
    /// Direction attaining `beta`.
    pub beta_direction: Option<Vec<f64>>,
    /// Farthest reach of any sampled window.
    #[serde(rename = "P", with = "crate::io::ext_real")]
    pub p: f64,
    /// Smallest leading window coefficient `max_{i in X2} 2 l_i` seen.
    #[serde(with = "crate::io::ext_real")]
    pub rho: f64,
    /// Most negative Hessian eigenvalue across objectives; `null` when all
    /// Hessians are positive semidefinite.
    pub gamma: Option<f64>,
    /// Eigenvalue-based lower bound `rho / (-gamma)` on `beta`.
    #[serde(with = "crate::io::ext_real")]
    pub lower_bound: f64,
    /// Gradient/diameter-based upper bound on `P`.
    #[serde(rename = "M", with = "crate::io::ext_real")]
    pub m: f64,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub diagnostics: Diagnostics,
    /// Seed that reproduces this report exactly.
    pub seed: u64,
    /// Requested number of random directions (grid and refinement extras
    /// are implied by dimension and configuration).
    pub num_directions: usize,
}

/// Rows of the constraint system active at `base`, with squared norms,
/// precomputed for reflection repairs.
fn active_row_data(instance: &VqfpInstance, base: &[f64]) -> Vec<(Vec<f64>, f64)> {
    match &instance.constraints {
        None => Vec::new(),
        Some(c) => c
            .mat
            .iter()
            .zip(&c.rhs)
            .filter(|(row, &b)| (dot(row, base) - b).abs() <= tol::ACTIVE * (1.0 + b.abs()))
            .map(|(row, _)| {
                let nsq = dot(row, row);
                (row.clone(), nsq)
            })
            .collect(),
    }
}

/// Reflect `d` across every active row it currently violates. Returns
/// whether the result could be renormalised.
fn reflect_into_cone(d: &mut Vec<f64>, active: &[(Vec<f64>, f64)]) -> bool {
    for (row, nsq) in active {
        if *nsq == 0.0 {
            continue;
        }
        let speed = dot(row, d);
        if speed > 0.0 {
            add_scaled(d, -2.0 * speed / nsq, row);
        }
    }
    normalize(d)
}

/// Draw one unit direction inside the tangent cone, repairing cone
/// violations by reflection and falling back to fresh draws.
fn draw_cone_direction<R: Rng>(
    rng: &mut R,
    instance: &VqfpInstance,
    base: &[f64],
    active: &[(Vec<f64>, f64)],
) -> Option<Vec<f64>> {
    for _ in 0..CONE_ATTEMPTS {
        let mut d = unit_direction(rng, instance.n);
        if in_tangent_cone(instance, base, &d, tol::ACTIVE) {
            return Some(d);
        }
        if reflect_into_cone(&mut d, active) && in_tangent_cone(instance, base, &d, tol::ACTIVE) {
            return Some(d);
        }
    }
    None
}

/// Perturb `base_dir` with Gaussian noise of scale `sigma` and repair the
/// result into the tangent cone.
fn perturb_into_cone<R: Rng>(
    rng: &mut R,
    instance: &VqfpInstance,
    base: &[f64],
    active: &[(Vec<f64>, f64)],
    base_dir: &[f64],
    sigma: f64,
) -> Option<Vec<f64>> {
    for _ in 0..8 {
        let noise = gaussian_vector(rng, instance.n);
        let mut d = base_dir.to_vec();
        add_scaled(&mut d, sigma, &noise);
        if !normalize(&mut d) {
            continue;
        }
        if in_tangent_cone(instance, base, &d, tol::ACTIVE) {
            return Some(d);
        }
        if reflect_into_cone(&mut d, active) && in_tangent_cone(instance, base, &d, tol::ACTIVE) {
            return Some(d);
        }
    }
    None
}

/// Indices worth refining: the windows with the smallest onset (they decide
/// `beta`) and the profiles with the smallest classification margin (their
/// labels are least trustworthy). Both lists are capped at 1% of the
/// requested direction count.
fn refinement_picks(profiles: &[DirectionProfile], num_directions: usize) -> Vec<usize> {
    let k = (num_directions / 100).max(4);

    let mut with_windows: Vec<usize> = (0..profiles.len())
        .filter(|&i| profiles[i].interval.is_some())
        .collect();
    with_windows.sort_by(|&a, &b| {
        let la = profiles[a].interval.unwrap().lo;
        let lb = profiles[b].interval.unwrap().lo;
        la.partial_cmp(&lb).unwrap().then(a.cmp(&b))
    });
    with_windows.truncate(k);

    // Directions whose window was cut away by the feasible boundary: the
    // onset is known but the ray exits first. A small tilt often keeps a
    // neighbouring ray feasible past a similar onset, so these mark basins
    // the windowed picks cannot see.
    let mut boundary_cut: Vec<usize> = (0..profiles.len())
        .filter(|&i| {
            let p = &profiles[i];
            p.interval.is_none()
                && !p.has_label(Label::X0)
                && p.lambda2.map_or(false, |l2| l2 > p.lambda_limit)
        })
        .collect();
    boundary_cut.sort_by(|&a, &b| {
        let la = profiles[a].lambda2.unwrap();
        let lb = profiles[b].lambda2.unwrap();
        la.partial_cmp(&lb).unwrap().then(a.cmp(&b))
    });
    boundary_cut.truncate(k);

    let mut by_margin: Vec<usize> = (0..profiles.len()).collect();
    by_margin.sort_by(|&a, &b| {
        profiles[a]
            .margin
            .partial_cmp(&profiles[b].margin)
            .unwrap()
            .then(a.cmp(&b))
    });
    by_margin.truncate(k);

    let mut picks = with_windows;
    for idx in boundary_cut.into_iter().chain(by_margin) {
        if !picks.contains(&idx) {
            picks.push(idx);
        }
    }
    picks
}

/// Classify a batch of directions over the sampled sphere (or tangent
/// cone), including the dimension-2 angular grid and local refinement
/// rounds. Directions are produced sequentially from the seeded stream;
/// classification runs in parallel with index-stable collection, so the
/// returned order is reproducible.
pub fn sweep(model: &AssociatedModel, config: &SweepConfig) -> Vec<DirectionProfile> {
    let instance = model.instance;
    let base = &model.base_point;
    let n = instance.n;
    let active = active_row_data(instance, base);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut directions: Vec<Vec<f64>> = Vec::with_capacity(config.num_directions);
    for _ in 0..config.num_directions {
        if let Some(d) = draw_cone_direction(&mut rng, instance, base, &active) {
            directions.push(d);
        }
    }
    if n == 2 {
        for k in 0..ANGULAR_GRID {
            let theta = std::f64::consts::TAU * k as f64 / ANGULAR_GRID as f64;
            let d = vec![theta.cos(), theta.sin()];
            if in_tangent_cone(instance, base, &d, tol::ACTIVE) {
                directions.push(d);
            }
        }
    }

    let mut profiles: Vec<DirectionProfile> = directions
        .par_iter()
        .map(|d| classify(model, d, config.eps))
        .collect();

    for round in 0..config.refine_rounds {
        let sigma = 0.3f64.powi(round as i32 + 1);
        let picks = refinement_picks(&profiles, config.num_directions);
        let mut fresh: Vec<Vec<f64>> = Vec::with_capacity(picks.len() * REFINE_FAN);
        for idx in picks {
            let base_dir = profiles[idx].direction.clone();
            // Window-bearing direction sets can be thin slivers of the unit
            // sphere; a single perturbed sample per pick rarely lands back
            // inside one, so fan out several draws around each pick.
            for _ in 0..REFINE_FAN {
                if let Some(d) =
                    perturb_into_cone(&mut rng, instance, base, &active, &base_dir, sigma)
                {
                    fresh.push(d);
                }
            }
        }
        let refined: Vec<DirectionProfile> = fresh
            .par_iter()
            .map(|d| classify(model, d, config.eps))
            .collect();
        profiles.extend(refined);
    }

    profiles
}

struct BoundSet {
    beta: f64,
    beta_direction: Option<Vec<f64>>,
    p: f64,
    rho: f64,
    gamma: Option<f64>,
    lower: f64,
    m: f64,
}

/// Diameter of the feasible set when it is visible as a coordinate box:
/// constraint rows with a single structurally nonzero entry bound one
/// coordinate each, and if every coordinate is bounded on both sides the
/// box diagonal bounds the diameter. Anything less structured reports
/// `+∞` rather than guessing.
fn feasible_diameter(instance: &VqfpInstance) -> f64 {
    let c = match &instance.constraints {
        None => return f64::INFINITY,
        Some(c) => c,
    };
    let n = instance.n;
    let mut lo = vec![f64::NEG_INFINITY; n];
    let mut hi = vec![f64::INFINITY; n];
    for (row, &b) in c.mat.iter().zip(&c.rhs) {
        let nonzero: Vec<usize> = (0..n).filter(|&j| row[j] != 0.0).collect();
        if let [j] = nonzero[..] {
            let v = b / row[j];
            if row[j] > 0.0 {
                hi[j] = hi[j].min(v);
            } else {
                lo[j] = lo[j].max(v);
            }
        }
    }
    let mut sum = 0.0;
    for j in 0..n {
        if !lo[j].is_finite() || !hi[j].is_finite() {
            return f64::INFINITY;
        }
        let w = (hi[j] - lo[j]).max(0.0);
        sum += w * w;
    }
    sum.sqrt()
}

fn compute_bounds(model: &AssociatedModel, profiles: &[DirectionProfile]) -> BoundSet {
    // beta and P over the step-window set L.
    let mut beta = f64::INFINITY;
    let mut beta_direction: Option<Vec<f64>> = None;
    let mut p = f64::INFINITY;
    let mut any_window = false;
    for profile in profiles {
        if let Some(interval) = profile.interval {
            if !any_window {
                any_window = true;
                p = profile.lambda1;
            } else {
                p = p.max(profile.lambda1);
            }
            if interval.lo < beta {
                beta = interval.lo;
                beta_direction = Some(profile.direction.clone());
            }
        }
    }
    if !any_window {
        beta = f64::INFINITY;
        p = f64::INFINITY;
    }

    // rho over every X2-bearing direction, windowed or not.
    let mut rho = f64::INFINITY;
    for profile in profiles {
        let mut lead = f64::NEG_INFINITY;
        for o in &profile.objectives {
            if o.label == Label::X2 {
                lead = lead.max(2.0 * o.linear);
            }
        }
        if lead > f64::NEG_INFINITY {
            rho = rho.min(lead);
        }
    }

    // gamma: the most negative eigenvalue over all associated Hessians.
    let mut gamma: Option<f64> = None;
    for hess in &model.hessians {
        if let Ok(Some(neg)) = crate::eigen::smallest_negative_eigenvalue(hess) {
            gamma = Some(gamma.map_or(neg, |g: f64| g.min(neg)));
        }
    }
    let lower = match gamma {
        None => f64::INFINITY,
        Some(g) => {
            if rho.is_finite() {
                rho / (-g)
            } else {
                f64::INFINITY
            }
        }
    };

    // M: curvature floor and gradient ceiling over the X1 objectives of
    // windowed directions, capped by the feasible diameter.
    let mut alpha = f64::INFINITY;
    let mut in_union = vec![false; model.num_objectives()];
    for profile in profiles {
        if profile.interval.is_none() {
            continue;
        }
        for (i, o) in profile.objectives.iter().enumerate() {
            if o.label == Label::X1 {
                alpha = alpha.min(o.quadratic);
                in_union[i] = true;
            }
        }
    }
    let mut grad_min = f64::INFINITY;
    for (i, used) in in_union.iter().enumerate() {
        if *used {
            grad_min = grad_min.min(2.0 * norm(&model.gradients[i]));
        }
    }
    let core = if grad_min.is_finite() && alpha > 1e-12 {
        grad_min / alpha
    } else {
        f64::INFINITY
    };
    let m = core.min(feasible_diameter(model.instance));

    BoundSet { beta, beta_direction, p, rho, gamma, lower, m }
}

/// Midpoint-style step choice inside a window: the midpoint of a bounded
/// window, the left endpoint of a singleton, one unit past the onset of an
/// unbounded window.
fn pick_step(interval: Interval) -> f64 {
    if interval.is_singleton() {
        interval.lo
    } else if interval.hi.is_infinite() {
        interval.lo + 1.0
    } else {
        0.5 * (interval.lo + interval.hi)
    }
}

/// Sweep the direction sphere around `base` and certify (or refute) its
/// efficiency. See the module docs for the exact verdict precedence and
/// the meaning of each report field.
pub fn certify(instance: &VqfpInstance, base: &[f64], config: &SweepConfig) -> RadiusReport {
    let model = build_associated(instance, base);
    let profiles = sweep(&model, config);
    let bounds = compute_bounds(&model, &profiles);

    let mut diagnostics = Diagnostics {
        x0_hits: 0,
        empty_interval: 0,
        cond1: 0,
        cond2: 0,
        psd_shortcut: bounds.gamma.is_none(),
        descent_windows: 0,
        step_windows: 0,
        directions_total: profiles.len(),
    };
    for profile in &profiles {
        if profile.has_label(Label::X0) {
            diagnostics.x0_hits += 1;
        }
        if profile.interval.is_none() {
            diagnostics.empty_interval += 1;
        } else {
            diagnostics.step_windows += 1;
        }
        if profile.condition1_degenerate {
            diagnostics.cond1 += 1;
        }
        if profile.condition2_violated {
            diagnostics.cond2 += 1;
        }
        if matches!(profile.dominance_window(), Some(DominanceWindow::Descent { .. })) {
            diagnostics.descent_windows += 1;
        }
    }

    // Best step window: smallest onset, first index on ties.
    let mut best_step: Option<&DirectionProfile> = None;
    for profile in &profiles {
        if let Some(interval) = profile.interval {
            let better = match best_step {
                None => true,
                Some(current) => interval.lo < current.interval.unwrap().lo,
            };
            if better {
                best_step = Some(profile);
            }
        }
    }
    // Best descent window: largest cap, first index on ties.
    let mut best_descent: Option<(&DirectionProfile, f64)> = None;
    for profile in &profiles {
        if let Some(DominanceWindow::Descent { cap }) = profile.dominance_window() {
            let better = match best_descent {
                None => true,
                Some((_, current)) => cap > current,
            };
            if better {
                best_descent = Some((profile, cap));
            }
        }
    }

    let verdict;
    let mut witness = None;
    let proposal: Option<(&DirectionProfile, f64)> = if let Some(profile) = best_step {
        Some((profile, pick_step(profile.interval.unwrap())))
    } else {
        best_descent.map(|(profile, cap)| {
            let lambda = if cap.is_finite() { 0.5 * cap } else { 1.0 };
            (profile, lambda)
        })
    };

    if let Some((profile, lambda)) = proposal {
        // Single-shot verification through the instance-level predicates;
        // a failure downgrades the verdict instead of triggering a search.
        let mut point = model.base_point.clone();
        add_scaled(&mut point, lambda, &profile.direction);
        if is_feasible(instance, &point, tol::ROW_DIRECTION)
            && dominates(instance, &point, base, config.dominance_tol)
        {
            let dist = distance(&point, base);
            verdict = Verdict::DominatedWithWitness;
            witness = Some(Witness {
                point,
                lambda,
                direction: profile.direction.clone(),
                distance: dist,
            });
        } else {
            verdict = Verdict::Inconclusive;
        }
    } else if diagnostics.cond2 > 0 || profiles.is_empty() {
        verdict = Verdict::Inconclusive;
    } else {
        verdict = Verdict::CertifiedGlobalUpToSampling;
    }

    RadiusReport {
        beta: bounds.beta,
        beta_direction: bounds.beta_direction,
        p: bounds.p,
        rho: bounds.rho,
        gamma: bounds.gamma,
        lower_bound: bounds.lower,
        m: bounds.m,
        verdict,
        witness,
        diagnostics,
        seed: config.seed,
        num_directions: config.num_directions,
    }
}

/// Brute-force search of the spherical shell `r_lo <= ||y - base|| <= r_hi`
/// for a feasible dominating point, returning the closest hit and its
/// distance. Complements [`certify`] by probing exactly the annulus a
/// report brackets with `beta` and `P`.
pub fn search_shell(
    instance: &VqfpInstance,
    base: &[f64],
    r_lo: f64,
    r_hi: f64,
    budget: usize,
    seed: u64,
) -> Option<(Vec<f64>, f64)> {
    assert!(r_lo >= 0.0 && r_hi >= r_lo, "shell radii must satisfy 0 <= r_lo <= r_hi");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for _ in 0..budget {
        let y = shell_point(&mut rng, base, r_lo, r_hi);
        if is_feasible(instance, &y, 0.0) && dominates(instance, &y, base, tol::DOMINANCE) {
            let d = distance(&y, base);
            if best.as_ref().map_or(true, |(_, bd)| d < *bd) {
                best = Some((y, d));
            }
        }
    }
    best
}
