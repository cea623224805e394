//! Plot-data emission for the built-in two-objective example.
//!
//! The example's weighted stationary points form a one-parameter family
//! x*(tau) with poles at tau = 1/4 and tau = 4; the parameter range splits
//! into three branches (A: tau < 1/4, C: between the poles, B: tau > 4), of
//! which only branch C traces the efficient curve in objective space.
//! `run` tabulates the family on a log grid (`branches.csv`) and samples
//! branch C densely (`pareto_curve.csv`) so the two figures can be drawn
//! offline.

use std::path::PathBuf;

use clap::Args;

use pareto_radius::fixtures::{example1, example1_stationary_point};
use pareto_radius::io::{format_float, write_instance, write_text};
use pareto_radius::oracle::{local_efficiency_check, stationarity_residual};
use pareto_radius::problem::ratio_value;
use pareto_radius::radius::{certify, SweepConfig, Verdict};

use crate::{fail, EXIT_OK, EXIT_PARSE};

/// Poles of the stationary-point family: the branch map x*(tau) divides by
/// (1 - 4 tau) and (tau - 4).
const POLE_LOW: f64 = 0.25;
const POLE_HIGH: f64 = 4.0;
/// Half-width of the excluded window around each pole.
const POLE_WINDOW: f64 = 1e-3;
/// Where a grid point that landed inside a window is moved to (same side).
const POLE_NUDGE: f64 = 1.5e-3;
/// Rows in `pareto_curve.csv`.
const CURVE_POINTS: usize = 512;

#[derive(Args)]
pub struct Example1Args {
    /// Tau grid as "LO:HI:COUNT", log-spaced; points falling inside a pole
    /// window are nudged out of it.
    #[arg(long, default_value = "0.01:100:64")]
    tau_grid: String,
    /// Directory receiving branches.csv and pareto_curve.csv.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Sample budget for the per-row local dominance probe.
    #[arg(long, default_value_t = 20_000)]
    budget: usize,
}

struct GridSpec {
    lo: f64,
    hi: f64,
    count: usize,
}

fn parse_tau_grid(text: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("--tau-grid: expected \"LO:HI:COUNT\", got \"{text}\""));
    }
    let lo: f64 = parts[0].trim().parse().map_err(|e| format!("--tau-grid LO: {e}"))?;
    let hi: f64 = parts[1].trim().parse().map_err(|e| format!("--tau-grid HI: {e}"))?;
    let count: usize = parts[2].trim().parse().map_err(|e| format!("--tau-grid COUNT: {e}"))?;
    if !(lo > 0.0 && hi > lo) {
        return Err(format!("--tau-grid: need 0 < LO < HI, got LO={lo}, HI={hi}"));
    }
    if count == 0 {
        return Err("--tau-grid: COUNT must be at least 1".to_string());
    }
    Ok(GridSpec { lo, hi, count })
}

fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let ratio = hi / lo;
    (0..count)
        .map(|k| lo * ratio.powf(k as f64 / (count - 1) as f64))
        .collect()
}

/// Move a grid value out of the excluded pole windows, staying on the side
/// it came from.
fn avoid_poles(tau: f64) -> f64 {
    for pole in [POLE_LOW, POLE_HIGH] {
        if (tau - pole).abs() <= POLE_WINDOW {
            return if tau < pole { pole - POLE_NUDGE } else { pole + POLE_NUDGE };
        }
    }
    tau
}

fn branch_label(tau: f64) -> char {
    if tau < POLE_LOW {
        'A'
    } else if tau > POLE_HIGH {
        'B'
    } else {
        'C'
    }
}

pub fn run(args: &Example1Args) -> Result<i32, i32> {
    let grid = parse_tau_grid(&args.tau_grid).map_err(|m| fail(EXIT_PARSE, m))?;
    let instance = example1();
    let config = SweepConfig::new(instance.n);

    let mut branches = String::from("tau,x1,x2,f1,f2,branch,residual,local,certified_global\n");
    for tau in log_spaced(grid.lo, grid.hi, grid.count) {
        let tau = avoid_poles(tau);
        let x = example1_stationary_point(tau);
        let f1 = ratio_value(&instance, 0, &x);
        let f2 = ratio_value(&instance, 1, &x);
        let residual = stationarity_residual(&instance, &x, &[tau, 1.0]);
        let local = !local_efficiency_check(&instance, &x, args.budget, 0).found();
        let certified =
            certify(&instance, &x, &config).verdict == Verdict::CertifiedGlobalUpToSampling;
        branches.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            format_float(tau),
            format_float(x[0]),
            format_float(x[1]),
            format_float(f1),
            format_float(f2),
            branch_label(tau),
            format_float(residual),
            local,
            certified,
        ));
    }

    let mut curve = String::from("tau,x1,x2,f1,f2\n");
    for tau in log_spaced(POLE_LOW + POLE_NUDGE, POLE_HIGH - POLE_NUDGE, CURVE_POINTS) {
        let x = example1_stationary_point(tau);
        curve.push_str(&format!(
            "{},{},{},{},{}\n",
            format_float(tau),
            format_float(x[0]),
            format_float(x[1]),
            format_float(ratio_value(&instance, 0, &x)),
            format_float(ratio_value(&instance, 1, &x)),
        ));
    }

    std::fs::create_dir_all(&args.out)
        .map_err(|e| fail(EXIT_PARSE, format!("cannot create {}: {e}", args.out.display())))?;
    let instance_path = args.out.join("instance.json");
    let branches_path = args.out.join("branches.csv");
    let curve_path = args.out.join("pareto_curve.csv");
    // The instance document goes next to the data so the other commands can
    // be pointed at the same problem.
    write_instance(&instance_path, &instance).map_err(|e| fail(EXIT_PARSE, e))?;
    write_text(&branches_path, &branches).map_err(|e| fail(EXIT_PARSE, e))?;
    write_text(&curve_path, &curve).map_err(|e| fail(EXIT_PARSE, e))?;
    eprintln!("wrote {}", instance_path.display());
    eprintln!("wrote {}", branches_path.display());
    eprintln!("wrote {}", curve_path.display());
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec_parses_and_rejects() {
        let g = parse_tau_grid("0.01:100:64").unwrap();
        assert_eq!((g.lo, g.hi, g.count), (0.01, 100.0, 64));
        assert!(parse_tau_grid("1:2").is_err());
        assert!(parse_tau_grid("2:1:10").is_err());
        assert!(parse_tau_grid("0:1:10").is_err());
        assert!(parse_tau_grid("1:2:0").is_err());
    }

    #[test]
    fn pole_windows_are_kept_clear() {
        for count in [16usize, 64, 256] {
            for tau in log_spaced(0.01, 100.0, count).into_iter().map(avoid_poles) {
                assert!((tau - POLE_LOW).abs() > POLE_WINDOW, "tau {tau} too close to low pole");
                assert!((tau - POLE_HIGH).abs() > POLE_WINDOW, "tau {tau} too close to high pole");
            }
        }
    }

    #[test]
    fn branch_labels_follow_the_pole_split() {
        assert_eq!(branch_label(0.1), 'A');
        assert_eq!(branch_label(1.0), 'C');
        assert_eq!(branch_label(5.0), 'B');
    }
}
