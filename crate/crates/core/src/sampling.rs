//! Deterministic sampling primitives shared by the direction sweep and the
//! brute-force oracle.
//!
//! Normal deviates come from a plain Box–Muller transform rather than a
//! table-driven method: the transform's output is a fixed function of the
//! uniform stream, so the sample sequence for a given seed is stable across
//! library versions and platforms — a property the byte-identical-report
//! guarantee depends on.

use rand::Rng;

use crate::linalg::normalize;

/// One standard normal deviate (Box–Muller, cosine branch).
pub(crate) fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    // u1 in (0, 1] so the logarithm stays finite.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// A vector of independent standard normals.
pub(crate) fn gaussian_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| gaussian(rng)).collect()
}

/// A uniformly distributed unit direction.
pub(crate) fn unit_direction<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let mut d = gaussian_vector(rng, n);
        if normalize(&mut d) {
            return d;
        }
    }
}

/// A point uniformly distributed in the closed ball `||y - center|| <= radius`.
pub(crate) fn ball_point<R: Rng>(rng: &mut R, center: &[f64], radius: f64) -> Vec<f64> {
    let n = center.len();
    let d = unit_direction(rng, n);
    let u: f64 = rng.gen();
    let r = radius * u.powf(1.0 / n as f64);
    center.iter().zip(&d).map(|(c, dk)| c + r * dk).collect()
}

/// A point uniformly distributed in the shell
/// `r_lo <= ||y - center|| <= r_hi` (volume-uniform: the radius CDF follows
/// `r^n` between the two bounds).
pub(crate) fn shell_point<R: Rng>(rng: &mut R, center: &[f64], r_lo: f64, r_hi: f64) -> Vec<f64> {
    let n = center.len();
    let d = unit_direction(rng, n);
    let u: f64 = rng.gen();
    let lo_n = r_lo.powi(n as i32);
    let hi_n = r_hi.powi(n as i32);
    let r = (lo_n + u * (hi_n - lo_n)).powf(1.0 / n as f64);
    center.iter().zip(&d).map(|(c, dk)| c + r * dk).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{distance, norm};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn directions_are_unit_and_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let da = unit_direction(&mut a, 4);
            let db = unit_direction(&mut b, 4);
            assert_eq!(da, db);
            assert!((norm(&da) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ball_and_shell_points_respect_their_radii() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let center = [1.0, -2.0, 0.5];
        for _ in 0..500 {
            let y = ball_point(&mut rng, &center, 2.5);
            assert!(distance(&y, &center) <= 2.5 + 1e-12);
            let s = shell_point(&mut rng, &center, 1.0, 2.0);
            let r = distance(&s, &center);
            assert!((1.0 - 1e-12..=2.0 + 1e-12).contains(&r), "r = {r}");
        }
    }

    #[test]
    fn gaussian_moments_are_sane() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 20000;
        let samples: Vec<f64> = (0..n).map(|_| gaussian(&mut rng)).collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.05, "mean = {mean}");
        assert!((var - 1.0).abs() < 0.05, "var = {var}");
    }
}
