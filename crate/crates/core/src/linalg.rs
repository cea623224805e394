//! Dense vector and small-matrix helpers.
//!
//! Instances live at desk scale (n <= 50), so matrices are plain row-major
//! `Vec<Vec<f64>>` and every routine is a direct loop; no BLAS, no panics on
//! hot paths beyond debug assertions.

/// Dot product of two equal-length vectors.
pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Euclidean norm.
pub fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// `y = M x` for a square matrix in row-major nested vectors.
pub fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter().map(|row| dot(row, x)).collect()
}

/// Quadratic value `x' M x` (no symmetry assumption; callers pass symmetric M).
pub fn quad_value(m: &[Vec<f64>], x: &[f64]) -> f64 {
    m.iter().zip(x).map(|(row, &xi)| xi * dot(row, x)).sum()
}

/// Largest absolute entry of a matrix; zero for an empty matrix.
pub fn max_abs(m: &[Vec<f64>]) -> f64 {
    m.iter()
        .flat_map(|row| row.iter())
        .fold(0.0, |acc, &v| acc.max(v.abs()))
}

/// Frobenius norm of a matrix.
pub fn frobenius(m: &[Vec<f64>]) -> f64 {
    m.iter()
        .flat_map(|row| row.iter())
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt()
}

/// In-place update `x += s d`.
pub fn add_scaled(x: &mut [f64], s: f64, d: &[f64]) {
    debug_assert_eq!(x.len(), d.len());
    for (a, b) in x.iter_mut().zip(d) {
        *a += s * b;
    }
}

/// Difference `x - y` as a new vector.
pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// Euclidean distance between two points.
pub fn distance(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Scale `x` in place to unit Euclidean norm; returns false (leaving `x`
/// untouched) when the norm is too small to normalize reliably.
pub fn normalize(x: &mut [f64]) -> bool {
    let n = norm(x);
    if n < 1e-12 {
        return false;
    }
    for v in x.iter_mut() {
        *v /= n;
    }
    true
}

/// `n x n` zero matrix.
pub fn zeros(n: usize) -> Vec<Vec<f64>> {
    vec![vec![0.0; n]; n]
}

/// `n x n` identity matrix.
pub fn identity(n: usize) -> Vec<Vec<f64>> {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}
