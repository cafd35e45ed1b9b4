#![allow(dead_code)]

use gh_simplex::generate::{random_integer_metric, random_metric};
use gh_simplex::{FiniteMetricSpace, Validation};

pub fn e1() -> FiniteMetricSpace {
    FiniteMetricSpace::from_rows(vec![
        vec![0.0, 1.0, 2.0],
        vec![1.0, 0.0, 2.0],
        vec![2.0, 2.0, 0.0],
    ])
    .unwrap()
}

/// Every metric on `n` points with distances drawn from `weights`.
pub fn integer_metrics(n: usize, weights: &[f64]) -> Vec<FiniteMetricSpace> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; pairs.len()];
    loop {
        let mut rows = vec![vec![0.0; n]; n];
        for (&(i, j), &w) in pairs.iter().zip(&digits) {
            rows[i][j] = weights[w];
            rows[j][i] = weights[w];
        }
        if let Ok(x) = FiniteMetricSpace::validate(rows, Validation::default()) {
            out.push(x);
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return out;
            }
            digits[k] += 1;
            if digits[k] < weights.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// The fixed integer fixtures: one point, all metrics on 2 and 3 points with
/// distances in 1..=3, all metrics on 4 points with distances in 1..=2.
pub fn integer_fixtures() -> Vec<FiniteMetricSpace> {
    let mut out = vec![FiniteMetricSpace::point()];
    out.extend(integer_metrics(2, &[1.0, 2.0, 3.0]));
    out.extend(integer_metrics(3, &[1.0, 2.0, 3.0]));
    out.extend(integer_metrics(4, &[1.0, 2.0]));
    out
}

/// Seeded random spaces, `count` of them, sizes cycling through `2..=max_n`.
pub fn random_fixtures(count: usize, max_n: usize, seed: u64) -> Vec<FiniteMetricSpace> {
    (0..count)
        .map(|k| {
            let n = 2 + k % (max_n - 1);
            let s = seed + k as u64;
            if k % 2 == 0 {
                random_metric(n, s).unwrap()
            } else {
                random_integer_metric(n, 6, s).unwrap()
            }
        })
        .collect()
}

pub fn is_integer(x: &FiniteMetricSpace) -> bool {
    x.rows().iter().flatten().all(|d| d.fract() == 0.0)
}

/// Eight grid points `k·2·diam/8`, `k = 1..=8` (`diam` replaced by 1 for a
/// single point).
pub fn lambda_grid(x: &FiniteMetricSpace) -> Vec<f64> {
    let span = 2.0 * x.diam().max(1.0);
    (1..=8).map(|k| k as f64 * span / 8.0).collect()
}
