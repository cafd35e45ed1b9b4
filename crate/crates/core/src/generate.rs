//! Seeded generators for test and demo spaces.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, Validation};

fn need_points(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::BadParams("need at least one point".into()))
    } else {
        Ok(())
    }
}

/// Random weights on every pair, closed under shortest paths so the triangle
/// inequality holds. Weights are drawn from `[1, 10)`.
#[allow(clippy::needless_range_loop)]
pub fn random_metric(n: usize, seed: u64) -> Result<FiniteMetricSpace> {
    need_points(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.gen_range(1.0..10.0);
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    shortest_path_closure(&mut d);
    FiniteMetricSpace::from_rows(d)
}

/// Random integer weights in `1..=max_weight`, closed under shortest paths.
#[allow(clippy::needless_range_loop)]
pub fn random_integer_metric(n: usize, max_weight: u32, seed: u64) -> Result<FiniteMetricSpace> {
    need_points(n)?;
    if max_weight == 0 {
        return Err(Error::BadParams("max weight must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.gen_range(1..=max_weight) as f64;
            d[i][j] = w;
            d[j][i] = w;
        }
    }
    shortest_path_closure(&mut d);
    FiniteMetricSpace::from_rows(d)
}

/// Floyd–Warshall in place.
#[allow(clippy::needless_range_loop)]
fn shortest_path_closure(d: &mut [Vec<f64>]) {
    let n = d.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
}

/// `n` uniform points in `[0, 1)^dim` under the `ℓ_p` norm (`p >= 1`,
/// `p = ∞` allowed).
pub fn lp_points(n: usize, dim: usize, p: f64, seed: u64) -> Result<FiniteMetricSpace> {
    need_points(n)?;
    if dim == 0 {
        return Err(Error::BadParams("dimension must be positive".into()));
    }
    if p.is_nan() || p < 1.0 {
        return Err(Error::BadParams(format!("p must be at least 1, got {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
        .collect();
    let norm = |a: &[f64], b: &[f64]| {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        if p.is_infinite() {
            diffs.fold(0.0, f64::max)
        } else {
            diffs.map(|t| t.powf(p)).sum::<f64>().powf(1.0 / p)
        }
    };
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0.0 } else { norm(&pts[i], &pts[j]) }).collect())
        .collect();
    // rounding in powf can break the triangle inequality by an ulp
    FiniteMetricSpace::validate(rows, Validation::default())
}

/// `n` equispaced points on the unit circle with chordal distances
/// `2·sin(kπ/n)` or geodesic distances `2πk/n`, `k` the index gap folded
/// to at most `n/2`. A finite sample: the continuum circle's partition
/// characteristics do not carry over.
pub fn circle_sample(n: usize, geodesic: bool) -> Result<FiniteMetricSpace> {
    need_points(n)?;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let gap = i.abs_diff(j);
                    let k = gap.min(n - gap) as f64;
                    if gap == 0 {
                        0.0
                    } else if geodesic {
                        2.0 * PI * k / n as f64
                    } else {
                        2.0 * (PI * k / n as f64).sin()
                    }
                })
                .collect()
        })
        .collect();
    FiniteMetricSpace::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_metric_is_deterministic_and_valid() {
        let a = random_metric(6, 42).unwrap();
        let b = random_metric(6, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_metric(6, 43).unwrap());
        let z = random_integer_metric(5, 4, 7).unwrap();
        assert!(z.rows().iter().flatten().all(|d| d.fract() == 0.0));
    }

    #[test]
    fn circle_chords() {
        let c = circle_sample(8, false).unwrap();
        for k in 1..8usize {
            let expected = 2.0 * (PI * k.min(8 - k) as f64 / 8.0).sin();
            assert!((c.dist(0, k) - expected).abs() < 1e-15);
        }
        assert!((c.diam() - 2.0).abs() < 1e-15);
        let g = circle_sample(4, true).unwrap();
        assert!((g.dist(0, 2) - PI).abs() < 1e-15);
    }

    #[test]
    fn lp_and_errors() {
        let x = lp_points(5, 3, 2.0, 1).unwrap();
        assert_eq!(x.len(), 5);
        assert!(lp_points(5, 2, f64::INFINITY, 1).is_ok());
        assert!(lp_points(5, 2, 0.5, 1).is_err());
        assert!(lp_points(5, 0, 2.0, 1).is_err());
        assert!(random_metric(0, 1).is_err());
    }
}
