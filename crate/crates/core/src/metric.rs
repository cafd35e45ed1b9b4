//! Finite metric spaces, point subsets and set-to-set distances.

use std::fmt;

use crate::error::{Error, Result};

/// Absolute-plus-relative comparison tolerance.
///
/// Two values compare equal when `|a - b| <= tol * max(1, |a|, |b|)`, so
/// small integer inputs are effectively compared exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-9);

    pub fn new(tol: f64) -> Result<Self> {
        if tol.is_finite() && tol > 0.0 {
            Ok(Tolerance(tol))
        } else {
            Err(Error::BadParams(format!("tolerance must be positive, got {tol}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    fn slack(self, a: f64, b: f64) -> f64 {
        self.0 * 1f64.max(a.abs()).max(b.abs())
    }

    pub fn eq(self, a: f64, b: f64) -> bool {
        a == b || (a - b).abs() <= self.slack(a, b)
    }

    /// `a <= b` up to tolerance.
    pub fn le(self, a: f64, b: f64) -> bool {
        a <= b || a - b <= self.slack(a, b)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Validation {
    pub strict_triangle: bool,
    pub tolerance: Tolerance,
}

impl Default for Validation {
    fn default() -> Self {
        Validation {
            strict_triangle: true,
            tolerance: Tolerance::DEFAULT,
        }
    }
}

/// A validated finite metric space: labels plus a full, symmetric distance
/// matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<f64>,
    n: usize,
    diam: f64,
    eps: f64,
}

impl FiniteMetricSpace {
    /// Validates a square matrix with the default options (triangle check on).
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::validate(rows, Validation::default())
    }

    pub fn validate(rows: Vec<Vec<f64>>, opts: Validation) -> Result<Self> {
        let n = rows.len();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::validate_labeled(labels, rows, opts)
    }

    pub fn validate_labeled(
        labels: Vec<String>,
        rows: Vec<Vec<f64>>,
        opts: Validation,
    ) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::ZeroPoints);
        }
        if labels.len() != n {
            return Err(Error::LabelCount {
                expected: n,
                got: labels.len(),
            });
        }
        let mut dist = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            dist.extend_from_slice(r);
        }
        let tol = opts.tolerance;
        for i in 0..n {
            for j in 0..n {
                let v = dist[i * n + j];
                if !v.is_finite() {
                    return Err(Error::NonFinite { i, j });
                }
            }
        }
        for i in 0..n {
            let v = dist[i * n + i];
            if v != 0.0 {
                return Err(Error::NonZeroDiagonal { i, value: v });
            }
            for j in (i + 1)..n {
                let (a, b) = (dist[i * n + j], dist[j * n + i]);
                for (p, q, v) in [(i, j, a), (j, i, b)] {
                    if v < 0.0 {
                        return Err(Error::NegativeDistance { i: p, j: q, value: v });
                    }
                    if v == 0.0 {
                        return Err(Error::ZeroOffDiagonal { i: p, j: q });
                    }
                }
                if !tol.eq(a, b) {
                    return Err(Error::AsymmetricMatrix { i, j, a, b });
                }
                dist[j * n + i] = a;
            }
        }
        if opts.strict_triangle {
            if let Some((i, j, k)) = first_triangle_violation(&dist, n, tol) {
                return Err(Error::TriangleViolation {
                    i,
                    j,
                    k,
                    direct: dist[i * n + k],
                    detour: dist[i * n + j] + dist[j * n + k],
                });
            }
        }
        let mut diam = 0.0f64;
        let mut eps = f64::INFINITY;
        for i in 0..n {
            for j in (i + 1)..n {
                diam = diam.max(dist[i * n + j]);
                eps = eps.min(dist[i * n + j]);
            }
        }
        // empty infimum for a single point
        if n == 1 {
            eps = 0.0;
        }
        Ok(FiniteMetricSpace {
            labels,
            dist,
            n,
            diam,
            eps,
        })
    }

    /// The simplex with `n` points and all non-zero distances equal to `lambda`.
    pub fn simplex(n: usize, lambda: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroPoints);
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::NonPositiveScale(lambda));
        }
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { lambda }).collect())
            .collect();
        Self::from_rows(rows)
    }

    /// The single-point space.
    pub fn point() -> Self {
        Self::from_rows(vec![vec![0.0]]).expect("a point is a metric space")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Number of points, `#X`.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Largest distance; 0 for a single point.
    pub fn diam(&self) -> f64 {
        self.diam
    }

    /// Smallest non-zero distance. A single point has no such distance and
    /// reports 0.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// True when all non-zero distances coincide (every space with at most
    /// two points qualifies).
    pub fn is_simplex(&self) -> bool {
        self.n <= 1 || self.eps == self.diam
    }

    /// Multiplies every distance by `c`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::NonPositiveScale(c));
        }
        Ok(FiniteMetricSpace {
            labels: self.labels.clone(),
            dist: self.dist.iter().map(|d| d * c).collect(),
            n: self.n,
            diam: self.diam * c,
            eps: self.eps * c,
        })
    }

    pub fn point_set(&self, indices: impl IntoIterator<Item = usize>) -> Result<PointSet> {
        PointSet::new(indices, self.n)
    }

    pub fn all_points(&self) -> PointSet {
        PointSet((0..self.n).collect())
    }

    /// Diameter of a subset given by indices; 0 for fewer than two points.
    pub fn diam_of(&self, points: &[usize]) -> f64 {
        let mut d = 0.0f64;
        for (a, &i) in points.iter().enumerate() {
            for &j in &points[a + 1..] {
                d = d.max(self.dist(i, j));
            }
        }
        d
    }

    /// `|AB| = inf { |ab| : a in A, b in B }`.
    pub fn set_dist_inf(&self, a: &PointSet, b: &PointSet) -> f64 {
        let mut best = f64::INFINITY;
        for &i in a.indices() {
            for &j in b.indices() {
                best = best.min(self.dist(i, j));
            }
        }
        best
    }

    /// `|AB|' = sup { |ab| : a in A, b in B }`.
    pub fn set_dist_sup(&self, a: &PointSet, b: &PointSet) -> f64 {
        let mut best = 0.0f64;
        for &i in a.indices() {
            for &j in b.indices() {
                best = best.max(self.dist(i, j));
            }
        }
        best
    }

    /// Hausdorff distance `max(sup_a |aB|, sup_b |Ab|)`.
    pub fn hausdorff(&self, a: &PointSet, b: &PointSet) -> f64 {
        let directed = |from: &PointSet, to: &PointSet| {
            from.indices()
                .iter()
                .map(|&i| {
                    to.indices()
                        .iter()
                        .map(|&j| self.dist(i, j))
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0f64, f64::max)
        };
        directed(a, b).max(directed(b, a))
    }
}

fn first_triangle_violation(dist: &[f64], n: usize, tol: Tolerance) -> Option<(usize, usize, usize)> {
    for i in 0..n {
        for k in (i + 1)..n {
            let direct = dist[i * n + k];
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                if !tol.le(direct, dist[i * n + j] + dist[j * n + k]) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Every triple `(i, j, k)` with `i < k` and `|ik| > |ij| + |jk|` beyond
/// tolerance. Expects a square matrix.
pub fn triangle_violations(rows: &[Vec<f64>], tol: Tolerance) -> Vec<(usize, usize, usize)> {
    let n = rows.len();
    let mut out = Vec::new();
    for i in 0..n {
        for k in (i + 1)..n {
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                if !tol.le(rows[i][k], rows[i][j] + rows[j][k]) {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// A non-empty, sorted, duplicate-free set of point indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet(Vec<usize>);

impl PointSet {
    pub fn new(indices: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        if v.is_empty() {
            return Err(Error::EmptySet);
        }
        v.sort_unstable();
        v.dedup();
        if let Some(&index) = v.last().filter(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index, n });
        }
        Ok(PointSet(v))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for FiniteMetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|d| d.to_string()).collect();
            writeln!(f, "{}: {}", self.labels[i], row.join(" "))?;
        }
        Ok(())
    }
}
