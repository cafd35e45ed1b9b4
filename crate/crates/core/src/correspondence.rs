//! Relations, correspondences and a brute-force Gromov–Hausdorff oracle.
//!
//! `d_GH(X, Y)` is half the smallest distortion of a correspondence between
//! `X` and `Y`. Distortion is monotone under inclusion and every
//! correspondence contains an irreducible one, so it suffices to scan the
//! irreducible correspondences. For finite spaces there are finitely many,
//! and the infimum is attained.
//!
//! An irreducible correspondence is a bijection `f` between a partition of
//! `X` and a partition of `Y` with `k` blocks each, taking
//! `R = ∪ X_i × f(X_i)`, where no matched pair has two blocks of size > 1.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::partition::{partition_count, Partition, Partitions};

/// Default refusal threshold for the oracle enumeration.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// A non-empty set of `(x, y)` index pairs, sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pairs: Vec<(usize, usize)>,
}

impl Relation {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Err(Error::EmptyRelation);
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Relation { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, pair: (usize, usize)) -> bool {
        self.pairs.binary_search(&pair).is_ok()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.pairs.iter().all(|&p| other.contains(p))
    }

    /// True if every `x < nx` and every `y < ny` occurs in some pair.
    pub fn is_correspondence(&self, nx: usize, ny: usize) -> bool {
        let mut seen_x = vec![false; nx];
        let mut seen_y = vec![false; ny];
        for &(x, y) in &self.pairs {
            if x >= nx || y >= ny {
                return false;
            }
            seen_x[x] = true;
            seen_y[y] = true;
        }
        seen_x.into_iter().chain(seen_y).all(|s| s)
    }
}

/// A relation whose projections cover both spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Correspondence(Relation);

impl Correspondence {
    pub fn new(relation: Relation, nx: usize, ny: usize) -> Result<Self> {
        if relation.is_correspondence(nx, ny) {
            Ok(Correspondence(relation))
        } else {
            Err(Error::NotACorrespondence)
        }
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        self.0.pairs()
    }

    pub fn into_relation(self) -> Relation {
        self.0
    }
}

/// `dis σ = max | |xx'| - |yy'| |` over pairs of pairs of `σ`.
pub fn distortion(sigma: &Relation, x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> f64 {
    distortion_below(sigma.pairs(), x, y, f64::INFINITY).unwrap_or(f64::INFINITY)
}

/// Distortion of `pairs`, or `None` as soon as it provably exceeds `cutoff`.
fn distortion_below(
    pairs: &[(usize, usize)],
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    cutoff: f64,
) -> Option<f64> {
    let mut worst = 0.0f64;
    for (t, &(a, b)) in pairs.iter().enumerate() {
        let (ra, rb) = (x.row(a), y.row(b));
        for &(c, d) in &pairs[t + 1..] {
            worst = worst.max((ra[c] - rb[d]).abs());
        }
        if worst > cutoff {
            return None;
        }
    }
    Some(worst)
}

/// Upper bound on the number of irreducible correspondences:
/// `Σ_k S(a,k) S(b,k) k!`. Saturates at `u128::MAX`.
pub fn irreducible_count_estimate(a: usize, b: usize) -> u128 {
    let mut total: u128 = 0;
    let mut factorial: u128 = 1;
    for k in 1..=a.min(b) {
        factorial = factorial.saturating_mul(k as u128);
        let sa = partition_count(a, k).unwrap_or(u128::MAX);
        let sb = partition_count(b, k).unwrap_or(u128::MAX);
        total = total.saturating_add(sa.saturating_mul(sb).saturating_mul(factorial));
    }
    total
}

fn check_cap(a: usize, b: usize, cap: u64) -> Result<()> {
    let estimate = irreducible_count_estimate(a, b);
    if estimate > cap as u128 {
        Err(Error::SizeThresholdExceeded { estimate, cap })
    } else {
        Ok(())
    }
}

/// Deterministic stream of the irreducible correspondences between a space
/// with `a` points and one with `b` points.
///
/// Order: block count `k` ascending, then partitions of the first space in
/// RGS order, partitions of the second space in RGS order, then block
/// bijections in lexicographic order.
pub struct IrreducibleCorrespondences {
    a: usize,
    b: usize,
    k: usize,
    xs: Option<Partitions>,
    ys: Option<Partitions>,
    px: Vec<Vec<usize>>,
    buffer: VecDeque<Vec<(usize, usize)>>,
}

impl IrreducibleCorrespondences {
    pub fn new(a: usize, b: usize, cap: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::EmptySet);
        }
        check_cap(a, b, cap)?;
        Ok(IrreducibleCorrespondences {
            a,
            b,
            k: 0,
            xs: None,
            ys: None,
            px: Vec::new(),
            buffer: VecDeque::new(),
        })
    }

    fn next_pair(&mut self) -> Option<Vec<Vec<usize>>> {
        loop {
            if let Some(q) = self.ys.as_mut().and_then(Iterator::next) {
                return Some(q.blocks());
            }
            if let Some(p) = self.xs.as_mut().and_then(Iterator::next) {
                self.px = p.blocks();
                self.ys = Some(Partitions::new(self.b, self.k).ok()?);
                continue;
            }
            self.k += 1;
            if self.k > self.a.min(self.b) {
                return None;
            }
            self.xs = Some(Partitions::new(self.a, self.k).ok()?);
            self.ys = None;
        }
    }

    fn fill(&mut self, qy: &[Vec<usize>]) {
        let px = &self.px;
        let k = px.len();
        let wide_x = px.iter().filter(|b| b.len() > 1).count();
        let wide_y = qy.iter().filter(|b| b.len() > 1).count();
        if wide_x + wide_y > k {
            return;
        }
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            let valid = (0..k).all(|i| px[i].len() == 1 || qy[perm[i]].len() == 1);
            if valid {
                let mut pairs = Vec::new();
                for i in 0..k {
                    for &xi in &px[i] {
                        for &yj in &qy[perm[i]] {
                            pairs.push((xi, yj));
                        }
                    }
                }
                pairs.sort_unstable();
                self.buffer.push_back(pairs);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
}

impl Iterator for IrreducibleCorrespondences {
    type Item = Correspondence;

    fn next(&mut self) -> Option<Correspondence> {
        loop {
            if let Some(pairs) = self.buffer.pop_front() {
                return Some(Correspondence(Relation { pairs }));
            }
            let qy = self.next_pair()?;
            self.fill(&qy);
        }
    }
}

/// Lexicographic successor; false when `v` was the last permutation.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn enumerate_irreducible(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    cap: u64,
) -> Result<IrreducibleCorrespondences> {
    IrreducibleCorrespondences::new(x.len(), y.len(), cap)
}

/// Every correspondence between spaces of sizes `a` and `b`, by brute force
/// over subsets of `X × Y`. Only for `a * b <= 20`.
pub fn all_correspondences(a: usize, b: usize) -> Result<Vec<Correspondence>> {
    let cells = a * b;
    if a == 0 || b == 0 {
        return Err(Error::EmptySet);
    }
    if cells > 20 {
        return Err(Error::SizeThresholdExceeded {
            estimate: 1u128 << cells.min(127),
            cap: 1 << 20,
        });
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << cells) {
        let pairs = (0..cells)
            .filter(|c| mask & (1 << c) != 0)
            .map(|c| (c / b, c % b));
        let r = Relation::new(pairs)?;
        if r.is_correspondence(a, b) {
            out.push(Correspondence(r));
        }
    }
    Ok(out)
}

/// Outcome of the oracle: `dis_min = 2 d_GH` and a minimizing correspondence.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub min_distortion: f64,
    pub argmin: Correspondence,
    pub visited: u64,
}

impl OracleResult {
    pub fn gh(&self) -> f64 {
        self.min_distortion / 2.0
    }
}

/// Minimizes distortion over all irreducible correspondences, with an early
/// exit per correspondence once it exceeds the incumbent.
pub fn min_distortion(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    cap: u64,
) -> Result<OracleResult> {
    let mut best = f64::INFINITY;
    let mut argmin = None;
    let mut visited = 0;
    let _ = for_each_irreducible(x, y, cap, |pairs| {
        visited += 1;
        if let Some(d) = distortion_below(pairs, x, y, best) {
            if d < best {
                best = d;
                argmin = Some(pairs.to_vec());
            }
        }
        if best == 0.0 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    let pairs = argmin.expect("at least one irreducible correspondence exists");
    Ok(OracleResult {
        min_distortion: best,
        argmin: Correspondence(Relation { pairs }),
        visited,
    })
}

fn for_each_irreducible<F>(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    cap: u64,
    mut f: F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
{
    let mut stream = enumerate_irreducible(x, y, cap)?;
    loop {
        if let Some(pairs) = stream.buffer.pop_front() {
            if f(&pairs).is_break() {
                return Ok(ControlFlow::Break(()));
            }
            continue;
        }
        match stream.next_pair() {
            Some(qy) => stream.fill(&qy),
            None => return Ok(ControlFlow::Continue(())),
        }
    }
}

/// `d_GH(X, Y)` by exhaustive search over irreducible correspondences.
pub fn gh_bruteforce(x: &FiniteMetricSpace, y: &FiniteMetricSpace, cap: u64) -> Result<f64> {
    Ok(min_distortion(x, y, cap)?.gh())
}

/// The correspondence `R_D` between the simplex on the blocks of `d` and `X`:
/// block vertex `i` is related to every point of block `i`.
pub fn r_d(d: &Partition) -> Correspondence {
    let pairs = (0..d.n()).map(|x| (d.block_of(x), x)).collect::<Vec<_>>();
    let mut pairs = pairs;
    pairs.sort_unstable();
    Correspondence(Relation { pairs })
}

/// Closed form `dis R_D = max{diam D, λ - α(D), β(D) - λ}`.
pub fn dis_rd(d: &Partition, lambda: f64, x: &FiniteMetricSpace) -> f64 {
    let mut v = d.diam(x).max(d.beta(x) - lambda);
    if let Some(deficit) = d.alpha(x).deficit(lambda) {
        v = v.max(deficit);
    }
    v
}
