//! Partitions of a finite space into `m` non-empty blocks.
//!
//! Partitions are encoded as restricted-growth strings (RGS): point `i` gets
//! block label `a[i]`, with `a[0] = 0` and `a[i] <= 1 + max(a[..i])`. Blocks
//! are therefore numbered in order of their smallest member, and the
//! lexicographic order on strings is the canonical enumeration order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;

/// Smallest distance between distinct blocks.
///
/// A one-block partition has no pair of distinct blocks, so its separation
/// is `Infinite`. The sentinel never takes part in arithmetic: `lambda - alpha`
/// is reported as `None` (minus infinity) instead.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Separation {
    Finite(f64),
    Infinite,
}

impl Separation {
    pub fn from_f64(v: f64) -> Self {
        if v == f64::INFINITY {
            Separation::Infinite
        } else {
            Separation::Finite(v)
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Separation::Finite(v) => Some(v),
            Separation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Separation::Infinite
    }

    /// `f64::INFINITY` for the sentinel; for display and serialization only.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    /// `lambda - alpha`, or `None` when alpha is infinite.
    pub fn deficit(self, lambda: f64) -> Option<f64> {
        self.finite().map(|a| lambda - a)
    }

    pub fn min(self, other: Separation) -> Separation {
        match (self, other) {
            (Separation::Infinite, o) | (o, Separation::Infinite) => o,
            (Separation::Finite(a), Separation::Finite(b)) => Separation::Finite(a.min(b)),
        }
    }

    pub fn max(self, other: Separation) -> Separation {
        match (self, other) {
            (Separation::Infinite, _) | (_, Separation::Infinite) => Separation::Infinite,
            (Separation::Finite(a), Separation::Finite(b)) => Separation::Finite(a.max(b)),
        }
    }
}

impl PartialOrd for Separation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Separation::Infinite, Separation::Infinite) => Some(Ordering::Equal),
            (Separation::Infinite, _) => Some(Ordering::Greater),
            (_, Separation::Infinite) => Some(Ordering::Less),
            (Separation::Finite(a), Separation::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Separation::Finite(v) => write!(f, "{v}"),
            Separation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Separation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Separation::Finite(v) => s.serialize_f64(*v),
            Separation::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Separation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Separation::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Separation::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// A partition of `{0, .., n-1}` into `m` non-empty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    rgs: Vec<usize>,
    m: usize,
}

impl Partition {
    /// Builds a partition from a restricted-growth string.
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self> {
        let mut next = 0;
        for (i, &b) in rgs.iter().enumerate() {
            if b > next {
                return Err(Error::InvalidPartition(format!(
                    "label {b} at position {i} skips block {next}"
                )));
            }
            if b == next {
                next += 1;
            }
        }
        if rgs.is_empty() {
            return Err(Error::InvalidPartition("no points".into()));
        }
        Ok(Partition { rgs, m: next })
    }

    /// Builds a partition from blocks of indices covering `0..n` exactly once.
    pub fn from_blocks(blocks: &[Vec<usize>], n: usize) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &i in block {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
                if owner[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("point {i} is in two blocks")));
                }
                owner[i] = b;
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!("point {i} is not covered")));
        }
        // relabel blocks by first occurrence
        let mut relabel = vec![usize::MAX; blocks.len()];
        let mut next = 0;
        let rgs = owner
            .into_iter()
            .map(|o| {
                if relabel[o] == usize::MAX {
                    relabel[o] = next;
                    next += 1;
                }
                relabel[o]
            })
            .collect();
        Ok(Partition { rgs, m: next })
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            rgs: (0..n).collect(),
            m: n,
        }
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    /// Number of blocks.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of points.
    pub fn n(&self) -> usize {
        self.rgs.len()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.rgs[i]
    }

    /// Blocks ordered by smallest member, members ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.m];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    /// `diam D`: the largest block diameter.
    pub fn diam(&self, x: &FiniteMetricSpace) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if self.rgs[i] == self.rgs[j] {
                    d = d.max(x.dist(i, j));
                }
            }
        }
        d
    }

    /// `alpha(D)`: the smallest distance between points of distinct blocks.
    pub fn alpha(&self, x: &FiniteMetricSpace) -> Separation {
        let mut a = Separation::Infinite;
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if self.rgs[i] != self.rgs[j] {
                    a = a.min(Separation::Finite(x.dist(i, j)));
                }
            }
        }
        a
    }

    /// `beta(D)`: the largest distance between points of distinct blocks; 0
    /// for one block.
    pub fn beta(&self, x: &FiniteMetricSpace) -> f64 {
        let mut b = 0.0f64;
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if self.rgs[i] != self.rgs[j] {
                    b = b.max(x.dist(i, j));
                }
            }
        }
        b
    }

    /// Blocks as arrays of labels, ordered by smallest member.
    pub fn to_json(&self, x: &FiniteMetricSpace) -> serde_json::Value {
        self.blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|i| x.label(i).to_owned()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .into()
    }

    /// `{{a,b},{c}}` style rendering with labels.
    pub fn display_with<'a>(&'a self, x: &'a FiniteMetricSpace) -> impl fmt::Display + 'a {
        LabeledPartition { p: self, x }
    }
}

struct LabeledPartition<'a> {
    p: &'a Partition,
    x: &'a FiniteMetricSpace,
}

impl fmt::Display for LabeledPartition<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, block) in self.p.blocks().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (t, &i) in block.iter().enumerate() {
                if t > 0 {
                    f.write_str(",")?;
                }
                f.write_str(self.x.label(i))?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// Stirling number of the second kind `S(n, m)`.
pub fn partition_count(n: usize, m: usize) -> Result<u128> {
    if m < 1 || m > n {
        return Err(Error::BadCardinality { n, m });
    }
    // row[k] = S(i, k) for the current i
    let mut row = vec![0u128; m + 1];
    row[0] = 1;
    for i in 1..=n {
        for k in (1..=m.min(i)).rev() {
            let grow = (k as u128).checked_mul(row[k]).ok_or(Error::Overflow)?;
            row[k] = grow.checked_add(row[k - 1]).ok_or(Error::Overflow)?;
        }
        row[0] = 0;
    }
    Ok(row[m])
}

/// All partitions of `n` points into exactly `m` blocks, in lexicographic
/// RGS order.
#[derive(Clone, Debug)]
pub struct Partitions {
    current: Option<Vec<usize>>,
    m: usize,
    fixed: usize,
}

impl Partitions {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Self::with_prefix(n, m, &[])
    }

    /// Only the partitions whose RGS starts with `prefix`. Distinct prefixes
    /// of one length split the full stream into disjoint chunks.
    pub fn with_prefix(n: usize, m: usize, prefix: &[usize]) -> Result<Self> {
        if m < 1 || m > n {
            return Err(Error::BadCardinality { n, m });
        }
        if prefix.len() > n {
            return Err(Error::InvalidPartition("prefix longer than the point set".into()));
        }
        let mut next = 0;
        for &b in prefix {
            if b > next || b >= m {
                return Ok(Partitions {
                    current: None,
                    m,
                    fixed: prefix.len(),
                });
            }
            if b == next {
                next += 1;
            }
        }
        let mut rgs = prefix.to_vec();
        let current = fill_smallest(&mut rgs, n, m).then_some(rgs);
        Ok(Partitions {
            current,
            m,
            fixed: prefix.len(),
        })
    }
}

/// Extends `rgs` to length `n` with the smallest suffix that reaches `m`
/// blocks. Returns false if no such suffix exists.
fn fill_smallest(rgs: &mut Vec<usize>, n: usize, m: usize) -> bool {
    let used = rgs.iter().max().map_or(0, |&b| b + 1);
    let free = n - rgs.len();
    if used + free < m || used > m {
        return false;
    }
    let missing = m - used;
    rgs.extend(std::iter::repeat_n(0, free - missing));
    rgs.extend(used..m);
    true
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.current.take()?;
        let n = current.len();
        let out = Partition {
            rgs: current.clone(),
            m: self.m,
        };
        // advance: rightmost position that can grow while the rest still fits
        let mut prefix_max = vec![0usize; n];
        let mut run = 0;
        for i in 0..n {
            prefix_max[i] = run;
            run = run.max(current[i] + 1);
        }
        for i in (self.fixed.max(1)..n).rev() {
            let bumped = current[i] + 1;
            if bumped > prefix_max[i] || bumped >= self.m {
                continue;
            }
            let mut candidate = current[..i].to_vec();
            candidate.push(bumped);
            if fill_smallest(&mut candidate, n, self.m) {
                self.current = Some(candidate);
                break;
            }
        }
        Some(out)
    }
}

/// State of a partially built partition during [`search`].
///
/// Points `0..placed` are assigned; the tracked quantities only move in one
/// direction as more points are placed (block diameters and spread grow,
/// separation shrinks), so they bound every completion.
pub struct SearchState<'a> {
    space: &'a FiniteMetricSpace,
    assignment: Vec<usize>,
    block_diam: Vec<f64>,
    blocks: usize,
    max_block_diam: f64,
    separation: Separation,
    spread: f64,
}

impl SearchState<'_> {
    pub fn space(&self) -> &FiniteMetricSpace {
        self.space
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn placed(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_complete(&self) -> bool {
        self.assignment.len() == self.space.len()
    }

    /// Blocks opened so far.
    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn max_block_diam(&self) -> f64 {
        self.max_block_diam
    }

    pub fn separation(&self) -> Separation {
        self.separation
    }

    /// Largest distance between points of distinct blocks so far.
    pub fn spread(&self) -> f64 {
        self.spread
    }

    pub fn to_partition(&self) -> Partition {
        Partition {
            rgs: self.assignment.clone(),
            m: self.blocks,
        }
    }
}

/// Callbacks for [`search`].
pub trait PartitionVisitor {
    /// Called after every placement, including the last one. Returning
    /// `false` prunes the subtree below this state.
    fn descend(&mut self, _state: &SearchState<'_>) -> bool {
        true
    }

    /// Called once per complete partition, in RGS order. `Break` stops the
    /// whole search.
    fn complete(&mut self, state: &SearchState<'_>) -> ControlFlow<()>;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub stopped: bool,
}

/// Depth-first enumeration of `D_m(X)` with incremental block statistics.
///
/// Visits complete partitions in lexicographic RGS order. `node_cap` bounds
/// the number of placements; exceeding it yields `EnumerationTooLarge`.
pub fn search<V: PartitionVisitor>(
    x: &FiniteMetricSpace,
    m: usize,
    visitor: &mut V,
    node_cap: Option<u64>,
) -> Result<SearchStats> {
    let n = x.len();
    if m < 1 || m > n {
        return Err(Error::BadCardinality { n, m });
    }
    let mut state = SearchState {
        space: x,
        assignment: Vec::with_capacity(n),
        block_diam: vec![0.0; m],
        blocks: 0,
        max_block_diam: 0.0,
        separation: Separation::Infinite,
        spread: 0.0,
    };
    let mut walker = Walker {
        m,
        cap: node_cap.unwrap_or(u64::MAX),
        stats: SearchStats::default(),
    };
    match walker.place(&mut state, visitor) {
        Err(e) => Err(e),
        Ok(flow) => {
            walker.stats.stopped = flow.is_break();
            Ok(walker.stats)
        }
    }
}

struct Walker {
    m: usize,
    cap: u64,
    stats: SearchStats,
}

impl Walker {
    fn place<V: PartitionVisitor>(
        &mut self,
        state: &mut SearchState<'_>,
        visitor: &mut V,
    ) -> Result<ControlFlow<()>> {
        let x = state.space;
        let n = x.len();
        let p = state.assignment.len();
        if p == n {
            self.stats.leaves += 1;
            return Ok(visitor.complete(state));
        }
        let open = state.blocks;
        let remaining = n - p - 1;
        for b in 0..=open.min(self.m - 1) {
            let opened = open + usize::from(b == open);
            if opened + remaining < self.m {
                continue;
            }
            self.stats.nodes += 1;
            if self.stats.nodes > self.cap {
                return Err(Error::EnumerationTooLarge { cap: self.cap });
            }
            let row = x.row(p);
            let mut inner = state.block_diam.get(b).copied().unwrap_or(0.0);
            let mut sep = state.separation;
            let mut spread = state.spread;
            for (q, &bq) in state.assignment.iter().enumerate() {
                let d = row[q];
                if bq == b {
                    inner = inner.max(d);
                } else {
                    sep = sep.min(Separation::Finite(d));
                    spread = spread.max(d);
                }
            }
            let saved = (
                state.block_diam[b],
                state.blocks,
                state.max_block_diam,
                state.separation,
                state.spread,
            );
            state.assignment.push(b);
            state.block_diam[b] = inner;
            state.blocks = opened;
            state.max_block_diam = state.max_block_diam.max(inner);
            state.separation = sep;
            state.spread = spread;

            let flow = if visitor.descend(state) {
                self.place(state, visitor)?
            } else {
                ControlFlow::Continue(())
            };

            state.assignment.pop();
            (
                state.block_diam[b],
                state.blocks,
                state.max_block_diam,
                state.separation,
                state.spread,
            ) = saved;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}
