use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::partition::Separation;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MstEdge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

/// Kruskal's minimum spanning tree. Ties are broken by `(weight, i, j)`
/// with `i < j`, so the tree is deterministic.
pub fn mst(x: &FiniteMetricSpace) -> Vec<MstEdge> {
    let n = x.len();
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push(MstEdge {
                i,
                j,
                weight: x.dist(i, j),
            });
        }
    }
    edges.sort_by(|a, b| {
        a.weight
            .total_cmp(&b.weight)
            .then(a.i.cmp(&b.i))
            .then(a.j.cmp(&b.j))
    });
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for e in edges {
        let (ri, rj) = (root(&mut parent, e.i), root(&mut parent, e.j));
        if ri != rj {
            parent[ri] = rj;
            tree.push(e);
            if tree.len() + 1 == n {
                break;
            }
        }
    }
    tree
}

/// `α_m⁺` as the `(m-1)`-th largest MST edge: cutting the `m - 1` longest
/// tree edges gives the `m` clusters with the widest single-linkage gap.
pub fn alpha_plus_via_mst(x: &FiniteMetricSpace, m: usize) -> Result<Separation> {
    let n = x.len();
    if m < 1 || m > n {
        return Err(Error::BadCardinality { n, m });
    }
    if m == 1 {
        return Ok(Separation::Infinite);
    }
    let mut weights: Vec<f64> = mst(x).into_iter().map(|e| e.weight).collect();
    weights.sort_by(|a, b| b.total_cmp(a));
    Ok(Separation::Finite(weights[m - 2]))
}
