//! Backwards-transitive path machinery and robust reach sets.
//!
//! A backwards-transitive path orders its vertices so that the only forward
//! edges are the consecutive ones; every gap of two or more points backward.
//! Any directed path reduces to this form by repeatedly contracting a chord
//! (an edge from an ancestor to a descendant) over its bypassed stretch.
//!
//! From a tournament split into vertex-disjoint backwards-transitive paths of
//! at least `k + 1` vertices each, `reach_sets` extracts sets `U ⊆ U'` and
//! `W ⊆ W'` such that after deleting any `k - 1` vertices, every survivor
//! still reaches `U` inside `U'` and is reached from `W` inside `W'`.

use crate::tournament::{DirPath, Tournament};
use crate::vset::VertexSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A path whose vertex order satisfies the backwards-transitive pattern:
/// `q_a -> q_b` is an edge iff `b = a + 1` or `a >= b + 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BtPath {
    verts: Vec<u32>,
}

impl BtPath {
    pub fn new(t: &Tournament, verts: Vec<u32>) -> Result<BtPath, ReachError> {
        if !is_backwards_transitive(t, &verts) {
            return Err(ReachError::NotBackwardsTransitive);
        }
        Ok(BtPath { verts })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }
}

/// Checks the defining edge pattern over every vertex pair.
pub fn is_backwards_transitive(t: &Tournament, verts: &[u32]) -> bool {
    for a in 0..verts.len() {
        for b in (a + 1)..verts.len() {
            let forward = t.has_edge(verts[a], verts[b]);
            let expect_forward = b == a + 1;
            if forward != expect_forward {
                return false;
            }
        }
    }
    true
}

/// Reduces a directed path to a backwards-transitive subsequence with the
/// same endpoints.
///
/// Repeatedly finds the first chord in (ancestor, descendant) order and
/// drops the bypassed stretch, so the earliest deletable vertex goes first;
/// at the fixpoint no chord remains and every non-consecutive pair points
/// backward.
pub fn reduce_to_backwards_transitive(t: &Tournament, p: &DirPath) -> BtPath {
    let mut v: Vec<u32> = p.vertices().to_vec();
    'outer: loop {
        for a in 0..v.len() {
            for d in (a + 2)..v.len() {
                if t.has_edge(v[a], v[d]) {
                    v.drain(a + 1..d);
                    continue 'outer;
                }
            }
        }
        break;
    }
    debug_assert!(is_backwards_transitive(t, &v));
    debug_assert_eq!(v.first(), p.vertices().first());
    debug_assert_eq!(v.last(), p.vertices().last());
    BtPath { verts: v }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReachError {
    #[error("every path must have at least k + 1 = {0} vertices")]
    PathTooShort(usize),
    #[error("paths must be vertex-disjoint and cover the tournament")]
    NotPartition,
    #[error("vertex order violates the backwards-transitive pattern")]
    NotBackwardsTransitive,
}

/// The robust reach structure extracted from a backwards-transitive path
/// partition: `|U|, |W| <= 2k(k+1)` and `|U'| = |W'| = l(k+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachSets {
    pub k: usize,
    /// number of paths
    pub ell: usize,
    pub u: VertexSet,
    pub w: VertexSet,
    pub u_prime: VertexSet,
    pub w_prime: VertexSet,
}

/// Builds the reach sets for a tournament partitioned into the given
/// backwards-transitive paths.
pub fn reach_sets(t: &Tournament, paths: &[BtPath], k: usize) -> Result<ReachSets, ReachError> {
    assert!(k >= 1);
    let n = t.n();
    let ell = paths.len();
    let mut cover = VertexSet::new(n);
    for p in paths {
        if p.len() < k + 1 {
            return Err(ReachError::PathTooShort(k + 1));
        }
        for &v in p.vertices() {
            if cover.contains(v) {
                return Err(ReachError::NotPartition);
            }
            cover.insert(v);
        }
        if !is_backwards_transitive(t, p.vertices()) {
            return Err(ReachError::NotBackwardsTransitive);
        }
    }
    if cover.len() != n {
        return Err(ReachError::NotPartition);
    }

    let (u, u_prime) = forward_side(t, paths, k);

    // the W side is the U side of the reversed tournament on reversed paths
    let rev = t.reverse();
    let rev_paths: Vec<BtPath> = paths
        .iter()
        .map(|p| BtPath {
            verts: p.vertices().iter().rev().copied().collect(),
        })
        .collect();
    debug_assert!(rev_paths
        .iter()
        .all(|p| is_backwards_transitive(&rev, p.vertices())));
    let (w, w_prime) = forward_side(&rev, &rev_paths, k);

    debug_assert_eq!(u_prime.len(), ell * (k + 1));
    debug_assert_eq!(w_prime.len(), ell * (k + 1));
    debug_assert!(u.len() <= 2 * k * (k + 1));
    debug_assert!(w.len() <= 2 * k * (k + 1));
    Ok(ReachSets {
        k,
        ell,
        u,
        w,
        u_prime,
        w_prime,
    })
}

/// Columns `T_i` hold the i-th vertices of all paths; `U_i` keeps the
/// `min(2k, l)` members of lowest out-degree inside `T[T_i]`, ties to the
/// lowest id.
fn forward_side(t: &Tournament, paths: &[BtPath], k: usize) -> (VertexSet, VertexSet) {
    let n = t.n();
    let ell = paths.len();
    let mut u = VertexSet::new(n);
    let mut u_prime = VertexSet::new(n);
    for i in 0..=k {
        let col = VertexSet::from_iter(n, paths.iter().map(|p| p.vertices()[i]));
        u_prime.union_with(&col);
        let mut members: Vec<u32> = col.iter().collect();
        members.sort_by_key(|&v| (t.out_degree_in(v, &col), v));
        for &v in members.iter().take((2 * k).min(ell)) {
            u.insert(v);
        }
    }
    (u, u_prime)
}

/// Tournament built from prescribed backwards-transitive paths (consecutive
/// vertex ranges) with seeded random cross edges; a fixture generator for
/// audits and tests.
pub fn bt_fixture(lengths: &[usize], seed: u64) -> (Tournament, Vec<Vec<u32>>) {
    use rand::{RngCore, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n: usize = lengths.iter().sum();
    let mut paths = Vec::new();
    let mut next = 0u32;
    for &len in lengths {
        paths.push((next..next + len as u32).collect::<Vec<u32>>());
        next += len as u32;
    }
    let pos: Vec<(usize, usize)> = {
        let mut pos = vec![(0, 0); n];
        for (pi, p) in paths.iter().enumerate() {
            for (i, &v) in p.iter().enumerate() {
                pos[v as usize] = (pi, i);
            }
        }
        pos
    };
    let t = Tournament::from_orientation(n, |a, b| {
        let (pa, ia) = pos[a as usize];
        let (pb, ib) = pos[b as usize];
        if pa == pb {
            // a < b inside one path means ia < ib
            ib == ia + 1
        } else {
            rng.next_u32() & 1 == 1
        }
    });
    (t, paths)
}
