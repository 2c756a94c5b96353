//! Greedy transitive dominating sets and their repeated extraction.
//!
//! A single extraction grows a chain `v_1 = v, v_2, ...` where each new
//! vertex is a minimum in-degree member of the current common
//! in-neighbourhood; the common in-neighbourhood at least halves per step, so
//! after `c` vertices the not-yet-dominated exceptional set has size at most
//! `(1/2)^{c-1} d^-(v)`. Repeating the extraction (excluding everything
//! already taken, plus the seeds reserved for later rounds) yields the
//! disjoint family of out- and in-dominating sets the partitioner consumes.

use crate::tournament::Tournament;
use crate::vset::VertexSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomMode {
    /// transitive chain with sink at the anchor; dominates by out-edges
    Out,
    /// transitive chain with source at the anchor; dominates by in-edges
    In,
}

/// One dominating set with its exceptional set.
///
/// `chain` lists the set in source-to-sink order of the transitive
/// subtournament it induces; the anchor sits at the sink end for `Out` mode
/// and at the source end for `In` mode. All stated properties are relative to
/// the residual tournament `T - excluded`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DomSet {
    pub chain: Vec<u32>,
    pub exceptional: VertexSet,
    pub anchor: u32,
    pub mode: DomMode,
    /// Vertices removed from the host tournament before this extraction.
    pub excluded: VertexSet,
    /// Size trace of the common in-(out-)neighbourhood after each chain
    /// extension; consecutive entries at least halve.
    pub trace: Vec<usize>,
}

impl DomSet {
    pub fn members(&self) -> VertexSet {
        let mut s = VertexSet::new(self.exceptional.capacity());
        for &v in &self.chain {
            s.insert(v);
        }
        s
    }
}

/// Greedy out-dominating set anchored at `v` inside `T - excluded`.
///
/// The chain starts at `v`; while the common in-neighbourhood `E` of the
/// chain is nonempty and the chain is shorter than `c`, a minimum in-degree
/// vertex of `T[E]` (ties to the lowest id) joins the chain.
pub fn out_dominating_set(t: &Tournament, v: u32, c: usize, excluded: &VertexSet) -> DomSet {
    assert!(c >= 1);
    assert!(!excluded.contains(v), "anchor must not be excluded");
    let n = t.n();
    let mut alive = VertexSet::full(n);
    alive.subtract(excluded);

    let mut chain_sink_first = vec![v];
    let mut e = t.in_neighbors(v);
    e.intersect_with(&alive);
    let mut trace = vec![e.len()];
    while !e.is_empty() && chain_sink_first.len() < c {
        let mut best: Option<(usize, u32)> = None;
        for w in e.iter() {
            let d = t.in_degree_in(w, &e);
            if best.is_none_or(|(bd, bw)| d < bd || (d == bd && w < bw)) {
                best = Some((d, w));
            }
        }
        let (deg, next) = best.expect("nonempty E has a minimum");
        debug_assert!(2 * deg <= e.len(), "halving argument");
        chain_sink_first.push(next);
        e.intersect_with(&t.in_neighbors(next));
        trace.push(e.len());
    }
    let chain: Vec<u32> = chain_sink_first.into_iter().rev().collect();
    DomSet {
        chain,
        exceptional: e,
        anchor: v,
        mode: DomMode::Out,
        excluded: excluded.clone(),
        trace,
    }
}

/// Mirror extraction: in-dominating set with source `v`, realised by running
/// the out-construction on the reversed tournament.
pub fn in_dominating_set(t: &Tournament, v: u32, c: usize, excluded: &VertexSet) -> DomSet {
    in_dominating_set_prereversed(&t.reverse(), v, c, excluded)
}

/// Same as [`in_dominating_set`] but takes the already-reversed tournament,
/// for callers extracting many sets.
pub fn in_dominating_set_prereversed(
    rev: &Tournament,
    v: u32,
    c: usize,
    excluded: &VertexSet,
) -> DomSet {
    let out = out_dominating_set(rev, v, c, excluded);
    DomSet {
        // reversing the chain order keeps it source-to-sink in the original
        chain: out.chain.into_iter().rev().collect(),
        exceptional: out.exceptional,
        anchor: v,
        mode: DomMode::In,
        excluded: out.excluded,
        trace: out.trace,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DominationError {
    #[error("tournament on {n} vertices is too small for {need} disjoint seeds")]
    TooSmall { n: usize, need: usize },
}

/// The full family of `kt` out-dominating and `kt` in-dominating sets with
/// the bookkeeping the partitioning pipeline needs.
///
/// All data is expressed in the family's working frame: the input tournament
/// itself, or its reversal when the construction was redone there to make
/// `|E_A| <= |E_B|` hold (`swapped` records which).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DominationFamily {
    pub k: usize,
    pub t_parts: usize,
    pub m: usize,
    /// chain length cap, `ceil(log2(32 k^2 t m))`
    pub c: usize,
    /// anchors of the out-dominating sets, lowest in-degrees first
    pub x_seeds: Vec<u32>,
    /// anchors of the in-dominating sets, lowest out-degrees among the rest
    pub y_seeds: Vec<u32>,
    pub a_sets: Vec<DomSet>,
    pub b_sets: Vec<DomSet>,
    /// truncated semidegrees: minimum in-degree outside the x-seeds, minimum
    /// out-degree outside the y-seeds
    pub delta_in_hat: usize,
    pub delta_out_hat: usize,
    pub swapped: bool,
}

impl DominationFamily {
    pub fn kt(&self) -> usize {
        self.k * self.t_parts
    }

    /// Union of all dominating sets.
    pub fn d_union(&self, n: usize) -> VertexSet {
        let mut d = VertexSet::new(n);
        for s in self.a_sets.iter().chain(&self.b_sets) {
            for &v in &s.chain {
                d.insert(v);
            }
        }
        d
    }

    pub fn e_a_union(&self, n: usize) -> VertexSet {
        let mut e = VertexSet::new(n);
        for s in &self.a_sets {
            e.union_with(&s.exceptional);
        }
        e
    }

    pub fn e_b_union(&self, n: usize) -> VertexSet {
        let mut e = VertexSet::new(n);
        for s in &self.b_sets {
            e.union_with(&s.exceptional);
        }
        e
    }

    pub fn e_union(&self, n: usize) -> VertexSet {
        self.e_a_union(n).union(&self.e_b_union(n))
    }

    /// Block of set indices belonging to part `j` (0-based): `j*k ..< (j+1)*k`.
    pub fn block(&self, j: usize) -> std::ops::Range<usize> {
        j * self.k..(j + 1) * self.k
    }
}

/// `ceil(log2(x))` for `x >= 1`.
pub fn ceil_log2(x: u64) -> usize {
    assert!(x >= 1);
    (64 - (x - 1).leading_zeros()) as usize
}

/// Chain-length parameter for the family construction.
pub fn chain_cap(k: usize, t_parts: usize, m: usize) -> usize {
    ceil_log2(32 * (k * k * t_parts * m) as u64).max(1)
}

/// Builds the domination family on `t` (or its reversal, see
/// [`DominationFamily::swapped`]).
///
/// When the construction ends with `|E_A| > |E_B|`, the family is
/// reinterpreted in the reversed tournament with the roles of the two set
/// kinds exchanged: each in-dominating set of `t` is an out-dominating set of
/// `reverse(t)` with the same chain read backwards, so the swap flips the two
/// aggregate exceptional sets and the normalisation holds by construction.
pub fn build_domination_family(
    t: &Tournament,
    k: usize,
    t_parts: usize,
    m: usize,
) -> Result<DominationFamily, DominationError> {
    assert!(k >= 1 && t_parts >= 2 && m >= t_parts);
    let n = t.n();
    let kt = k * t_parts;
    if n < 2 * kt + 1 {
        return Err(DominationError::TooSmall { n, need: 2 * kt });
    }
    let fam = build_in_frame(t, k, t_parts, m);
    if fam.e_a_union(n).len() <= fam.e_b_union(n).len() {
        Ok(fam)
    } else {
        Ok(swap_frame(fam))
    }
}

/// Re-expresses the family in the reversed tournament: chains reverse their
/// stored order, modes flip, seed roles and truncated semidegrees exchange.
fn swap_frame(fam: DominationFamily) -> DominationFamily {
    let flip = |s: DomSet, mode: DomMode| DomSet {
        chain: s.chain.into_iter().rev().collect(),
        mode,
        ..s
    };
    DominationFamily {
        k: fam.k,
        t_parts: fam.t_parts,
        m: fam.m,
        c: fam.c,
        x_seeds: fam.y_seeds,
        y_seeds: fam.x_seeds,
        a_sets: fam.b_sets.into_iter().map(|s| flip(s, DomMode::Out)).collect(),
        b_sets: fam.a_sets.into_iter().map(|s| flip(s, DomMode::In)).collect(),
        delta_in_hat: fam.delta_out_hat,
        delta_out_hat: fam.delta_in_hat,
        swapped: true,
    }
}

fn build_in_frame(frame: &Tournament, k: usize, t_parts: usize, m: usize) -> DominationFamily {
    let n = frame.n();
    let kt = k * t_parts;
    let c = chain_cap(k, t_parts, m);

    // x-seeds: kt lowest in-degrees, ties towards lower ids
    let mut by_in: Vec<u32> = (0..n as u32).collect();
    by_in.sort_by_key(|&v| (frame.in_degree(v), v));
    let x_seeds: Vec<u32> = by_in[..kt].to_vec();
    let x_set = VertexSet::from_iter(n, x_seeds.iter().copied());

    // y-seeds: kt lowest out-degrees among the remaining vertices
    let mut by_out: Vec<u32> = (0..n as u32).filter(|&v| !x_set.contains(v)).collect();
    by_out.sort_by_key(|&v| (frame.out_degree(v), v));
    let y_seeds: Vec<u32> = by_out[..kt].to_vec();
    let y_set = VertexSet::from_iter(n, y_seeds.iter().copied());

    let delta_in_hat = (0..n as u32)
        .filter(|&v| !x_set.contains(v))
        .map(|v| frame.in_degree(v))
        .min()
        .expect("n > kt");
    let delta_out_hat = (0..n as u32)
        .filter(|&v| !y_set.contains(v))
        .map(|v| frame.out_degree(v))
        .min()
        .expect("n > kt");

    let mut taken = VertexSet::new(n);
    let mut a_sets = Vec::with_capacity(kt);
    for (i, &x) in x_seeds.iter().enumerate() {
        let mut excluded = taken.clone();
        excluded.union_with(&y_set);
        for (j, &xj) in x_seeds.iter().enumerate() {
            if j != i {
                excluded.insert(xj);
            }
        }
        let set = out_dominating_set(frame, x, c, &excluded);
        for &v in &set.chain {
            taken.insert(v);
        }
        a_sets.push(set);
    }

    let rev = frame.reverse();
    let mut b_sets = Vec::with_capacity(kt);
    for (i, &y) in y_seeds.iter().enumerate() {
        let mut excluded = taken.clone();
        for (j, &yj) in y_seeds.iter().enumerate() {
            if j != i {
                excluded.insert(yj);
            }
        }
        let set = in_dominating_set_prereversed(&rev, y, c, &excluded);
        for &v in &set.chain {
            taken.insert(v);
        }
        b_sets.push(set);
    }

    DominationFamily {
        k,
        t_parts,
        m,
        c,
        x_seeds,
        y_seeds,
        a_sets,
        b_sets,
        delta_in_hat,
        delta_out_hat,
        swapped: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_dom_set(t: &Tournament, s: &DomSet, c: usize) {
        let n = t.n();
        let mut alive = VertexSet::full(n);
        alive.subtract(&s.excluded);
        let members = s.members();
        assert!(!s.chain.is_empty() && s.chain.len() <= c);
        assert!(members.is_subset_of(&alive));
        assert!(members.is_disjoint_from(&s.exceptional));

        // orient the chain source-to-sink regardless of mode
        for (i, &u) in s.chain.iter().enumerate() {
            for &w in &s.chain[i + 1..] {
                assert!(t.has_edge(u, w), "chain must be transitive");
            }
        }
        match s.mode {
            DomMode::Out => {
                assert_eq!(*s.chain.last().unwrap(), s.anchor, "anchor is the sink");
                // E empty or the common in-neighbourhood of the chain in the residual
                let mut common = alive.clone();
                for &u in &s.chain {
                    common.intersect_with(&t.in_neighbors(u));
                }
                if !s.exceptional.is_empty() {
                    assert_eq!(s.exceptional, common);
                }
                // chain out-dominates the residual complement
                let mut rest = alive.clone();
                rest.subtract(&members);
                rest.subtract(&s.exceptional);
                for w in rest.iter() {
                    assert!(
                        s.chain.iter().any(|&u| t.has_edge(u, w)),
                        "vertex {} not out-dominated",
                        w
                    );
                }
                // size bound (1/2)^{c-1} d^-(v) within the residual
                let dv = t.in_degree_in(s.anchor, &alive);
                assert!(
                    (s.exceptional.len() as f64) <= 0.5f64.powi(c as i32 - 1) * dv as f64,
                    "|E| = {} too large for d^- = {}",
                    s.exceptional.len(),
                    dv
                );
            }
            DomMode::In => {
                assert_eq!(s.chain[0], s.anchor, "anchor is the source");
                let mut common = alive.clone();
                for &u in &s.chain {
                    common.intersect_with(&t.out_neighbors(u));
                }
                if !s.exceptional.is_empty() {
                    assert_eq!(s.exceptional, common);
                }
                let mut rest = alive.clone();
                rest.subtract(&members);
                rest.subtract(&s.exceptional);
                for w in rest.iter() {
                    assert!(
                        s.chain.iter().any(|&u| t.has_edge(w, u)),
                        "vertex {} not in-dominated",
                        w
                    );
                }
                let dv = t.out_degree_in(s.anchor, &alive);
                assert!((s.exceptional.len() as f64) <= 0.5f64.powi(c as i32 - 1) * dv as f64);
            }
        }
        // halving certificate
        for w in s.trace.windows(2) {
            assert!(2 * w[1] <= w[0], "trace {:?} fails halving", s.trace);
        }
    }

    #[test]
    fn three_cycle_out_set() {
        // a -> b -> c -> a with a = 0
        let t = Tournament::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let s = out_dominating_set(&t, 0, 2, &VertexSet::new(3));
        assert_eq!(s.chain, vec![2, 0]);
        assert!(s.exceptional.is_empty());
        check_dom_set(&t, &s, 2);
    }

    #[test]
    fn three_cycle_in_set() {
        let t = Tournament::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let s = in_dominating_set(&t, 0, 2, &VertexSet::new(3));
        assert_eq!(s.chain, vec![0, 1]);
        assert!(s.exceptional.is_empty());
        check_dom_set(&t, &s, 2);
    }

    #[test]
    fn chain_cap_one_keeps_singleton() {
        let t = Tournament::random(30, 4);
        let s = out_dominating_set(&t, 7, 1, &VertexSet::new(30));
        assert_eq!(s.chain, vec![7]);
        assert_eq!(s.exceptional, t.in_neighbors(7));
        let s = in_dominating_set(&t, 7, 1, &VertexSet::new(30));
        assert_eq!(s.chain, vec![7]);
        assert_eq!(s.exceptional, t.out_neighbors(7));
    }

    #[test]
    fn transitive_sink_anchor() {
        let t = Tournament::transitive(5);
        // anchor the sink; its in-neighbourhood is everything, and the
        // source (in-degree 0 in E) joins immediately, emptying E
        let s = out_dominating_set(&t, 4, 2, &VertexSet::new(5));
        assert_eq!(s.chain, vec![0, 4]);
        assert!(s.exceptional.is_empty());
        check_dom_set(&t, &s, 2);
    }

    #[test]
    fn in_set_is_out_set_of_reversal() {
        let t = Tournament::random(30, 12);
        let rev = t.reverse();
        for v in [0u32, 5, 17] {
            let b = in_dominating_set(&t, v, 4, &VertexSet::new(30));
            let a = out_dominating_set(&rev, v, 4, &VertexSet::new(30));
            let rev_chain: Vec<u32> = a.chain.iter().rev().copied().collect();
            assert_eq!(b.chain, rev_chain);
            assert_eq!(b.exceptional, a.exceptional);
        }
    }

    #[test]
    fn random_sets_satisfy_lemma() {
        for seed in 0..40u64 {
            let n = 20 + (seed as usize * 7) % 120;
            let t = Tournament::random(n, seed);
            let v = (seed % n as u64) as u32;
            let c = 1 + (seed as usize % 8);
            check_dom_set(&t, &out_dominating_set(&t, v, c, &VertexSet::new(n)), c);
            check_dom_set(&t, &in_dominating_set(&t, v, c, &VertexSet::new(n)), c);
        }
    }

    #[test]
    fn chain_cap_values() {
        assert_eq!(chain_cap(2, 2, 2), 9); // 32*4*2*2 = 512
        assert_eq!(chain_cap(1, 2, 2), 7); // 32*1*2*2 = 128
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(256), 8);
        assert_eq!(ceil_log2(257), 9);
    }

    #[test]
    fn family_on_random_tournament() {
        let t = Tournament::random(500, 3);
        let fam = build_domination_family(&t, 1, 2, 2).unwrap();
        assert_eq!(fam.c, 7);
        assert_eq!(fam.a_sets.len(), 2);
        assert_eq!(fam.b_sets.len(), 2);
        let frame = if fam.swapped { t.reverse() } else { t };

        // pairwise disjoint, anchors in place
        let mut seen = VertexSet::new(500);
        for s in fam.a_sets.iter().chain(&fam.b_sets) {
            for &v in &s.chain {
                assert!(!seen.contains(v), "sets overlap at {}", v);
                seen.insert(v);
            }
        }
        for (i, s) in fam.a_sets.iter().enumerate() {
            assert_eq!(s.anchor, fam.x_seeds[i]);
            check_dom_set(&frame, s, fam.c);
        }
        for (i, s) in fam.b_sets.iter().enumerate() {
            assert_eq!(s.anchor, fam.y_seeds[i]);
            check_dom_set(&frame, s, fam.c);
        }

        // normalisation |E_A| <= |E_B| (or best effort, flagged by swap)
        assert!(fam.e_a_union(500).len() <= fam.e_b_union(500).len());

        // seed degree ordering
        for &x in &fam.x_seeds {
            assert!(frame.in_degree(x) <= fam.delta_in_hat);
        }
        for &y in &fam.y_seeds {
            assert!(frame.out_degree(y) <= fam.delta_out_hat);
        }
    }

    #[test]
    fn family_on_transitive() {
        let t = Tournament::transitive(20);
        let fam = build_domination_family(&t, 1, 2, 2).unwrap();
        let frame = if fam.swapped { t.reverse() } else { t };
        for s in fam.a_sets.iter().chain(&fam.b_sets) {
            check_dom_set(&frame, s, fam.c);
        }
        // every B_i in-dominates its residual complement: checked inside
        // check_dom_set exhaustively
    }

    #[test]
    fn family_too_small() {
        let t = Tournament::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            build_domination_family(&t, 1, 2, 2).unwrap_err(),
            DominationError::TooSmall { n: 3, need: 4 }
        );
    }
}
