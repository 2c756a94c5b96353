//! Strong connectivity and Menger-style machinery.
//!
//! Local pair connectivity is computed as a unit-capacity max-flow on the
//! vertex-split digraph (every vertex other than the endpoints becomes an
//! `in`/`out` pair joined by a capacity-1 arc). Strong k-connectivity reduces
//! to local connectivity against a fixed pivot set: for pivots
//! `x_0, ..., x_{k-1}`, if every ordered pair involving a pivot carries `k`
//! internally disjoint paths then no cut of size below `k` separates any
//! pair, because some pivot survives the cut and relays the connection.

use crate::tournament::Tournament;
use crate::vset::VertexSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("pair connectivity of a vertex with itself")]
    SameVertex,
}

/// True iff the tournament has exactly one strongly connected component.
pub fn strongly_connected(t: &Tournament) -> bool {
    t.strongly_connected_within(&VertexSet::full(t.n()))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    None,
    /// entered v_in by the forward arc u -> v
    Forward(u32),
    /// entered w_out by releasing the used arc w -> v (v stored)
    Release(u32),
    /// entered v_out from v_in through the internal arc
    Internal,
    /// entered v_in from v_out by cancelling v's internal flow
    CancelInternal,
}

/// Unit-capacity flow state over the vertex-split graph, reusable across
/// pairs. Ties in augmentation are broken towards lower vertex ids by the
/// ascending-id BFS word scans.
pub(crate) struct FlowScratch {
    n: usize,
    /// used_out[u]: arcs u -> v currently carrying flow
    used_out: Vec<VertexSet>,
    /// transposed: used_in[v] = { u : arc u -> v carries flow }
    used_in: Vec<VertexSet>,
    /// interior vertices whose internal arc is saturated
    through: VertexSet,
    touched: Vec<(u32, u32)>,
    seen_in: VertexSet,
    seen_out: VertexSet,
    how_in: Vec<Step>,
    how_out: Vec<Step>,
    queue: Vec<(u32, bool)>,
    fresh: VertexSet,
}

impl FlowScratch {
    pub(crate) fn new(n: usize) -> Self {
        FlowScratch {
            n,
            used_out: vec![VertexSet::new(n); n],
            used_in: vec![VertexSet::new(n); n],
            through: VertexSet::new(n),
            touched: Vec::new(),
            seen_in: VertexSet::new(n),
            seen_out: VertexSet::new(n),
            how_in: vec![Step::None; n],
            how_out: vec![Step::None; n],
            queue: Vec::new(),
            fresh: VertexSet::new(n),
        }
    }

    fn reset(&mut self) {
        for &(u, v) in &self.touched {
            self.used_out[u as usize].remove(v);
            self.used_in[v as usize].remove(u);
        }
        self.touched.clear();
        self.through.clear();
    }

    fn set_arc(&mut self, u: u32, v: u32) {
        self.used_out[u as usize].insert(v);
        self.used_in[v as usize].insert(u);
        self.touched.push((u, v));
    }

    fn clear_arc(&mut self, u: u32, v: u32) {
        self.used_out[u as usize].remove(v);
        self.used_in[v as usize].remove(u);
    }

    /// One augmenting BFS over the residual graph; fills the `how` tables and
    /// reports whether `y_in` was reached.
    fn augment_bfs(&mut self, t: &Tournament, alive: &VertexSet, x: u32, y: u32) -> bool {
        self.seen_in.clear();
        self.seen_out.clear();
        self.queue.clear();
        self.queue.push((x, true));
        self.seen_out.insert(x);
        let mut qi = 0;
        while qi < self.queue.len() {
            let (u, out_side) = self.queue[qi];
            qi += 1;
            if out_side {
                // forward arcs u_out -> v_in over unused tournament edges
                for (((f, &row), &uw), (&a, &s)) in self
                    .fresh
                    .words_mut()
                    .iter_mut()
                    .zip(t.out_row(u))
                    .zip(self.used_out[u as usize].words())
                    .zip(alive.words().iter().zip(self.seen_in.words()))
                {
                    *f = row & !uw & a & !s;
                }
                self.fresh.remove(x); // nothing may pass through the source
                if self.fresh.contains(y) {
                    self.how_in[y as usize] = Step::Forward(u);
                    return true;
                }
                for v in self.fresh.iter() {
                    self.seen_in.insert(v);
                    self.how_in[v as usize] = Step::Forward(u);
                    self.queue.push((v, false));
                }
                // cancelling u's internal flow re-opens u_in
                if u != x && self.through.contains(u) && !self.seen_in.contains(u) {
                    self.seen_in.insert(u);
                    self.how_in[u as usize] = Step::CancelInternal;
                    self.queue.push((u, false));
                }
            } else {
                // internal arc u_in -> u_out when u carries no flow
                if !self.through.contains(u) && !self.seen_out.contains(u) {
                    self.seen_out.insert(u);
                    self.how_out[u as usize] = Step::Internal;
                    self.queue.push((u, true));
                }
                // release arcs u_in -> w_out over used arcs w -> u
                for ((f, &uw), &s) in self
                    .fresh
                    .words_mut()
                    .iter_mut()
                    .zip(self.used_in[u as usize].words())
                    .zip(self.seen_out.words())
                {
                    *f = uw & !s;
                }
                for w in self.fresh.iter() {
                    self.seen_out.insert(w);
                    self.how_out[w as usize] = Step::Release(u);
                    self.queue.push((w, true));
                }
            }
        }
        false
    }

    /// Replays the discovered augmenting path backwards from `y`, flipping
    /// residual arcs and maintaining the set of flow-carrying vertices.
    fn apply_augmenting_path(&mut self, x: u32, y: u32) {
        let mut v = y;
        let mut in_side = true;
        loop {
            if in_side {
                match self.how_in[v as usize] {
                    Step::Forward(u) => {
                        self.set_arc(u, v);
                        if v != y {
                            self.through.insert(v);
                        }
                        if u == x {
                            return;
                        }
                        v = u;
                        in_side = false;
                    }
                    Step::CancelInternal => {
                        self.through.remove(v);
                        in_side = false;
                    }
                    _ => unreachable!("in-side node without a residual predecessor"),
                }
            } else {
                match self.how_out[v as usize] {
                    Step::Internal => {
                        in_side = true;
                    }
                    Step::Release(u) => {
                        self.clear_arc(v, u);
                        if self.used_in[u as usize].is_empty() {
                            self.through.remove(u);
                        }
                        v = u;
                        in_side = true;
                    }
                    _ => unreachable!("out-side node without a residual predecessor"),
                }
            }
        }
    }

    /// Maximum number of internally vertex-disjoint x -> y paths inside
    /// `alive`, stopping early once `limit` is reached.
    pub(crate) fn max_disjoint_paths(
        &mut self,
        t: &Tournament,
        alive: &VertexSet,
        x: u32,
        y: u32,
        limit: usize,
    ) -> usize {
        debug_assert!(x != y && alive.contains(x) && alive.contains(y));
        debug_assert_eq!(self.n, t.n());
        self.reset();
        let mut flow = 0;
        while flow < limit && self.augment_bfs(t, alive, x, y) {
            self.apply_augmenting_path(x, y);
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally vertex-disjoint directed paths from `x` to
/// `y` (a direct edge counts as one path).
pub fn pair_connectivity(t: &Tournament, x: u32, y: u32) -> Result<usize, ConnectivityError> {
    if x == y {
        return Err(ConnectivityError::SameVertex);
    }
    let alive = VertexSet::full(t.n());
    let mut scratch = FlowScratch::new(t.n());
    Ok(scratch.max_disjoint_paths(t, &alive, x, y, t.n()))
}

/// Flow-based strong k-connectivity: `|V| > k` and every ordered vertex pair
/// is joined by `k` internally vertex-disjoint paths.
pub fn is_strongly_k_connected(t: &Tournament, k: usize) -> bool {
    let n = t.n();
    if k == 0 {
        return n > 0 && strongly_connected(t);
    }
    if n <= k {
        return false;
    }
    // a vertex of semidegree below k is cut off by removing its small side
    if t.min_semidegree() < k {
        return false;
    }
    let alive = VertexSet::full(n);
    let mut scratch = FlowScratch::new(n);
    for p in 0..k as u32 {
        for u in 0..n as u32 {
            if u == p {
                continue;
            }
            if scratch.max_disjoint_paths(t, &alive, p, u, k) < k
                || scratch.max_disjoint_paths(t, &alive, u, p, k) < k
            {
                return false;
            }
        }
    }
    true
}

/// The largest k for which the tournament is strongly k-connected; 0 when it
/// is not strongly connected.
pub fn strong_connectivity(t: &Tournament) -> usize {
    let mut k = 0;
    while is_strongly_k_connected(t, k + 1) {
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> Tournament {
        Tournament::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn strongly_connected_basics() {
        assert!(strongly_connected(&three_cycle()));
        assert!(!strongly_connected(&Tournament::transitive(4)));
        assert!(strongly_connected(&Tournament::paley(7).unwrap()));
    }

    #[test]
    fn k_connectivity_paley7() {
        let t = Tournament::paley(7).unwrap();
        assert!(is_strongly_k_connected(&t, 3));
        assert!(!is_strongly_k_connected(&t, 4));
        assert_eq!(strong_connectivity(&t), 3);
    }

    #[test]
    fn k_connectivity_small_cases() {
        assert_eq!(strong_connectivity(&Tournament::transitive(5)), 0);
        assert_eq!(strong_connectivity(&three_cycle()), 1);
        // n = k is always rejected
        assert!(!is_strongly_k_connected(&three_cycle(), 3));
    }

    #[test]
    fn monotone_in_k() {
        let t = Tournament::random(25, 11);
        let kappa = strong_connectivity(&t);
        assert!(kappa >= 1, "random 25-tournament should be strongly connected");
        for k in 1..=kappa {
            assert!(is_strongly_k_connected(&t, k));
        }
        assert!(!is_strongly_k_connected(&t, kappa + 1));
    }

    #[test]
    fn pair_connectivity_examples() {
        let t = three_cycle();
        assert_eq!(pair_connectivity(&t, 0, 1).unwrap(), 1);
        assert_eq!(pair_connectivity(&t, 0, 0), Err(ConnectivityError::SameVertex));

        let tr = Tournament::transitive(4);
        assert_eq!(pair_connectivity(&tr, 0, 3).unwrap(), 3);
        assert_eq!(pair_connectivity(&tr, 3, 0).unwrap(), 0);

        let p = Tournament::paley(7).unwrap();
        for x in 0..7 {
            for y in 0..7 {
                if x != y {
                    assert!(pair_connectivity(&p, x, y).unwrap() >= 3);
                }
            }
        }
    }

    /// All-pairs local connectivity at least k agrees with the k-connectivity
    /// predicate (n > k), exercised on random instances.
    #[test]
    fn pair_connectivity_matches_k_connectivity() {
        for seed in 0..20 {
            let t = Tournament::random(9, seed);
            for k in 1..=3usize {
                let all_pairs = (0..9u32).all(|x| {
                    (0..9u32)
                        .filter(|&y| y != x)
                        .all(|y| pair_connectivity(&t, x, y).unwrap() >= k)
                });
                assert_eq!(all_pairs, is_strongly_k_connected(&t, k), "seed {} k {}", seed, k);
            }
        }
    }

    /// Flow value equals a brute-force count of internally disjoint path
    /// packings on tiny instances.
    #[test]
    fn flow_matches_exhaustive_packing() {
        fn all_paths(t: &Tournament, x: u32, y: u32, used: &VertexSet) -> Vec<Vec<u32>> {
            fn dfs(
                t: &Tournament,
                y: u32,
                cur: &mut Vec<u32>,
                used: &mut VertexSet,
                out: &mut Vec<Vec<u32>>,
            ) {
                let last = *cur.last().unwrap();
                if last == y {
                    out.push(cur.clone());
                    return;
                }
                for v in 0..t.n() as u32 {
                    if !used.contains(v) && t.has_edge(last, v) {
                        used.insert(v);
                        cur.push(v);
                        dfs(t, y, cur, used, out);
                        cur.pop();
                        used.remove(v);
                    }
                }
            }
            let mut blocked = used.clone();
            blocked.insert(x);
            let mut out = Vec::new();
            dfs(t, y, &mut vec![x], &mut blocked, &mut out);
            out
        }

        /// Largest packing of internally disjoint x -> y paths; the direct
        /// edge (the unique interior-free path) may be taken at most once.
        fn max_packing(
            t: &Tournament,
            x: u32,
            y: u32,
            used: &mut VertexSet,
            edge_taken: bool,
        ) -> usize {
            let mut best = 0;
            for p in all_paths(t, x, y, used) {
                let interior = &p[1..p.len() - 1];
                if interior.is_empty() && edge_taken {
                    continue;
                }
                for &v in interior {
                    used.insert(v);
                }
                let rest = max_packing(t, x, y, used, edge_taken || interior.is_empty());
                best = best.max(1 + rest);
                for &v in interior {
                    used.remove(v);
                }
            }
            best
        }

        for seed in 0..30 {
            let t = Tournament::random(6, seed);
            for x in 0..6u32 {
                for y in 0..6u32 {
                    if x != y {
                        let mut used = VertexSet::new(t.n());
                        assert_eq!(
                            pair_connectivity(&t, x, y).unwrap(),
                            max_packing(&t, x, y, &mut used, false),
                            "seed {} pair ({}, {})",
                            seed,
                            x,
                            y
                        );
                    }
                }
            }
        }
    }
}
