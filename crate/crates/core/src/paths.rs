//! Exact packing of internally vertex-disjoint directed paths.
//!
//! Given ordered endpoint pairs (repeats allowed), the solver finds paths
//! whose interiors are pairwise disjoint, avoid every endpoint and every
//! forbidden vertex, and optionally fit a total interior budget. The search
//! is exact backtracking: pairs are ordered hardest-first, candidate paths
//! are generated per pair in (length, lexicographic) order, and states are
//! pruned by per-pair max-flow feasibility and a budget lower bound. A node
//! budget bounds the effort; running out of budget is reported distinctly
//! from proven infeasibility.

use crate::connectivity::FlowScratch;
use crate::tournament::{DirPath, Tournament};
use crate::vset::VertexSet;
use thiserror::Error;

/// A request for internally vertex-disjoint paths joining ordered endpoint
/// pairs. Identical endpoints in one pair ask for a length-0 path.
#[derive(Clone, Debug)]
pub struct PathRequest {
    pub pairs: Vec<(u32, u32)>,
    /// Vertices the interiors must avoid; must not contain any endpoint.
    pub forbidden: VertexSet,
    /// Optional cap on the total interior size of the family.
    pub interior_budget: Option<usize>,
    /// Backtracking node budget.
    pub node_budget: u64,
}

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

impl PathRequest {
    pub fn new(n: usize, pairs: Vec<(u32, u32)>) -> PathRequest {
        PathRequest {
            pairs,
            forbidden: VertexSet::new(n),
            interior_budget: None,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn with_forbidden(mut self, forbidden: VertexSet) -> PathRequest {
        self.forbidden = forbidden;
        self
    }

    pub fn with_interior_budget(mut self, budget: usize) -> PathRequest {
        self.interior_budget = Some(budget);
        self
    }

    pub fn with_node_budget(mut self, nodes: u64) -> PathRequest {
        self.node_budget = nodes;
        self
    }
}

/// A successful packing, paths listed in request order.
#[derive(Clone, Debug)]
pub struct PathFamilyResult {
    pub paths: Vec<DirPath>,
    pub total_interior: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error(
    "path packing failed at pair {pair_index} after {nodes_explored} nodes ({})",
    if *.exhausted { "search space exhausted" } else { "node budget hit" }
)]
pub struct PathPackingFailed {
    /// Original index of the deepest pair that could not be routed.
    pub pair_index: usize,
    pub nodes_explored: u64,
    /// True when the search space was provably exhausted; false when the node
    /// budget stopped the search first.
    pub exhausted: bool,
}

/// Finds internally vertex-disjoint paths for every requested pair.
pub fn find_disjoint_paths(
    t: &Tournament,
    req: &PathRequest,
) -> Result<PathFamilyResult, PathPackingFailed> {
    let n = t.n();
    let mut endpoints = VertexSet::new(n);
    for &(x, y) in &req.pairs {
        endpoints.insert(x);
        endpoints.insert(y);
    }
    assert!(
        req.forbidden.is_disjoint_from(&endpoints),
        "forbidden set may not contain endpoints"
    );
    if req.pairs.is_empty() {
        return Ok(PathFamilyResult { paths: Vec::new(), total_interior: 0 });
    }

    let mut allowed_base = VertexSet::full(n);
    allowed_base.subtract(&req.forbidden);
    allowed_base.subtract(&endpoints);

    // hardest pair first: fewest short routes (direct edge plus one-stop paths)
    let mut order: Vec<usize> = (0..req.pairs.len()).collect();
    let route_count = |&(x, y): &(u32, u32)| -> usize {
        if x == y {
            return usize::MAX;
        }
        let into_y = t.in_neighbors(y);
        let direct = usize::from(t.has_edge(x, y));
        let stops = t
            .out_row(x)
            .iter()
            .zip(allowed_base.words().iter().zip(into_y.words()))
            .map(|(&o, (&a, &r))| (o & a & r).count_ones() as usize)
            .sum::<usize>();
        direct + stops
    };
    let scores: Vec<usize> = req.pairs.iter().map(route_count).collect();
    order.sort_by_key(|&i| (scores[i], i));

    let mut solver = Solver {
        t,
        pairs: order.iter().map(|&i| req.pairs[i]).collect(),
        order,
        allowed_base,
        used: VertexSet::new(n),
        budget_left: req.interior_budget.unwrap_or(usize::MAX),
        nodes: 0,
        node_budget: req.node_budget,
        chosen: Vec::new(),
        flow: FlowScratch::new(n),
        deepest_fail: 0,
        out_of_budget: false,
        scratch_on_path: VertexSet::new(n),
    };
    if solver.solve(0) {
        let mut paths: Vec<Option<DirPath>> = vec![None; req.pairs.len()];
        let mut total = 0;
        for (pos, verts) in solver.chosen.into_iter().enumerate() {
            total += verts.len().saturating_sub(2);
            paths[solver.order[pos]] = Some(DirPath::from_vec_unchecked(verts));
        }
        Ok(PathFamilyResult {
            paths: paths.into_iter().map(|p| p.expect("every pair routed")).collect(),
            total_interior: total,
        })
    } else {
        Err(PathPackingFailed {
            pair_index: solver.order[solver.deepest_fail.min(req.pairs.len() - 1)],
            nodes_explored: solver.nodes,
            exhausted: !solver.out_of_budget,
        })
    }
}

/// Packing with the total interior capped at `|T| / s`.
pub fn find_short_path_family(
    t: &Tournament,
    req: &PathRequest,
    s: usize,
) -> Result<PathFamilyResult, PathPackingFailed> {
    assert!(s >= 1);
    let cap = t.n() / s;
    let capped = PathRequest {
        interior_budget: Some(req.interior_budget.map_or(cap, |b| b.min(cap))),
        ..req.clone()
    };
    find_disjoint_paths(t, &capped)
}

struct Solver<'a> {
    t: &'a Tournament,
    /// pairs in search order
    pairs: Vec<(u32, u32)>,
    /// search position -> original request index
    order: Vec<usize>,
    allowed_base: VertexSet,
    used: VertexSet,
    budget_left: usize,
    nodes: u64,
    node_budget: u64,
    chosen: Vec<Vec<u32>>,
    flow: FlowScratch,
    deepest_fail: usize,
    out_of_budget: bool,
    scratch_on_path: VertexSet,
}

impl Solver<'_> {
    fn solve(&mut self, pos: usize) -> bool {
        if pos == self.pairs.len() {
            return true;
        }
        if !self.feasible_from(pos) {
            return false;
        }
        let (x, y) = self.pairs[pos];
        self.deepest_fail = self.deepest_fail.max(pos);

        if x == y {
            let trivial = vec![x];
            if self.chosen[..pos].iter().any(|p| *p == trivial) {
                return false; // a second copy of (x, x) has no distinct path
            }
            self.chosen.push(trivial);
            if self.solve(pos + 1) {
                return true;
            }
            self.chosen.pop();
            return false;
        }

        // distances towards y through currently allowed interiors
        let mut alive = self.allowed_base.clone();
        alive.subtract(&self.used);
        alive.insert(y);
        let dist_to_y = self.t.distances_to(&alive, y);

        // shortest realizable length from x (its first hop must be alive)
        let mut d_x = u32::MAX;
        for v in self.t.out_neighbors(x).intersection(&alive).iter() {
            if dist_to_y[v as usize] != u32::MAX {
                d_x = d_x.min(1 + dist_to_y[v as usize]);
            }
        }
        if d_x == u32::MAX {
            return false;
        }

        let max_len = self
            .budget_left
            .saturating_add(1)
            .min(self.t.n().saturating_sub(1));
        let mut target_len = d_x as usize;
        while target_len <= max_len {
            if self.out_of_budget {
                return false;
            }
            self.scratch_on_path.clear();
            let mut partial = vec![x];
            if self.dfs_extend(pos, y, &mut partial, target_len, &dist_to_y) {
                return true;
            }
            target_len += 1;
        }
        false
    }

    /// Extends `partial` towards `y` with exactly `target_len` edges total;
    /// on completion places the path and recurses into the next pair.
    fn dfs_extend(
        &mut self,
        pos: usize,
        y: u32,
        partial: &mut Vec<u32>,
        target_len: usize,
        dist_to_y: &[u32],
    ) -> bool {
        let u = *partial.last().unwrap();
        let remaining = target_len - (partial.len() - 1);
        debug_assert!(remaining >= 1);

        self.nodes += 1;
        if self.nodes > self.node_budget {
            self.out_of_budget = true;
            return false;
        }

        if remaining == 1 {
            if !self.t.has_edge(u, y) {
                return false;
            }
            // zero-interior duplicates of the same pair are not distinct paths
            if partial.len() == 1 {
                let x = partial[0];
                if self.chosen[..pos]
                    .iter()
                    .any(|p| p.len() == 2 && p[0] == x && p[1] == y)
                {
                    return false;
                }
            }
            let mut path = partial.clone();
            path.push(y);
            let interior = path.len() - 2;
            for &v in &path[1..path.len() - 1] {
                self.used.insert(v);
            }
            self.budget_left -= interior;
            self.chosen.push(path);
            if self.solve(pos + 1) {
                return true;
            }
            let path = self.chosen.pop().unwrap();
            self.budget_left += interior;
            for &v in &path[1..path.len() - 1] {
                self.used.remove(v);
            }
            return false;
        }

        // interior extensions in ascending id order
        let n = self.t.n();
        let row = self.t.out_row(u);
        let mut fresh = VertexSet::new(n);
        for ((f, &o), (&a, &us)) in fresh
            .words_mut()
            .iter_mut()
            .zip(row)
            .zip(self.allowed_base.words().iter().zip(self.used.words()))
        {
            *f = o & a & !us;
        }
        fresh.subtract(&self.scratch_on_path);
        for v in fresh.iter() {
            if dist_to_y[v as usize] as usize > remaining - 1 {
                continue;
            }
            self.scratch_on_path.insert(v);
            partial.push(v);
            if self.dfs_extend(pos, y, partial, target_len, dist_to_y) {
                return true;
            }
            partial.pop();
            self.scratch_on_path.remove(v);
            if self.out_of_budget {
                return false;
            }
        }
        false
    }

    /// Flow and budget necessary conditions for completing pairs `pos..`.
    fn feasible_from(&mut self, pos: usize) -> bool {
        let mut alive = self.allowed_base.clone();
        alive.subtract(&self.used);
        let mut need_interior = 0usize;
        let mut groups: Vec<((u32, u32), usize, usize)> = Vec::new(); // (pair, copies, first pos)
        for (i, &p) in self.pairs.iter().enumerate().skip(pos) {
            match groups.iter_mut().find(|(q, _, _)| *q == p) {
                Some((_, c, _)) => *c += 1,
                None => groups.push((p, 1, i)),
            }
        }
        for ((x, y), copies, first) in groups {
            if x == y {
                continue;
            }
            let mut local = alive.clone();
            local.insert(x);
            local.insert(y);
            if self.flow.max_disjoint_paths(self.t, &local, x, y, copies) < copies {
                self.deepest_fail = self.deepest_fail.max(first);
                return false;
            }
            let d = self.t.distances_to(&local, y)[x as usize];
            debug_assert!(d != u32::MAX, "positive flow implies reachability");
            // every copy needs at least dist - 1 interior vertices
            need_interior += copies * (d as usize).saturating_sub(1);
        }
        if need_interior > self.budget_left {
            self.deepest_fail = self.deepest_fail.max(pos);
            return false;
        }
        true
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinkednessError {
    #[error("brute-force linkedness limited to n <= {limit}, k <= 3 (got n = {n}, k = {k})")]
    TooLarge { n: usize, k: usize, limit: usize },
}

/// Exhaustive linkedness test: every choice of 2k distinct terminals admits
/// vertex-disjoint paths joining the pairs in order.
pub fn is_k_linked_bruteforce(
    t: &Tournament,
    k: usize,
    max_n: usize,
) -> Result<bool, LinkednessError> {
    let n = t.n();
    if n > max_n || k > 3 || k == 0 {
        return Err(LinkednessError::TooLarge { n, k, limit: max_n });
    }
    if n < 2 * k {
        return Ok(false);
    }
    let mut terminals = Vec::with_capacity(2 * k);
    Ok(linked_rec(t, k, &mut terminals))
}

fn linked_rec(t: &Tournament, k: usize, terminals: &mut Vec<u32>) -> bool {
    let n = t.n() as u32;
    if terminals.len() == 2 * k {
        let pairs: Vec<(u32, u32)> = (0..k).map(|i| (terminals[2 * i], terminals[2 * i + 1])).collect();
        let req = PathRequest::new(t.n(), pairs).with_node_budget(100_000_000);
        return match find_disjoint_paths(t, &req) {
            Ok(_) => true,
            Err(f) => {
                debug_assert!(f.exhausted, "linkedness search must be exhaustive");
                false
            }
        };
    }
    for v in 0..n {
        if terminals.contains(&v) {
            continue;
        }
        terminals.push(v);
        let ok = linked_rec(t, k, terminals);
        terminals.pop();
        if !ok {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_cycle() -> Tournament {
        Tournament::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn three_cycle_both_directions() {
        let t = three_cycle();
        let req = PathRequest::new(3, vec![(0, 1), (1, 0)]);
        let res = find_disjoint_paths(&t, &req).unwrap();
        assert_eq!(res.paths[0].vertices(), &[0, 1]);
        assert_eq!(res.paths[1].vertices(), &[1, 2, 0]);
        assert_eq!(res.total_interior, 1);
    }

    #[test]
    fn transitive_backwards_is_infeasible() {
        let t = Tournament::transitive(4);
        let req = PathRequest::new(4, vec![(3, 0)]);
        let err = find_disjoint_paths(&t, &req).unwrap_err();
        assert!(err.exhausted);
        assert_eq!(err.pair_index, 0);
    }

    #[test]
    fn paley7_three_pairs() {
        let t = Tournament::paley(7).unwrap();
        let req = PathRequest::new(7, vec![(0, 1), (2, 3), (4, 5)]);
        let res = find_disjoint_paths(&t, &req).unwrap();
        check_family(&t, &req, &res);
    }

    #[test]
    fn repeated_pairs_get_distinct_paths() {
        let t = Tournament::paley(7).unwrap();
        let req = PathRequest::new(7, vec![(0, 1), (0, 1)]);
        let res = find_disjoint_paths(&t, &req).unwrap();
        assert_ne!(res.paths[0].vertices(), res.paths[1].vertices());
        check_family(&t, &req, &res);
    }

    #[test]
    fn length_zero_paths() {
        let t = three_cycle();
        let req = PathRequest::new(3, vec![(1, 1)]);
        let res = find_disjoint_paths(&t, &req).unwrap();
        assert_eq!(res.paths[0].vertices(), &[1]);
        assert_eq!(res.total_interior, 0);

        // two copies of the same trivial pair cannot both be the trivial path
        let req = PathRequest::new(3, vec![(1, 1), (1, 1)]);
        assert!(find_disjoint_paths(&t, &req).is_err());
    }

    #[test]
    fn forbidden_vertices_are_avoided() {
        let t = Tournament::paley(7).unwrap();
        let mut forbidden = VertexSet::new(7);
        forbidden.insert(2);
        let req = PathRequest::new(7, vec![(3, 0)]).with_forbidden(forbidden);
        let res = find_disjoint_paths(&t, &req).unwrap();
        assert!(!res.paths[0].vertices().contains(&2));
        check_family(&t, &req, &res);
    }

    #[test]
    fn interior_budget_respected() {
        let t = Tournament::paley(7).unwrap();
        // 0 -> 3 has no direct edge (3 is not a residue), so interior >= 1
        assert!(!t.has_edge(0, 3));
        let req = PathRequest::new(7, vec![(0, 3)]).with_interior_budget(0);
        assert!(find_disjoint_paths(&t, &req).unwrap_err().exhausted);

        let req = PathRequest::new(7, vec![(0, 3)]).with_interior_budget(1);
        let res = find_disjoint_paths(&t, &req).unwrap();
        assert_eq!(res.paths[0].vertices(), &[0, 1, 3]);
        assert_eq!(res.total_interior, 1);
    }

    #[test]
    fn short_family_is_capped() {
        let t = three_cycle();
        // s = 3: budget = 1
        let req = PathRequest::new(3, vec![(0, 1)]);
        let res = find_short_path_family(&t, &req, 3).unwrap();
        assert_eq!(res.paths[0].vertices(), &[0, 1]);
        assert_eq!(res.total_interior, 0);

        // paley(7), pair (0, 3), s = 7: budget 1, route through vertex 1
        let t = Tournament::paley(7).unwrap();
        let req = PathRequest::new(7, vec![(0, 3)]);
        let res = find_short_path_family(&t, &req, 7).unwrap();
        assert_eq!(res.paths[0].vertices(), &[0, 1, 3]);
        assert!(res.total_interior <= 1);
    }

    #[test]
    fn node_budget_reports_unexhausted() {
        let t = Tournament::random(30, 9);
        let pairs: Vec<(u32, u32)> = (0..8).map(|i| (i, i + 8)).collect();
        let req = PathRequest::new(30, pairs).with_node_budget(3);
        match find_disjoint_paths(&t, &req) {
            Ok(_) => panic!("3 nodes cannot route 8 pairs"),
            Err(f) => {
                assert!(!f.exhausted);
                assert!(f.nodes_explored >= 3);
            }
        }
    }

    #[test]
    fn linkedness_brute_force() {
        assert_eq!(is_k_linked_bruteforce(&three_cycle(), 1, 10), Ok(true));
        assert_eq!(is_k_linked_bruteforce(&Tournament::transitive(4), 1, 10), Ok(false));
        assert!(is_k_linked_bruteforce(&Tournament::random(12, 0), 1, 10).is_err());
        assert!(is_k_linked_bruteforce(&three_cycle(), 4, 10).is_err());
        // |T| >= 2k fails
        assert_eq!(is_k_linked_bruteforce(&three_cycle(), 2, 10), Ok(false));
    }

    /// Independent audit of every family invariant.
    pub(crate) fn check_family(t: &Tournament, req: &PathRequest, res: &PathFamilyResult) {
        assert_eq!(res.paths.len(), req.pairs.len());
        let n = t.n();
        let mut endpoints = VertexSet::new(n);
        for &(x, y) in &req.pairs {
            endpoints.insert(x);
            endpoints.insert(y);
        }
        let mut seen_interiors = VertexSet::new(n);
        let mut total = 0;
        for (path, &(x, y)) in res.paths.iter().zip(&req.pairs) {
            assert_eq!(path.start(), x);
            assert_eq!(path.end(), y);
            for w in path.vertices().windows(2) {
                assert!(t.has_edge(w[0], w[1]));
            }
            for &v in path.interior() {
                assert!(!endpoints.contains(v), "interior hits an endpoint");
                assert!(!req.forbidden.contains(v), "interior hits forbidden set");
                assert!(!seen_interiors.contains(v), "interiors overlap");
                seen_interiors.insert(v);
                total += 1;
            }
        }
        assert_eq!(total, res.total_interior);
        if let Some(b) = req.interior_budget {
            assert!(total <= b);
        }
    }
}
