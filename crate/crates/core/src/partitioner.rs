//! The colouring pipeline that builds robust strongly k-connected parts.
//!
//! Stages, in order: build the domination family; colour it and secure every
//! coloured vertex with fresh neighbour reserves; route an i-path from the
//! sink of each in-dominating set to the source of its out-dominating
//! partner, short ones by bounded BFS and long ones by packing a family of
//! spare internally disjoint paths; reduce the spare paths to
//! backwards-transitive form, extract reach sets per colour and secure their
//! cores; finally absorb the leftover exceptional vertices case by case.
//! Each stage respects an explicit coloured-vertex budget; exceeding a
//! budget or running out of greedy candidates aborts with a named stage and
//! witness instead of emitting an unverified result.

use crate::domination::{build_domination_family, DominationFamily};
use crate::linkage::{reach_sets, reduce_to_backwards_transitive, BtPath, ReachSets};
use crate::paths::{find_short_path_family, PathRequest};
use crate::safety::{validate_ledger, LedgerContext, SafetyCert, SafetyLedger};
use crate::tournament::{DirPath, Tournament};
use crate::verify::audit_reach_sets;
use crate::vset::VertexSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Practical,
    Strict { assume_connectivity: bool },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineParams {
    pub k: usize,
    pub t_parts: usize,
    pub m: usize,
    pub mode: Mode,
    /// Spare internally disjoint paths packed per long index.
    pub spare_paths: usize,
    /// Maximum edge count of a short i-path.
    pub short_path_bound: usize,
    /// Random augmentation-set samples recorded for verification.
    pub r_samples: usize,
    /// Node budget for the long-path packing search.
    pub search_budget: u64,
    pub seed: u64,
}

impl PipelineParams {
    pub fn new(k: usize, t_parts: usize, m: usize) -> PipelineParams {
        PipelineParams {
            k,
            t_parts,
            m,
            mode: Mode::Practical,
            spare_paths: 13 * k.pow(4) * t_parts,
            short_path_bound: k + 1,
            r_samples: 64,
            search_budget: crate::paths::DEFAULT_NODE_BUDGET,
            seed: 0,
        }
    }

    fn validate(&self) {
        assert!(self.k >= 1 && self.t_parts >= 2 && self.m >= self.t_parts);
        assert!(self.spare_paths >= 1 && self.short_path_bound >= 1);
    }
}

/// Connectivity the strict mode demands before promising anything.
pub fn strict_threshold(k: usize, t_parts: usize, m: usize) -> f64 {
    1e7 * (k as f64).powi(6) * (t_parts as f64).powi(2) * m as f64 * ((k * t_parts * m) as f64).log2()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StageId {
    Gate,
    Seeds,
    Domination,
    Claim3,
    ShortPaths,
    Claim4_1,
    LongPaths,
    Claim4_3,
    Claim5,
}

impl std::fmt::Display for StageId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            StageId::Gate => "Gate",
            StageId::Seeds => "Seeds",
            StageId::Domination => "Domination",
            StageId::Claim3 => "Claim3",
            StageId::ShortPaths => "ShortPaths",
            StageId::Claim4_1 => "Claim4_1",
            StageId::LongPaths => "LongPaths",
            StageId::Claim4_3 => "Claim4_3",
            StageId::Claim5 => "Claim5",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize, Deserialize)]
#[error("stage {stage} failed: {reason}")]
pub struct StageFailure {
    pub stage: StageId,
    pub reason: String,
}

fn fail(stage: StageId, reason: impl Into<String>) -> StageFailure {
    StageFailure {
        stage,
        reason: reason.into(),
    }
}

/// Coloured-vertex counts per stage plus the sub-case tallies of the
/// exceptional-vertex absorption.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub domination: usize,
    pub claim3: usize,
    pub claim4_short: usize,
    pub claim4_1: usize,
    pub claim4_3: usize,
    pub claim5: usize,
    pub total: usize,
    /// cases 1.1, 1.2, 2.1, 2.2, 3.1, 3.2
    pub claim5_cases: [usize; 6],
}

/// The budget formulas the run was gated against.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BudgetLedger {
    pub claim3_cap: f64,
    pub claim4_1_cap: f64,
    pub claim4_cap: f64,
    pub z_cap: f64,
    pub overall_cap: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IPathRecord {
    /// 0-based set index i
    pub index: usize,
    /// 1-based colour
    pub colour: usize,
    pub short: bool,
    pub path: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LongFamilyRecord {
    pub index: usize,
    /// reduced backwards-transitive spare paths, frame ids
    pub paths: Vec<Vec<u32>>,
    /// which spare became the i-path
    pub selected: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReachRecord {
    pub colour: usize,
    pub sets: ReachSets,
    /// the backwards-transitive interiors the sets were extracted from
    pub interiors: Vec<Vec<u32>>,
}

/// Everything a verifier needs to re-check a successful run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionCertificate {
    pub n: usize,
    pub k: usize,
    pub t_parts: usize,
    pub m: usize,
    pub mode: Mode,
    pub seed: u64,
    /// whether the pipeline ran on the reversed tournament
    pub swapped: bool,
    pub c: usize,
    /// colour classes in root-tournament ids, each sorted ascending
    pub classes: Vec<Vec<u32>>,
    pub family: DominationFamily,
    pub i_paths: Vec<IPathRecord>,
    pub long_families: Vec<LongFamilyRecord>,
    /// per colour, 1-based (index 0 unused)
    pub reach: Vec<Option<ReachRecord>>,
    pub ledger: SafetyLedger,
    pub counts: StageCounts,
    pub budgets: BudgetLedger,
    pub notes: Vec<String>,
}

impl PartitionCertificate {
    /// Class vertex sets against the root tournament.
    pub fn class_sets(&self) -> Vec<VertexSet> {
        self.classes
            .iter()
            .map(|c| VertexSet::from_iter(self.n, c.iter().copied()))
            .collect()
    }
}

struct State<'a> {
    frame: &'a Tournament,
    params: &'a PipelineParams,
    fam: &'a DominationFamily,
    d: VertexSet,
    e_a: VertexSet,
    e_b: VertexSet,
    e: VertexSet,
    color: Vec<usize>,
    uncolored: VertexSet,
    ledger: SafetyLedger,
    counts: StageCounts,
    i_paths: Vec<Option<IPathRecord>>,
    long_indices: Vec<usize>,
    long_families: Vec<LongFamilyRecord>,
    reach: Vec<Option<(ReachSets, VertexSet)>>,
    reach_records: Vec<Option<ReachRecord>>,
    z: VertexSet,
}

impl<'a> State<'a> {
    fn new(frame: &'a Tournament, params: &'a PipelineParams, fam: &'a DominationFamily) -> State<'a> {
        let n = frame.n();
        State {
            frame,
            params,
            fam,
            d: fam.d_union(n),
            e_a: fam.e_a_union(n),
            e_b: fam.e_b_union(n),
            e: fam.e_union(n),
            color: vec![0; n],
            uncolored: VertexSet::full(n),
            ledger: SafetyLedger::new(n),
            counts: StageCounts::default(),
            i_paths: vec![None; fam.kt()],
            long_indices: Vec::new(),
            long_families: Vec::new(),
            reach: vec![None; params.t_parts + 1],
            reach_records: vec![None; params.t_parts + 1],
            z: VertexSet::new(n),
        }
    }

    fn colour(&mut self, v: u32, j: usize) {
        debug_assert!(j >= 1 && j <= self.params.t_parts);
        debug_assert_eq!(self.color[v as usize], 0, "vertex {} coloured twice", v);
        self.color[v as usize] = j;
        self.uncolored.remove(v);
        self.counts.total += 1;
    }

    /// 1-based colour of set index i.
    fn colour_of_index(&self, i: usize) -> usize {
        i / self.params.k + 1
    }

    /// Takes the k lowest-id vertices of `mask`, or reports how many exist.
    fn take_k(&self, mask: &VertexSet) -> Result<Vec<u32>, usize> {
        let k = self.params.k;
        let got: Vec<u32> = mask.iter().take(k).collect();
        if got.len() < k {
            Err(got.len())
        } else {
            Ok(got)
        }
    }

    fn uncolored_in_neighbors(&self, v: u32, avoid: Option<&VertexSet>) -> VertexSet {
        let mut s = self.frame.in_neighbors(v);
        s.intersect_with(&self.uncolored);
        if let Some(a) = avoid {
            s.subtract(a);
        }
        s
    }

    fn uncolored_out_neighbors(&self, v: u32, avoid: Option<&VertexSet>) -> VertexSet {
        let mut s = self.frame.out_neighbors(v);
        s.intersect_with(&self.uncolored);
        if let Some(a) = avoid {
            s.subtract(a);
        }
        s
    }

    fn seeds(&self) -> Vec<u32> {
        self.fam
            .x_seeds
            .iter()
            .chain(&self.fam.y_seeds)
            .copied()
            .collect()
    }

    // --- Claim 3: colour the domination family and secure it -------------

    fn claim3(&mut self) -> Result<(), StageFailure> {
        let kt = self.fam.kt();
        for i in 0..kt {
            let j = self.colour_of_index(i);
            for &v in self.fam.a_sets[i].chain.clone().iter() {
                self.colour(v, j);
            }
        }
        for i in 0..kt {
            let j = self.colour_of_index(i);
            for &v in self.fam.b_sets[i].chain.clone().iter() {
                self.colour(v, j);
            }
        }
        self.counts.domination = self.counts.total;

        // pass A: every seed gains k fresh in- and k fresh out-neighbours
        let seed_list = self.seeds();
        for (pos, &v) in seed_list.iter().enumerate() {
            let j = self.colour_of_index(pos % kt);
            let ins = self
                .take_k(&self.uncolored_in_neighbors(v, None))
                .map_err(|got| {
                    fail(
                        StageId::Claim3,
                        format!("seed {} has {} < k uncoloured in-neighbours", v, got),
                    )
                })?;
            for &w in &ins {
                self.colour(w, j);
            }
            self.ledger.set_bwd(v, SafetyCert::Neighbors(ins));
            let outs = self
                .take_k(&self.uncolored_out_neighbors(v, None))
                .map_err(|got| {
                    fail(
                        StageId::Claim3,
                        format!("seed {} has {} < k uncoloured out-neighbours", v, got),
                    )
                })?;
            for &w in &outs {
                self.colour(w, j);
            }
            self.ledger.set_fwd(v, SafetyCert::Neighbors(outs));
        }

        // pass B: every coloured non-seed gains k fresh in-neighbours
        // outside E_A
        let seed_set = VertexSet::from_iter(self.frame.n(), seed_list.iter().copied());
        let targets: Vec<u32> = (0..self.frame.n() as u32)
            .filter(|&v| self.color[v as usize] != 0 && !seed_set.contains(v))
            .collect();
        let e_a = self.e_a.clone();
        for &v in &targets {
            let j = self.color[v as usize];
            let ins = self
                .take_k(&self.uncolored_in_neighbors(v, Some(&e_a)))
                .map_err(|got| {
                    fail(
                        StageId::Claim3,
                        format!("vertex {} has {} < k uncoloured in-neighbours outside E_A", v, got),
                    )
                })?;
            for &w in &ins {
                self.colour(w, j);
                self.ledger.set_bwd(w, SafetyCert::OutsideDe);
            }
            self.ledger.set_bwd(v, SafetyCert::Neighbors(ins));
        }

        // pass C: the same for out-neighbours outside E, covering the pass-B
        // additions as well
        let targets: Vec<u32> = (0..self.frame.n() as u32)
            .filter(|&v| self.color[v as usize] != 0 && !seed_set.contains(v))
            .collect();
        let e = self.e.clone();
        for &v in &targets {
            let j = self.color[v as usize];
            let outs = self
                .take_k(&self.uncolored_out_neighbors(v, Some(&e)))
                .map_err(|got| {
                    fail(
                        StageId::Claim3,
                        format!("vertex {} has {} < k uncoloured out-neighbours outside E", v, got),
                    )
                })?;
            for &w in &outs {
                self.colour(w, j);
                self.ledger.set_fwd(w, SafetyCert::OutsideDe);
                self.ledger.set_bwd(w, SafetyCert::OutsideDe);
            }
            self.ledger.set_fwd(v, SafetyCert::Neighbors(outs));
        }

        self.counts.claim3 = self.counts.total;
        let cap = self.claim3_cap();
        if (self.counts.total as f64) > cap {
            return Err(fail(
                StageId::Claim3,
                format!("coloured {} vertices, budget {}", self.counts.total, cap),
            ));
        }
        Ok(())
    }

    fn claim3_cap(&self) -> f64 {
        let (k, t, c) = (self.params.k as f64, self.params.t_parts as f64, self.fam.c as f64);
        (k + 1.0).powi(2) * (2.0 * k * t * c + 4.0 * k * k * t)
    }

    fn claim4_1_cap(&self) -> f64 {
        let (k, t, m) = (self.params.k as f64, self.params.t_parts as f64, self.params.m as f64);
        54.0 * k.powi(4) * t * t * m.log2()
    }

    fn claim4_cap(&self) -> f64 {
        let (k, t, m) = (self.params.k as f64, self.params.t_parts as f64, self.params.m as f64);
        67.0 * k.powi(4) * t * t * m.log2() + self.frame.n() as f64 / (2.0 * m)
    }

    fn z_cap(&self) -> f64 {
        let (k, t) = (self.params.k as f64, self.params.t_parts as f64);
        13.0 * k.powi(4) * t
    }

    fn overall_cap(&self) -> f64 {
        self.frame.n() as f64 / self.params.m as f64
    }

    fn endpoints(&self, i: usize) -> (u32, u32) {
        let start = *self.fam.b_sets[i].chain.last().unwrap(); // sink of B_i
        let target = self.fam.a_sets[i].chain[0]; // source of A_i
        (start, target)
    }

    // --- Claim 4 first half: short i-paths by bounded BFS ----------------

    fn short_paths(&mut self) -> Result<(), StageFailure> {
        for i in 0..self.fam.kt() {
            let j = self.colour_of_index(i);
            let (start, target) = self.endpoints(i);
            match self.bounded_bfs(start, target, self.params.short_path_bound) {
                Some(path) => {
                    for &v in &path[1..path.len() - 1] {
                        self.colour(v, j);
                    }
                    self.i_paths[i] = Some(IPathRecord {
                        index: i,
                        colour: j,
                        short: true,
                        path,
                    });
                }
                None => self.long_indices.push(i),
            }
        }
        self.counts.claim4_short = self.counts.total - self.counts.claim3;
        Ok(())
    }

    /// Shortest path from `start` to `target` through uncoloured interior
    /// vertices, at most `max_edges` long; BFS in ascending-id order.
    fn bounded_bfs(&self, start: u32, target: u32, max_edges: usize) -> Option<Vec<u32>> {
        let n = self.frame.n();
        if max_edges >= 1 && self.frame.has_edge(start, target) {
            return Some(vec![start, target]);
        }
        let mut parent: Vec<Option<u32>> = vec![None; n];
        let mut frontier = vec![start];
        let mut visited = VertexSet::new(n);
        visited.insert(start);
        for _depth in 1..max_edges {
            let mut next = Vec::new();
            let mut fresh = VertexSet::new(n);
            for &u in &frontier {
                let mut cand = self.uncolored.clone();
                cand.intersect_with(&self.frame.out_neighbors(u));
                cand.subtract(&visited);
                cand.subtract(&fresh);
                for v in cand.iter() {
                    parent[v as usize] = Some(u);
                    fresh.insert(v);
                    next.push(v);
                }
            }
            visited.union_with(&fresh);
            // can any frontier vertex finish at the target?
            for &v in &next {
                if self.frame.has_edge(v, target) {
                    let mut path = vec![target, v];
                    let mut cur = v;
                    while let Some(p) = parent[cur as usize] {
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        None
    }

    // --- Claim 4.1: secure the short-path interiors -----------------------

    fn claim4_1(&mut self) -> Result<(), StageFailure> {
        let shorts: Vec<(usize, Vec<u32>)> = self
            .i_paths
            .iter()
            .flatten()
            .filter(|r| r.short)
            .map(|r| (r.index, r.path[1..r.path.len() - 1].to_vec()))
            .collect();

        let e_a = self.e_a.clone();
        let e = self.e.clone();
        let mut second_pass: Vec<u32> = Vec::new();
        for (_, interior) in &shorts {
            for &v in interior {
                let j = self.color[v as usize];
                let ins = self
                    .take_k(&self.uncolored_in_neighbors(v, Some(&e_a)))
                    .map_err(|got| {
                        fail(
                            StageId::Claim4_1,
                            format!("interior {} has {} < k fresh in-neighbours outside E_A", v, got),
                        )
                    })?;
                for &w in &ins {
                    self.colour(w, j);
                    self.ledger.set_bwd(w, SafetyCert::OutsideDe);
                }
                second_pass.push(v);
                second_pass.extend(&ins);
                self.ledger.set_bwd(v, SafetyCert::Neighbors(ins));
            }
        }
        for &v in &second_pass {
            let j = self.color[v as usize];
            let outs = self
                .take_k(&self.uncolored_out_neighbors(v, Some(&e)))
                .map_err(|got| {
                    fail(
                        StageId::Claim4_1,
                        format!("vertex {} has {} < k fresh out-neighbours outside E", v, got),
                    )
                })?;
            for &w in &outs {
                self.colour(w, j);
                self.ledger.set_fwd(w, SafetyCert::OutsideDe);
                self.ledger.set_bwd(w, SafetyCert::OutsideDe);
            }
            self.ledger.set_fwd(v, SafetyCert::Neighbors(outs));
        }

        self.counts.claim4_1 = self.counts.total - self.counts.claim3 - self.counts.claim4_short;
        let cap = self.claim4_1_cap();
        if (self.counts.total as f64) > cap {
            return Err(fail(
                StageId::Claim4_1,
                format!("coloured {} vertices, budget {}", self.counts.total, cap),
            ));
        }
        Ok(())
    }

    // --- Claim 4.2: pack spare long i-paths -------------------------------

    fn long_paths(&mut self) -> Result<(), StageFailure> {
        if self.long_indices.is_empty() {
            return Ok(());
        }
        let n = self.frame.n();
        let mut keep = self.uncolored.clone();
        for &i in &self.long_indices {
            let (s, t) = self.endpoints(i);
            keep.insert(s);
            keep.insert(t);
        }
        let (sub, map) = self
            .frame
            .induced(&keep)
            .expect("uncoloured region is nonempty");
        let mut to_sub = vec![u32::MAX; n];
        for (si, &ri) in map.iter().enumerate() {
            to_sub[ri as usize] = si as u32;
        }

        let mut pairs = Vec::new();
        for &i in &self.long_indices {
            let (s, t) = self.endpoints(i);
            for _ in 0..self.params.spare_paths {
                pairs.push((to_sub[s as usize], to_sub[t as usize]));
            }
        }
        let req = PathRequest::new(sub.n(), pairs).with_node_budget(self.params.search_budget);
        let res = find_short_path_family(&sub, &req, 2 * self.params.m).map_err(|e| {
            let orig = self.long_indices[e.pair_index / self.params.spare_paths];
            fail(
                StageId::LongPaths,
                format!(
                    "packing failed at i-path {} after {} nodes ({})",
                    orig,
                    e.nodes_explored,
                    if e.exhausted { "exhausted" } else { "budget hit" }
                ),
            )
        })?;

        for (pos, &i) in self.long_indices.iter().enumerate() {
            let mut reduced = Vec::with_capacity(self.params.spare_paths);
            for copy in 0..self.params.spare_paths {
                let sub_path = &res.paths[pos * self.params.spare_paths + copy];
                let frame_path: Vec<u32> = sub_path
                    .vertices()
                    .iter()
                    .map(|&v| map[v as usize])
                    .collect();
                let dir = DirPath::new(self.frame, frame_path).expect("packed paths are valid");
                let bt = reduce_to_backwards_transitive(self.frame, &dir);
                if bt.len() < self.params.k + 3 {
                    return Err(fail(
                        StageId::LongPaths,
                        format!(
                            "spare {} of i-path {} reduced to {} vertices, below k + 3",
                            copy,
                            i,
                            bt.len()
                        ),
                    ));
                }
                reduced.push(bt.vertices().to_vec());
            }
            self.long_families.push(LongFamilyRecord {
                index: i,
                paths: reduced,
                selected: usize::MAX,
            });
        }
        Ok(())
    }

    // --- Claim 4.3: reach sets, their helpers, and path selection ---------

    fn claim4_3(&mut self) -> Result<(), StageFailure> {
        if self.long_indices.is_empty() {
            return Ok(());
        }
        let n = self.frame.n();
        let t_parts = self.params.t_parts;
        let k = self.params.k;

        // reach structures per colour over the packed interiors
        for j in 1..=t_parts {
            let interiors: Vec<Vec<u32>> = self
                .long_families
                .iter()
                .filter(|f| self.colour_of_index(f.index) == j)
                .flat_map(|f| f.paths.iter().map(|p| p[1..p.len() - 1].to_vec()))
                .collect();
            if interiors.is_empty() {
                continue;
            }
            let mut union = VertexSet::new(n);
            for p in &interiors {
                for &v in p {
                    union.insert(v);
                }
            }
            let (sub, map) = self.frame.induced(&union).expect("interiors are nonempty");
            let mut to_sub = vec![u32::MAX; n];
            for (si, &ri) in map.iter().enumerate() {
                to_sub[ri as usize] = si as u32;
            }
            let sub_paths: Vec<BtPath> = interiors
                .iter()
                .map(|p| {
                    let verts: Vec<u32> = p.iter().map(|&v| to_sub[v as usize]).collect();
                    BtPath::new(&sub, verts).expect("interiors inherit the pattern")
                })
                .collect();
            let rs_sub = reach_sets(&sub, &sub_paths, k)
                .map_err(|e| fail(StageId::Claim4_3, format!("reach extraction: {}", e)))?;
            let audit = audit_reach_sets(&sub, &sub_paths, k, &rs_sub)
                .map_err(|e| fail(StageId::Claim4_3, format!("reach audit budget: {}", e)))?;
            if !audit.passed() {
                let first = audit.failures().next().unwrap();
                return Err(fail(
                    StageId::Claim4_3,
                    format!("reach audit failed: {} {:?}", first.name, first.witness),
                ));
            }
            let lift = |s: &VertexSet| {
                VertexSet::from_iter(n, s.iter().map(|v| map[v as usize]))
            };
            let rs = ReachSets {
                k,
                ell: rs_sub.ell,
                u: lift(&rs_sub.u),
                w: lift(&rs_sub.w),
                u_prime: lift(&rs_sub.u_prime),
                w_prime: lift(&rs_sub.w_prime),
            };
            self.reach_records[j] = Some(ReachRecord {
                colour: j,
                sets: rs.clone(),
                interiors,
            });
            self.reach[j] = Some((rs, union));
        }

        // colour every reach support set before any helper is drawn
        for j in 1..=t_parts {
            if let Some((rs, _)) = self.reach[j].clone() {
                let support = rs.u_prime.union(&rs.w_prime);
                for v in support.iter() {
                    self.colour(v, j);
                }
            }
        }

        // secure the cores: in-helpers for W_j, then out-helpers for U_j and
        // for the in-helpers just drawn
        let e_a = self.e_a.clone();
        let e = self.e.clone();
        let mut out_targets: Vec<(usize, u32)> = Vec::new();
        for j in 1..=t_parts {
            let Some((rs, _)) = self.reach[j].clone() else {
                continue;
            };
            for w in rs.w.iter() {
                let ins = self
                    .take_k(&self.uncolored_in_neighbors(w, Some(&e_a)))
                    .map_err(|got| {
                        fail(
                            StageId::Claim4_3,
                            format!("reach core {} has {} < k fresh in-neighbours outside E_A", w, got),
                        )
                    })?;
                for &h in &ins {
                    self.colour(h, j);
                    self.ledger.set_bwd(h, SafetyCert::OutsideDe);
                    self.z.insert(h);
                    out_targets.push((j, h));
                }
                self.ledger.set_bwd(w, SafetyCert::Neighbors(ins));
            }
            for u in rs.u.iter() {
                out_targets.push((j, u));
            }
        }
        for (j, v) in out_targets {
            let outs = self
                .take_k(&self.uncolored_out_neighbors(v, Some(&e)))
                .map_err(|got| {
                    fail(
                        StageId::Claim4_3,
                        format!("vertex {} has {} < k fresh out-neighbours outside E", v, got),
                    )
                })?;
            for &h in &outs {
                self.colour(h, j);
                self.ledger.set_fwd(h, SafetyCert::OutsideDe);
                self.ledger.set_bwd(h, SafetyCert::OutsideDe);
                self.z.insert(h);
            }
            self.ledger.set_fwd(v, SafetyCert::Neighbors(outs));
        }
        self.ledger.z_helpers = self.z.to_vec();
        if (self.z.len() as f64) >= self.z_cap() {
            return Err(fail(
                StageId::Claim4_3,
                format!("|Z| = {} reached the cap {}", self.z.len(), self.z_cap()),
            ));
        }

        // select one Z-free spare per long index and colour the leftovers
        for fi in 0..self.long_families.len() {
            let i = self.long_families[fi].index;
            let j = self.colour_of_index(i);
            let selected = self.long_families[fi]
                .paths
                .iter()
                .position(|p| p.iter().all(|&v| !self.z.contains(v)));
            let Some(sel) = selected else {
                return Err(fail(
                    StageId::Claim4_3,
                    format!("every spare of i-path {} meets a helper vertex", i),
                ));
            };
            self.long_families[fi].selected = sel;
            let path = self.long_families[fi].paths[sel].clone();
            self.i_paths[i] = Some(IPathRecord {
                index: i,
                colour: j,
                short: false,
                path,
            });
            let family_paths = self.long_families[fi].paths.clone();
            for p in family_paths {
                for &v in &p[1..p.len() - 1] {
                    if self.color[v as usize] == 0 {
                        self.colour(v, j);
                    }
                }
            }
        }

        // reach certificates for covered vertices that still lack one
        for j in 1..=t_parts {
            let Some((_, covered)) = self.reach[j].clone() else {
                continue;
            };
            for v in covered.iter() {
                if self.color[v as usize] != j {
                    continue; // a helper of another colour landed here
                }
                if self.ledger.fwd[v as usize].is_none() {
                    self.ledger.set_fwd(v, SafetyCert::Reach { colour: j });
                }
                if self.ledger.bwd[v as usize].is_none() {
                    self.ledger.set_bwd(v, SafetyCert::Reach { colour: j });
                }
            }
        }

        self.counts.claim4_3 =
            self.counts.total - self.counts.claim3 - self.counts.claim4_short - self.counts.claim4_1;
        let cap = self.claim4_cap();
        if (self.counts.total as f64) > cap {
            return Err(fail(
                StageId::Claim4_3,
                format!("coloured {} vertices, claim-4 budget {}", self.counts.total, cap),
            ));
        }
        Ok(())
    }

    // --- Claim 5: absorb the uncoloured exceptional vertices --------------

    fn exception_counts(&self, v: u32) -> (Vec<usize>, Vec<usize>) {
        let t_parts = self.params.t_parts;
        let mut alpha = vec![0usize; t_parts + 1];
        let mut beta = vec![0usize; t_parts + 1];
        for i in 0..self.fam.kt() {
            let j = self.colour_of_index(i);
            if self.fam.a_sets[i].exceptional.contains(v) {
                alpha[j] += 1;
            }
            if self.fam.b_sets[i].exceptional.contains(v) {
                beta[j] += 1;
            }
        }
        (alpha, beta)
    }

    /// Safe same-colour in-neighbours of v drawn from the dominating sets of
    /// colour j: all of B_i when `v ∈ E_{B_i}`, a dominating member of A_i
    /// when `v ∉ E_{A_i}`.
    fn dom_in_neighbors(&self, v: u32, j: usize) -> Vec<u32> {
        let mut out = Vec::new();
        for i in self.fam.block(j - 1) {
            if self.fam.b_sets[i].exceptional.contains(v) {
                out.extend(&self.fam.b_sets[i].chain);
            }
            if !self.fam.a_sets[i].exceptional.contains(v) {
                if let Some(&a) = self.fam.a_sets[i]
                    .chain
                    .iter()
                    .find(|&&a| self.frame.has_edge(a, v))
                {
                    out.push(a);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Mirror: safe same-colour out-neighbours from the dominating sets.
    fn dom_out_neighbors(&self, v: u32, j: usize) -> Vec<u32> {
        let mut out = Vec::new();
        for i in self.fam.block(j - 1) {
            if self.fam.a_sets[i].exceptional.contains(v) {
                out.extend(&self.fam.a_sets[i].chain);
            }
            if !self.fam.b_sets[i].exceptional.contains(v) {
                if let Some(&b) = self.fam.b_sets[i]
                    .chain
                    .iter()
                    .find(|&&b| self.frame.has_edge(v, b))
                {
                    out.push(b);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn claim5(&mut self) -> Result<(), StageFailure> {
        let k = self.params.k;
        let t_parts = self.params.t_parts;
        let pending: Vec<u32> = self.e.intersection(&self.uncolored).to_vec();
        let case_of = |alpha: &[usize], beta: &[usize]| -> usize {
            let some_le = (1..=t_parts).any(|j| alpha[j] <= beta[j]);
            let some_ge = (1..=t_parts).any(|j| alpha[j] >= beta[j]);
            if some_le && some_ge {
                1
            } else if some_le {
                2 // all alpha < beta
            } else {
                3 // all alpha > beta
            }
        };

        let e = self.e.clone();
        let e_a = self.e_a.clone();
        for pass in 1..=3usize {
            for &v in &pending {
                if self.color[v as usize] != 0 {
                    continue;
                }
                let (alpha, beta) = self.exception_counts(v);
                if case_of(&alpha, &beta) != pass {
                    continue;
                }
                match pass {
                    1 => {
                        let j1 = (1..=t_parts).find(|&j| alpha[j] <= beta[j]).unwrap();
                        let j2 = (1..=t_parts).find(|&j| alpha[j] >= beta[j]).unwrap();
                        if let Ok(outs) = self.take_k(&self.uncolored_out_neighbors(v, Some(&e))) {
                            // case 1.1
                            for &h in &outs {
                                self.colour(h, j1);
                                self.ledger.set_fwd(h, SafetyCert::OutsideDe);
                                self.ledger.set_bwd(h, SafetyCert::OutsideDe);
                            }
                            self.colour(v, j1);
                            self.ledger.set_fwd(v, SafetyCert::Neighbors(outs));
                            let ins = self.dom_in_neighbors(v, j1);
                            debug_assert!(ins.len() >= k, "counting argument supplies k in-neighbours");
                            self.ledger.set_bwd(v, SafetyCert::Neighbors(ins));
                            self.counts.claim5_cases[0] += 1;
                        } else if let Ok(ins) = self.take_k(&self.uncolored_in_neighbors(v, Some(&e))) {
                            // case 1.2
                            for &h in &ins {
                                self.colour(h, j2);
                                self.ledger.set_fwd(h, SafetyCert::OutsideDe);
                                self.ledger.set_bwd(h, SafetyCert::OutsideDe);
                            }
                            self.colour(v, j2);
                            self.ledger.set_bwd(v, SafetyCert::Neighbors(ins));
                            let outs = self.dom_out_neighbors(v, j2);
                            debug_assert!(outs.len() >= k);
                            self.ledger.set_fwd(v, SafetyCert::Neighbors(outs));
                            self.counts.claim5_cases[1] += 1;
                        } else {
                            return Err(fail(
                                StageId::Claim5,
                                format!("case 1 vertex {} lacks k fresh neighbours outside E", v),
                            ));
                        }
                    }
                    2 => {
                        if let Ok(outs) = self.take_k(&self.uncolored_out_neighbors(v, Some(&e))) {
                            // case 2.1: colour 1
                            for &h in &outs {
                                self.colour(h, 1);
                                self.ledger.set_fwd(h, SafetyCert::OutsideDe);
                                self.ledger.set_bwd(h, SafetyCert::OutsideDe);
                            }
                            self.colour(v, 1);
                            self.ledger.set_fwd(v, SafetyCert::Neighbors(outs));
                            let ins = self.dom_in_neighbors(v, 1);
                            debug_assert!(ins.len() >= k);
                            self.ledger.set_bwd(v, SafetyCert::Neighbors(ins));
                            self.counts.claim5_cases[2] += 1;
                        } else {
                            // case 2.2: k coloured out-neighbours of one colour
                            let out_nbrs = self.frame.out_neighbors(v);
                            let choice = (1..=t_parts).find_map(|j| {
                                let mine: Vec<u32> = out_nbrs
                                    .iter()
                                    .filter(|&w| self.color[w as usize] == j)
                                    .take(k)
                                    .collect();
                                (mine.len() >= k).then_some((j, mine))
                            });
                            let Some((j, mine)) = choice else {
                                return Err(fail(
                                    StageId::Claim5,
                                    format!("case 2.2 vertex {} has no colour with k out-neighbours", v),
                                ));
                            };
                            self.colour(v, j);
                            self.ledger.set_fwd(v, SafetyCert::Neighbors(mine));
                            let ins = self.dom_in_neighbors(v, j);
                            debug_assert!(ins.len() >= k);
                            self.ledger.set_bwd(v, SafetyCert::Neighbors(ins));
                            self.counts.claim5_cases[3] += 1;
                        }
                    }
                    _ => {
                        if let Ok(ins) = self.take_k(&self.uncolored_in_neighbors(v, Some(&e_a))) {
                            // case 3.1: colour 1; fresh in-helpers outside E_A
                            // cannot lie in E_B, else they were coloured in
                            // passes 1-2
                            if let Some(&bad) = ins.iter().find(|&&h| self.e_b.contains(h)) {
                                return Err(fail(
                                    StageId::Claim5,
                                    format!("case 3.1 helper {} unexpectedly lies in E_B", bad),
                                ));
                            }
                            for &h in &ins {
                                self.colour(h, 1);
                                self.ledger.set_fwd(h, SafetyCert::OutsideDe);
                                self.ledger.set_bwd(h, SafetyCert::OutsideDe);
                            }
                            self.colour(v, 1);
                            self.ledger.set_bwd(v, SafetyCert::Neighbors(ins));
                            let outs = self.dom_out_neighbors(v, 1);
                            debug_assert!(outs.len() >= k);
                            self.ledger.set_fwd(v, SafetyCert::Neighbors(outs));
                            self.counts.claim5_cases[4] += 1;
                        } else {
                            // case 3.2
                            let in_nbrs = self.frame.in_neighbors(v);
                            let choice = (1..=t_parts).find_map(|j| {
                                let mine: Vec<u32> = in_nbrs
                                    .iter()
                                    .filter(|&w| self.color[w as usize] == j)
                                    .take(k)
                                    .collect();
                                (mine.len() >= k).then_some((j, mine))
                            });
                            let Some((j, mine)) = choice else {
                                return Err(fail(
                                    StageId::Claim5,
                                    format!("case 3.2 vertex {} has no colour with k in-neighbours", v),
                                ));
                            };
                            self.colour(v, j);
                            self.ledger.set_bwd(v, SafetyCert::Neighbors(mine));
                            let outs = self.dom_out_neighbors(v, j);
                            debug_assert!(outs.len() >= k);
                            self.ledger.set_fwd(v, SafetyCert::Neighbors(outs));
                            self.counts.claim5_cases[5] += 1;
                        }
                    }
                }
            }
        }
        debug_assert!(self.e.intersection(&self.uncolored).is_empty());

        self.counts.claim5 = self.counts.total
            - self.counts.claim3
            - self.counts.claim4_short
            - self.counts.claim4_1
            - self.counts.claim4_3;
        let cap = self.overall_cap();
        if (self.counts.total as f64) > cap {
            return Err(fail(
                StageId::Claim5,
                format!("coloured {} vertices in total, budget n/m = {}", self.counts.total, cap),
            ));
        }
        Ok(())
    }
}

/// Runs the full pipeline and returns a self-validated certificate; any
/// stage that lacks room fails with its name and a witness.
pub fn partition_robust(
    t: &Tournament,
    params: &PipelineParams,
) -> Result<PartitionCertificate, StageFailure> {
    params.validate();
    let n = t.n();

    if let Mode::Strict { assume_connectivity } = params.mode {
        let need = strict_threshold(params.k, params.t_parts, params.m);
        if !assume_connectivity {
            // a tournament on n vertices is at most (n-1)/2-connected, so
            // any buildable input falls short of the threshold
            let max_possible = (n.saturating_sub(1) / 2) as f64;
            if max_possible < need {
                return Err(fail(
                    StageId::Gate,
                    format!(
                        "strict mode requires strong {:.3e}-connectivity, impossible at n = {}; \
                         pass the assumption explicitly to proceed",
                        need, n
                    ),
                ));
            }
            if !crate::connectivity::is_strongly_k_connected(t, need.ceil() as usize) {
                return Err(fail(
                    StageId::Gate,
                    format!("tournament is not strongly {:.3e}-connected", need),
                ));
            }
        }
    }

    let fam = build_domination_family(t, params.k, params.t_parts, params.m)
        .map_err(|e| fail(StageId::Seeds, e.to_string()))?;
    let frame_owned;
    let frame: &Tournament = if fam.swapped {
        frame_owned = t.reverse();
        &frame_owned
    } else {
        t
    };

    let fam_audit = crate::verify::audit_domination_family(frame, &fam);
    if !fam_audit.passed() {
        let first = fam_audit.failures().next().unwrap();
        return Err(fail(
            StageId::Domination,
            format!("family audit failed: {} ({:?})", first.name, first.witness),
        ));
    }

    let mut st = State::new(frame, params, &fam);
    st.claim3()?;
    st.short_paths()?;
    st.claim4_1()?;
    st.long_paths()?;
    st.claim4_3()?;
    st.claim5()?;

    // ledger validation: every coloured vertex safe by certificate
    let ctx = LedgerContext {
        k: params.k,
        color: &st.color,
        d: &st.d,
        e_a: &st.e_a,
        e_b: &st.e_b,
        reach: &st.reach,
        has_edge: &|u, v| frame.has_edge(u, v),
    };
    validate_ledger(&ctx, &st.ledger)
        .map_err(|e| fail(StageId::Claim5, format!("ledger validation: {}", e)))?;

    // class assembly and the structural containment check
    let mut classes = vec![Vec::new(); params.t_parts];
    for v in 0..n as u32 {
        let c = st.color[v as usize];
        if c != 0 {
            classes[c - 1].push(v);
        }
    }
    for i in 0..fam.kt() {
        let j = i / params.k;
        let class: &[u32] = &classes[j];
        let in_class = |v: u32| class.binary_search(&v).is_ok();
        let members = fam.a_sets[i].chain.iter().chain(&fam.b_sets[i].chain);
        for &v in members {
            assert!(in_class(v), "dominating set member {} escaped class {}", v, j + 1);
        }
        let rec = st.i_paths[i].as_ref().expect("every index routed");
        for &v in &rec.path {
            assert!(in_class(v), "i-path vertex {} escaped class {}", v, j + 1);
        }
    }
    for class in &classes {
        assert!(
            (class.len() as f64) <= n as f64 / params.m as f64,
            "class size exceeds n/m despite the budget gate"
        );
    }

    let budgets = BudgetLedger {
        claim3_cap: st.claim3_cap(),
        claim4_1_cap: st.claim4_1_cap(),
        claim4_cap: st.claim4_cap(),
        z_cap: st.z_cap(),
        overall_cap: st.overall_cap(),
    };
    let mut notes = vec![
        "long-path packing searches directly with interior budget |T'|/(2m) instead of \
         selecting the smallest of many spare families"
            .to_string(),
    ];
    if fam.swapped {
        notes.push("pipeline ran on the reversed tournament to normalise |E_A| <= |E_B|".to_string());
    }

    let State {
        i_paths,
        long_families,
        reach_records,
        ledger,
        counts,
        ..
    } = st;

    Ok(PartitionCertificate {
        n,
        k: params.k,
        t_parts: params.t_parts,
        m: params.m,
        mode: params.mode,
        seed: params.seed,
        swapped: fam.swapped,
        c: fam.c,
        classes,
        family: fam,
        i_paths: i_paths.into_iter().map(Option::unwrap).collect(),
        long_families,
        reach: reach_records,
        ledger,
        counts,
        budgets,
        notes,
    })
}

/// Assignment rule for the vertices the partition leaves outside every class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompletionRule {
    AllToFirst,
    RoundRobin,
    SizeBalance,
}

/// Distributes the leftover vertices into the classes; with a valid
/// certificate every completed class stays strongly k-connected because each
/// class absorbs a subset of the untouched complement.
pub fn complete_partition(
    cert: &PartitionCertificate,
    rule: CompletionRule,
) -> Vec<Vec<u32>> {
    let mut classes = cert.classes.clone();
    let mut member = vec![false; cert.n];
    for class in &classes {
        for &v in class {
            member[v as usize] = true;
        }
    }
    let leftovers: Vec<u32> = (0..cert.n as u32).filter(|&v| !member[v as usize]).collect();
    match rule {
        CompletionRule::AllToFirst => classes[0].extend(leftovers),
        CompletionRule::RoundRobin => {
            for (i, v) in leftovers.into_iter().enumerate() {
                classes[i % cert.t_parts].push(v);
            }
        }
        CompletionRule::SizeBalance => {
            for v in leftovers {
                let smallest = (0..cert.t_parts).min_by_key(|&j| (classes[j].len(), j)).unwrap();
                classes[smallest].push(v);
            }
        }
    }
    for class in &mut classes {
        class.sort_unstable();
    }
    classes
}
