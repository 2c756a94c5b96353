//! The tournament type: a bit-packed orientation of a complete graph.
//!
//! Orientations are stored once in an upper-triangular bit array (the
//! canonical form used by the text format) and mirrored into per-vertex
//! out-neighbour rows so that neighbourhood scans, reachability and degree
//! counts run word-parallel.

use crate::vset::VertexSet;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("pair {{{0}, {1}}} has no assigned direction")]
    MissingPair(u32, u32),
    #[error("pair {{{0}, {1}}} assigned more than once")]
    DuplicatePair(u32, u32),
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("vertex {0} out of range for n = {1}")]
    OutOfRange(u32, usize),
    #[error("paley modulus {0} is not a prime congruent to 3 mod 4")]
    BadModulus(u64),
    #[error("induced subtournament on an empty set")]
    EmptySet,
}

/// An orientation of the complete graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tournament {
    n: usize,
    /// Upper-triangular pair bits; bit for `{i, j}` with `i < j` is 1 iff `i -> j`.
    bits: Vec<u64>,
    row_words: usize,
    /// Out-neighbour bitmask rows, `row_words` words per vertex.
    out_rows: Vec<u64>,
}

#[inline]
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl Tournament {
    /// Builds from a direction closure: `forward(i, j)` (with `i < j`) answers
    /// whether the edge runs `i -> j`.
    pub fn from_orientation(n: usize, mut forward: impl FnMut(u32, u32) -> bool) -> Tournament {
        let npairs = n * n.saturating_sub(1) / 2;
        let mut bits = vec![0u64; npairs.div_ceil(64)];
        for i in 0..n {
            for j in (i + 1)..n {
                if forward(i as u32, j as u32) {
                    let idx = pair_index(n, i, j);
                    bits[idx / 64] |= 1u64 << (idx % 64);
                }
            }
        }
        Tournament::from_bits(n, bits)
    }

    fn from_bits(n: usize, bits: Vec<u64>) -> Tournament {
        let row_words = n.div_ceil(64).max(1);
        let mut t = Tournament {
            n,
            bits,
            row_words,
            out_rows: vec![0u64; n * row_words],
        };
        for i in 0..n {
            for j in (i + 1)..n {
                let idx = pair_index(n, i, j);
                let fwd = t.bits[idx / 64] >> (idx % 64) & 1 == 1;
                let (from, to) = if fwd { (i, j) } else { (j, i) };
                t.out_rows[from * t.row_words + to / 64] |= 1u64 << (to % 64);
            }
        }
        t
    }

    /// Builds from an explicit directed pair list; every unordered pair must
    /// appear exactly once.
    pub fn build(n: usize, pairs: &[(u32, u32)]) -> Result<Tournament, BuildError> {
        let mut dir = vec![0u8; n * n]; // 0 unset, 1 forward, 2 backward (keyed by i<j)
        for &(u, v) in pairs {
            if u as usize >= n {
                return Err(BuildError::OutOfRange(u, n));
            }
            if v as usize >= n {
                return Err(BuildError::OutOfRange(v, n));
            }
            if u == v {
                return Err(BuildError::SelfLoop(u));
            }
            let (i, j, fwd) = if u < v { (u, v, 1u8) } else { (v, u, 2u8) };
            let slot = &mut dir[i as usize * n + j as usize];
            if *slot != 0 {
                return Err(BuildError::DuplicatePair(i, j));
            }
            *slot = fwd;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if dir[i * n + j] == 0 {
                    return Err(BuildError::MissingPair(i as u32, j as u32));
                }
            }
        }
        Ok(Tournament::from_orientation(n, |i, j| {
            dir[i as usize * n + j as usize] == 1
        }))
    }

    /// Seeded uniform random orientation; identical `(n, seed)` give
    /// bit-identical tournaments.
    pub fn random(n: usize, seed: u64) -> Tournament {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Tournament::from_orientation(n, |_, _| rng.next_u32() & 1 == 1)
    }

    /// The transitive tournament: `i -> j` whenever `i < j`.
    pub fn transitive(n: usize) -> Tournament {
        Tournament::from_orientation(n, |_, _| true)
    }

    /// Quadratic-residue tournament on a prime `q = 3 (mod 4)`:
    /// `i -> j` iff `j - i` is a nonzero square mod `q`.
    pub fn paley(q: u64) -> Result<Tournament, BuildError> {
        if q < 3 || q % 4 != 3 || !is_prime(q) {
            return Err(BuildError::BadModulus(q));
        }
        let mut residue = vec![false; q as usize];
        for x in 1..q {
            residue[((x * x) % q) as usize] = true;
        }
        Ok(Tournament::from_orientation(q as usize, |i, j| {
            residue[((j - i) as u64 % q) as usize]
        }))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        debug_assert!(u != v);
        let (u, v) = (u as usize, v as usize);
        self.out_rows[u * self.row_words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Out-neighbour bitmask row of `u`.
    #[inline]
    pub fn out_row(&self, u: u32) -> &[u64] {
        let u = u as usize;
        &self.out_rows[u * self.row_words..(u + 1) * self.row_words]
    }

    pub fn out_neighbors(&self, u: u32) -> VertexSet {
        let mut s = VertexSet::new(self.n);
        s.words_mut().copy_from_slice(self.out_row(u));
        s
    }

    pub fn in_neighbors(&self, u: u32) -> VertexSet {
        let mut s = VertexSet::full(self.n);
        s.remove(u);
        for (w, o) in s.words_mut().iter_mut().zip(self.out_row(u)) {
            *w &= !o;
        }
        s
    }

    #[inline]
    pub fn out_degree(&self, u: u32) -> usize {
        self.out_row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn in_degree(&self, u: u32) -> usize {
        self.n - 1 - self.out_degree(u)
    }

    pub fn out_degree_in(&self, u: u32, mask: &VertexSet) -> usize {
        self.out_row(u)
            .iter()
            .zip(mask.words())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn in_degree_in(&self, u: u32, mask: &VertexSet) -> usize {
        let shared = mask.len() - if mask.contains(u) { 1 } else { 0 };
        shared - self.out_degree_in(u, mask)
    }

    /// Minimum semidegree: the smaller of minimum in-degree and minimum
    /// out-degree over all vertices.
    pub fn min_semidegree(&self) -> usize {
        (0..self.n as u32)
            .map(|v| self.out_degree(v).min(self.in_degree(v)))
            .min()
            .unwrap_or(0)
    }

    /// The tournament with every edge direction flipped.
    pub fn reverse(&self) -> Tournament {
        let n = self.n;
        let npairs = n * n.saturating_sub(1) / 2;
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        let tail = npairs % 64;
        if tail != 0 {
            if let Some(last) = bits.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        Tournament::from_bits(n, bits)
    }

    /// The subtournament induced on `s`, plus the map from its dense ids back
    /// to the host tournament's ids.
    pub fn induced(&self, s: &VertexSet) -> Result<(Tournament, Vec<u32>), BuildError> {
        if s.is_empty() {
            return Err(BuildError::EmptySet);
        }
        let map = s.to_vec();
        let t = Tournament::from_orientation(map.len(), |a, b| {
            self.has_edge(map[a as usize], map[b as usize])
        });
        Ok((t, map))
    }

    /// All vertices reachable from `start` by directed paths inside `alive`
    /// (`start` must be alive; the result contains it).
    pub fn forward_reach(&self, alive: &VertexSet, start: u32) -> VertexSet {
        debug_assert!(alive.contains(start));
        let mut reach = VertexSet::new(self.n);
        reach.insert(start);
        let mut stack = vec![start];
        let mut fresh = VertexSet::new(self.n);
        while let Some(u) = stack.pop() {
            fresh.clear();
            for ((f, &row), (&a, &r)) in fresh
                .words_mut()
                .iter_mut()
                .zip(self.out_row(u))
                .zip(alive.words().iter().zip(reach.words()))
            {
                *f = row & a & !r;
            }
            for v in fresh.iter() {
                stack.push(v);
            }
            reach.union_with(&fresh);
        }
        reach
    }

    /// All vertices that reach `start` by directed paths inside `alive`.
    pub fn backward_reach(&self, alive: &VertexSet, start: u32) -> VertexSet {
        debug_assert!(alive.contains(start));
        let mut reach = VertexSet::new(self.n);
        reach.insert(start);
        let mut stack = vec![start];
        let mut fresh = VertexSet::new(self.n);
        while let Some(u) = stack.pop() {
            fresh.clear();
            // in-neighbours of u are exactly the non-out non-self vertices
            for ((f, &row), (&a, &r)) in fresh
                .words_mut()
                .iter_mut()
                .zip(self.out_row(u))
                .zip(alive.words().iter().zip(reach.words()))
            {
                *f = !row & a & !r;
            }
            fresh.remove(u);
            for v in fresh.iter() {
                stack.push(v);
            }
            reach.union_with(&fresh);
        }
        reach
    }

    /// BFS distances towards `target` inside `alive`: `dist[v]` is the least
    /// number of edges on a directed `v -> target` path whose vertices all lie
    /// in `alive`; `u32::MAX` when unreachable. Vertices outside `alive` get
    /// `u32::MAX` (except a reachable `target` itself is always 0).
    pub fn distances_to(&self, alive: &VertexSet, target: u32) -> Vec<u32> {
        let n = self.n;
        let mut dist = vec![u32::MAX; n];
        if !alive.contains(target) {
            return dist;
        }
        dist[target as usize] = 0;
        let mut visited = VertexSet::new(n);
        visited.insert(target);
        let mut frontier = vec![target];
        let mut fresh = VertexSet::new(n);
        let mut d = 0u32;
        while !frontier.is_empty() {
            d += 1;
            fresh.clear();
            for &v in &frontier {
                // in-neighbours of v are the non-out, non-self vertices
                for ((f, &row), (&a, &vis)) in fresh
                    .words_mut()
                    .iter_mut()
                    .zip(self.out_row(v))
                    .zip(alive.words().iter().zip(visited.words()))
                {
                    *f |= !row & a & !vis;
                }
            }
            frontier.clear();
            for v in fresh.iter() {
                dist[v as usize] = d;
                frontier.push(v);
            }
            visited.union_with(&fresh);
        }
        dist
    }

    /// Whether the subtournament induced on `alive` is strongly connected.
    /// Empty and singleton sets count as strongly connected.
    pub fn strongly_connected_within(&self, alive: &VertexSet) -> bool {
        let Some(start) = alive.first() else {
            return true;
        };
        if alive.len() == 1 {
            return true;
        }
        self.forward_reach(alive, start) == *alive && self.backward_reach(alive, start) == *alive
    }
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tournament(n={})", self.n)
    }
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A directed path: distinct vertices with every consecutive pair an edge of
/// the host tournament in forward direction.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DirPath {
    verts: Vec<u32>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("empty vertex sequence")]
    Empty,
    #[error("repeated vertex {0}")]
    Repeated(u32),
    #[error("missing edge {0} -> {1}")]
    MissingEdge(u32, u32),
}

impl DirPath {
    pub fn new(t: &Tournament, verts: Vec<u32>) -> Result<DirPath, PathError> {
        if verts.is_empty() {
            return Err(PathError::Empty);
        }
        let mut seen = VertexSet::new(t.n());
        for &v in &verts {
            if seen.contains(v) {
                return Err(PathError::Repeated(v));
            }
            seen.insert(v);
        }
        for w in verts.windows(2) {
            if !t.has_edge(w[0], w[1]) {
                return Err(PathError::MissingEdge(w[0], w[1]));
            }
        }
        Ok(DirPath { verts })
    }

    /// Wraps a sequence the caller has already validated.
    pub(crate) fn from_vec_unchecked(verts: Vec<u32>) -> DirPath {
        DirPath { verts }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts
    }

    pub fn start(&self) -> u32 {
        self.verts[0]
    }

    pub fn end(&self) -> u32 {
        *self.verts.last().unwrap()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.verts.len() <= 1
    }

    pub fn interior(&self) -> &[u32] {
        if self.verts.len() <= 2 {
            &[]
        } else {
            &self.verts[1..self.verts.len() - 1]
        }
    }
}
