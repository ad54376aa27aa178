//! Exhaustive search for locating colorings of small graphs.
//!
//! Vertices are colored in breadth-first order with three prunings that are
//! valid on partial assignments: properness, canonical color order (a new
//! color may only be the next unused one), and the colorful-vertex rule (two
//! colorful vertices of the same color can never coexist in a locating
//! coloring). Color codes are only compared on complete assignments, since
//! distances to a color class can still shrink while the class grows.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::graph::Graph;

/// Hard limit from the 64-bit vertex masks used by the search.
pub const MAX_SEARCH_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_vertices: usize,
    pub max_colors: u32,
    /// Search nodes (single vertex assignments) before giving up.
    pub node_limit: Option<u64>,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            max_vertices: 24,
            max_colors: MAX_SEARCH_VERTICES as u32,
            node_limit: None,
        }
    }
}

impl SolveBudget {
    pub fn with_max_vertices(max_vertices: usize) -> Self {
        SolveBudget {
            max_vertices,
            ..SolveBudget::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub symmetry_breaking: bool,
    pub colorful_pruning: bool,
    /// Worker threads; 1 searches sequentially.
    pub jobs: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            symmetry_breaking: true,
            colorful_pruning: true,
            jobs: 1,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {vertices} vertices, budget allows {max}")]
    TooManyVertices { vertices: usize, max: usize },
    #[error("{k} colors requested, budget allows {max}")]
    TooManyColors { k: u32, max: u32 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("node limit exceeded after {nodes} search nodes")]
    BudgetExceeded { nodes: u64 },
}

/// Least `k` with a locating `k`-coloring, plus a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiResult {
    pub value: u32,
    pub witness: Coloring,
    pub lower_bound: u32,
    pub nodes: u64,
}

/// Exhaustive decision: a locating `k`-coloring of `g`, or `None` if there
/// is none. Exceeding the budget is an error, never `None`.
pub fn exists_locating_k_coloring(
    g: &Graph,
    k: u32,
    budget: &SolveBudget,
) -> Result<Option<Coloring>, SolveError> {
    Solver::new(g, budget)?.solve(k)
}

pub fn locating_chromatic_number(g: &Graph, budget: &SolveBudget) -> Result<ChiResult, SolveError> {
    Solver::new(g, budget)?.chromatic_number()
}

/// Reusable search context for one graph.
#[derive(Debug)]
pub struct Solver {
    n: usize,
    budget: SolveBudget,
    options: SolveOptions,
    order: Vec<usize>,
    nbr: Vec<u64>,
    closed: Vec<u64>,
    /// `closes_at[t]`: vertices whose closed neighborhood is fully colored
    /// once position `t` of the order is assigned.
    closes_at: Vec<Vec<usize>>,
    /// `balls[v][d]`: vertices within distance `d` of `v`.
    balls: Vec<Vec<u64>>,
    lower_bound: u32,
    nodes: u64,
}

impl Solver {
    pub fn new(g: &Graph, budget: &SolveBudget) -> Result<Self, SolveError> {
        let n = g.vertex_count();
        let max = budget.max_vertices.min(MAX_SEARCH_VERTICES);
        if n > max {
            return Err(SolveError::TooManyVertices { vertices: n, max });
        }
        let dm = g.distances().map_err(|_| SolveError::Disconnected)?;
        let nbr: Vec<u64> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let closed: Vec<u64> = (0..n).map(|v| nbr[v] | 1 << v).collect();

        let order = if n == 0 {
            Vec::new()
        } else {
            let d0 = dm.row(0);
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&v| (d0[v], v));
            order
        };
        let mut pos = vec![0; n];
        for (t, &v) in order.iter().enumerate() {
            pos[v] = t;
        }
        let mut closes_at = vec![Vec::new(); n];
        for w in 0..n {
            let last = std::iter::once(w)
                .chain(g.neighbors(w).iter().copied())
                .map(|x| pos[x])
                .max()
                .unwrap();
            closes_at[last].push(w);
        }
        let balls = (0..n)
            .map(|v| {
                let row = dm.row(v);
                let ecc = row.iter().copied().max().unwrap_or(0) as usize;
                let mut layers = vec![0u64; ecc + 1];
                for (w, &d) in row.iter().enumerate() {
                    layers[d as usize] |= 1 << w;
                }
                for d in 1..layers.len() {
                    layers[d] |= layers[d - 1];
                }
                layers
            })
            .collect();
        let lower_bound = lower_bound(g);
        Ok(Solver {
            n,
            budget: *budget,
            options: SolveOptions::default(),
            order,
            nbr,
            closed,
            closes_at,
            balls,
            lower_bound,
            nodes: 0,
        })
    }

    pub fn with_options(mut self, options: SolveOptions) -> Self {
        self.options = options;
        self
    }

    /// Nodes visited by the most recent call.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn lower_bound(&self) -> u32 {
        self.lower_bound
    }

    pub fn solve(&mut self, k: u32) -> Result<Option<Coloring>, SolveError> {
        if k > self.budget.max_colors {
            return Err(SolveError::TooManyColors {
                k,
                max: self.budget.max_colors,
            });
        }
        self.nodes = 0;
        if self.n == 0 || k == 0 || k as usize > self.n {
            return Ok(None);
        }
        let shared = Shared {
            nodes: AtomicU64::new(0),
            abort: AtomicBool::new(false),
            limit: self.budget.node_limit,
        };
        let result = if self.options.jobs <= 1 {
            let mut search = Search::new(self, k, &shared);
            search.run(0).map(|ok| ok.then(|| search.coloring()))
        } else {
            self.solve_parallel(k, &shared)
        };
        self.nodes = shared.nodes.load(Ordering::Relaxed);
        match result {
            Err(Exceeded) => Err(SolveError::BudgetExceeded { nodes: self.nodes }),
            Ok(found) => Ok(found),
        }
    }

    fn solve_parallel(&self, k: u32, shared: &Shared) -> Result<Option<Coloring>, Exceeded> {
        let target = self.options.jobs * 8;
        let mut prefixes = vec![Vec::new()];
        let mut depth = 0;
        while depth < self.n && prefixes.len() < target {
            let mut next = Vec::new();
            for prefix in &prefixes {
                let mut search = Search::new(self, k, shared);
                search.replay(prefix);
                for color in search.candidates() {
                    if search.try_assign(depth, color) {
                        let mut p = prefix.clone();
                        p.push(color);
                        next.push(p);
                        search.unassign(depth);
                    }
                }
            }
            prefixes = next;
            depth += 1;
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.options.jobs)
            .build()
            .expect("thread pool");
        let outcome = pool.install(|| {
            prefixes
                .par_iter()
                .map(|prefix| {
                    let mut search = Search::new(self, k, shared);
                    search.replay(prefix);
                    match search.run(prefix.len()) {
                        Ok(true) => Some(Ok(search.coloring())),
                        Ok(false) => None,
                        Err(e) => Some(Err(e)),
                    }
                })
                .find_map_first(|r| r)
        });
        outcome.transpose()
    }

    pub fn chromatic_number(&mut self) -> Result<ChiResult, SolveError> {
        let mut total = 0;
        for k in self.lower_bound..=self.n as u32 {
            let found = self.solve(k);
            total += self.nodes;
            if let Some(witness) = found? {
                self.nodes = total;
                return Ok(ChiResult {
                    value: k,
                    witness,
                    lower_bound: self.lower_bound,
                    nodes: total,
                });
            }
        }
        unreachable!("n distinct colors always locate")
    }
}

#[derive(Debug)]
struct Exceeded;

struct Shared {
    nodes: AtomicU64,
    abort: AtomicBool,
    limit: Option<u64>,
}

struct Search<'a> {
    s: &'a Solver,
    shared: &'a Shared,
    k: u32,
    color: Vec<Color>,
    class: Vec<u64>,
    class_size: Vec<usize>,
    used: u32,
    nonempty: u32,
    colorful: u64,
    /// Colors whose colorful bit was set at each depth, for undo.
    colorful_set_at: Vec<u64>,
    pending: u64,
}

const FLUSH_EVERY: u64 = 1 << 12;

impl<'a> Search<'a> {
    fn new(s: &'a Solver, k: u32, shared: &'a Shared) -> Self {
        Search {
            s,
            shared,
            k,
            color: vec![0; s.n],
            class: vec![0; k as usize + 1],
            class_size: vec![0; k as usize + 1],
            used: 0,
            nonempty: 0,
            colorful: 0,
            colorful_set_at: vec![0; s.n],
            pending: 0,
        }
    }

    fn coloring(&self) -> Coloring {
        Coloring::new(self.color.clone()).expect("complete search assignment uses every color")
    }

    fn replay(&mut self, prefix: &[Color]) {
        for (t, &c) in prefix.iter().enumerate() {
            let ok = self.try_assign(t, c);
            debug_assert!(ok);
        }
    }

    fn candidates(&self) -> std::ops::RangeInclusive<Color> {
        let top = if self.s.options.symmetry_breaking {
            (self.used + 1).min(self.k)
        } else {
            self.k
        };
        1..=top
    }

    /// Assigns `c` to the vertex at position `t`; false (and nothing
    /// changed) if a partial-assignment pruning rule rejects it.
    fn try_assign(&mut self, t: usize, c: Color) -> bool {
        let v = self.s.order[t];
        if self.s.nbr[v] & self.class[c as usize] != 0 {
            return false;
        }
        self.color[v] = c;
        self.class[c as usize] |= 1 << v;
        self.class_size[c as usize] += 1;
        if self.class_size[c as usize] == 1 {
            self.nonempty += 1;
        }
        let prev_used = self.used;
        self.used = self.used.max(c);
        self.colorful_set_at[t] = 0;
        if self.s.options.colorful_pruning {
            for &w in &self.s.closes_at[t] {
                let seen = (1..=self.k as usize)
                    .filter(|&col| self.class[col] & self.s.closed[w] != 0)
                    .count();
                if seen == self.k as usize {
                    let bit = 1u64 << (self.color[w] - 1);
                    if (self.colorful | self.colorful_set_at[t]) & bit != 0 {
                        self.colorful_set_at[t] = 0;
                        self.used = prev_used;
                        self.remove(v, c);
                        return false;
                    }
                    self.colorful_set_at[t] |= bit;
                }
            }
            self.colorful |= self.colorful_set_at[t];
        }
        true
    }

    fn remove(&mut self, v: usize, c: Color) {
        self.color[v] = 0;
        self.class[c as usize] &= !(1 << v);
        self.class_size[c as usize] -= 1;
        if self.class_size[c as usize] == 0 {
            self.nonempty -= 1;
        }
    }

    fn unassign(&mut self, t: usize) {
        let v = self.s.order[t];
        let c = self.color[v];
        self.colorful &= !self.colorful_set_at[t];
        self.colorful_set_at[t] = 0;
        self.remove(v, c);
        self.used = self.color.iter().copied().max().unwrap_or(0);
    }

    fn count_node(&mut self) -> Result<(), Exceeded> {
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            return self.flush();
        }
        if let Some(limit) = self.shared.limit {
            if self.shared.nodes.load(Ordering::Relaxed) + self.pending > limit {
                self.flush()?;
                self.shared.abort.store(true, Ordering::Relaxed);
                return Err(Exceeded);
            }
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<(), Exceeded> {
        let total = self.shared.nodes.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if self.shared.limit.is_some_and(|limit| total > limit) {
            self.shared.abort.store(true, Ordering::Relaxed);
        }
        if self.shared.abort.load(Ordering::Relaxed) {
            return Err(Exceeded);
        }
        Ok(())
    }

    /// Depth-first search from position `t`.
    fn run(&mut self, t: usize) -> Result<bool, Exceeded> {
        let result = self.dfs(t);
        let flushed = self.flush();
        match result {
            Ok(true) => Ok(true),
            Ok(false) => flushed.map(|_| false),
            Err(e) => Err(e),
        }
    }

    fn dfs(&mut self, t: usize) -> Result<bool, Exceeded> {
        if t == self.s.n {
            return Ok(self.nonempty == self.k && self.is_locating());
        }
        if (self.k - self.nonempty) as usize > self.s.n - t {
            return Ok(false);
        }
        let v = self.s.order[t];
        for c in self.candidates() {
            if self.s.nbr[v] & self.class[c as usize] != 0 {
                continue;
            }
            self.count_node()?;
            let prev_used = self.used;
            if !self.try_assign(t, c) {
                continue;
            }
            if self.dfs(t + 1)? {
                return Ok(true);
            }
            self.colorful &= !self.colorful_set_at[t];
            self.colorful_set_at[t] = 0;
            self.remove(v, c);
            self.used = prev_used;
        }
        Ok(false)
    }

    /// Codes compared within each color class, using the distance balls.
    fn is_locating(&self) -> bool {
        let k = self.k as usize;
        let mut codes: Vec<Vec<u8>> = Vec::new();
        for c in 1..=k {
            codes.clear();
            let mut members = self.class[c];
            while members != 0 {
                let v = members.trailing_zeros() as usize;
                members &= members - 1;
                let balls = &self.s.balls[v];
                let code: Vec<u8> = (1..=k)
                    .map(|other| {
                        balls
                            .iter()
                            .position(|&ball| ball & self.class[other] != 0)
                            .unwrap() as u8
                    })
                    .collect();
                if codes.contains(&code) {
                    return false;
                }
                codes.push(code);
            }
        }
        true
    }
}

/// `max(clique number, clique-pair bound)`, and at least 2 on two or more
/// vertices.
pub fn lower_bound(g: &Graph) -> u32 {
    let n = g.vertex_count() as u32;
    let cliques = maximal_cliques(g);
    let omega = cliques.iter().map(|c| c.count()).max().unwrap_or(0) as u32;
    let base = if n >= 2 { 2 } else { n };
    base.max(omega).max(pair_bound(&cliques))
}

/// `k + 1` for the largest `k` such that `g` has two vertex-disjoint
/// `k`-cliques; 1 when no such pair exists.
pub fn clique_pair_lower_bound(g: &Graph) -> u32 {
    pair_bound(&maximal_cliques(g))
}

/// Order of a largest clique.
pub fn clique_number(g: &Graph) -> u32 {
    maximal_cliques(g)
        .iter()
        .map(|c| c.count())
        .max()
        .unwrap_or(0) as u32
}

/// Disjoint `k`-subsets of maximal cliques `A` and `B` exist iff
/// `|A|, |B| >= k` and `|A ∪ B| >= 2k`.
fn pair_bound(cliques: &[BitSet]) -> u32 {
    let mut best = 0;
    for (i, a) in cliques.iter().enumerate() {
        for b in &cliques[i..] {
            let k = a.count().min(b.count()).min(a.union_count(b) / 2);
            best = best.max(k);
        }
    }
    best as u32 + 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn empty(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut s = BitSet::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn union_count(&self, other: &BitSet) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * 64 + b
                })
            })
        })
    }
}

/// Bron-Kerbosch with pivoting.
fn maximal_cliques(g: &Graph) -> Vec<BitSet> {
    let n = g.vertex_count();
    let adj: Vec<BitSet> = (0..n)
        .map(|v| {
            let mut s = BitSet::empty(n);
            for &w in g.neighbors(v) {
                s.insert(w);
            }
            s
        })
        .collect();
    let mut out = Vec::new();
    if n > 0 {
        bron_kerbosch(
            &adj,
            BitSet::empty(n),
            BitSet::full(n),
            BitSet::empty(n),
            &mut out,
        );
    }
    out
}

fn bron_kerbosch(adj: &[BitSet], r: BitSet, mut p: BitSet, mut x: BitSet, out: &mut Vec<BitSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| p.and(&adj[u]).count())
        .unwrap();
    let candidates: Vec<usize> = p.iter().filter(|&v| !adj[pivot].contains(v)).collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.insert(v);
        bron_kerbosch(adj, r2, p.and(&adj[v]), x.and(&adj[v]), out);
        p.remove(v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_locating;
    use crate::graph::{build_family, Family, GraphSpec};

    fn graph(spec: &str) -> Graph {
        spec.parse::<GraphSpec>().unwrap().build().unwrap()
    }

    fn chi(spec: &str) -> u32 {
        let g = graph(spec);
        let r = locating_chromatic_number(&g, &SolveBudget::default()).unwrap();
        assert!(is_locating(&g, &r.witness).unwrap().is_yes());
        assert_eq!(r.witness.num_colors(), r.value);
        r.value
    }

    #[test]
    fn small_families() {
        assert_eq!(chi("P1"), 1);
        assert_eq!(chi("P2"), 2);
        for n in 3..=8 {
            assert_eq!(chi(&format!("P{n}")), 3, "P{n}");
            assert_eq!(
                chi(&format!("C{n}")),
                if n % 2 == 1 { 3 } else { 4 },
                "C{n}"
            );
        }
        for n in 2..=6 {
            assert_eq!(chi(&format!("K{n}")), n as u32);
        }
    }

    #[test]
    fn decision_examples() {
        let b = SolveBudget::default();
        assert!(exists_locating_k_coloring(&graph("K3xK3"), 4, &b)
            .unwrap()
            .is_none());
        assert!(exists_locating_k_coloring(&graph("C7"), 3, &b)
            .unwrap()
            .is_some());
        assert!(exists_locating_k_coloring(&graph("K3xP5"), 4, &b)
            .unwrap()
            .is_none());
    }

    #[test]
    fn product_values() {
        assert_eq!(chi("K3xP2"), 4);
        assert_eq!(chi("P2xP3"), 4);
        assert_eq!(chi("K3xK3"), 5);
    }

    #[test]
    fn clique_pair_bounds() {
        assert_eq!(clique_pair_lower_bound(&graph("P5")), 3);
        assert_eq!(clique_pair_lower_bound(&graph("K4xP3")), 5);
        assert_eq!(clique_pair_lower_bound(&graph("K3xK5")), 6);
        assert_eq!(clique_pair_lower_bound(&graph("K5xK3")), 6);
        assert_eq!(clique_pair_lower_bound(&graph("P1")), 1);
        assert_eq!(clique_pair_lower_bound(&graph("K2")), 2);
        assert_eq!(clique_number(&graph("K4xK6")), 6);
        assert_eq!(clique_number(&graph("C5")), 2);
        // larger than the search limit is fine for the bound
        assert_eq!(clique_pair_lower_bound(&graph("K9xK12")), 13);
    }

    #[test]
    fn budget_outcomes() {
        let g = graph("K4xP5");
        assert_eq!(
            exists_locating_k_coloring(&g, 5, &SolveBudget::with_max_vertices(10)),
            Err(SolveError::TooManyVertices {
                vertices: 20,
                max: 10
            })
        );
        let tight = SolveBudget {
            node_limit: Some(50),
            ..SolveBudget::default()
        };
        assert!(matches!(
            exists_locating_k_coloring(&graph("K3xP5"), 4, &tight),
            Err(SolveError::BudgetExceeded { .. })
        ));
        let disc = Graph::from_edges("two-k2", 4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            exists_locating_k_coloring(&disc, 2, &SolveBudget::default()),
            Err(SolveError::Disconnected)
        );
    }

    #[test]
    fn trivial_k() {
        let b = SolveBudget::default();
        let k3 = build_family(Family::Complete, 3).unwrap();
        assert_eq!(exists_locating_k_coloring(&k3, 0, &b).unwrap(), None);
        assert_eq!(exists_locating_k_coloring(&k3, 4, &b).unwrap(), None);
        assert!(exists_locating_k_coloring(&k3, 3, &b).unwrap().is_some());
    }

    #[test]
    fn sequential_witness_is_first_canonical() {
        let g = graph("P4");
        let w = exists_locating_k_coloring(&g, 3, &SolveBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.as_slice(), &[1, 2, 1, 3]);
    }

    #[test]
    fn parallel_agrees_with_sequential() {
        let b = SolveBudget::default();
        for spec in ["K3xK3", "K3xP4", "C6", "P3xP3", "K2xC5"] {
            let g = graph(spec);
            for k in 3..=6 {
                let seq = Solver::new(&g, &b).unwrap().solve(k).unwrap();
                let par = Solver::new(&g, &b)
                    .unwrap()
                    .with_options(SolveOptions {
                        jobs: 4,
                        ..SolveOptions::default()
                    })
                    .solve(k)
                    .unwrap();
                assert_eq!(seq.is_some(), par.is_some(), "{spec} k={k}");
                if let Some(c) = par {
                    assert!(is_locating(&g, &c).unwrap().is_yes());
                }
            }
        }
    }
}
