//! Simple undirected graphs, the path/cycle/complete families, Cartesian
//! products and hop distances.
//!
//! Product graphs carry a [`GridShape`]: vertex `(i, j)` (1-based row and
//! column) is stored at index `(i - 1) * cols + (j - 1)`, so a coloring of a
//! product is the same thing as a row-major `rows x cols` matrix.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("{family}{size}: size out of range (need at least {min})")]
    SizeOutOfRange {
        family: Family,
        size: usize,
        min: usize,
    },
    #[error("graph is disconnected (vertex {unreachable} not reachable from vertex 0)")]
    Disconnected { unreachable: usize },
    #[error("invalid graph spec {spec:?}: {reason}; expected P<n>, C<n>, K<n> or <spec>x<spec>, e.g. K4xP6")]
    BadSpec { spec: String, reason: String },
    #[error("edge list line {line}: {reason}")]
    BadEdgeList { line: usize, reason: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// The three graph families of the graph-spec grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Path,
    Cycle,
    Complete,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::Path => 'P',
            Family::Cycle => 'C',
            Family::Complete => 'K',
        }
    }

    fn min_size(self) -> usize {
        match self {
            Family::Cycle => 3,
            Family::Path | Family::Complete => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Row/column dimensions of a product graph `G □ H` with `rows = |V(G)|`
/// and `cols = |V(H)|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridShape {
    pub rows: usize,
    pub cols: usize,
}

impl GridShape {
    /// 0-based vertex index of the 1-based cell `(row, col)`.
    pub fn vertex(&self, row: usize, col: usize) -> usize {
        debug_assert!(row >= 1 && row <= self.rows && col >= 1 && col <= self.cols);
        (row - 1) * self.cols + (col - 1)
    }

    /// 1-based `(row, col)` of a vertex.
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.cols + 1, v % self.cols + 1)
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    name: String,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    grid: Option<GridShape>,
    distances: OnceLock<DistanceMatrix>,
}

impl Graph {
    /// Builds a graph from an edge list on `vertex_count` vertices.
    /// Duplicate edges are merged; self-loops are rejected.
    pub fn from_edges(
        name: impl Into<String>,
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            assert!(
                u < vertex_count && v < vertex_count,
                "edge ({u}, {v}) out of range"
            );
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency(name.into(), adj, None))
    }

    fn from_adjacency(name: String, mut adj: Vec<Vec<usize>>, grid: Option<GridShape>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            name,
            adj,
            edge_count,
            grid,
            distances: OnceLock::new(),
        }
    }

    /// Reads a whitespace-separated edge list: one `u v` pair of 0-based
    /// vertex ids per line, `#` starts a comment. An optional leading
    /// `vertices <count>` line allows isolated trailing ids.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: &str| GraphError::BadEdgeList {
                line: idx + 1,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(bad("expected exactly two fields"));
            }
            if fields[0] == "vertices" {
                declared = Some(
                    fields[1]
                        .parse::<usize>()
                        .map_err(|_| bad("bad vertex count"))?,
                );
                continue;
            }
            let u = fields[0]
                .parse::<usize>()
                .map_err(|_| bad("bad vertex id"))?;
            let v = fields[1]
                .parse::<usize>()
                .map_err(|_| bad("bad vertex id"))?;
            edges.push((u, v));
        }
        let max_id = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let count = declared.unwrap_or(max_id).max(max_id);
        if count == 0 {
            return Err(GraphError::BadEdgeList {
                line: 0,
                reason: "no vertices".into(),
            });
        }
        Self::from_edges("edge-list", count, edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Present for product graphs only.
    pub fn grid(&self) -> Option<GridShape> {
        self.grid
    }

    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    fn first_unreachable(&self) -> Option<usize> {
        if self.adj.is_empty() {
            return None;
        }
        let dist = bfs(&self.adj, std::iter::once(0));
        dist.iter().position(|&d| d == UNREACHED)
    }

    /// All-pairs hop distances, computed on first use and cached.
    pub fn distances(&self) -> Result<&DistanceMatrix, GraphError> {
        if let Some(dm) = self.distances.get() {
            return Ok(dm);
        }
        let dm = all_pairs_distances(self)?;
        Ok(self.distances.get_or_init(|| dm))
    }
}

pub(crate) const UNREACHED: u32 = u32::MAX;

/// Multi-source breadth-first search; unreachable vertices get [`UNREACHED`].
pub(crate) fn bfs(adj: &[Vec<usize>], sources: impl IntoIterator<Item = usize>) -> Vec<u32> {
    let mut dist = vec![UNREACHED; adj.len()];
    let mut queue = VecDeque::new();
    for s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in &adj[u] {
            if dist[w] == UNREACHED {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

impl Graph {
    /// Distances from a set of sources (`d(v, S)` for every `v`).
    pub fn distances_to_set(&self, sources: impl IntoIterator<Item = usize>) -> Vec<u32> {
        bfs(&self.adj, sources)
    }
}

/// Builds `P_n`, `C_n` or `K_n` with vertices `0..n`.
pub fn build_family(family: Family, n: usize) -> Result<Graph, GraphError> {
    if n < family.min_size() {
        return Err(GraphError::SizeOutOfRange {
            family,
            size: n,
            min: family.min_size(),
        });
    }
    let edges: Vec<(usize, usize)> = match family {
        Family::Path => (1..n).map(|v| (v - 1, v)).collect(),
        Family::Cycle => (0..n).map(|v| (v, (v + 1) % n)).collect(),
        Family::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
    };
    Graph::from_edges(format!("{family}{n}"), n, edges)
}

/// `g □ h`; `g` indexes rows and `h` indexes columns.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let rows = g.vertex_count();
    let cols = h.vertex_count();
    let shape = GridShape { rows, cols };
    let mut adj = vec![Vec::with_capacity(0); rows * cols];
    for a in 0..rows {
        for b in 0..cols {
            let v = a * cols + b;
            let list = &mut adj[v];
            list.reserve(g.degree(a) + h.degree(b));
            list.extend(h.neighbors(b).iter().map(|&b2| a * cols + b2));
            list.extend(g.neighbors(a).iter().map(|&a2| a2 * cols + b));
        }
    }
    let name = format!("{}x{}", g.name(), h.name());
    Graph::from_adjacency(name, adj, Some(shape))
}

/// Dense hop-distance matrix of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}

/// Repeated breadth-first search from every vertex.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix, GraphError> {
    let n = g.vertex_count();
    let mut dist = Vec::with_capacity(n * n);
    for s in 0..n {
        let row = bfs(&g.adj, std::iter::once(s));
        if let Some(unreachable) = row.iter().position(|&d| d == UNREACHED) {
            return Err(GraphError::Disconnected { unreachable });
        }
        dist.extend(row);
    }
    Ok(DistanceMatrix { n, dist })
}

/// Parsed graph-spec expression: a family member or a product of two specs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Family(Family, usize),
    Product(Box<GraphSpec>, Box<GraphSpec>),
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph, GraphError> {
        match self {
            GraphSpec::Family(family, n) => build_family(*family, *n),
            GraphSpec::Product(g, h) => Ok(cartesian_product(&g.build()?, &h.build()?)),
        }
    }

    /// `(rows, cols)` family factors when this is a product of two families.
    pub fn factors(&self) -> Option<((Family, usize), (Family, usize))> {
        match self {
            GraphSpec::Product(g, h) => match (g.as_ref(), h.as_ref()) {
                (GraphSpec::Family(fg, m), GraphSpec::Family(fh, n)) => {
                    Some(((*fg, *m), (*fh, *n)))
                }
                _ => None,
            },
            GraphSpec::Family(..) => None,
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Family(family, n) => write!(f, "{family}{n}"),
            GraphSpec::Product(g, h) => write!(f, "{g}x{h}"),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = GraphError;

    /// Grammar: `P<n> | C<n> | K<n> | <spec>x<spec>`, case-insensitive, no
    /// whitespace. Products associate to the left.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| GraphError::BadSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let mut spec: Option<GraphSpec> = None;
        for term in s.split(['x', 'X']) {
            let mut chars = term.chars();
            let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('P') => Family::Path,
                Some('C') => Family::Cycle,
                Some('K') => Family::Complete,
                Some(c) => return Err(bad(&format!("unknown family {c:?}"))),
                None => return Err(bad("empty factor")),
            };
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(&format!("factor {term:?} needs a decimal size")));
            }
            let n: usize = digits.parse().map_err(|_| bad("size too large"))?;
            if n < family.min_size() {
                return Err(bad(&format!(
                    "{family}{n} is below the minimum size {}",
                    family.min_size()
                )));
            }
            let leaf = GraphSpec::Family(family, n);
            spec = Some(match spec {
                None => leaf,
                Some(prev) => GraphSpec::Product(Box::new(prev), Box::new(leaf)),
            });
        }
        Ok(spec.expect("split yields at least one term"))
    }
}
