//! Bipartite perfect matching by augmenting paths.

/// Bipartite graph with `left` and `right` vertex sets indexed from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            right,
            adj: vec![Vec::new(); left],
        }
    }

    /// Edge `(l, r)` present iff `edge(l, r)`.
    pub fn from_fn(left: usize, right: usize, edge: impl Fn(usize, usize) -> bool) -> Self {
        BipartiteGraph {
            right,
            adj: (0..left)
                .map(|l| (0..right).filter(|&r| edge(l, r)).collect())
                .collect(),
        }
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        assert!(r < self.right, "right vertex {r} out of range");
        if !self.adj[l].contains(&r) {
            self.adj[l].push(r);
            self.adj[l].sort_unstable();
        }
    }

    pub fn left_len(&self) -> usize {
        self.adj.len()
    }

    pub fn right_len(&self) -> usize {
        self.right
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.adj[l].binary_search(&r).is_ok()
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    pub fn min_degree(&self) -> usize {
        let left = self.adj.iter().map(Vec::len);
        let mut right_deg = vec![0usize; self.right];
        for list in &self.adj {
            for &r in list {
                right_deg[r] += 1;
            }
        }
        left.chain(right_deg).min().unwrap_or(0)
    }
}

/// A left-to-right bijection if the graph has a perfect matching.
///
/// Left vertices are processed in index order and neighbors in increasing
/// order, so the result is deterministic.
pub fn perfect_matching(bg: &BipartiteGraph) -> Option<Vec<usize>> {
    if bg.left_len() != bg.right_len() {
        return None;
    }
    let matching = maximum_matching(bg);
    matching
        .iter()
        .all(Option::is_some)
        .then(|| matching.into_iter().flatten().collect())
}

/// Maximum matching as `left -> Option<right>`.
pub fn maximum_matching(bg: &BipartiteGraph) -> Vec<Option<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; bg.right_len()];
    let mut visited = vec![usize::MAX; bg.right_len()];
    for l in 0..bg.left_len() {
        augment(bg, l, l, &mut owner, &mut visited);
    }
    let mut result = vec![None; bg.left_len()];
    for (r, l) in owner.iter().enumerate() {
        if let Some(l) = *l {
            result[l] = Some(r);
        }
    }
    result
}

fn augment(
    bg: &BipartiteGraph,
    l: usize,
    stamp: usize,
    owner: &mut [Option<usize>],
    visited: &mut [usize],
) -> bool {
    // a free neighbor first, so uncontested vertices keep their smallest choice
    if let Some(&r) = bg.neighbors(l).iter().find(|&&r| owner[r].is_none()) {
        owner[r] = Some(l);
        return true;
    }
    for &r in bg.neighbors(l) {
        if visited[r] == stamp {
            continue;
        }
        visited[r] = stamp;
        if owner[r].is_none_or(|other| augment(bg, other, stamp, owner, visited)) {
            owner[r] = Some(l);
            return true;
        }
    }
    false
}
