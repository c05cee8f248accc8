use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

use super::EnumError;

/// Node budget for automorphism searches.
pub const AUTOMORPHISM_BUDGET: u64 = 100_000_000;

/// Largest order accepted by [`graph_classes`].
pub const MAX_CLASS_ORDER: usize = 7;

/// A simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
}

impl SimpleGraph {
    /// Rejects loops, repeated edges and out-of-range endpoints.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, EnumError> {
        let mut list = Vec::new();
        let mut adj = vec![vec![false; n]; n];
        for (a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(EnumError::BadGraph(format!(
                    "edge ({a}, {b}) on {n} vertices"
                )));
            }
            let (a, b) = (a.min(b), a.max(b));
            if adj[a][b] {
                return Err(EnumError::BadGraph(format!("repeated edge ({a}, {b})")));
            }
            adj[a][b] = true;
            adj[b][a] = true;
            list.push((a, b));
        }
        list.sort_unstable();
        Ok(SimpleGraph {
            n,
            edges: list,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph::new(n, []).expect("empty graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        SimpleGraph::new(n, (0..n).tuple_combinations()).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is valid")
    }

    pub fn star(leaves: usize) -> Self {
        SimpleGraph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is valid")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&x| x).count()
    }

    pub fn isolated_vertices(&self) -> usize {
        (0..self.n).filter(|&v| self.degree(v) == 0).count()
    }

    /// Edges whose endpoints both have degree 1.
    pub fn isolated_edges(&self) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| self.degree(a) == 1 && self.degree(b) == 1)
            .count()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for root in 0..self.n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let su = side[u].expect("coloured");
                for w in (0..self.n).filter(|&w| self.adj[u][w]) {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            stack.push(w);
                        }
                        Some(sw) if sw == su => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for w in (0..self.n).filter(|&w| self.adj[u][w]) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Vertices are the edges of `self` in sorted order, adjacent when they
    /// share an endpoint.
    pub fn line_graph(&self) -> SimpleGraph {
        let e = &self.edges;
        let pairs = (0..e.len()).tuple_combinations().filter(|&(i, j)| {
            e[i].0 == e[j].0 || e[i].0 == e[j].1 || e[i].1 == e[j].0 || e[i].1 == e[j].1
        });
        SimpleGraph::new(e.len(), pairs).expect("line graph is simple")
    }

    /// The graph with vertices renamed by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        SimpleGraph::new(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
            .expect("permutation")
    }

    /// Bitmask of the upper-triangle adjacency, pairs in lexicographic order.
    pub fn mask(&self) -> u64 {
        let mut mask = 0u64;
        for (k, (a, b)) in (0..self.n).tuple_combinations().enumerate() {
            if self.adj[a][b] {
                mask |= 1 << k;
            }
        }
        mask
    }

    pub fn from_mask(n: usize, mask: u64) -> SimpleGraph {
        let edges = (0..n)
            .tuple_combinations()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, e)| e);
        SimpleGraph::new(n, edges).expect("mask graph is simple")
    }
}

/// Calls `f` on every automorphism, found by backtracking over images of
/// `0, 1, ..` with degree and adjacency pruning.
fn for_each_automorphism(g: &SimpleGraph, mut f: impl FnMut(&[usize])) -> Result<(), EnumError> {
    let n = g.order();
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut nodes = 0u64;
    fn go(
        g: &SimpleGraph,
        degree: &[usize],
        v: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut u64,
        f: &mut dyn FnMut(&[usize]),
    ) -> Result<(), EnumError> {
        *nodes += 1;
        if *nodes > AUTOMORPHISM_BUDGET {
            return Err(EnumError::ResourceLimit {
                nodes: AUTOMORPHISM_BUDGET,
            });
        }
        if v == g.order() {
            f(image);
            return Ok(());
        }
        for w in 0..g.order() {
            if used[w] || degree[w] != degree[v] {
                continue;
            }
            if (0..v).any(|u| g.adjacent(u, v) != g.adjacent(image[u], w)) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            go(g, degree, v + 1, image, used, nodes, f)?;
            used[w] = false;
        }
        image[v] = usize::MAX;
        Ok(())
    }
    go(g, &degree, 0, &mut image, &mut used, &mut nodes, &mut f)
}

/// `|aut G|`.
pub fn automorphism_count(g: &SimpleGraph) -> Result<u64, EnumError> {
    let mut count = 0u64;
    for_each_automorphism(g, |_| count += 1)?;
    Ok(count)
}

/// Number of distinct permutations of the edge set induced by `aut G`.
pub fn edge_automorphism_count(g: &SimpleGraph) -> Result<u64, EnumError> {
    let index = |e: (usize, usize)| {
        g.edges()
            .binary_search(&(e.0.min(e.1), e.0.max(e.1)))
            .expect("edge")
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for_each_automorphism(g, |perm| {
        seen.insert(
            g.edges()
                .iter()
                .map(|&(a, b)| index((perm[a], perm[b])))
                .collect(),
        );
    })?;
    Ok(seen.len() as u64)
}

/// `|aut L(G)|`, which can exceed [`edge_automorphism_count`] (for example
/// on the triangle with a pendant edge).
pub fn line_graph_automorphism_count(g: &SimpleGraph) -> Result<u64, EnumError> {
    automorphism_count(&g.line_graph())
}

/// One representative per isomorphism class of graphs on `n` vertices, in
/// increasing order of the smallest adjacency mask in the class.
pub fn graph_classes(n: usize) -> Result<Vec<SimpleGraph>, EnumError> {
    if n > MAX_CLASS_ORDER {
        return Err(EnumError::BadArgs(format!(
            "graph classes only up to {MAX_CLASS_ORDER} vertices"
        )));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut classes = Vec::new();
    for mask in 0..1u64 << pairs {
        if seen.contains(&mask) {
            continue;
        }
        let g = SimpleGraph::from_mask(n, mask);
        for p in &perms {
            seen.insert(g.permuted(p).mask());
        }
        classes.push(g);
    }
    Ok(classes)
}
