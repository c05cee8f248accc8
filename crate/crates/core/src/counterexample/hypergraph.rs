use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;

use super::bits::{check_n, BitString};
use super::CounterexampleError;

/// A hypergraph on bitstrings whose edges are ordered: edge `i` is
/// `edges[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedHypergraph {
    n: usize,
    vertices: Vec<BitString>,
    edges: Vec<Vec<BitString>>,
}

impl IndexedHypergraph {
    /// Builds a hypergraph; vertex and edge lists are sorted on entry.
    pub fn new(n: usize, mut vertices: Vec<BitString>, edges: Vec<Vec<BitString>>) -> Self {
        vertices.sort();
        vertices.dedup();
        let edges = edges
            .into_iter()
            .map(|mut e| {
                e.sort();
                e.dedup();
                e
            })
            .collect();
        IndexedHypergraph { n, vertices, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[BitString] {
        &self.vertices
    }

    /// Edge `i`, 1-based.
    pub fn edge(&self, i: usize) -> &[BitString] {
        &self.edges[i - 1]
    }

    pub fn edges(&self) -> &[Vec<BitString>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, i: usize, v: BitString) -> bool {
        self.edge(i).binary_search(&v).is_ok()
    }

    /// Membership pattern of `v`: digit `i` is 1 iff `v` lies in edge `i`.
    pub fn pattern(&self, v: BitString) -> BitString {
        let mut k = BitString::new(self.edges.len(), 0);
        for i in 1..=self.edges.len() {
            if self.contains(i, v) {
                k = k.with_digit(i, 1);
            }
        }
        k
    }

    /// `a(k)`: the number of vertices in the Venn region selected by `k`.
    pub fn region_count(&self, k: BitString) -> usize {
        self.vertices
            .iter()
            .filter(|&&v| self.pattern(v) == k)
            .count()
    }

    /// `a(k)` for every `k`, indexed by `k.value()`.
    pub fn region_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; 1 << self.edges.len()];
        for &v in &self.vertices {
            counts[self.pattern(v).value() as usize] += 1;
        }
        counts
    }

    pub fn isolated(&self) -> Vec<BitString> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| self.pattern(v).value() == 0)
            .collect()
    }

    pub fn without_isolated(&self) -> Self {
        let vertices = self
            .vertices
            .iter()
            .copied()
            .filter(|&v| self.pattern(v).value() != 0)
            .collect();
        IndexedHypergraph {
            n: self.n,
            vertices,
            edges: self.edges.clone(),
        }
    }

    /// Edge lists in the form `g1 = {0011, 0101, 1001, 1111}`.
    pub fn to_text(&self, name: &str) -> String {
        let mut out = String::new();
        for (i, e) in self.edges.iter().enumerate() {
            writeln!(out, "{name}{} = {{{}}}", i + 1, e.iter().join(", ")).unwrap();
        }
        out
    }
}

/// `G` on the even strings and `H` on the odd strings, with `g_i` and `h_i`
/// the members whose digit `i` is 1. The isolated all-zeros vertex stays in
/// `G`.
pub fn build_hypergraphs(
    n: usize,
) -> Result<(IndexedHypergraph, IndexedHypergraph), CounterexampleError> {
    check_n(n)?;
    let side = |even: bool| {
        let vertices: Vec<BitString> = BitString::all(n).filter(|k| k.is_even() == even).collect();
        let edges = (1..=n)
            .map(|i| {
                vertices
                    .iter()
                    .copied()
                    .filter(|k| k.digit(i) == 1)
                    .collect()
            })
            .collect();
        IndexedHypergraph::new(n, vertices, edges)
    };
    Ok((side(true), side(false)))
}

pub type VertexMap = BTreeMap<BitString, BitString>;

/// Checks that `map` is a bijection `V(G) -> V(H)` with `v in g_j <=> map(v)
/// in h_j` for every `j != skip`.
pub fn preserves_edges_except(
    g: &IndexedHypergraph,
    h: &IndexedHypergraph,
    skip: usize,
    map: &VertexMap,
) -> bool {
    if map.len() != g.vertices().len() || g.vertices().len() != h.vertices().len() {
        return false;
    }
    let mut image: Vec<BitString> = map.values().copied().collect();
    image.sort();
    if image != h.vertices() || !g.vertices().iter().eq(map.keys()) {
        return false;
    }
    (1..=g.edge_count()).filter(|&j| j != skip).all(|j| {
        map.iter()
            .all(|(&v, &w)| g.contains(j, v) == h.contains(j, w))
    })
}

/// The digit-`i` flip from `G - g_i` to `H - h_i`, verified to preserve every
/// other edge.
pub fn edge_deleted_isomorphism(n: usize, i: usize) -> Result<VertexMap, CounterexampleError> {
    check_n(n)?;
    if !(1..=n).contains(&i) {
        return Err(CounterexampleError::BadIndex { index: i, n });
    }
    let (g, h) = build_hypergraphs(n)?;
    let map: VertexMap = g.vertices().iter().map(|&k| (k, k.flip(i))).collect();
    assert!(
        preserves_edges_except(&g, &h, i, &map),
        "digit flip must preserve edges"
    );
    Ok(map)
}

/// Every edge-order-preserving bijection `G - g_i -> H - h_i`, by trying all
/// bijections. Only sensible for `n <= 4`.
pub fn all_edge_deleted_isomorphisms(
    g: &IndexedHypergraph,
    h: &IndexedHypergraph,
    i: usize,
) -> Vec<VertexMap> {
    let gv = g.vertices();
    h.vertices()
        .iter()
        .copied()
        .permutations(h.vertices().len())
        .map(|image| gv.iter().copied().zip(image).collect::<VertexMap>())
        .filter(|map| preserves_edges_except(g, h, i, map))
        .collect()
}
