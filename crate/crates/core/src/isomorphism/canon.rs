//! Canonical labelling of pedigrees.
//!
//! Colour refinement seeded with (extant label, out-degree, in-degree, depth)
//! followed by individualization-refinement over the whole search tree. The
//! canonical labelling is the leaf with the smallest arc certificate. Leaves
//! with equal certificates yield automorphisms, which prune siblings in the
//! same orbit of the pointwise stabiliser of the current prefix; refinement
//! and pruning never decide isomorphism on their own.

use std::fmt;

use super::IsoError;
use crate::pedigree::Pedigree;

/// Tag prefixed to every code; bump when the encoding or the search changes.
pub const CODE_FORMAT: &[u8; 4] = b"PCC\x01";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimit {
    pub max_nodes: u64,
}

impl SearchLimit {
    pub const DEFAULT_NODES: u64 = 10_000_000;

    pub fn nodes(max_nodes: u64) -> Self {
        SearchLimit { max_nodes }
    }
}

impl Default for SearchLimit {
    fn default() -> Self {
        SearchLimit {
            max_nodes: Self::DEFAULT_NODES,
        }
    }
}

/// Byte string identifying a pedigree up to label-fixing isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Parses a hex code, rejecting codes from another format version.
    pub fn from_hex(s: &str) -> Option<CanonicalCode> {
        if !s.len().is_multiple_of(2) {
            return None;
        }
        let bytes = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()?;
        bytes
            .starts_with(CODE_FORMAT)
            .then_some(CanonicalCode(bytes))
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hex = self.to_hex();
        if hex.len() > 48 {
            write!(f, "CanonicalCode({}..)", &hex[..48])
        } else {
            write!(f, "CanonicalCode({hex})")
        }
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    /// Canonical position of each vertex, indexed like `Pedigree::vertices()`.
    pub position: Vec<u32>,
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// Automorphisms discovered during the search (not necessarily a
    /// generating set of the whole group).
    pub automorphisms: Vec<Vec<u32>>,
}

pub fn canonical_form(p: &Pedigree, limit: SearchLimit) -> Result<CanonicalForm, IsoError> {
    let mut search = Search {
        p,
        nodes: 0,
        limit: limit.max_nodes,
        best: None,
        first: None,
        generators: Vec::new(),
    };
    let seed = seed_colours(p);
    let mut prefix = Vec::new();
    search.explore(seed, &mut prefix)?;
    let best = search.best.expect("search reaches at least one leaf");
    Ok(CanonicalForm {
        code: encode(p, &best),
        position: best.position,
        nodes: search.nodes,
        automorphisms: search.generators,
    })
}

pub fn canonical_code(p: &Pedigree) -> Result<CanonicalCode, IsoError> {
    canonical_form(p, SearchLimit::default()).map(|f| f.code)
}

struct Leaf {
    cert: Vec<(u32, u32)>,
    position: Vec<u32>,
}

struct Search<'a> {
    p: &'a Pedigree,
    nodes: u64,
    limit: u64,
    best: Option<Leaf>,
    first: Option<Leaf>,
    generators: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn explore(&mut self, mut colours: Vec<u32>, prefix: &mut Vec<usize>) -> Result<(), IsoError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(IsoError::ResourceLimit { nodes: self.limit });
        }
        refine(self.p, &mut colours);
        let Some(cell) = target_cell(&colours) else {
            self.leaf(colours);
            return Ok(());
        };
        let mut explored: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, Vec<usize>)> = None;
        for &v in &cell {
            if !explored.is_empty() {
                let stale = orbits
                    .as_ref()
                    .is_none_or(|(g, _)| *g != self.generators.len());
                if stale {
                    orbits = Some((self.generators.len(), self.orbits_fixing(prefix)));
                }
                let (_, roots) = orbits.as_ref().expect("orbits computed");
                if explored.iter().any(|&u| roots[u] == roots[v]) {
                    continue;
                }
            }
            prefix.push(v);
            self.explore(individualize(&colours, v), prefix)?;
            prefix.pop();
            explored.push(v);
        }
        Ok(())
    }

    fn leaf(&mut self, position: Vec<u32>) {
        let leaf = Leaf {
            cert: certificate(self.p, &position),
            position,
        };
        let Some(best) = &self.best else {
            self.first = Some(Leaf {
                cert: leaf.cert.clone(),
                position: leaf.position.clone(),
            });
            self.best = Some(leaf);
            return;
        };
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Less => self.best = Some(leaf),
            std::cmp::Ordering::Equal => {
                let gamma = automorphism(&best.position, &leaf.position);
                self.push_generator(gamma);
            }
            std::cmp::Ordering::Greater => {
                let first = self.first.as_ref().expect("first leaf recorded with best");
                if leaf.cert == first.cert {
                    let gamma = automorphism(&first.position, &leaf.position);
                    self.push_generator(gamma);
                }
            }
        }
    }

    fn push_generator(&mut self, gamma: Vec<u32>) {
        if gamma.iter().enumerate().any(|(i, &g)| g as usize != i) {
            self.generators.push(gamma);
        }
    }

    /// Union-find roots of the orbits of the known automorphisms that fix
    /// every prefix vertex.
    fn orbits_fixing(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.p.vertex_count();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for gamma in &self.generators {
            if prefix.iter().any(|&v| gamma[v] as usize != v) {
                continue;
            }
            for (x, &y) in gamma.iter().enumerate() {
                let (rx, ry) = (find(&mut uf, x), find(&mut uf, y as usize));
                if rx != ry {
                    uf[rx.max(ry)] = rx.min(ry);
                }
            }
        }
        (0..n).map(|x| find(&mut uf, x)).collect()
    }
}

/// Maps each vertex of the `to` leaf onto the vertex of the `from` leaf with
/// the same position.
fn automorphism(from: &[u32], to: &[u32]) -> Vec<u32> {
    let mut inverse = vec![0u32; from.len()];
    for (v, &pos) in from.iter().enumerate() {
        inverse[pos as usize] = v as u32;
    }
    to.iter().map(|&pos| inverse[pos as usize]).collect()
}

fn seed_colours(p: &Pedigree) -> Vec<u32> {
    let n = p.vertex_count();
    let keys: Vec<_> = (0..n)
        .map(|i| {
            let out_degree = if p.parents_at(i).is_some() { 2 } else { 0 };
            (
                p.label_at(i),
                out_degree,
                p.children_at(i).len(),
                p.depth_at(i),
            )
        })
        .collect();
    let mut distinct = keys.clone();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key present") as u32)
        .collect()
}

/// Refines `colours` (ranks `0..k`) to the coarsest equitable refinement,
/// splitting cells in place so the cell order is preserved.
fn refine(p: &Pedigree, colours: &mut Vec<u32>) {
    let n = colours.len();
    let mut count = colours.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut sigs: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut order: Vec<usize> = (0..n).collect();
    while count < n {
        for v in 0..n {
            let sig = &mut sigs[v];
            sig.clear();
            sig.push(colours[v]);
            match p.parents_at(v) {
                Some([a, b]) => {
                    let (x, y) = (colours[a], colours[b]);
                    sig.push(x.min(y));
                    sig.push(x.max(y));
                }
                None => {
                    sig.push(u32::MAX);
                    sig.push(u32::MAX);
                }
            }
            let start = sig.len();
            sig.extend(p.children_at(v).iter().map(|&c| colours[c]));
            sig[start..].sort_unstable();
        }
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut rank = 0u32;
        let mut next = vec![0u32; n];
        for k in 0..n {
            if k > 0 && sigs[order[k]] != sigs[order[k - 1]] {
                rank += 1;
            }
            next[order[k]] = rank;
        }
        let new_count = rank as usize + 1;
        *colours = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
}

/// Members of the first cell with more than one vertex.
fn target_cell(colours: &[u32]) -> Option<Vec<usize>> {
    let n = colours.len();
    let mut size = vec![0usize; n];
    for &c in colours {
        size[c as usize] += 1;
    }
    let c = (0..n).find(|&c| size[c] > 1)? as u32;
    Some((0..n).filter(|&v| colours[v] == c).collect())
}

fn individualize(colours: &[u32], v: usize) -> Vec<u32> {
    let keys: Vec<u32> = colours
        .iter()
        .enumerate()
        .map(|(w, &c)| 2 * c + u32::from(w != v))
        .collect();
    let mut distinct = keys.clone();
    distinct.sort_unstable();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key present") as u32)
        .collect()
}

fn certificate(p: &Pedigree, position: &[u32]) -> Vec<(u32, u32)> {
    let mut cert = Vec::with_capacity(p.arc_count());
    for v in 0..position.len() {
        if let Some([a, b]) = p.parents_at(v) {
            cert.push((position[v], position[a]));
            cert.push((position[v], position[b]));
        }
    }
    cert.sort_unstable();
    cert
}

fn encode(p: &Pedigree, leaf: &Leaf) -> CanonicalCode {
    let mut bytes = Vec::with_capacity(16 + 8 * leaf.cert.len());
    bytes.extend_from_slice(CODE_FORMAT);
    bytes.extend_from_slice(&(p.vertex_count() as u32).to_be_bytes());
    bytes.extend_from_slice(&(p.order() as u32).to_be_bytes());
    for (label, v) in p.extant() {
        let i = p.index_of(v).expect("extant vertex present");
        bytes.extend_from_slice(&(label.as_str().len() as u32).to_be_bytes());
        bytes.extend_from_slice(label.as_str().as_bytes());
        bytes.extend_from_slice(&leaf.position[i].to_be_bytes());
    }
    bytes.extend_from_slice(&(leaf.cert.len() as u32).to_be_bytes());
    for &(c, q) in &leaf.cert {
        bytes.extend_from_slice(&c.to_be_bytes());
        bytes.extend_from_slice(&q.to_be_bytes());
    }
    CanonicalCode(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pedigree::fixtures::*;
    use crate::pedigree::{RawPedigree, VertexId};

    #[test]
    fn relabelling_preserves_code() {
        let p = star();
        let q = p.relabel(|v| VertexId(1000 - v.0 * 7));
        assert_eq!(canonical_code(&p).unwrap(), canonical_code(&q).unwrap());
    }

    #[test]
    fn star_and_triangle_differ() {
        assert_ne!(
            canonical_code(&star()).unwrap(),
            canonical_code(&triangle()).unwrap()
        );
    }

    #[test]
    fn twins_differ_from_disjoint_parents() {
        let disjoint = RawPedigree::new()
            .vertices([1, 2, 10, 11, 12, 13])
            .parents(1, 10, 11)
            .parents(2, 12, 13)
            .extant("x1", 1)
            .extant("x2", 2)
            .validate()
            .unwrap();
        assert_ne!(
            canonical_code(&twins()).unwrap(),
            canonical_code(&disjoint).unwrap()
        );
    }

    #[test]
    fn swapping_labels_changes_code_of_asymmetric_pedigree() {
        // x1 has a private grandparent line, x2 does not.
        let raw = RawPedigree::new()
            .vertices([1, 2, 3, 4, 5, 6])
            .parents(1, 3, 4)
            .parents(2, 4, 5)
            .parents(3, 5, 6)
            .extant("x1", 1)
            .extant("x2", 2)
            .clone();
        let p = raw.validate().unwrap();
        let mut swapped = raw.clone();
        swapped.extant = vec![
            (Label::from("x1"), VertexId(2)),
            (Label::from("x2"), VertexId(1)),
        ];
        let q = swapped.validate().unwrap();
        assert_ne!(canonical_code(&p).unwrap(), canonical_code(&q).unwrap());
    }

    #[test]
    fn hex_roundtrip_and_format_tag() {
        let code = canonical_code(&twins()).unwrap();
        assert!(code.to_hex().starts_with("50434301"));
        assert_eq!(CanonicalCode::from_hex(&code.to_hex()), Some(code.clone()));
        let stale = format!("50434300{}", &code.to_hex()[8..]);
        assert_eq!(CanonicalCode::from_hex(&stale), None);
    }

    #[test]
    fn twin_founders_are_pruned_by_automorphisms() {
        // 8 extant vertices each with a private pair of founders that are
        // interchangeable: |Aut| = 2^8, yet the search stays linear.
        let mut raw = RawPedigree::new();
        for i in 0..8u64 {
            let (a, b) = (100 + 2 * i, 101 + 2 * i);
            raw.vertices([i, a, b])
                .parents(i, a, b)
                .extant(Label::indexed(i as usize + 1), i);
        }
        let p = raw.validate().unwrap();
        let form = canonical_form(&p, SearchLimit::default()).unwrap();
        assert!(form.nodes < 64, "visited {} nodes", form.nodes);
        assert_eq!(form.automorphisms.len(), 8);
    }

    #[test]
    fn node_budget_is_an_error() {
        let mut raw = RawPedigree::new();
        for i in 0..4u64 {
            raw.vertices([i, 100 + 2 * i, 101 + 2 * i])
                .parents(i, 100 + 2 * i, 101 + 2 * i)
                .extant(Label::indexed(i as usize + 1), i);
        }
        let p = raw.validate().unwrap();
        assert!(matches!(
            canonical_form(&p, SearchLimit::nodes(2)),
            Err(IsoError::ResourceLimit { nodes: 2 })
        ));
    }

    use crate::label::Label;
}
