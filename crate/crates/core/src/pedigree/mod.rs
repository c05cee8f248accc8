//! The pedigree data model.
//!
//! A pedigree is a directed graph with arcs pointing from child to parent.
//! Every vertex has either no parents (a founder) or exactly two distinct
//! parents; the extant vertices are labelled and childless. Vertex ids are
//! opaque: only extant labels carry meaning.

mod gender;
mod layers;

pub use gender::{find_gender_labelling, mating_graph, Gender, GenderAssignment, GenderError};
pub use layers::{
    as_discrete_generation, parent_graph, DiscreteGenerationPedigree, NotLayered, ParentGraph,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::label::{Label, LabelSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Unvalidated input: any directed graph plus an extant assignment.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawPedigree {
    pub vertices: Vec<VertexId>,
    pub arcs: Vec<(VertexId, VertexId)>,
    pub extant: Vec<(Label, VertexId)>,
}

impl RawPedigree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, v: u64) -> &mut Self {
        self.vertices.push(VertexId(v));
        self
    }

    pub fn vertices(&mut self, vs: impl IntoIterator<Item = u64>) -> &mut Self {
        self.vertices.extend(vs.into_iter().map(VertexId));
        self
    }

    pub fn arc(&mut self, child: u64, parent: u64) -> &mut Self {
        self.arcs.push((VertexId(child), VertexId(parent)));
        self
    }

    /// Adds both arcs `child -> a` and `child -> b`.
    pub fn parents(&mut self, child: u64, a: u64, b: u64) -> &mut Self {
        self.arc(child, a).arc(child, b)
    }

    pub fn extant(&mut self, label: impl Into<Label>, v: u64) -> &mut Self {
        self.extant.push((label.into(), VertexId(v)));
        self
    }

    pub fn validate(&self) -> Result<Pedigree, ValidationErrors> {
        Pedigree::validate(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex {
        vertex: VertexId,
    },
    UnknownVertex {
        vertex: VertexId,
    },
    DuplicateLabel {
        label: Label,
    },
    LabelledTwice {
        vertex: VertexId,
    },
    BadOutDegree {
        vertex: VertexId,
        out_degree: usize,
    },
    DuplicateParent {
        vertex: VertexId,
        parent: VertexId,
    },
    ExtantHasChild {
        label: Label,
        vertex: VertexId,
        child: VertexId,
    },
    IsolatedVertex {
        vertex: VertexId,
    },
    CyclicAncestry {
        vertex: VertexId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex { vertex } => write!(f, "vertex {vertex} listed twice"),
            Violation::UnknownVertex { vertex } => {
                write!(f, "vertex {vertex} is referenced but not declared")
            }
            Violation::DuplicateLabel { label } => write!(f, "extant label {label} used twice"),
            Violation::LabelledTwice { vertex } => {
                write!(f, "vertex {vertex} carries two extant labels")
            }
            Violation::BadOutDegree { vertex, out_degree } => {
                write!(
                    f,
                    "vertex {vertex} has out-degree {out_degree} (must be 0 or 2)"
                )
            }
            Violation::DuplicateParent { vertex, parent } => {
                write!(f, "vertex {vertex} lists parent {parent} twice")
            }
            Violation::ExtantHasChild {
                label,
                vertex,
                child,
            } => {
                write!(f, "extant vertex {vertex} ({label}) has child {child}")
            }
            Violation::IsolatedVertex { vertex } => write!(f, "vertex {vertex} is isolated"),
            Violation::CyclicAncestry { vertex } => {
                write!(f, "vertex {vertex} is its own proper ancestor")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid pedigree: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct ValidationErrors(pub Vec<Violation>);

impl ValidationErrors {
    pub fn violations(&self) -> &[Violation] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PedigreeError {
    #[error("empty label subset")]
    EmptySubset,
    #[error("unknown extant label {0}")]
    UnknownLabel(Label),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} has no extant descendent")]
    NoExtantDescendent(VertexId),
    #[error("pedigree has depth 0")]
    DepthZero,
}

/// A validated pedigree.
///
/// Internally vertices are stored densely, sorted by id; `index` below always
/// refers to that dense position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pedigree {
    ids: Vec<VertexId>,
    parents: Vec<Option<[usize; 2]>>,
    children: Vec<Vec<usize>>,
    extant: Vec<(Label, usize)>,
    label_at: Vec<Option<usize>>,
    depth: Vec<Option<usize>>,
}

impl Pedigree {
    pub fn validate(raw: &RawPedigree) -> Result<Pedigree, ValidationErrors> {
        let mut violations = Vec::new();

        let mut ids: Vec<VertexId> = raw.vertices.clone();
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] && !violations.contains(&Violation::DuplicateVertex { vertex: w[0] }) {
                violations.push(Violation::DuplicateVertex { vertex: w[0] });
            }
        }
        ids.dedup();
        let index: HashMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let n = ids.len();

        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut unknown = BTreeSet::new();
        for &(c, p) in &raw.arcs {
            match (index.get(&c), index.get(&p)) {
                (Some(&ci), Some(&pi)) => out[ci].push(pi),
                (ci, pi) => {
                    if ci.is_none() {
                        unknown.insert(c);
                    }
                    if pi.is_none() {
                        unknown.insert(p);
                    }
                }
            }
        }

        let mut extant: Vec<(Label, usize)> = Vec::new();
        let mut seen_labels = BTreeSet::new();
        let mut label_at: Vec<Option<usize>> = vec![None; n];
        for (label, v) in &raw.extant {
            if !seen_labels.insert(label.clone()) {
                violations.push(Violation::DuplicateLabel {
                    label: label.clone(),
                });
                continue;
            }
            match index.get(v) {
                Some(&vi) => {
                    if label_at[vi].is_some() {
                        violations.push(Violation::LabelledTwice { vertex: *v });
                    } else {
                        label_at[vi] = Some(extant.len());
                        extant.push((label.clone(), vi));
                    }
                }
                None => {
                    unknown.insert(*v);
                }
            }
        }
        violations.extend(
            unknown
                .into_iter()
                .map(|vertex| Violation::UnknownVertex { vertex }),
        );

        let mut parents: Vec<Option<[usize; 2]>> = vec![None; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, ps) in out.iter().enumerate() {
            for &p in ps {
                children[p].push(v);
            }
            match ps.len() {
                0 => {}
                2 if ps[0] == ps[1] => violations.push(Violation::DuplicateParent {
                    vertex: ids[v],
                    parent: ids[ps[0]],
                }),
                2 => parents[v] = Some([ps[0].min(ps[1]), ps[0].max(ps[1])]),
                d => violations.push(Violation::BadOutDegree {
                    vertex: ids[v],
                    out_degree: d,
                }),
            }
        }
        for c in &mut children {
            c.sort_unstable();
        }

        for (label, vi) in &extant {
            if let Some(&child) = children[*vi].first() {
                violations.push(Violation::ExtantHasChild {
                    label: label.clone(),
                    vertex: ids[*vi],
                    child: ids[child],
                });
            }
        }
        for v in 0..n {
            if out[v].is_empty() && children[v].is_empty() {
                violations.push(Violation::IsolatedVertex { vertex: ids[v] });
            }
        }
        for v in cyclic_vertices(&out) {
            violations.push(Violation::CyclicAncestry { vertex: ids[v] });
        }

        if !violations.is_empty() {
            return Err(ValidationErrors(violations));
        }

        let mut order: Vec<usize> = (0..extant.len()).collect();
        order.sort_by(|a, b| extant[*a].0.cmp(&extant[*b].0));
        let extant: Vec<(Label, usize)> = order.iter().map(|&i| extant[i].clone()).collect();
        for (i, (_, v)) in extant.iter().enumerate() {
            label_at[*v] = Some(i);
        }

        let depth = longest_depths(&parents, &children, &extant);
        Ok(Pedigree {
            ids,
            parents,
            children,
            extant,
            label_at,
            depth,
        })
    }

    pub fn order(&self) -> usize {
        self.extant.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.parents.iter().filter(|p| p.is_some()).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.ids.iter().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index_of(v).is_some()
    }

    /// Arcs `(child, parent)`, lexicographically sorted.
    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        let mut arcs = Vec::with_capacity(self.arc_count());
        for (v, ps) in self.parents.iter().enumerate() {
            if let Some([a, b]) = ps {
                arcs.push((self.ids[v], self.ids[*a]));
                arcs.push((self.ids[v], self.ids[*b]));
            }
        }
        arcs.sort();
        arcs
    }

    /// Extant labels with their vertices, in label order.
    pub fn extant(&self) -> impl Iterator<Item = (&Label, VertexId)> + '_ {
        self.extant.iter().map(|(l, v)| (l, self.ids[*v]))
    }

    pub fn labels(&self) -> LabelSet {
        LabelSet::new(self.extant.iter().map(|(l, _)| l.clone()))
    }

    pub fn vertex_of(&self, label: &Label) -> Option<VertexId> {
        self.extant_index(label).map(|i| self.ids[i])
    }

    pub fn label_of(&self, v: VertexId) -> Option<&Label> {
        let i = self.index_of(v)?;
        self.label_at[i].map(|k| &self.extant[k].0)
    }

    pub fn parents_of(&self, v: VertexId) -> Option<[VertexId; 2]> {
        let i = self.index_of(v)?;
        self.parents[i].map(|[a, b]| [self.ids[a], self.ids[b]])
    }

    pub fn children_of(&self, v: VertexId) -> Vec<VertexId> {
        match self.index_of(v) {
            Some(i) => self.children[i].iter().map(|&c| self.ids[c]).collect(),
            None => Vec::new(),
        }
    }

    pub fn is_founder(&self, v: VertexId) -> bool {
        self.index_of(v)
            .map(|i| self.parents[i].is_none())
            .unwrap_or(false)
    }

    pub fn founders(&self) -> Vec<VertexId> {
        (0..self.ids.len())
            .filter(|&i| self.parents[i].is_none())
            .map(|i| self.ids[i])
            .collect()
    }

    /// Longest directed path from an extant vertex to `v`.
    pub fn vertex_depth(&self, v: VertexId) -> Result<usize, PedigreeError> {
        let i = self.index_of(v).ok_or(PedigreeError::UnknownVertex(v))?;
        self.depth[i].ok_or(PedigreeError::NoExtantDescendent(v))
    }

    /// Maximum vertex depth over vertices that have an extant descendent.
    pub fn depth(&self) -> usize {
        self.depth.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Every vertex has an extant descendent, i.e. the pedigree equals its
    /// own sub-pedigree on all extant labels.
    pub fn is_ancestral(&self) -> bool {
        self.depth.iter().all(Option::is_some)
    }

    /// Keeps exactly the vertices having a descendent in `labels`.
    pub fn sub_pedigree<'a, I>(&self, labels: I) -> Result<Pedigree, PedigreeError>
    where
        I: IntoIterator<Item = &'a Label>,
    {
        let mut starts = Vec::new();
        for l in labels {
            let i = self
                .extant_index(l)
                .ok_or_else(|| PedigreeError::UnknownLabel(l.clone()))?;
            starts.push(i);
        }
        if starts.is_empty() {
            return Err(PedigreeError::EmptySubset);
        }
        let keep = self.ancestors_of(&starts);
        let mut raw = RawPedigree::new();
        for v in (0..self.ids.len()).filter(|&v| keep[v]) {
            raw.vertices.push(self.ids[v]);
            if let Some([a, b]) = self.parents[v] {
                raw.arcs.push((self.ids[v], self.ids[a]));
                raw.arcs.push((self.ids[v], self.ids[b]));
            }
        }
        for (l, v) in &self.extant {
            if starts.contains(v) {
                raw.extant.push((l.clone(), self.ids[*v]));
            }
        }
        Ok(Pedigree::validate(&raw).expect("sub-pedigree of a valid pedigree is valid"))
    }

    /// Renames every vertex through `f`, which must be injective.
    pub fn relabel(&self, mut f: impl FnMut(VertexId) -> VertexId) -> Pedigree {
        let map: Vec<VertexId> = self.ids.iter().map(|&v| f(v)).collect();
        let mut raw = RawPedigree::new();
        raw.vertices = map.clone();
        for (v, ps) in self.parents.iter().enumerate() {
            if let Some([a, b]) = ps {
                raw.arcs.push((map[v], map[*a]));
                raw.arcs.push((map[v], map[*b]));
            }
        }
        raw.extant = self
            .extant
            .iter()
            .map(|(l, v)| (l.clone(), map[*v]))
            .collect();
        Pedigree::validate(&raw).expect("relabelling must be injective")
    }

    pub fn to_raw(&self) -> RawPedigree {
        RawPedigree {
            vertices: self.ids.clone(),
            arcs: self.arcs(),
            extant: self.extant().map(|(l, v)| (l.clone(), v)).collect(),
        }
    }

    pub fn max_id(&self) -> Option<VertexId> {
        self.ids.last().copied()
    }

    // Dense-index accessors for the algorithms in this crate.

    pub(crate) fn index_of(&self, v: VertexId) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    pub(crate) fn id_at(&self, i: usize) -> VertexId {
        self.ids[i]
    }

    pub(crate) fn parents_at(&self, i: usize) -> Option<[usize; 2]> {
        self.parents[i]
    }

    pub(crate) fn children_at(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub(crate) fn depth_at(&self, i: usize) -> Option<usize> {
        self.depth[i]
    }

    pub(crate) fn label_at(&self, i: usize) -> Option<&Label> {
        self.label_at[i].map(|k| &self.extant[k].0)
    }

    pub(crate) fn extant_index(&self, label: &Label) -> Option<usize> {
        self.extant
            .binary_search_by(|(l, _)| l.cmp(label))
            .ok()
            .map(|k| self.extant[k].1)
    }

    fn ancestors_of(&self, starts: &[usize]) -> Vec<bool> {
        let mut keep = vec![false; self.ids.len()];
        let mut stack: Vec<usize> = starts.to_vec();
        while let Some(v) = stack.pop() {
            if keep[v] {
                continue;
            }
            keep[v] = true;
            if let Some([a, b]) = self.parents[v] {
                stack.push(a);
                stack.push(b);
            }
        }
        keep
    }
}

/// Vertices lying on a directed cycle.
fn cyclic_vertices(out: &[Vec<usize>]) -> Vec<usize> {
    let n = out.len();
    // Peel vertices all of whose parents are already peeled.
    let mut remaining: Vec<usize> = out.iter().map(Vec::len).collect();
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, ps) in out.iter().enumerate() {
        for &p in ps {
            rev[p].push(v);
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| remaining[v] == 0).collect();
    let mut peeled = vec![false; n];
    while let Some(v) = stack.pop() {
        peeled[v] = true;
        for &c in &rev[v] {
            remaining[c] -= 1;
            if remaining[c] == 0 {
                stack.push(c);
            }
        }
    }
    let mut cyclic = Vec::new();
    for start in (0..n).filter(|&v| !peeled[v]) {
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = out[start].clone();
        let mut on_cycle = false;
        while let Some(v) = stack.pop() {
            if v == start {
                on_cycle = true;
                break;
            }
            if seen[v] || peeled[v] {
                continue;
            }
            seen[v] = true;
            stack.extend(out[v].iter().copied());
        }
        if on_cycle {
            cyclic.push(start);
        }
    }
    cyclic
}

fn longest_depths(
    parents: &[Option<[usize; 2]>],
    children: &[Vec<usize>],
    extant: &[(Label, usize)],
) -> Vec<Option<usize>> {
    let n = parents.len();
    let mut depth: Vec<Option<usize>> = vec![None; n];
    // Process children before parents: Kahn's order on child counts.
    let mut pending: Vec<usize> = children.iter().map(Vec::len).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| pending[v] == 0).collect();
    for (_, v) in extant {
        depth[*v] = Some(0);
    }
    while let Some(v) = stack.pop() {
        if let Some(ps) = parents[v] {
            for p in ps {
                if let Some(d) = depth[v] {
                    depth[p] = Some(depth[p].map_or(d + 1, |x| x.max(d + 1)));
                }
                pending[p] -= 1;
                if pending[p] == 0 {
                    stack.push(p);
                }
            }
        }
    }
    depth
}

/// Groups vertices by depth; vertices without extant descendents are omitted.
pub fn depth_profile(p: &Pedigree) -> BTreeMap<usize, Vec<VertexId>> {
    let mut layers: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for i in 0..p.vertex_count() {
        if let Some(d) = p.depth_at(i) {
            layers.entry(d).or_default().push(p.id_at(i));
        }
    }
    layers
}
