use std::collections::BTreeMap;

use crate::isomorphism::LabelledIsomorphism;
use crate::pedigree::{Gender, GenderAssignment, Pedigree, RawPedigree, VertexId};

/// How a vertex of a genderized pedigree arises from the original.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CopyKind {
    /// The copy of a non-founder attached to parent `u`; its own parents are
    /// the two copies of `u`.
    Via(VertexId),
    /// One of the two copies of a founder.
    Founder(Gender),
    /// The new labelled vertex below the two copies of an extant vertex.
    Extant,
}

/// A pedigree in which every vertex is split into a male and a female copy.
#[derive(Clone, Debug)]
pub struct Genderized {
    pub pedigree: Pedigree,
    pub genders: GenderAssignment,
    origin: BTreeMap<VertexId, (VertexId, CopyKind)>,
    index: BTreeMap<(VertexId, CopyKind), VertexId>,
}

impl Genderized {
    pub fn origin(&self, v: VertexId) -> Option<(VertexId, CopyKind)> {
        self.origin.get(&v).copied()
    }

    pub fn copy(&self, v: VertexId, kind: CopyKind) -> Option<VertexId> {
        self.index.get(&(v, kind)).copied()
    }

    /// Lifts an isomorphism between (sub-pedigrees of) the originals to the
    /// genderized pedigrees: `v[u] -> pi(v)[pi(u)]` and `f^g -> pi(f)^g`.
    /// Vertices whose origin lies outside the domain of `pi` are dropped.
    pub fn lift(&self, target: &Genderized, pi: &LabelledIsomorphism) -> LabelledIsomorphism {
        let mut map = BTreeMap::new();
        for (&w, &(v, kind)) in &self.origin {
            let Some(v2) = pi.get(v) else { continue };
            let kind2 = match kind {
                CopyKind::Via(u) => match pi.get(u) {
                    Some(u2) => CopyKind::Via(u2),
                    None => continue,
                },
                other => other,
            };
            if let Some(w2) = target.copy(v2, kind2) {
                map.insert(w, w2);
            }
        }
        LabelledIsomorphism(map)
    }
}

/// Splits every vertex into two gendered copies. A non-founder `v` with
/// parents `a < b` becomes `v[a]` (male) and `v[b]` (female), each a child of
/// both copies of its attaching parent; founders become `f^m` and `f^f`. Each
/// extant label moves to a new vertex whose parents are the two copies of
/// the old extant vertex.
pub fn genderize(p: &Pedigree) -> Genderized {
    let mut origin = BTreeMap::new();
    let mut index = BTreeMap::new();
    let mut genders = BTreeMap::new();
    let mut next = 0u64;
    let mut add = |v: VertexId, kind: CopyKind, gender: Gender| {
        let id = VertexId(next);
        next += 1;
        origin.insert(id, (v, kind));
        index.insert((v, kind), id);
        genders.insert(id, gender);
    };
    for v in p.vertices() {
        match p.parents_of(v) {
            None => {
                add(v, CopyKind::Founder(Gender::Male), Gender::Male);
                add(v, CopyKind::Founder(Gender::Female), Gender::Female);
            }
            Some([a, b]) => {
                add(v, CopyKind::Via(a), Gender::Male);
                add(v, CopyKind::Via(b), Gender::Female);
            }
        }
    }
    for (_, x) in p.extant() {
        add(x, CopyKind::Extant, Gender::Male);
    }

    let copies_of = |u: VertexId| -> [VertexId; 2] {
        let kinds = match p.parents_of(u) {
            None => [
                CopyKind::Founder(Gender::Male),
                CopyKind::Founder(Gender::Female),
            ],
            Some([a, b]) => [CopyKind::Via(a), CopyKind::Via(b)],
        };
        kinds.map(|k| index[&(u, k)])
    };
    let mut raw = RawPedigree::new();
    raw.vertices = origin.keys().copied().collect();
    for (&w, &(v, kind)) in &origin {
        let parents = match kind {
            CopyKind::Via(u) => copies_of(u),
            CopyKind::Founder(_) => continue,
            CopyKind::Extant => copies_of(v),
        };
        raw.arcs.push((w, parents[0]));
        raw.arcs.push((w, parents[1]));
    }
    raw.extant = p
        .extant()
        .map(|(l, x)| (l.clone(), index[&(x, CopyKind::Extant)]))
        .collect();
    let pedigree = raw.validate().expect("genderized pedigree is valid");
    Genderized {
        pedigree,
        genders: GenderAssignment(genders),
        origin,
        index,
    }
}
