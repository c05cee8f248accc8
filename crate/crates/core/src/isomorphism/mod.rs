//! Label-fixing isomorphism, canonical codes and decks.

mod canon;
mod deck;

pub use canon::{
    canonical_code, canonical_form, CanonicalCode, CanonicalForm, SearchLimit, CODE_FORMAT,
};
pub use deck::{
    are_r_hypomorphic, deck, hypomorphism_report, Deck, DeckFormatError, SubsetVerdict,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::label::LabelSet;
use crate::pedigree::{Pedigree, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("canonical search exceeded {nodes} nodes")]
    ResourceLimit { nodes: u64 },
    #[error("extant label sets differ: {left} vs {right}")]
    ExtantMismatch { left: LabelSet, right: LabelSet },
    #[error("subset size {r} outside 1..={n}")]
    BadR { r: usize, n: usize },
}

/// A vertex bijection between two pedigrees, fixing extant labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabelledIsomorphism(pub BTreeMap<VertexId, VertexId>);

impl LabelledIsomorphism {
    pub fn identity(p: &Pedigree) -> Self {
        LabelledIsomorphism(p.vertices().map(|v| (v, v)).collect())
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.0.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        LabelledIsomorphism(self.0.iter().map(|(&a, &b)| (b, a)).collect())
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &LabelledIsomorphism) -> Option<Self> {
        self.0
            .iter()
            .map(|(&a, &b)| other.get(b).map(|c| (a, c)))
            .collect::<Option<BTreeMap<_, _>>>()
            .map(LabelledIsomorphism)
    }

    /// Restriction to the vertices of `p`.
    pub fn restrict(&self, p: &Pedigree) -> Self {
        LabelledIsomorphism(
            p.vertices()
                .filter_map(|v| self.get(v).map(|w| (v, w)))
                .collect(),
        )
    }
}

/// Searches for a label-fixing isomorphism `P -> Q`. `Ok(None)` means none
/// exists.
pub fn find_isomorphism(
    p: &Pedigree,
    q: &Pedigree,
    limit: SearchLimit,
) -> Result<Option<LabelledIsomorphism>, IsoError> {
    let (lp, lq) = (p.labels(), q.labels());
    if lp != lq {
        return Err(IsoError::ExtantMismatch {
            left: lp,
            right: lq,
        });
    }
    let fp = canonical_form(p, limit)?;
    let fq = canonical_form(q, limit)?;
    if fp.code != fq.code {
        return Ok(None);
    }
    let mut at_position = vec![VertexId(0); q.vertex_count()];
    for (i, &pos) in fq.position.iter().enumerate() {
        at_position[pos as usize] = q.id_at(i);
    }
    let map = fp
        .position
        .iter()
        .enumerate()
        .map(|(i, &pos)| (p.id_at(i), at_position[pos as usize]))
        .collect();
    Ok(Some(LabelledIsomorphism(map)))
}

pub fn are_isomorphic(p: &Pedigree, q: &Pedigree, limit: SearchLimit) -> Result<bool, IsoError> {
    find_isomorphism(p, q, limit).map(|m| m.is_some())
}

/// Checks that `m` is a bijection `V(P) -> V(Q)` preserving arcs in both
/// directions and fixing every extant label.
pub fn verify_isomorphism(p: &Pedigree, q: &Pedigree, m: &LabelledIsomorphism) -> bool {
    if p.vertex_count() != q.vertex_count()
        || m.len() != p.vertex_count()
        || p.labels() != q.labels()
    {
        return false;
    }
    if !p
        .vertices()
        .all(|v| m.get(v).is_some_and(|w| q.contains(w)))
    {
        return false;
    }
    let mut image: Vec<VertexId> = m.0.values().copied().collect();
    image.sort();
    image.dedup();
    if image.len() != q.vertex_count() {
        return false;
    }
    let fixes_labels = p.extant().all(|(label, v)| q.vertex_of(label) == m.get(v));
    if !fixes_labels {
        return false;
    }
    // Equal arc counts plus arc preservation forces non-arcs to non-arcs.
    let mut mapped: Vec<(VertexId, VertexId)> = p
        .arcs()
        .into_iter()
        .map(|(c, a)| (m.get(c).expect("total"), m.get(a).expect("total")))
        .collect();
    mapped.sort();
    mapped == q.arcs()
}
