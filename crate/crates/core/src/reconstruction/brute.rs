use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::isomorphism::{canonical_form, deck, CanonicalCode, IsoError, SearchLimit};
use crate::label::LabelSet;
use crate::pedigree::{Pedigree, RawPedigree, VertexId};

/// Raw assignments tried before [`enumerate_pedigrees`] gives up.
pub const CANDIDATE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub enum Universe {
    /// Every pedigree on the same labels with at most this many vertices, all
    /// of which have an extant descendent.
    Exhaustive { max_vertices: usize },
    /// A given list of candidates; those on other label sets are ignored.
    Explicit(Vec<Pedigree>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// No non-isomorphic candidate shares the deck.
    Reconstructible {
        candidates: usize,
    },
    CounterpartFound(Pedigree),
}

/// Pedigrees on `labels` with at most `max_vertices` vertices in which every
/// vertex has an extant descendent, one per labelled-isomorphism class,
/// ordered by canonical code.
pub fn enumerate_pedigrees(
    labels: &LabelSet,
    max_vertices: usize,
    limit: SearchLimit,
) -> Result<Vec<Pedigree>, IsoError> {
    let n = labels.len();
    let mut classes: BTreeMap<CanonicalCode, Pedigree> = BTreeMap::new();
    let mut tried = 0u64;
    for m in 2..=max_vertices.saturating_sub(n) {
        // Non-extant vertex t has id n + t and takes parents among t+1..m, so
        // ids increase towards the founders.
        let own_options: Vec<Vec<Option<[usize; 2]>>> = (0..m)
            .map(|t| {
                std::iter::once(None)
                    .chain((t + 1..m).tuple_combinations().map(|(a, b)| Some([a, b])))
                    .collect()
            })
            .collect();
        let extant_options: Vec<[usize; 2]> =
            (0..m).tuple_combinations().map(|(a, b)| [a, b]).collect();
        let choices = own_options
            .iter()
            .map(|o| o.iter().copied())
            .multi_cartesian_product()
            .cartesian_product(
                std::iter::repeat_n(extant_options.iter().copied(), n).multi_cartesian_product(),
            );
        for (own, ext) in choices {
            tried += 1;
            if tried > CANDIDATE_BUDGET {
                return Err(IsoError::ResourceLimit {
                    nodes: CANDIDATE_BUDGET,
                });
            }
            let mut has_child = vec![false; m];
            for ps in own.iter().flatten().chain(ext.iter()) {
                has_child[ps[0]] = true;
                has_child[ps[1]] = true;
            }
            if !has_child.iter().all(|&c| c) {
                continue;
            }
            let mut raw = RawPedigree::new();
            raw.vertices = (0..(n + m) as u64).map(VertexId).collect();
            let id = |t: usize| VertexId((n + t) as u64);
            for (t, ps) in own.iter().enumerate() {
                if let Some([a, b]) = ps {
                    raw.arcs.push((id(t), id(*a)));
                    raw.arcs.push((id(t), id(*b)));
                }
            }
            for (k, ([a, b], label)) in ext.iter().zip(labels.iter()).enumerate() {
                raw.arcs.push((VertexId(k as u64), id(*a)));
                raw.arcs.push((VertexId(k as u64), id(*b)));
                raw.extant.push((label.clone(), VertexId(k as u64)));
            }
            let p = raw.validate().expect("enumerated pedigrees are valid");
            let code = canonical_form(&p, limit)?.code;
            classes.entry(code).or_insert(p);
        }
    }
    Ok(classes.into_values().collect())
}

/// Searches `universe` for a pedigree with the same `r`-deck as `p` that is
/// not isomorphic to it. The first counterpart in canonical-code order wins.
pub fn brute_reconstructibility(
    p: &Pedigree,
    r: usize,
    universe: Universe,
    limit: SearchLimit,
) -> Result<ProbeOutcome, IsoError> {
    let target = deck(p, r, limit)?;
    let own = canonical_form(p, limit)?.code;
    let labels = p.labels();
    let candidates: Vec<Pedigree> = match universe {
        Universe::Exhaustive { max_vertices } => enumerate_pedigrees(&labels, max_vertices, limit)?,
        Universe::Explicit(list) => {
            let mut classes = BTreeMap::new();
            for q in list.into_iter().filter(|q| q.labels() == labels) {
                classes.entry(canonical_form(&q, limit)?.code).or_insert(q);
            }
            classes.into_values().collect()
        }
    };
    let found = candidates.par_iter().find_map_first(|q| {
        let check = || -> Result<bool, IsoError> {
            Ok(deck(q, r, limit)? == target && canonical_form(q, limit)?.code != own)
        };
        match check() {
            Ok(true) => Some(Ok(q.clone())),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        }
    });
    match found {
        Some(Ok(q)) => Ok(ProbeOutcome::CounterpartFound(q)),
        Some(Err(e)) => Err(e),
        None => Ok(ProbeOutcome::Reconstructible {
            candidates: candidates.len(),
        }),
    }
}
