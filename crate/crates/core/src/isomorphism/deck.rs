use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{
    canonical_form, find_isomorphism, CanonicalCode, IsoError, LabelledIsomorphism, SearchLimit,
};
use crate::label::{Label, LabelSet};
use crate::pedigree::Pedigree;

/// Canonical codes of every `r`-subset sub-pedigree, keyed by subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deck {
    r: usize,
    entries: BTreeMap<LabelSet, CanonicalCode>,
}

#[derive(Debug, Error)]
pub enum DeckFormatError {
    #[error("malformed deck JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid canonical code for subset {0}")]
    BadCode(String),
    #[error("deck subsets have different sizes")]
    MixedSizes,
    #[error("empty deck")]
    Empty,
}

impl Deck {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, y: &LabelSet) -> Option<&CanonicalCode> {
        self.entries.get(y)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LabelSet, &CanonicalCode)> {
        self.entries.iter()
    }

    /// Subsets on which the two decks disagree (or that only one deck has).
    pub fn differences(&self, other: &Deck) -> Vec<LabelSet> {
        let mut keys: Vec<&LabelSet> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter(|y| self.entries.get(*y) != other.entries.get(*y))
            .cloned()
            .collect()
    }

    pub fn to_json(&self) -> String {
        let map: BTreeMap<&LabelSet, String> =
            self.entries.iter().map(|(y, c)| (y, c.to_hex())).collect();
        let ordered = OrderedMap(map.into_iter().map(|(y, c)| (y.key(), c)).collect());
        let mut s = serde_json::to_string_pretty(&ordered).expect("deck serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Deck, DeckFormatError> {
        let raw: BTreeMap<String, String> = serde_json::from_str(s)?;
        let mut entries = BTreeMap::new();
        for (key, hex) in raw {
            let code = CanonicalCode::from_hex(&hex)
                .ok_or_else(|| DeckFormatError::BadCode(key.clone()))?;
            entries.insert(LabelSet::parse_key(&key), code);
        }
        let r = entries
            .keys()
            .next()
            .map(LabelSet::len)
            .ok_or(DeckFormatError::Empty)?;
        if entries.keys().any(|y| y.len() != r) {
            return Err(DeckFormatError::MixedSizes);
        }
        Ok(Deck { r, entries })
    }
}

/// Serializes pairs as a JSON object in the given order.
struct OrderedMap(Vec<(String, String)>);

impl Serialize for OrderedMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

fn subsets(p: &Pedigree, r: usize) -> Result<Vec<LabelSet>, IsoError> {
    let n = p.order();
    if r == 0 || r > n {
        return Err(IsoError::BadR { r, n });
    }
    let labels: Vec<Label> = p.labels().iter().cloned().collect();
    Ok(labels
        .into_iter()
        .combinations(r)
        .map(LabelSet::new)
        .collect())
}

pub fn deck(p: &Pedigree, r: usize, limit: SearchLimit) -> Result<Deck, IsoError> {
    let ys = subsets(p, r)?;
    let codes: Vec<(LabelSet, CanonicalCode)> = ys
        .into_par_iter()
        .map(|y| {
            let card = p.sub_pedigree(&y).expect("subset of extant labels");
            canonical_form(&card, limit).map(|f| (y, f.code))
        })
        .collect::<Result<_, _>>()?;
    Ok(Deck {
        r,
        entries: codes.into_iter().collect(),
    })
}

fn check_labels(p: &Pedigree, q: &Pedigree) -> Result<(), IsoError> {
    let (lp, lq) = (p.labels(), q.labels());
    if lp != lq {
        return Err(IsoError::ExtantMismatch {
            left: lp,
            right: lq,
        });
    }
    Ok(())
}

/// Per-subset comparison of the two `r`-decks.
pub fn are_r_hypomorphic(
    p: &Pedigree,
    q: &Pedigree,
    r: usize,
    limit: SearchLimit,
) -> Result<bool, IsoError> {
    check_labels(p, q)?;
    Ok(deck(p, r, limit)? == deck(q, r, limit)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetVerdict {
    pub subset: LabelSet,
    pub witness: Option<LabelledIsomorphism>,
}

impl SubsetVerdict {
    pub fn isomorphic(&self) -> bool {
        self.witness.is_some()
    }
}

/// For each `r`-subset `Y`, a witness `P(Y) -> Q(Y)` or `None`.
pub fn hypomorphism_report(
    p: &Pedigree,
    q: &Pedigree,
    r: usize,
    limit: SearchLimit,
) -> Result<Vec<SubsetVerdict>, IsoError> {
    check_labels(p, q)?;
    subsets(p, r)?
        .into_par_iter()
        .map(|y| {
            let a = p.sub_pedigree(&y).expect("subset of extant labels");
            let b = q.sub_pedigree(&y).expect("subset of extant labels");
            find_isomorphism(&a, &b, limit).map(|witness| SubsetVerdict { subset: y, witness })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isomorphism::canonical_code;
    use crate::pedigree::fixtures::*;
    use crate::pedigree::{RawPedigree, VertexId};

    #[test]
    fn full_deck_is_the_canonical_code() {
        let p = star();
        let d = deck(&p, 3, SearchLimit::default()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.get(&p.labels()), Some(&canonical_code(&p).unwrap()));
    }

    #[test]
    fn star_and_triangle_share_pair_deck() {
        let (t, u) = (star(), triangle());
        let limit = SearchLimit::default();
        assert_eq!(deck(&t, 2, limit).unwrap().len(), 3);
        assert!(are_r_hypomorphic(&t, &u, 2, limit).unwrap());
        assert!(!are_r_hypomorphic(&t, &u, 3, limit).unwrap());
        let report = hypomorphism_report(&t, &u, 2, limit).unwrap();
        assert!(report.iter().all(SubsetVerdict::isomorphic));
    }

    #[test]
    fn twin_singletons_agree() {
        let d = deck(&twins(), 1, SearchLimit::default()).unwrap();
        let codes: Vec<_> = d.iter().map(|(_, c)| c.clone()).collect();
        assert_eq!(codes.len(), 2);
        assert_ne!(codes[0], codes[1]);
        // Codes carry the label, so compare after renaming x2 to x1.
        let q = twins().sub_pedigree(&[Label::from("x2")]).unwrap();
        let renamed = RawPedigree {
            extant: vec![(Label::from("x1"), VertexId(2))],
            ..q.to_raw()
        }
        .validate()
        .unwrap();
        assert_eq!(
            d.get(&LabelSet::new([Label::from("x1")])),
            Some(&canonical_code(&renamed).unwrap())
        );
    }

    #[test]
    fn bad_r() {
        assert_eq!(
            deck(&twins(), 0, SearchLimit::default()),
            Err(IsoError::BadR { r: 0, n: 2 })
        );
        assert_eq!(
            deck(&twins(), 3, SearchLimit::default()),
            Err(IsoError::BadR { r: 3, n: 2 })
        );
    }

    #[test]
    fn deck_json_roundtrip() {
        let d = deck(&star(), 2, SearchLimit::default()).unwrap();
        let s = d.to_json();
        assert!(s.contains("\"x1,x2\""));
        assert_eq!(Deck::from_json(&s).unwrap(), d);
    }

    #[test]
    fn multiset_equal_decks_can_differ_per_subset() {
        // x1 has a private grandparent line, x2 does not; swapping the labels
        // permutes the 1-deck entries without changing the multiset of shapes.
        let raw = RawPedigree::new()
            .vertices([1, 2, 3, 4, 5, 6])
            .parents(1, 3, 4)
            .parents(2, 4, 5)
            .parents(3, 5, 6)
            .extant("x1", 1)
            .extant("x2", 2)
            .clone();
        let p = raw.validate().unwrap();
        let q = RawPedigree {
            extant: vec![
                (Label::from("x1"), VertexId(2)),
                (Label::from("x2"), VertexId(1)),
            ],
            ..raw
        }
        .validate()
        .unwrap();
        let limit = SearchLimit::default();
        assert!(!are_r_hypomorphic(&p, &q, 1, limit).unwrap());
        assert_eq!(
            deck(&p, 1, limit)
                .unwrap()
                .differences(&deck(&q, 1, limit).unwrap())
                .len(),
            2
        );
    }
}
