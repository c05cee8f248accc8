//! Reconstruction of a pedigree from its cards on `n - 1` extant labels.
//!
//! Two hypotheses are handled: some pair of extant vertices are full
//! siblings (twins), or the parent graph `G_1` contains a cycle. The
//! dispatcher [`reconstruct`] tries them in that order and checks every
//! answer by recomputing the deck.

mod brute;
mod lemmas;

pub use brute::{brute_reconstructibility, enumerate_pedigrees, ProbeOutcome, Universe};
pub use lemmas::{reconstruct_from_cycle, reconstruct_from_twins};

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::io::{pedigree_from_value, FormatError, PedigreeJson};
use crate::isomorphism::{canonical_code, IsoError};
use crate::label::{Label, LabelSet};
use crate::pedigree::{as_discrete_generation, Pedigree, VertexId};

#[derive(Debug, Error)]
pub enum ReconstructionError {
    #[error("n = {n} is too small: {needed}")]
    BadN { n: usize, needed: &'static str },
    #[error("malformed deck: {0}")]
    MalformedDeck(String),
    #[error("card without {0} is not a discrete generation pedigree")]
    NotLayered(Label),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("malformed deck JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// One full pedigree per `(n - 1)`-subset of the extant labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckOfPedigrees {
    labels: LabelSet,
    cards: BTreeMap<LabelSet, Pedigree>,
}

impl DeckOfPedigrees {
    /// Checks that the cards are exactly one per `(n - 1)`-subset of a common
    /// label set of size `n >= 2`.
    pub fn new(cards: impl IntoIterator<Item = Pedigree>) -> Result<Self, ReconstructionError> {
        let mut map = BTreeMap::new();
        for card in cards {
            let y = card.labels();
            if map.insert(y.clone(), card).is_some() {
                return Err(ReconstructionError::MalformedDeck(format!(
                    "two cards on {y}"
                )));
            }
        }
        let labels = LabelSet::new(map.keys().flat_map(|y| y.iter().cloned()));
        let n = labels.len();
        if n < 2 || map.len() != n {
            return Err(ReconstructionError::MalformedDeck(format!(
                "{} cards over {} labels",
                map.len(),
                n
            )));
        }
        for y in map.keys() {
            if y.len() != n - 1 {
                return Err(ReconstructionError::MalformedDeck(format!(
                    "card {y} has the wrong size"
                )));
            }
        }
        Ok(DeckOfPedigrees { labels, cards: map })
    }

    pub fn from_pedigree(p: &Pedigree) -> Self {
        let labels = p.labels();
        let cards = labels
            .iter()
            .map(|x| {
                let y = labels.without(x);
                let card = p.sub_pedigree(&y).expect("labels are extant");
                (y, card)
            })
            .collect();
        DeckOfPedigrees { labels, cards }
    }

    /// Like [`DeckOfPedigrees::from_pedigree`], with every card's vertex ids
    /// independently shuffled.
    pub fn from_pedigree_shuffled<R: Rng + ?Sized>(p: &Pedigree, rng: &mut R) -> Self {
        let mut deck = Self::from_pedigree(p);
        for card in deck.cards.values_mut() {
            let ids: Vec<VertexId> = card.vertices().collect();
            let mut fresh: Vec<u64> = (0..ids.len() as u64).map(|k| 3 * k + 1).collect();
            fresh.shuffle(rng);
            let map: BTreeMap<VertexId, VertexId> = ids
                .into_iter()
                .zip(fresh.into_iter().map(VertexId))
                .collect();
            *card = card.relabel(|v| map[&v]);
        }
        deck
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    /// The card missing `x`.
    pub fn card_without(&self, x: &Label) -> Option<&Pedigree> {
        self.cards.get(&self.labels.without(x))
    }

    pub fn cards(&self) -> impl Iterator<Item = (&LabelSet, &Pedigree)> {
        self.cards.iter()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("deck serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, ReconstructionError> {
        let raw: BTreeMap<String, serde_json::Value> = serde_json::from_str(s)?;
        let mut cards = Vec::with_capacity(raw.len());
        for (key, value) in raw {
            let card = pedigree_from_value(value)?;
            if card.labels() != LabelSet::parse_key(&key) {
                return Err(ReconstructionError::MalformedDeck(format!(
                    "card keyed {key} has other labels"
                )));
            }
            cards.push(card);
        }
        Self::new(cards)
    }

    /// Fails unless every card is a discrete generation pedigree.
    pub fn check_layered(&self) -> Result<(), ReconstructionError> {
        for x in self.labels.iter() {
            let card = self.card_without(x).expect("one card per label");
            as_discrete_generation(card).map_err(|_| ReconstructionError::NotLayered(x.clone()))?;
        }
        Ok(())
    }

    /// Card-by-card labelled-isomorphism equality with the deck of `p`.
    pub fn matches(&self, p: &Pedigree) -> Result<bool, IsoError> {
        if p.labels() != self.labels {
            return Ok(false);
        }
        for (y, card) in &self.cards {
            let other = p.sub_pedigree(y).expect("labels are extant");
            if canonical_code(card)? != canonical_code(&other)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Serialize for DeckOfPedigrees {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.cards.len()))?;
        for (y, card) in &self.cards {
            map.serialize_entry(&y.key(), &PedigreeJson(card))?;
        }
        map.end()
    }
}

/// Result of applying one reconstruction lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaOutcome {
    Reconstructed(Pedigree),
    NotApplicable,
    /// A required read was not unique; carries the reason.
    Ambiguous(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Twins,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    Reconstructed {
        pedigree: Pedigree,
        method: Method,
    },
    /// Neither hypothesis holds; the parent graph then has more than `n`
    /// vertices.
    Undetermined {
        reason: String,
    },
}

/// Twins first, then a cycle in the parent graph. The answer's deck is
/// recomputed and compared with the input card by card.
pub fn reconstruct(deck: &DeckOfPedigrees) -> Result<Reconstruction, ReconstructionError> {
    let n = deck.order();
    if n <= 3 {
        return Err(ReconstructionError::BadN {
            n,
            needed: "reconstruction needs n > 3",
        });
    }
    deck.check_layered()?;
    let (outcome, method) = match reconstruct_from_twins(deck)? {
        LemmaOutcome::NotApplicable => (reconstruct_from_cycle(deck)?, Method::Cycle),
        other => (other, Method::Twins),
    };
    match outcome {
        LemmaOutcome::Reconstructed(pedigree) => {
            if !deck.matches(&pedigree)? {
                return Err(ReconstructionError::MalformedDeck(
                    "the completed pedigree does not reproduce the deck".into(),
                ));
            }
            Ok(Reconstruction::Reconstructed { pedigree, method })
        }
        LemmaOutcome::NotApplicable => Ok(Reconstruction::Undetermined {
            reason: "no twins and the parent graph is a forest".into(),
        }),
        LemmaOutcome::Ambiguous(reason) => Ok(Reconstruction::Undetermined { reason }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isomorphism::{are_isomorphic, SearchLimit};
    use crate::pedigree::fixtures::*;
    use crate::pedigree::RawPedigree;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn twins4() -> Pedigree {
        RawPedigree::new()
            .vertices([1, 2, 3, 4, 10, 11, 12, 13, 14, 15])
            .parents(1, 10, 11)
            .parents(2, 10, 11)
            .parents(3, 12, 13)
            .parents(4, 14, 15)
            .extant("x1", 1)
            .extant("x2", 2)
            .extant("x3", 3)
            .extant("x4", 4)
            .validate()
            .unwrap()
    }

    #[test]
    fn deck_json_roundtrip() {
        let d = DeckOfPedigrees::from_pedigree(&twins4());
        let s = d.to_json();
        assert!(s.starts_with("{\n  \"x1,x2,x3\": {"));
        assert_eq!(DeckOfPedigrees::from_json(&s).unwrap(), d);
    }

    #[test]
    fn malformed_decks() {
        let d = DeckOfPedigrees::from_pedigree(&twins4());
        let mut cards: Vec<Pedigree> = d.cards().map(|(_, c)| c.clone()).collect();
        cards.pop();
        assert!(matches!(
            DeckOfPedigrees::new(cards),
            Err(ReconstructionError::MalformedDeck(_))
        ));
    }

    #[test]
    fn dispatcher_reconstructs_twins_from_shuffled_cards() {
        let p = twins4();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = DeckOfPedigrees::from_pedigree_shuffled(&p, &mut rng);
        match reconstruct(&d).unwrap() {
            Reconstruction::Reconstructed { pedigree, method } => {
                assert_eq!(method, Method::Twins);
                assert!(are_isomorphic(&p, &pedigree, SearchLimit::default()).unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn small_decks_are_rejected() {
        let d = DeckOfPedigrees::from_pedigree(&triangle());
        assert!(matches!(
            reconstruct(&d),
            Err(ReconstructionError::BadN { n: 3, .. })
        ));
    }
}
