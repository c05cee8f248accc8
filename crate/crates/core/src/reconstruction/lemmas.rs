use std::collections::BTreeSet;

use super::{DeckOfPedigrees, LemmaOutcome, ReconstructionError};
use crate::label::Label;
use crate::pedigree::{Pedigree, VertexId};

fn parents(card: &Pedigree, x: &Label) -> Result<[VertexId; 2], ReconstructionError> {
    let v = card
        .vertex_of(x)
        .ok_or_else(|| ReconstructionError::MalformedDeck(format!("card lacks {x}")))?;
    card.parents_of(v)
        .ok_or_else(|| ReconstructionError::MalformedDeck(format!("{x} has no parents on a card")))
}

/// The card missing the first label outside `avoid`.
fn card_avoiding<'a>(deck: &'a DeckOfPedigrees, avoid: &[&Label]) -> &'a Pedigree {
    let k = deck
        .labels()
        .iter()
        .find(|l| !avoid.contains(l))
        .expect("enough labels for a third card");
    deck.card_without(k).expect("one card per label")
}

/// Number of parents `x_i` and `x_j` have in common.
fn shared(deck: &DeckOfPedigrees, i: &Label, j: &Label) -> Result<usize, ReconstructionError> {
    let card = card_avoiding(deck, &[i, j]);
    let (a, b) = (parents(card, i)?, parents(card, j)?);
    Ok(a.iter().filter(|v| b.contains(v)).count())
}

/// Whether `x_i`, `x_j` and `x_l` have a common parent.
fn common(
    deck: &DeckOfPedigrees,
    i: &Label,
    j: &Label,
    l: &Label,
) -> Result<bool, ReconstructionError> {
    let card = card_avoiding(deck, &[i, j, l]);
    let (a, b, c) = (parents(card, i)?, parents(card, j)?, parents(card, l)?);
    Ok(a.iter().any(|v| b.contains(v) && c.contains(v)))
}

/// Adds `x` to `card` with the given parents.
fn complete(card: &Pedigree, x: &Label, ps: [VertexId; 2]) -> Pedigree {
    let mut raw = card.to_raw();
    let v = VertexId(card.max_id().map_or(0, |m| m.0 + 1));
    raw.vertices.push(v);
    raw.arcs.push((v, ps[0]));
    raw.arcs.push((v, ps[1]));
    raw.extant.push((x.clone(), v));
    raw.validate()
        .expect("adding a child to existing vertices keeps the pedigree valid")
}

fn first_twins(deck: &DeckOfPedigrees) -> Result<Option<(Label, Label)>, ReconstructionError> {
    let labels = deck.labels().as_slice();
    for (a, i) in labels.iter().enumerate() {
        for j in &labels[a + 1..] {
            if shared(deck, i, j)? == 2 {
                return Ok(Some((i.clone(), j.clone())));
            }
        }
    }
    Ok(None)
}

fn join_twin(
    deck: &DeckOfPedigrees,
    i: &Label,
    j: &Label,
) -> Result<Pedigree, ReconstructionError> {
    let card = deck.card_without(i).expect("one card per label");
    Ok(complete(card, i, parents(card, j)?))
}

/// If some `x_i`, `x_j` share both parents (visible on any card containing
/// both), joins `x_i` to the parents of `x_j` on the card missing `x_i`.
pub fn reconstruct_from_twins(deck: &DeckOfPedigrees) -> Result<LemmaOutcome, ReconstructionError> {
    let n = deck.order();
    if n < 3 {
        return Err(ReconstructionError::BadN {
            n,
            needed: "twin detection needs n >= 3",
        });
    }
    match first_twins(deck)? {
        Some((i, j)) => Ok(LemmaOutcome::Reconstructed(join_twin(deck, &i, &j)?)),
        None => Ok(LemmaOutcome::NotApplicable),
    }
}

/// Infers the parent graph from pairwise and triple common-parent reads; if
/// an edge `e_i` lies on a cycle, both its endpoints have other children and
/// are recognised on the card missing `x_i` by their sets of extant children.
/// A pair of parallel edges is a 2-cycle and is completed as for twins.
pub fn reconstruct_from_cycle(deck: &DeckOfPedigrees) -> Result<LemmaOutcome, ReconstructionError> {
    let n = deck.order();
    if n <= 3 {
        return Err(ReconstructionError::BadN {
            n,
            needed: "cycle reconstruction needs n > 3",
        });
    }
    if let Some((i, j)) = first_twins(deck)? {
        return Ok(LemmaOutcome::Reconstructed(join_twin(deck, &i, &j)?));
    }
    let labels = deck.labels().as_slice();
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            if shared(deck, &labels[a], &labels[b])? == 1 {
                neighbours[a].push(b);
                neighbours[b].push(a);
            }
        }
    }
    // groups[i][s]: edges meeting e_i at its endpoint s.
    let mut groups: Vec<[Vec<usize>; 2]> = Vec::with_capacity(n);
    for i in 0..n {
        let mut g: Vec<Vec<usize>> = Vec::new();
        for &j in &neighbours[i] {
            let mut placed = false;
            for group in &mut g {
                if common(deck, &labels[i], &labels[group[0]], &labels[j])? {
                    group.push(j);
                    placed = true;
                    break;
                }
            }
            if !placed {
                g.push(vec![j]);
            }
        }
        if g.len() > 2 {
            return Err(ReconstructionError::MalformedDeck(format!(
                "{} meets other parent pairs in more than two vertices",
                labels[i]
            )));
        }
        g.resize(2, Vec::new());
        groups.push([g[0].clone(), g[1].clone()]);
    }

    let mut uf: Vec<usize> = (0..2 * n).collect();
    for i in 0..n {
        for s in 0..2 {
            for &j in &groups[i][s] {
                let t = (0..2).find(|&t| groups[j][t].contains(&i)).ok_or_else(|| {
                    ReconstructionError::MalformedDeck("asymmetric sharing reads".into())
                })?;
                union(&mut uf, 2 * i + s, 2 * j + t);
            }
        }
    }
    let ends: Vec<[usize; 2]> = (0..n)
        .map(|i| [find(&mut uf, 2 * i), find(&mut uf, 2 * i + 1)])
        .collect();
    let Some(i) = (0..n).find(|&i| on_cycle(&ends, i)) else {
        return Ok(LemmaOutcome::NotApplicable);
    };

    let x = &labels[i];
    let card = deck.card_without(x).expect("one card per label");
    let mut found = [VertexId(0); 2];
    for s in 0..2 {
        let want: BTreeSet<&Label> = groups[i][s].iter().map(|&j| &labels[j]).collect();
        let matches: Vec<VertexId> = card
            .vertices()
            .filter(|&v| {
                let kids: BTreeSet<&Label> = card
                    .children_of(v)
                    .into_iter()
                    .filter_map(|c| card.label_of(c))
                    .collect();
                kids == want
            })
            .collect();
        match matches.as_slice() {
            [v] => found[s] = *v,
            _ => {
                return Ok(LemmaOutcome::Ambiguous(format!(
                    "{} vertices on the card without {x} have extant children {:?}",
                    matches.len(),
                    want
                )))
            }
        }
    }
    Ok(LemmaOutcome::Reconstructed(complete(card, x, found)))
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(uf, a), find(uf, b));
    if ra != rb {
        uf[ra.max(rb)] = ra.min(rb);
    }
}

/// Whether the endpoints of edge `i` stay connected without it.
fn on_cycle(ends: &[[usize; 2]], i: usize) -> bool {
    let size = ends.iter().flatten().max().map_or(0, |m| m + 1);
    let mut uf: Vec<usize> = (0..size).collect();
    for (j, e) in ends.iter().enumerate() {
        if j != i {
            union(&mut uf, e[0], e[1]);
        }
    }
    find(&mut uf, ends[i][0]) == find(&mut uf, ends[i][1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isomorphism::{are_isomorphic, SearchLimit};
    use crate::pedigree::fixtures::*;
    use crate::pedigree::RawPedigree;
    use crate::reconstruction::tests::twins4;

    fn four_cycle() -> Pedigree {
        RawPedigree::new()
            .vertices([1, 2, 3, 4, 10, 11, 12, 13])
            .parents(1, 10, 11)
            .parents(2, 11, 12)
            .parents(3, 12, 13)
            .parents(4, 13, 10)
            .extant("x1", 1)
            .extant("x2", 2)
            .extant("x3", 3)
            .extant("x4", 4)
            .validate()
            .unwrap()
    }

    fn assert_rebuilt(p: &Pedigree, outcome: LemmaOutcome) {
        match outcome {
            LemmaOutcome::Reconstructed(q) => {
                assert!(are_isomorphic(p, &q, SearchLimit::default()).unwrap())
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn twins_branch() {
        let p = twins4();
        assert_rebuilt(
            &p,
            reconstruct_from_twins(&DeckOfPedigrees::from_pedigree(&p)).unwrap(),
        );
        assert_eq!(
            reconstruct_from_twins(&DeckOfPedigrees::from_pedigree(&four_cycle())).unwrap(),
            LemmaOutcome::NotApplicable
        );
    }

    #[test]
    fn order_two_is_rejected() {
        let d = DeckOfPedigrees::from_pedigree(&twins());
        assert!(matches!(
            reconstruct_from_twins(&d),
            Err(ReconstructionError::BadN { n: 2, .. })
        ));
    }

    #[test]
    fn four_cycle_branch() {
        let p = four_cycle();
        assert_rebuilt(
            &p,
            reconstruct_from_cycle(&DeckOfPedigrees::from_pedigree(&p)).unwrap(),
        );
    }

    #[test]
    fn triangle_is_rejected() {
        let d = DeckOfPedigrees::from_pedigree(&triangle());
        assert!(matches!(
            reconstruct_from_cycle(&d),
            Err(ReconstructionError::BadN { n: 3, .. })
        ));
    }

    #[test]
    fn forest_is_not_applicable() {
        // Parent graph: a path on five vertices.
        let p = RawPedigree::new()
            .vertices([1, 2, 3, 4, 10, 11, 12, 13, 14])
            .parents(1, 10, 11)
            .parents(2, 11, 12)
            .parents(3, 12, 13)
            .parents(4, 13, 14)
            .extant("x1", 1)
            .extant("x2", 2)
            .extant("x3", 3)
            .extant("x4", 4)
            .validate()
            .unwrap();
        assert_eq!(
            reconstruct_from_cycle(&DeckOfPedigrees::from_pedigree(&p)).unwrap(),
            LemmaOutcome::NotApplicable
        );
    }

    #[test]
    fn triangle_plus_pendant_uses_the_triangle() {
        // x1, x2, x3 on a triangle {10, 11, 12}; x4 hangs off 12.
        let p = RawPedigree::new()
            .vertices([1, 2, 3, 4, 10, 11, 12, 13])
            .parents(1, 10, 11)
            .parents(2, 11, 12)
            .parents(3, 10, 12)
            .parents(4, 12, 13)
            .extant("x1", 1)
            .extant("x2", 2)
            .extant("x3", 3)
            .extant("x4", 4)
            .validate()
            .unwrap();
        assert_rebuilt(
            &p,
            reconstruct_from_cycle(&DeckOfPedigrees::from_pedigree(&p)).unwrap(),
        );
    }
}
