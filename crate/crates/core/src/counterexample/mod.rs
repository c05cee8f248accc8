//! Non-reconstructible pedigree pairs built from hypercube parity classes.
//!
//! `G` lives on the even-weight `n`-bit strings and `H` on the odd-weight
//! ones; edge `i` holds the strings with digit `i` set. Deleting edge `i`
//! makes the two hypergraphs isomorphic by flipping digit `i`. Hanging a
//! balanced binary tree from each extant vertex `x_i` down to the members of
//! `g_i` (or `h_i`) turns the pair into pedigrees `T` and `U` that agree on
//! every card of size `n - 1` but differ as wholes.
//!
//! Vertex ids are assigned deterministically: `x_i` gets `i - 1`, internal
//! tree vertices follow (by tree, then tuple length, then tuple), and founders
//! come last in increasing bitstring order.

mod bits;
mod cube;
mod gender;
mod hypergraph;
mod tree;

pub use bits::{parity_classes, BitString, MAX_N};
pub use cube::{
    eq_cube_holds, eq_cube_system, parity_rigidity_holds, sample_eq_cube_solution, CubeSolution,
};
pub use gender::{genderize, CopyKind, Genderized};
pub use hypergraph::{
    all_edge_deleted_isomorphisms, build_hypergraphs, edge_deleted_isomorphism,
    preserves_edges_except, IndexedHypergraph, VertexMap,
};
pub use tree::{build_tree, tuples, TreeSpec, Tuple};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::isomorphism::LabelledIsomorphism;
use crate::label::Label;
use crate::pedigree::{Pedigree, RawPedigree, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CounterexampleError {
    #[error("n = {n} is outside 3..={max}", max = MAX_N)]
    BadN { n: usize },
    #[error("index {index} is outside 1..={n}")]
    BadIndex { index: usize, n: usize },
    #[error("ordering {ordering:?} for {label} is not a permutation of the other digits")]
    BadOrdering { label: Label, ordering: Vec<usize> },
    #[error("expected {expected} orderings, got {found}")]
    OrderingCount { expected: usize, found: usize },
    #[error("leaves of {label} do not split evenly below tuple {prefix:?}")]
    UnevenSplit { label: Label, prefix: Tuple },
}

/// Digit orderings `i_1..i_{n-1}`, one per tree; `T_i` and `U_i` share theirs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orderings {
    per_tree: Vec<Vec<usize>>,
}

impl Orderings {
    /// Ascending order of `{1..n} \ {i}` for every `i`.
    pub fn ascending(n: usize) -> Self {
        Orderings {
            per_tree: (1..=n)
                .map(|i| (1..=n).filter(|&d| d != i).collect())
                .collect(),
        }
    }

    /// `per_tree[i - 1]` is the ordering for tree `i`. Validity is checked by
    /// [`build_counterexample`].
    pub fn new(per_tree: Vec<Vec<usize>>) -> Self {
        Orderings { per_tree }
    }

    /// Replaces the ordering of tree `i`.
    pub fn with(mut self, i: usize, ordering: Vec<usize>) -> Self {
        self.per_tree[i - 1] = ordering;
        self
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.per_tree[i - 1]
    }

    pub fn len(&self) -> usize {
        self.per_tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_tree.is_empty()
    }
}

/// Names of the vertices of `T` or `U`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeVertex {
    /// `x_i` (1-based), the root `t()` of tree `i`.
    Extant(usize),
    /// `t(b)` in tree `tree` with `1 <= |b| <= n - 3`.
    Internal { tree: usize, tuple: Tuple },
    /// A leaf, shared by every tree containing the bitstring.
    Founder(BitString),
}

/// One pedigree of the pair together with the data it was built from.
#[derive(Clone, Debug)]
pub struct Side {
    pub hypergraph: IndexedHypergraph,
    pub trees: Vec<TreeSpec>,
    pub pedigree: Pedigree,
    ids: BTreeMap<TreeVertex, VertexId>,
    names: Vec<TreeVertex>,
}

impl Side {
    pub fn id(&self, v: &TreeVertex) -> Option<VertexId> {
        self.ids.get(v).copied()
    }

    pub fn name(&self, id: VertexId) -> Option<&TreeVertex> {
        self.names.get(id.0 as usize)
    }

    /// The vertex `t(b)` of tree `i`, whatever the length of `b`.
    pub fn tree_vertex(&self, i: usize, b: &[u8]) -> Option<VertexId> {
        let tree = &self.trees[i - 1];
        let name = if b.is_empty() {
            TreeVertex::Extant(i)
        } else if b.len() == tree.depth() {
            TreeVertex::Founder(tree.leaf(b)?)
        } else {
            TreeVertex::Internal {
                tree: i,
                tuple: b.to_vec(),
            }
        };
        self.id(&name)
    }
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub n: usize,
    pub orderings: Orderings,
    pub t: Side,
    pub u: Side,
}

pub fn build_counterexample(
    n: usize,
    orderings: Option<Orderings>,
) -> Result<Counterexample, CounterexampleError> {
    bits::check_n(n)?;
    let orderings = orderings.unwrap_or_else(|| Orderings::ascending(n));
    if orderings.len() != n {
        return Err(CounterexampleError::OrderingCount {
            expected: n,
            found: orderings.len(),
        });
    }
    let (g, h) = build_hypergraphs(n)?;
    let t = build_side(n, g, &orderings)?;
    let u = build_side(n, h, &orderings)?;
    Ok(Counterexample { n, orderings, t, u })
}

fn build_side(
    n: usize,
    hypergraph: IndexedHypergraph,
    orderings: &Orderings,
) -> Result<Side, CounterexampleError> {
    let trees = (1..=n)
        .map(|i| {
            let tree = build_tree(Label::indexed(i), hypergraph.edge(i), orderings.get(i))?;
            if tree.index() != i {
                return Err(CounterexampleError::BadOrdering {
                    label: Label::indexed(i),
                    ordering: orderings.get(i).to_vec(),
                });
            }
            Ok(tree)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut names: Vec<TreeVertex> = (1..=n).map(TreeVertex::Extant).collect();
    for i in 1..=n {
        for len in 1..n - 2 {
            names.extend(tuples(len).map(|tuple| TreeVertex::Internal { tree: i, tuple }));
        }
    }
    let mut founders: Vec<BitString> = trees
        .iter()
        .flat_map(|t| t.leaves().map(|(_, k)| k))
        .collect();
    founders.sort();
    founders.dedup();
    names.extend(founders.into_iter().map(TreeVertex::Founder));
    let ids: BTreeMap<TreeVertex, VertexId> = names
        .iter()
        .enumerate()
        .map(|(k, name)| (name.clone(), VertexId(k as u64)))
        .collect();

    let mut raw = RawPedigree::new();
    raw.vertices = (0..names.len() as u64).map(VertexId).collect();
    let depth = n - 2;
    for (i, tree) in trees.iter().enumerate() {
        let i = i + 1;
        let at = |b: &[u8]| -> VertexId {
            let name = if b.is_empty() {
                TreeVertex::Extant(i)
            } else if b.len() == depth {
                TreeVertex::Founder(tree.leaf(b).expect("full tuple names a leaf"))
            } else {
                TreeVertex::Internal {
                    tree: i,
                    tuple: b.to_vec(),
                }
            };
            ids[&name]
        };
        for len in 0..depth {
            for b in tuples(len) {
                let mut left = b.clone();
                left.push(0);
                let mut right = b.clone();
                right.push(1);
                raw.arcs.push((at(&b), at(&left)));
                raw.arcs.push((at(&b), at(&right)));
            }
        }
        raw.extant.push((tree.label().clone(), at(&[])));
    }
    let pedigree = raw
        .validate()
        .expect("counterexample construction is a valid pedigree");
    Ok(Side {
        hypergraph,
        trees,
        pedigree,
        ids,
        names,
    })
}

/// Explicit isomorphism `T(X_0 \ {x_j}) -> U(X_0 \ {x_j})`.
///
/// Founders flip digit `j`. In tree `i`, with `j` at position `p` of its
/// ordering, `t(b)` maps to `u(b)` when `|b| < p` and to `u(b')` otherwise,
/// where `b'` is `b` with component `p` flipped.
pub fn hypomorphism_witness(
    ce: &Counterexample,
    j: usize,
) -> Result<LabelledIsomorphism, CounterexampleError> {
    let n = ce.n;
    if !(1..=n).contains(&j) {
        return Err(CounterexampleError::BadIndex { index: j, n });
    }
    let mut map = BTreeMap::new();
    for (v, name) in ce.t.names.iter().enumerate() {
        let image = match name {
            TreeVertex::Extant(i) if *i == j => continue,
            TreeVertex::Extant(i) => TreeVertex::Extant(*i),
            TreeVertex::Internal { tree, .. } if *tree == j => continue,
            TreeVertex::Internal { tree, tuple } => {
                let p = ce.t.trees[tree - 1]
                    .position_of(j)
                    .expect("j is in the ordering of another tree");
                let mut b = tuple.clone();
                if b.len() >= p {
                    b[p - 1] ^= 1;
                }
                TreeVertex::Internal {
                    tree: *tree,
                    tuple: b,
                }
            }
            TreeVertex::Founder(k) => {
                let only_in_j = (1..=n).all(|i| i == j || k.digit(i) == 0);
                if only_in_j {
                    continue;
                }
                TreeVertex::Founder(k.flip(j))
            }
        };
        let w = ce.u.id(&image).expect("image vertex exists in U");
        map.insert(VertexId(v as u64), w);
    }
    Ok(LabelledIsomorphism(map))
}

impl Counterexample {
    /// Labels `X_0 \ {x_j}`.
    pub fn card_labels(&self, j: usize) -> Vec<Label> {
        (1..=self.n)
            .filter(|&i| i != j)
            .map(Label::indexed)
            .collect()
    }

    /// The card pair `(T(X_0 \ {x_j}), U(X_0 \ {x_j}))`.
    pub fn cards(&self, j: usize) -> (Pedigree, Pedigree) {
        let labels = self.card_labels(j);
        (
            self.t
                .pedigree
                .sub_pedigree(&labels)
                .expect("labels are extant"),
            self.u
                .pedigree
                .sub_pedigree(&labels)
                .expect("labels are extant"),
        )
    }
}
