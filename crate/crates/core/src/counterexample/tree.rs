use std::collections::BTreeMap;

use super::bits::{check_n, BitString};
use super::CounterexampleError;
use crate::label::Label;

/// A 0/1 tuple `b = (b_1, .., b_j)` addressing the vertex `t(b)` at depth `j`.
pub type Tuple = Vec<u8>;

/// All tuples of length `len`, in lexicographic order.
pub fn tuples(len: usize) -> impl Iterator<Item = Tuple> {
    (0..1u32 << len).map(move |v| (0..len).map(|j| ((v >> (len - 1 - j)) & 1) as u8).collect())
}

/// Balanced binary tree rooted at an extant vertex. The subtree at `t(b)`
/// holds the leaves `k` with `k(i_1) = b_1, .., k(i_j) = b_j`; its left
/// parent is `t(b, 0)` and its right parent `t(b, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeSpec {
    label: Label,
    index: usize,
    ordering: Vec<usize>,
    leaves: BTreeMap<Tuple, BitString>,
}

impl TreeSpec {
    pub fn label(&self) -> &Label {
        &self.label
    }

    /// The digit `i` missing from the ordering.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn n(&self) -> usize {
        self.ordering.len() + 1
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    /// Depth of the leaves, `n - 2`.
    pub fn depth(&self) -> usize {
        self.n() - 2
    }

    /// 1-based position of `digit` in the ordering.
    pub fn position_of(&self, digit: usize) -> Option<usize> {
        self.ordering
            .iter()
            .position(|&d| d == digit)
            .map(|p| p + 1)
    }

    /// The leaf `t(b)` for a full-length tuple.
    pub fn leaf(&self, b: &[u8]) -> Option<BitString> {
        self.leaves.get(b).copied()
    }

    pub fn leaves(&self) -> impl Iterator<Item = (&Tuple, BitString)> {
        self.leaves.iter().map(|(b, &k)| (b, k))
    }

    /// `g_i(b)`: leaves above `t(b)`.
    pub fn leaves_under(&self, prefix: &[u8]) -> Vec<BitString> {
        self.leaves
            .iter()
            .filter(|(b, _)| b.starts_with(prefix))
            .map(|(_, &k)| k)
            .collect()
    }
}

pub fn build_tree(
    x: Label,
    leaves: &[BitString],
    ordering: &[usize],
) -> Result<TreeSpec, CounterexampleError> {
    let n = ordering.len() + 1;
    check_n(n)?;
    let mut seen = vec![false; n + 1];
    for &d in ordering {
        if !(1..=n).contains(&d) || seen[d] {
            return Err(CounterexampleError::BadOrdering {
                label: x,
                ordering: ordering.to_vec(),
            });
        }
        seen[d] = true;
    }
    let index = (1..=n).find(|&d| !seen[d]).expect("one digit is missing");
    let bad_split = |prefix: Tuple| CounterexampleError::UnevenSplit {
        label: x.clone(),
        prefix,
    };
    if leaves.len() != 1 << (n - 2) || leaves.iter().any(|k| k.width() != n) {
        return Err(bad_split(Vec::new()));
    }
    let mut by_tuple = BTreeMap::new();
    for &k in leaves {
        let b: Tuple = ordering[..n - 2].iter().map(|&d| k.digit(d)).collect();
        if by_tuple.insert(b.clone(), k).is_some() {
            return Err(bad_split(b));
        }
    }
    Ok(TreeSpec {
        label: x,
        index,
        ordering: ordering.to_vec(),
        leaves: by_tuple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexample::build_hypergraphs;

    #[test]
    fn tuple_order() {
        let all: Vec<Tuple> = tuples(2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(0).collect::<Vec<_>>(), vec![Vec::<u8>::new()]);
    }

    #[test]
    fn n3_tree_is_two_parents() {
        let (g, _) = build_hypergraphs(3).unwrap();
        let t = build_tree(Label::indexed(1), g.edge(1), &[2, 3]).unwrap();
        assert_eq!(t.depth(), 1);
        assert_eq!(t.leaf(&[0]).unwrap().to_string(), "101");
        assert_eq!(t.leaf(&[1]).unwrap().to_string(), "011");
    }

    #[test]
    fn n5_left_subtree_of_x5() {
        let (g, h) = build_hypergraphs(5).unwrap();
        let ordering = [2, 3, 1, 4];
        let t = build_tree(Label::indexed(5), g.edge(5), &ordering).unwrap();
        let u = build_tree(Label::indexed(5), h.edge(5), &ordering).unwrap();
        let left = t.leaves_under(&[0]);
        assert_eq!(left.len(), 4);
        assert!(left.iter().all(|k| k.digit(2) == 0 && k.digit(5) == 1));
        for (b, k) in t.leaves() {
            assert!(k.is_even());
            assert!(!u.leaf(b).unwrap().is_even());
            // The last ordered digit is the only one that differs.
            assert_eq!(k.distance(u.leaf(b).unwrap()), 1);
            assert_ne!(k.digit(4), u.leaf(b).unwrap().digit(4));
        }
    }

    #[test]
    fn bad_inputs() {
        let (g, _) = build_hypergraphs(4).unwrap();
        assert!(matches!(
            build_tree(Label::indexed(1), g.edge(1), &[2, 2, 3]),
            Err(CounterexampleError::BadOrdering { .. })
        ));
        // Leaves must split on the first two ordered digits; g1's members all
        // have digit 1 set, so ordering on digit 1 first cannot split them.
        assert!(matches!(
            build_tree(Label::indexed(2), g.edge(1), &[1, 3, 4]),
            Err(CounterexampleError::UnevenSplit { .. })
        ));
    }
}
