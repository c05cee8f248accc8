use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Pedigree, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Male,
    Female,
}

impl Gender {
    pub fn opposite(self) -> Gender {
        match self {
            Gender::Male => Gender::Female,
            Gender::Female => Gender::Male,
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gender::Male => "m",
            Gender::Female => "f",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenderAssignment(pub BTreeMap<VertexId, Gender>);

impl GenderAssignment {
    pub fn get(&self, v: VertexId) -> Option<Gender> {
        self.0.get(&v).copied()
    }

    /// Every non-founder has one male and one female parent.
    pub fn is_valid_for(&self, p: &Pedigree) -> bool {
        p.vertices().all(|v| match p.parents_of(v) {
            None => self.0.contains_key(&v),
            Some([a, b]) => match (self.get(a), self.get(b)) {
                (Some(ga), Some(gb)) => ga != gb && self.0.contains_key(&v),
                _ => false,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenderError {
    /// The mating graph contains this odd cycle, listed in cyclic order.
    #[error("no gender labelling exists: odd mating cycle {}", fmt_cycle(.odd_cycle))]
    Impossible { odd_cycle: Vec<VertexId> },
}

fn fmt_cycle(c: &[VertexId]) -> String {
    c.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" - ")
}

/// Undirected edges joining the two parents of each non-founder, one per
/// child (so parallel edges appear for full siblings).
pub fn mating_graph(p: &Pedigree) -> Vec<(VertexId, VertexId)> {
    p.vertices()
        .filter_map(|v| p.parents_of(v))
        .map(|[a, b]| (a, b))
        .collect()
}

/// Two-colours the mating graph. Each component's lowest vertex is male, and
/// vertices without mating edges are male.
pub fn find_gender_labelling(p: &Pedigree) -> Result<GenderAssignment, GenderError> {
    let n = p.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        if let Some([a, b]) = p.parents_at(i) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut colour: Vec<Option<Gender>> = vec![None; n];
    let mut tree_parent: Vec<Option<usize>> = vec![None; n];
    for root in 0..n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(Gender::Male);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].expect("queued vertices are coloured");
            for &w in &adj[u] {
                match colour[w] {
                    None => {
                        colour[w] = Some(cu.opposite());
                        tree_parent[w] = Some(u);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        let cycle = odd_cycle(&tree_parent, u, w);
                        return Err(GenderError::Impossible {
                            odd_cycle: cycle.into_iter().map(|i| p.id_at(i)).collect(),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(GenderAssignment(
        (0..n)
            .map(|i| (p.id_at(i), colour[i].expect("all vertices coloured")))
            .collect(),
    ))
}

/// Closes the BFS-tree paths from `u` and `w` at their lowest common ancestor.
fn odd_cycle(tree_parent: &[Option<usize>], u: usize, w: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut v = vec![x];
        while let Some(p) = tree_parent[x] {
            v.push(p);
            x = p;
        }
        v
    };
    let pu = path(u);
    let pw = path(w);
    let lca = *pu
        .iter()
        .find(|x| pw.contains(x))
        .expect("u and w share a BFS root");
    let mut cycle: Vec<usize> = pu.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let back: Vec<usize> = pw.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}
