use std::collections::BTreeSet;

use thiserror::Error;

use super::{Pedigree, PedigreeError, VertexId};
use crate::label::Label;

/// A pedigree whose vertices split into generations `X_0..X_d`, with every
/// non-founder's parents one generation up and all founders in `X_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteGenerationPedigree {
    pedigree: Pedigree,
    layers: Vec<Vec<VertexId>>,
}

impl DiscreteGenerationPedigree {
    pub fn pedigree(&self) -> &Pedigree {
        &self.pedigree
    }

    pub fn into_pedigree(self) -> Pedigree {
        self.pedigree
    }

    pub fn layers(&self) -> &[Vec<VertexId>] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NotLayered {
    #[error("vertex {0} has no extant descendent")]
    Unreachable(VertexId),
    #[error("vertex {child} at depth {child_depth} has parent {parent} at depth {parent_depth}")]
    GenerationSkip {
        child: VertexId,
        child_depth: usize,
        parent: VertexId,
        parent_depth: usize,
    },
    #[error("founder {vertex} sits at depth {depth}, above the bottom generation {bottom}")]
    EarlyFounder {
        vertex: VertexId,
        depth: usize,
        bottom: usize,
    },
}

/// Layers the pedigree by vertex depth and checks the generation structure.
pub fn as_discrete_generation(p: &Pedigree) -> Result<DiscreteGenerationPedigree, NotLayered> {
    let d = p.depth();
    let mut layers: Vec<Vec<VertexId>> = vec![Vec::new(); d + 1];
    for i in 0..p.vertex_count() {
        let v = p.id_at(i);
        let depth = p.depth_at(i).ok_or(NotLayered::Unreachable(v))?;
        match p.parents_at(i) {
            Some(ps) => {
                for q in ps {
                    let qd = p
                        .depth_at(q)
                        .expect("parents of reachable vertices are reachable");
                    if qd != depth + 1 {
                        return Err(NotLayered::GenerationSkip {
                            child: v,
                            child_depth: depth,
                            parent: p.id_at(q),
                            parent_depth: qd,
                        });
                    }
                }
            }
            None if depth != d => {
                return Err(NotLayered::EarlyFounder {
                    vertex: v,
                    depth,
                    bottom: d,
                });
            }
            None => {}
        }
        layers[depth].push(v);
    }
    Ok(DiscreteGenerationPedigree {
        pedigree: p.clone(),
        layers,
    })
}

/// Multigraph on `X_1` with one edge per extant vertex joining its parents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParentGraph {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(Label, [VertexId; 2])>,
}

impl ParentGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|(_, e)| e.contains(&v)).count()
    }

    /// Indices of edges sharing both endpoints with an earlier edge.
    pub fn parallel_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                if self.edges[i].1 == self.edges[j].1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// True when some edge lies on a cycle (a parallel pair counts as a 2-cycle).
    pub fn has_cycle(&self) -> bool {
        // A multigraph is a forest iff |E| = |V| - components.
        let index = |v: VertexId| {
            self.vertices
                .binary_search(&v)
                .expect("edge endpoint in X_1")
        };
        let mut uf: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut x = x;
            while uf[x] != r {
                let next = uf[x];
                uf[x] = r;
                x = next;
            }
            r
        }
        for (_, [a, b]) in &self.edges {
            let (ra, rb) = (find(&mut uf, index(*a)), find(&mut uf, index(*b)));
            if ra == rb {
                return true;
            }
            uf[ra] = rb;
        }
        false
    }
}

pub fn parent_graph(p: &DiscreteGenerationPedigree) -> Result<ParentGraph, PedigreeError> {
    if p.depth() < 1 {
        return Err(PedigreeError::DepthZero);
    }
    let ped = p.pedigree();
    let mut vertices = BTreeSet::new();
    let mut edges = Vec::with_capacity(ped.order());
    for (label, x) in ped.extant() {
        let ps = ped
            .parents_of(x)
            .expect("extant vertices of a layered pedigree have parents");
        vertices.extend(ps);
        edges.push((label.clone(), ps));
    }
    Ok(ParentGraph {
        vertices: vertices.into_iter().collect(),
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pedigree::fixtures::*;
    use crate::pedigree::RawPedigree;

    #[test]
    fn twins_are_layered() {
        let dg = as_discrete_generation(&twins()).unwrap();
        assert_eq!(dg.depth(), 1);
        assert_eq!(dg.layers()[0], vec![VertexId(1), VertexId(2)]);
        assert_eq!(dg.layers()[1], vec![VertexId(10), VertexId(11)]);
    }

    #[test]
    fn generation_skip_is_not_layered() {
        // x1's parents are 2 (depth 1) and 3 (depth 2).
        let p = RawPedigree::new()
            .vertices([1, 2, 3, 4])
            .parents(1, 2, 3)
            .parents(2, 3, 4)
            .extant("x1", 1)
            .validate()
            .unwrap();
        assert!(matches!(
            as_discrete_generation(&p),
            Err(NotLayered::GenerationSkip {
                child: VertexId(1),
                ..
            })
        ));
    }

    #[test]
    fn early_founder_is_not_layered() {
        let p = RawPedigree::new()
            .vertices([1, 2, 3, 4, 5])
            .parents(1, 2, 3)
            .parents(2, 4, 5)
            .extant("x1", 1)
            .validate()
            .unwrap();
        assert_eq!(
            as_discrete_generation(&p),
            Err(NotLayered::EarlyFounder {
                vertex: VertexId(3),
                depth: 1,
                bottom: 2
            })
        );
    }

    #[test]
    fn parent_graphs() {
        let g = parent_graph(&as_discrete_generation(&twins()).unwrap()).unwrap();
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.edges[0].1, g.edges[1].1);
        assert_eq!(g.parallel_pairs(), vec![(0, 1)]);
        assert!(g.has_cycle());

        let g = parent_graph(&as_discrete_generation(&triangle()).unwrap()).unwrap();
        assert_eq!(g.vertices.len(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.vertices.iter().all(|&v| g.degree(v) == 2));
        assert!(g.has_cycle());

        let g = parent_graph(&as_discrete_generation(&star()).unwrap()).unwrap();
        assert_eq!(g.degree(VertexId(10)), 3);
        assert!(!g.has_cycle());
    }

    #[test]
    fn four_cycle_parent_graph() {
        let p = RawPedigree::new()
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
            .unwrap();
        let g = parent_graph(&as_discrete_generation(&p).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.vertices.len(), 4);
        assert!(g.vertices.iter().all(|&v| g.degree(v) == 2));
        let labels: Vec<String> = g.edges.iter().map(|(l, _)| l.to_string()).collect();
        assert_eq!(labels, ["x1", "x2", "x3", "x4"]);
        assert!(g.has_cycle());
    }
}
