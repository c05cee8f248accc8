#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use pedigree_core::label::Label;
use pedigree_core::pedigree::{
    as_discrete_generation, parent_graph, ParentGraph, RawPedigree, VertexId,
};
use pedigree_core::Pedigree;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random pedigree: `n` extant vertices and up to `extra` others, vertex `t`
/// taking parents among higher-numbered vertices. Pruned to the ancestors of
/// the extant vertices.
pub fn random_pedigree<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Pedigree {
    let m = extra.max(2);
    let mut raw = RawPedigree::new();
    let id = |t: usize| (n + t) as u64;
    raw.vertices((0..(n + m) as u64).collect::<Vec<_>>());
    for t in 0..m {
        if t + 2 < m && rng.gen_bool(0.6) {
            let ps: Vec<usize> = (t + 1..m)
                .collect::<Vec<_>>()
                .choose_multiple(rng, 2)
                .copied()
                .collect();
            raw.parents(id(t), id(ps[0]), id(ps[1]));
        }
    }
    for k in 0..n {
        let ps: Vec<usize> = (0..m)
            .collect::<Vec<_>>()
            .choose_multiple(rng, 2)
            .copied()
            .collect();
        raw.parents(k as u64, id(ps[0]), id(ps[1]));
        raw.extant(Label::indexed(k + 1), k as u64);
    }
    prune(&raw)
}

/// Keeps only vertices that touch an arc or carry a label, then restricts to
/// the ancestors of the extant vertices.
fn prune(raw: &RawPedigree) -> Pedigree {
    let mut used: BTreeSet<VertexId> = raw.arcs.iter().flat_map(|&(c, p)| [c, p]).collect();
    used.extend(raw.extant.iter().map(|(_, v)| *v));
    let mut clean = raw.clone();
    clean.vertices.retain(|v| used.contains(v));
    let p = clean.validate().expect("generated pedigree is valid");
    let labels = p.labels();
    p.sub_pedigree(&labels).expect("labels are extant")
}

/// Random discrete generation pedigree with `n` extant vertices, depth `d`
/// and layer widths drawn from `2..=max_width`.
pub fn random_dg<R: Rng>(rng: &mut R, n: usize, d: usize, max_width: usize) -> Pedigree {
    let mut widths = vec![n];
    for _ in 0..d {
        widths.push(rng.gen_range(2..=max_width));
    }
    let start: Vec<u64> = widths
        .iter()
        .scan(0u64, |acc, &w| {
            let s = *acc;
            *acc += w as u64;
            Some(s)
        })
        .collect();
    let mut raw = RawPedigree::new();
    raw.vertices((0..widths.iter().sum::<usize>() as u64).collect::<Vec<_>>());
    for layer in 0..d {
        for j in 0..widths[layer] {
            let ps: Vec<u64> = (0..widths[layer + 1] as u64)
                .collect::<Vec<_>>()
                .choose_multiple(rng, 2)
                .copied()
                .collect();
            let up = start[layer + 1];
            raw.parents(start[layer] + j as u64, up + ps[0], up + ps[1]);
        }
    }
    for k in 0..n {
        raw.extant(Label::indexed(k + 1), k as u64);
    }
    prune(&raw)
}

/// Renumbers vertices with a random injection into `0..4 * |V|`.
pub fn shuffle_ids<R: Rng>(p: &Pedigree, rng: &mut R) -> Pedigree {
    let ids: Vec<VertexId> = p.vertices().collect();
    let fresh: Vec<u64> = (0..(4 * ids.len()) as u64)
        .collect::<Vec<_>>()
        .choose_multiple(rng, ids.len())
        .copied()
        .collect();
    let map: BTreeMap<VertexId, VertexId> = ids
        .into_iter()
        .zip(fresh.into_iter().map(VertexId))
        .collect();
    p.relabel(|v| map[&v])
}

/// Label-preserving isomorphism by trying every bijection of the unlabelled
/// vertices.
pub fn brute_isomorphic(p: &Pedigree, q: &Pedigree) -> bool {
    if p.labels() != q.labels()
        || p.vertex_count() != q.vertex_count()
        || p.arc_count() != q.arc_count()
    {
        return false;
    }
    let fixed: BTreeMap<VertexId, VertexId> = p
        .extant()
        .map(|(l, v)| (v, q.vertex_of(l).expect("same labels")))
        .collect();
    let free_p: Vec<VertexId> = p.vertices().filter(|v| !fixed.contains_key(v)).collect();
    let free_q: Vec<VertexId> = q.vertices().filter(|v| q.label_of(*v).is_none()).collect();
    let target: BTreeSet<(VertexId, VertexId)> = q.arcs().into_iter().collect();
    free_q
        .iter()
        .copied()
        .permutations(free_q.len())
        .any(|perm| {
            let mut map = fixed.clone();
            map.extend(free_p.iter().copied().zip(perm));
            p.arcs()
                .into_iter()
                .all(|(c, par)| target.contains(&(map[&c], map[&par])))
        })
}

/// Number of set partitions of `0..n` into `k` blocks, by restricted growth
/// strings.
pub fn brute_partitions(n: usize, k: usize) -> u64 {
    fn go(pos: usize, n: usize, blocks: usize, k: usize) -> u64 {
        if pos == n {
            return u64::from(blocks == k);
        }
        let mut total = 0;
        for b in 0..=blocks {
            let next = if b == blocks { blocks + 1 } else { blocks };
            if next <= k {
                total += go(pos + 1, n, next, k);
            }
        }
        total
    }
    go(0, n, 0, k)
}

/// `|aut G|` for an adjacency mask by trying all permutations.
pub fn brute_automorphisms(n: usize, edges: &[(usize, usize)]) -> u64 {
    let set: BTreeSet<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    (0..n)
        .permutations(n)
        .filter(|p| {
            set.iter()
                .all(|&(a, b)| set.contains(&(p[a].min(p[b]), p[a].max(p[b]))))
        })
        .count() as u64
}

/// Whether the twin-or-cycle hypothesis holds for a layered pedigree.
pub fn has_twins_or_cycle(g: &ParentGraph) -> bool {
    !g.parallel_pairs().is_empty() || g.has_cycle()
}

/// Layered pedigrees meeting the twin or cycle hypothesis, by rejection. With
/// `twin_free` the parent graph has a cycle but no parallel edges.
pub fn hypothesis_instances(seed: u64, count: usize, twin_free: bool) -> Vec<Pedigree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(4..=6);
        let d = rng.gen_range(1..=3);
        let width = rng.gen_range(3..=n + 2);
        let p = random_dg(&mut rng, n, d, width);
        let dg = as_discrete_generation(&p).expect("generator output is layered");
        let g = parent_graph(&dg).unwrap();
        let wanted = if twin_free {
            g.parallel_pairs().is_empty() && g.has_cycle()
        } else {
            has_twins_or_cycle(&g)
        };
        if wanted {
            out.push(p);
        }
    }
    out
}
