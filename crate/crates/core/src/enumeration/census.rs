use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;

use super::EnumError;
use crate::isomorphism::{canonical_form, CanonicalCode, SearchLimit};
use crate::pedigree::{Pedigree, RawPedigree};

/// Assignments tried before [`brute_count_n`] gives up.
pub const ASSIGNMENT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    /// Discard assignments leaving some non-extant vertex without children.
    pub strict_population: bool,
    pub max_assignments: u64,
    pub limit: SearchLimit,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            strict_population: false,
            max_assignments: ASSIGNMENT_BUDGET,
            limit: SearchLimit::default(),
        }
    }
}

/// Builds the pedigree where vertex `j` of layer `i < d` takes the parent pair
/// `choice[i * n + j]` from layer `i + 1`. Layer-`d` vertices without children
/// are dropped; returns `None` when `strict` and a layer above 0 has a
/// childless vertex.
fn assemble(
    n: usize,
    d: usize,
    pairs: &[(usize, usize)],
    choice: &[usize],
    strict: bool,
) -> Option<Pedigree> {
    let id = |layer: usize, j: usize| (layer * n + j) as u64;
    let mut has_child = vec![false; n * (d + 1)];
    for (k, &c) in choice.iter().enumerate() {
        let (a, b) = pairs[c];
        let up = k / n + 1;
        has_child[up * n + a] = true;
        has_child[up * n + b] = true;
    }
    if strict && !has_child[n..].iter().all(|&h| h) {
        return None;
    }
    let mut raw = RawPedigree::new();
    for layer in 0..=d {
        for j in 0..n {
            if layer < d || has_child[layer * n + j] {
                raw.vertex(id(layer, j));
            }
        }
    }
    for (k, &c) in choice.iter().enumerate() {
        let (a, b) = pairs[c];
        let (layer, j) = (k / n, k % n);
        raw.parents(id(layer, j), id(layer + 1, a), id(layer + 1, b));
    }
    for j in 0..n {
        raw.extant(format!("x{}", j + 1), id(0, j));
    }
    Some(raw.validate().expect("layered assignments are valid"))
}

fn decode(mut index: u64, radix: u64, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % radix) as usize;
        index /= radix;
    }
    out
}

/// Exact number of discrete generation pedigrees with `n` vertices per layer
/// and depth `d`, up to labelled isomorphism, by trying every choice of parent
/// pair for every non-founder.
pub fn brute_count_n(n: usize, d: usize, options: CensusOptions) -> Result<BigUint, EnumError> {
    if n < 2 || d < 1 {
        return Err(EnumError::BadArgs(format!(
            "need n >= 2 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let radix = pairs.len() as u64;
    let slots = n * d;
    let total = u32::try_from(slots)
        .ok()
        .and_then(|s| radix.checked_pow(s))
        .filter(|&t| t <= options.max_assignments)
        .ok_or(EnumError::ResourceLimit {
            nodes: options.max_assignments,
        })?;
    let codes = (0..total)
        .into_par_iter()
        .try_fold(HashSet::<CanonicalCode>::new, |mut seen, index| {
            let choice = decode(index, radix, slots);
            if let Some(p) = assemble(n, d, &pairs, &choice, options.strict_population) {
                seen.insert(canonical_form(&p, options.limit)?.code);
            }
            Ok::<_, EnumError>(seen)
        })
        .try_reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            Ok(a)
        })?;
    Ok(BigUint::from(codes.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, d: usize, strict: bool) -> u64 {
        let options = CensusOptions {
            strict_population: strict,
            ..CensusOptions::default()
        };
        u64::try_from(brute_count_n(n, d, options).unwrap()).unwrap()
    }

    #[test]
    fn two_per_layer_is_unique() {
        for d in 1..=3 {
            assert_eq!(count(2, d, false), 1);
            assert_eq!(count(2, d, true), 1);
        }
    }

    #[test]
    fn three_at_depth_one() {
        assert_eq!(count(3, 1, false), 5);
        assert_eq!(count(3, 1, true), 4);
    }

    #[test]
    fn budget() {
        let options = CensusOptions {
            max_assignments: 100,
            ..CensusOptions::default()
        };
        assert!(matches!(
            brute_count_n(3, 2, options),
            Err(EnumError::ResourceLimit { .. })
        ));
    }
}
