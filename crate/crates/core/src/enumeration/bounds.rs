use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Pow;
use serde::Serialize;

use super::graphs::{edge_automorphism_count, graph_classes, SimpleGraph, MAX_CLASS_ORDER};
use super::numbers::{binomial, factorial, stirling2};
use super::EnumError;

/// Bounds on a pedigree count. `lower` is absent when no lower-bound
/// construction applies (odd `n` in the general model).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountBounds {
    pub lower: Option<BigRational>,
    pub upper: BigUint,
    pub exact: Option<BigUint>,
}

impl CountBounds {
    /// Whether `lower <= exact <= upper`, vacuously true without `exact`.
    pub fn is_consistent(&self) -> bool {
        let Some(exact) = &self.exact else {
            return true;
        };
        let above = self.lower.as_ref().is_none_or(|l| *l <= rational(exact));
        above && *exact <= self.upper
    }

    pub fn with_exact(mut self, exact: BigUint) -> Self {
        self.exact = Some(exact);
        self
    }
}

#[derive(Serialize)]
struct CountBoundsJson {
    lower: Option<String>,
    upper: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

impl Serialize for CountBounds {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CountBoundsJson {
            lower: self.lower.as_ref().map(ToString::to_string),
            upper: self.upper.to_string(),
            exact: self.exact.as_ref().map(ToString::to_string),
        }
        .serialize(serializer)
    }
}

pub(crate) fn rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn check(n: usize, d: usize) -> Result<(), EnumError> {
    if n < 2 || d < 1 {
        return Err(EnumError::BadArgs(format!(
            "need n >= 2 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

/// `(n - 1) n^(n-2) / 2`: labelled trees on `n` vertices divided by `n!`,
/// times `C(n, 2) (n - 1)!`.
pub fn tree_base(n: usize) -> BigRational {
    let trees = BigUint::from(n).pow(n as u32 - 2);
    ratio(BigUint::from(n - 1) * trees, BigUint::from(2u32))
}

/// Discrete generation pedigrees with `n` vertices per layer and depth `d`.
pub fn bounds_n(n: usize, d: usize) -> Result<CountBounds, EnumError> {
    check(n, d)?;
    let lower = tree_base(n).pow(d as i32);
    let upper = binomial(n, 2).pow((n * d) as u32);
    Ok(CountBounds {
        lower: Some(lower),
        upper,
        exact: None,
    })
}

/// General pedigrees with `n` vertices at each depth up to `d`.
pub fn bounds_m(n: usize, d: usize) -> Result<CountBounds, EnumError> {
    check(n, d)?;
    let upper = binomial(n * d - 1, 2).pow((n * d) as u32);
    let lower = if n.is_multiple_of(2) {
        let mut acc = tree_base(n);
        for k in 0..d.saturating_sub(1) {
            acc *= layer_factor(n, d - 1 - k);
        }
        Some(acc)
    } else {
        None
    };
    Ok(CountBounds {
        lower,
        upper,
        exact: None,
    })
}

/// `((n / 2) m)^n`.
fn layer_factor(n: usize, m: usize) -> BigRational {
    ratio(BigUint::from(n * m), BigUint::from(2u32)).pow(n as i32)
}

/// Lower bound for general pedigrees in which no vertex at depth `k` has a
/// parent deeper than `k + t + 1`.
pub fn bounded_gap_lower_m(n: usize, d: usize, t: usize) -> Result<BigRational, EnumError> {
    check(n, d)?;
    if !n.is_multiple_of(2) {
        return Err(EnumError::BadArgs(format!(
            "the gap bound needs even n, got {n}"
        )));
    }
    if t < 1 || t + 1 > d {
        return Err(EnumError::BadArgs(format!(
            "need 1 <= t <= d - 1, got t = {t}, d = {d}"
        )));
    }
    let mut acc = tree_base(n);
    for _ in 0..d - t {
        acc *= layer_factor(n, t);
    }
    for k in d - t..=d - 2 {
        acc *= layer_factor(n, d - k - 1);
    }
    Ok(acc)
}

/// Depth-one pedigrees on `n` extant vertices whose parent graph is `g`:
/// `S(n, e) e!` surjections onto the edges, modulo the edge permutations
/// induced by automorphisms of `g`.
pub fn depth1_count_from_graph(g: &SimpleGraph, n: usize) -> Result<BigRational, EnumError> {
    let e = g.edge_count();
    if e < 1 || e > n {
        return Err(EnumError::BadGraph(format!(
            "need 1 <= e(G) <= n, got e = {e}, n = {n}"
        )));
    }
    let aut = edge_automorphism_count(g)?;
    Ok(ratio(stirling2(n, e)? * factorial(e), BigUint::from(aut)))
}

/// Sum of [`depth1_count_from_graph`] over classes of graphs on `n` vertices
/// with between 1 and `n` edges that satisfy `keep`.
pub fn depth1_class_sum(
    n: usize,
    keep: impl Fn(&SimpleGraph) -> bool,
) -> Result<BigRational, EnumError> {
    let mut total = BigRational::from_integer(0.into());
    for g in graph_classes(n)? {
        if (1..=n).contains(&g.edge_count()) && keep(&g) {
            total += depth1_count_from_graph(&g, n)?;
        }
    }
    Ok(total)
}

/// The refined depth-one lower bound: bipartite parent graphs with at most
/// one isolated vertex and no isolated edges.
pub fn lower_bound_class_sum(n: usize) -> Result<BigRational, EnumError> {
    if n > MAX_CLASS_ORDER {
        return Err(EnumError::BadArgs(format!(
            "class sums only up to n = {MAX_CLASS_ORDER}"
        )));
    }
    depth1_class_sum(n, |g| {
        g.is_bipartite() && g.isolated_vertices() <= 1 && g.isolated_edges() == 0
    })
}

/// Exact depth-one count. With `strict` every parent has a child.
pub fn depth1_total(n: usize, strict: bool) -> Result<BigUint, EnumError> {
    let sum = depth1_class_sum(n, |g| !strict || g.isolated_vertices() == 0)?;
    debug_assert!(sum.is_integer());
    Ok(sum
        .to_integer()
        .to_biguint()
        .expect("counts are non-negative"))
}
