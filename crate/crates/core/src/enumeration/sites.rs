//! Segregating-site bounds: `4^(n s)` sequence combinations must cover every
//! distinguishable pedigree.
//!
//! Logarithms are in base 2 unless stated. Counts are exact; [`log2`] keeps the
//! top 64 bits of numerator and denominator, so `s` carries a relative error
//! near `2^-52`. `sites` is checked exactly.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive};
use serde::Serialize;

use super::EnumError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SiteBound {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    /// `log_4(count) / n`.
    pub s: f64,
    /// Least integer `k` with `4^(n k) >= count`.
    pub sites: u64,
}

impl SiteBound {
    pub fn with_depth(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    pub fn with_gap(mut self, t: usize) -> Self {
        self.t = Some(t);
        self
    }

    /// `s` to `digits` decimal places.
    pub fn format_s(&self, digits: usize) -> String {
        format!("{:.*}", digits, self.s)
    }
}

fn log2_uint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().expect("finite").log2();
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    top.to_f64().expect("finite").log2() + shift as f64
}

/// Base-2 logarithm of a positive rational.
pub fn log2(x: &BigRational) -> f64 {
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    log2_uint(num) - log2_uint(den)
}

/// Sites needed to tell `count` pedigrees on `n` extant individuals apart.
pub fn site_bound(count: &BigRational, n: usize) -> Result<SiteBound, EnumError> {
    if n == 0 {
        return Err(EnumError::BadArgs("n must be positive".into()));
    }
    if count.is_negative() || *count < BigRational::one() {
        return Err(EnumError::BadCount(count.to_string()));
    }
    let s = log2(count) / 2.0 / n as f64;
    let ceiling = {
        let c = count.ceil().to_integer();
        c.magnitude().clone()
    };
    let four = BigUint::from(4u32);
    let covers = |k: u64| four.clone().pow((n as u64 * k) as u32) >= ceiling;
    let mut sites = s.ceil().max(0.0) as u64;
    while sites > 0 && covers(sites - 1) {
        sites -= 1;
    }
    while !covers(sites) {
        sites += 1;
    }
    Ok(SiteBound {
        n,
        d: None,
        t: None,
        s,
        sites,
    })
}

pub fn site_bound_uint(count: &BigUint, n: usize) -> Result<SiteBound, EnumError> {
    site_bound(&BigRational::from_integer(BigInt::from(count.clone())), n)
}

/// Earlier pairwise-distance bound, `(d/3) log n`.
pub fn pairwise_distance_baseline(n: usize, d: usize) -> f64 {
    d as f64 / 3.0 * (n as f64).log2()
}

/// `(d/2) log n`, discrete generation pedigrees.
pub fn discrete_estimate(n: usize, d: usize) -> f64 {
    d as f64 / 2.0 * (n as f64).log2()
}

/// `(d/2) log(n d)`, general pedigrees.
pub fn general_estimate(n: usize, d: usize) -> f64 {
    d as f64 / 2.0 * ((n * d) as f64).log2()
}

/// `(d/2) log(n t)`, general pedigrees with generation gap at most `t`.
pub fn gap_estimate(n: usize, d: usize, t: usize) -> f64 {
    d as f64 / 2.0 * ((n * t) as f64).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_counts() {
        let one = site_bound_uint(&BigUint::one(), 5).unwrap();
        assert_eq!(one.s, 0.0);
        assert_eq!(one.sites, 0);
        let b = site_bound_uint(&BigUint::from(4u32).pow(7u32), 7).unwrap();
        assert!((b.s - 1.0).abs() < 1e-12);
        assert_eq!(b.sites, 1);
        let b = site_bound_uint(&(BigUint::from(4u32).pow(7u32) + 1u32), 7).unwrap();
        assert_eq!(b.sites, 2);
    }

    #[test]
    fn rejects_small_counts() {
        let half = BigRational::new(1.into(), 2.into());
        assert!(matches!(site_bound(&half, 2), Err(EnumError::BadCount(_))));
    }

    #[test]
    fn huge_counts() {
        let big = BigUint::from(4u32).pow(10_000u32);
        let b = site_bound_uint(&big, 100).unwrap();
        assert!((b.s - 100.0).abs() < 1e-9);
        assert_eq!(b.sites, 100);
        assert_eq!(b.format_s(3), "100.000");
    }
}
