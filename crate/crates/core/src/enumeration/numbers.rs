use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::EnumError;

/// Stirling number of the second kind by the recurrence
/// `S(n, k) = k S(n-1, k) + S(n-1, k-1)`.
pub fn stirling2(n: usize, k: usize) -> Result<BigUint, EnumError> {
    if k > n {
        return Err(EnumError::BadArgs(format!("S({n}, {k}) needs k <= n")));
    }
    let mut row: Vec<BigUint> = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = &row[j] * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    Ok(row[k].clone())
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(0, 0).unwrap(), big(1));
        assert_eq!(stirling2(3, 2).unwrap(), big(3));
        assert_eq!(stirling2(5, 3).unwrap(), big(25));
        assert_eq!(stirling2(10, 4).unwrap(), big(34105));
        for n in 1..12 {
            assert_eq!(stirling2(n, n).unwrap(), big(1));
            assert_eq!(stirling2(n, 1).unwrap(), big(1));
            assert_eq!(stirling2(n, 0).unwrap(), big(0));
            assert_eq!(stirling2(n, n - 1).unwrap(), binomial(n, 2));
        }
        assert!(stirling2(2, 3).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(30, 15), big(155117520));
        assert_eq!(binomial(3, 4), big(0));
        assert_eq!(factorial(10), big(3628800));
    }
}
