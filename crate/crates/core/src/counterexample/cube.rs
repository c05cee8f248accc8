//! The region-count equations on the hypercube: for every `k` and digit `i`,
//! `a(k(i<-0)) + a(k(i<-1)) = b(k(i<-0)) + b(k(i<-1))`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::bits::BitString;

/// Region counts `a` and `b`, indexed by `k.value()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSolution {
    pub n: usize,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

pub fn eq_cube_holds(n: usize, a: &[i64], b: &[i64]) -> bool {
    let size = 1usize << n;
    assert_eq!((a.len(), b.len()), (size, size));
    BitString::all(n).all(|k| {
        (1..=n).all(|i| {
            let (lo, hi) = (
                k.with_digit(i, 0).value() as usize,
                k.with_digit(i, 1).value() as usize,
            );
            a[lo] + a[hi] == b[lo] + b[hi]
        })
    })
}

/// `a(r) - b(r) = p` at even distance from any `k` with `a(k) - b(k) = p`,
/// and `b(r) - a(r) = p` at odd distance.
pub fn parity_rigidity_holds(n: usize, a: &[i64], b: &[i64]) -> bool {
    let delta = |k: BitString| a[k.value() as usize] - b[k.value() as usize];
    BitString::all(n).all(|k| {
        let p = delta(k);
        BitString::all(n).all(|r| {
            let expected = if k.distance(r) % 2 == 0 { p } else { -p };
            delta(r) == expected
        })
    })
}

/// Coefficient rows over the unknowns `(a(0..2^n), b(0..2^n))`, one per
/// hypercube edge.
pub fn eq_cube_system(n: usize) -> Vec<Vec<i64>> {
    let size = 1usize << n;
    let mut rows = Vec::new();
    for k in BitString::all(n) {
        for i in 1..=n {
            if k.digit(i) == 1 {
                continue;
            }
            let (lo, hi) = (k.value() as usize, k.flip(i).value() as usize);
            let mut row = vec![0i64; 2 * size];
            row[lo] = 1;
            row[hi] = 1;
            row[size + lo] = -1;
            row[size + hi] = -1;
            rows.push(row);
        }
    }
    rows
}

/// A basis of the rational nullspace, by reduction to row echelon form.
fn nullspace(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in &mut m[row] {
            *x = &*x * &inv;
        }
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let factor = line[col].clone();
                for (x, p) in line.iter_mut().zip(&pivot) {
                    *x = &*x - &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// A random non-negative integer solution: a random integer combination of a
/// nullspace basis, scaled to clear denominators and shifted so that every
/// count is non-negative (adding the same constant to `a` and `b` preserves
/// the equations).
pub fn sample_eq_cube_solution<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CubeSolution {
    let size = 1usize << n;
    let basis = nullspace(&eq_cube_system(n));
    let mut x = vec![BigRational::zero(); 2 * size];
    for v in &basis {
        let c = BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3)));
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi = &*xi + &c * vi;
        }
    }
    let denominator = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<i64> = x
        .iter()
        .map(|q| {
            let scaled = q * BigRational::from_integer(denominator.clone());
            scaled.to_integer().to_i64().expect("sample fits in i64")
        })
        .collect();
    let shift = ints.iter().map(|&v| (-v).max(0)).max().unwrap_or(0);
    CubeSolution {
        n,
        a: ints[..size].iter().map(|v| v + shift).collect(),
        b: ints[size..].iter().map(|v| v + shift).collect(),
    }
}
