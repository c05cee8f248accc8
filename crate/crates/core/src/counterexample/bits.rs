use std::fmt;

use serde::{Serialize, Serializer};

use super::CounterexampleError;

/// Largest supported width.
pub const MAX_N: usize = 20;

/// An `n`-digit binary string. Digit `i` (1-based) counts from the right.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    width: u8,
    value: u32,
}

impl BitString {
    pub fn new(width: usize, value: u32) -> Self {
        assert!(width <= MAX_N, "width {width} exceeds {MAX_N}");
        assert!(
            u64::from(value) < 1u64 << width,
            "value {value} does not fit in {width} digits"
        );
        BitString {
            width: width as u8,
            value,
        }
    }

    /// Parses a string of `0`/`1` digits, leftmost digit being digit `n`.
    pub fn parse(s: &str) -> Option<Self> {
        if s.is_empty() || s.len() > MAX_N || !s.bytes().all(|c| c == b'0' || c == b'1') {
            return None;
        }
        Some(BitString::new(s.len(), u32::from_str_radix(s, 2).ok()?))
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    pub fn value(self) -> u32 {
        self.value
    }

    /// The digit `k(i)`.
    pub fn digit(self, i: usize) -> u8 {
        debug_assert!((1..=self.width()).contains(&i));
        ((self.value >> (i - 1)) & 1) as u8
    }

    /// `k(i <- bit)`.
    pub fn with_digit(self, i: usize, bit: u8) -> Self {
        let mask = 1u32 << (i - 1);
        let value = if bit == 0 {
            self.value & !mask
        } else {
            self.value | mask
        };
        BitString { value, ..self }
    }

    pub fn flip(self, i: usize) -> Self {
        BitString {
            value: self.value ^ (1u32 << (i - 1)),
            ..self
        }
    }

    /// `#1(k)`.
    pub fn ones(self) -> usize {
        self.value.count_ones() as usize
    }

    /// `#0(k)`.
    pub fn zeros(self) -> usize {
        self.width() - self.ones()
    }

    pub fn is_even(self) -> bool {
        self.ones().is_multiple_of(2)
    }

    /// Hamming distance on the hypercube.
    pub fn distance(self, other: BitString) -> usize {
        (self.value ^ other.value).count_ones() as usize
    }

    /// All strings of width `n` in increasing order.
    pub fn all(n: usize) -> impl Iterator<Item = BitString> {
        (0..1u32 << n).map(move |v| BitString::new(n, v))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.width())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub(crate) fn check_n(n: usize) -> Result<(), CounterexampleError> {
    if (3..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(CounterexampleError::BadN { n })
    }
}

/// Splits `[2^n]` into even-weight and odd-weight strings.
pub fn parity_classes(n: usize) -> Result<(Vec<BitString>, Vec<BitString>), CounterexampleError> {
    check_n(n)?;
    Ok(BitString::all(n).partition(|k| k.is_even()))
}
