//! Fixed-length binary vectors.
//!
//! Coordinates are numbered from 1, matching line numbers in a circuit.
//! Coordinate `i` is stored at bit `i - 1` of the backing word, so inner
//! products over GF(2) are a single `AND` plus a popcount. Textual form and
//! ordering read coordinate 1 first, the way the vectors are written by hand
//! (`"110"` means c1 = 1, c2 = 1, c3 = 0).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Longest vector a [`BitString`] can hold.
pub const MAX_BITS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BitString {
    mask: u64,
    len: usize,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_BITS, "bit string longer than {MAX_BITS}");
        BitString { mask: 0, len }
    }

    pub fn ones(len: usize) -> Self {
        assert!(len <= MAX_BITS, "bit string longer than {MAX_BITS}");
        BitString { mask: low_mask(len), len }
    }

    /// The unit vector with a single 1 at coordinate `i`.
    pub fn unit(i: usize, len: usize) -> Self {
        assert!((1..=len).contains(&i), "coordinate {i} out of 1..={len}");
        BitString { mask: 1 << (i - 1), len }
    }

    /// Builds a vector whose coordinate `i` is bit `i - 1` of `mask`.
    pub fn from_mask(mask: u64, len: usize) -> Result<Self> {
        if len > MAX_BITS {
            return Err(Error::invalid_argument(format!(
                "bit string of length {len} exceeds {MAX_BITS}"
            )));
        }
        if mask & !low_mask(len) != 0 {
            return Err(Error::invalid_argument(format!(
                "mask {mask:#x} has bits beyond length {len}"
            )));
        }
        Ok(BitString { mask, len })
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        assert!(bits.len() <= MAX_BITS, "bit string longer than {MAX_BITS}");
        let mask = bits
            .iter()
            .enumerate()
            .fold(0u64, |m, (i, &b)| m | (u64::from(b) << i));
        BitString { mask, len: bits.len() }
    }

    /// Inverse of [`BitString::lex_index`].
    pub fn from_lex_index(index: u64, len: usize) -> Self {
        assert!(len <= MAX_BITS, "bit string longer than {MAX_BITS}");
        let mask = (1..=len).fold(0u64, |m, i| {
            let bit = (index >> (len - i)) & 1;
            m | (bit << (i - 1))
        });
        BitString { mask, len }
    }

    /// Position of this vector in lexicographic order with coordinate 1 most
    /// significant. This is also the basis-state index used by the dense
    /// simulator.
    pub fn lex_index(&self) -> u64 {
        (1..=self.len).fold(0u64, |idx, i| (idx << 1) | u64::from(self.get(i)))
    }

    /// All vectors of length `len` in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        assert!(len < MAX_BITS, "cannot enumerate 2^{len} vectors");
        (0..1u64 << len).map(move |idx| BitString::from_lex_index(idx, len))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn get(&self, i: usize) -> bool {
        assert!((1..=self.len).contains(&i), "coordinate {i} out of 1..={}", self.len);
        (self.mask >> (i - 1)) & 1 == 1
    }

    pub fn with(mut self, i: usize, value: bool) -> Self {
        assert!((1..=self.len).contains(&i), "coordinate {i} out of 1..={}", self.len);
        let bit = 1u64 << (i - 1);
        if value {
            self.mask |= bit;
        } else {
            self.mask &= !bit;
        }
        self
    }

    pub fn flipped(self, i: usize) -> Self {
        let v = self.get(i);
        self.with(i, !v)
    }

    pub fn complement(self) -> Self {
        BitString { mask: !self.mask & low_mask(self.len), len: self.len }
    }

    pub fn count_ones(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.mask == 0
    }

    pub fn is_all_ones(&self) -> bool {
        self.mask == low_mask(self.len)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitString) -> bool {
        debug_assert_eq!(self.len, other.len);
        (self.mask & other.mask).count_ones() & 1 == 1
    }

    pub fn xor(&self, other: &BitString) -> BitString {
        debug_assert_eq!(self.len, other.len);
        BitString { mask: self.mask ^ other.mask, len: self.len }
    }

    /// The first `len` coordinates.
    pub fn prefix(&self, len: usize) -> BitString {
        assert!(len <= self.len);
        BitString { mask: self.mask & low_mask(len), len }
    }

    /// Appends one coordinate at the end.
    pub fn push(&self, bit: bool) -> BitString {
        assert!(self.len < MAX_BITS, "bit string longer than {MAX_BITS}");
        BitString { mask: self.mask | (u64::from(bit) << self.len), len: self.len + 1 }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len).map(move |i| self.get(i))
    }
}

fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.lex_index().cmp(&other.lex_index()))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_BITS {
            return Err(Error::invalid_argument(format!(
                "bit string of length {} exceeds {MAX_BITS}",
                s.len()
            )));
        }
        let bits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::invalid_argument(format!(
                    "invalid character {other:?} in bit string {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitString::from_bools(&bits))
    }
}

impl TryFrom<String> for BitString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> String {
        b.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_reads_coordinate_one_first() {
        let b: BitString = "110".parse().unwrap();
        assert!(b.get(1) && b.get(2) && !b.get(3));
        assert_eq!(b.mask(), 0b011);
        assert_eq!(b.to_string(), "110");
        assert_eq!(b.lex_index(), 0b110);
    }

    #[test]
    fn lex_index_round_trips() {
        for len in 0..6 {
            for (idx, b) in BitString::all(len).enumerate() {
                assert_eq!(b.lex_index(), idx as u64);
                assert_eq!(BitString::from_lex_index(idx as u64, len), b);
            }
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("10x".parse::<BitString>().is_err());
        assert!(BitString::from_mask(0b100, 2).is_err());
    }

    #[test]
    fn dot_is_parity_of_overlap() {
        let a: BitString = "1101".parse().unwrap();
        let b: BitString = "1011".parse().unwrap();
        assert!(!a.dot(&b));
        assert!(a.dot(&BitString::unit(4, 4)));
    }

    #[test]
    fn complement_stays_in_length() {
        let a: BitString = "101".parse().unwrap();
        assert_eq!(a.complement().to_string(), "010");
        assert!(BitString::ones(64).is_all_ones());
        assert!(BitString::ones(64).complement().is_zero());
    }
}
