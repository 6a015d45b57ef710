//! Binary words and the elementary edits applied to them.
//!
//! Positions are 1-based everywhere in the public API. Internally position
//! `i` lives at bit `(i - 1) % 64` of word `(i - 1) / 64`, and bits past the
//! length are always zero so that derived equality and hashing are by value.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSeq {
    len: usize,
    words: SmallVec<[u64; 1]>,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl BitSeq {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        BitSeq {
            len,
            words: SmallVec::from_elem(0, words_for(len)),
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = Self::zeros(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    /// Builds a word from symbols that must each be 0 or 1.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut s = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => s.set_raw(i, true),
                other => return Err(Error::InvalidSymbol(char::from(b'0'.wrapping_add(other)))),
            }
        }
        Ok(s)
    }

    /// The word of length `len` whose position 1 is the most significant bit
    /// of `value`. Counting `value` upward enumerates words in lexicographic
    /// order. Requires `len <= 64`.
    pub fn from_index(value: u64, len: usize) -> Self {
        debug_assert!(len <= WORD);
        let mut s = Self::zeros(len);
        if len > 0 {
            let rev = value.reverse_bits() >> (WORD - len);
            s.words[0] = rev;
            s.trim();
        }
        s
    }

    /// Inverse of [`BitSeq::from_index`].
    pub fn to_index(&self) -> u64 {
        debug_assert!(self.len <= WORD);
        if self.len == 0 {
            0
        } else {
            self.words[0].reverse_bits() >> (WORD - self.len)
        }
    }

    /// All words of length `len` in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = BitSeq> {
        assert!(len < WORD, "exhaustive enumeration needs len < 64");
        (0..1u64 << len).map(move |v| BitSeq::from_index(v, len))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    fn get_raw(&self, i: usize) -> bool {
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    fn set_raw(&mut self, i: usize, v: bool) {
        let mask = 1u64 << (i % WORD);
        if v {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    /// Symbol at 1-based position `pos`. Panics when out of range.
    #[inline]
    pub fn bit(&self, pos: usize) -> u8 {
        assert!(
            pos >= 1 && pos <= self.len,
            "position {pos} outside 1..={}",
            self.len
        );
        self.get_raw(pos - 1) as u8
    }

    pub fn get(&self, pos: usize) -> Option<u8> {
        (pos >= 1 && pos <= self.len).then(|| self.get_raw(pos - 1) as u8)
    }

    pub fn set(&mut self, pos: usize, value: u8) {
        assert!(
            pos >= 1 && pos <= self.len,
            "position {pos} outside 1..={}",
            self.len
        );
        self.set_raw(pos - 1, value & 1 == 1);
    }

    pub fn flip(&mut self, pos: usize) {
        let v = self.bit(pos);
        self.set(pos, v ^ 1);
    }

    pub fn push(&mut self, value: u8) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        self.len += 1;
        self.set_raw(self.len - 1, value & 1 == 1);
    }

    /// Symbols in position order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.get_raw(i) as u8)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().collect()
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Weight of positions `from..=to` (1-based, inclusive).
    pub fn weight_between(&self, from: usize, to: usize) -> usize {
        if from > to {
            return 0;
        }
        (from..=to).map(|p| self.bit(p) as usize).sum()
    }

    /// Σ i·x_i over 1-based positions.
    pub fn weighted_sum(&self) -> u64 {
        let mut total = 0u64;
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as u64;
                total += wi as u64 * WORD as u64 + b + 1;
                w &= w - 1;
            }
        }
        total
    }

    /// Hamming distance to a word of the same length.
    pub fn hamming(&self, other: &BitSeq) -> Result<usize> {
        self.expect_len(other.len)?;
        Ok(self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    pub(crate) fn expect_len(&self, n: usize) -> Result<()> {
        if self.len == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                found: self.len,
            })
        }
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptySequence)
        } else {
            Ok(())
        }
    }

    /// x'_i = x_i + x_{i-1} (mod 2), with x_0 = 0.
    pub fn derivative(&self) -> Result<BitSeq> {
        self.require_nonempty()?;
        let mut out = Self::zeros(self.len);
        let mut carry = 0u64;
        for (i, &w) in self.words.iter().enumerate() {
            out.words[i] = w ^ ((w << 1) | carry);
            carry = w >> (WORD - 1);
        }
        out.trim();
        Ok(out)
    }

    /// Prefix sums mod 2.
    pub fn integral(&self) -> Result<BitSeq> {
        self.require_nonempty()?;
        let mut out = Self::zeros(self.len);
        let mut acc = 0u8;
        for i in 0..self.len {
            acc ^= self.get_raw(i) as u8;
            out.set_raw(i, acc == 1);
        }
        Ok(out)
    }

    /// Number of maximal constant substrings.
    pub fn runs(&self) -> Result<usize> {
        self.require_nonempty()?;
        let changes = (1..self.len)
            .filter(|&i| self.get_raw(i) != self.get_raw(i - 1))
            .count();
        Ok(changes + 1)
    }

    /// I(y, v, k): `v` inserted so that it occupies positions k..k+|v|-1.
    pub fn insert(&self, v: &BitSeq, k: usize) -> Result<BitSeq> {
        if k < 1 || k > self.len + 1 {
            return Err(Error::PositionOutOfRange {
                pos: k,
                max: self.len + 1,
            });
        }
        let mut out = Self::zeros(self.len + v.len);
        for i in 0..k - 1 {
            out.set_raw(i, self.get_raw(i));
        }
        for i in 0..v.len {
            out.set_raw(k - 1 + i, v.get_raw(i));
        }
        for i in k - 1..self.len {
            out.set_raw(i + v.len, self.get_raw(i));
        }
        Ok(out)
    }

    pub fn insert_bit(&self, value: u8, k: usize) -> Result<BitSeq> {
        let mut one = Self::zeros(1);
        one.set_raw(0, value & 1 == 1);
        self.insert(&one, k)
    }

    /// D(y, b, k): removes positions k..k+b-1.
    pub fn delete_block(&self, b: usize, k: usize) -> Result<BitSeq> {
        if b == 0 && k >= 1 && k <= self.len + 1 {
            return Ok(self.clone());
        }
        if k < 1 || b > self.len || k > self.len + 1 - b {
            return Err(Error::BlockOutOfRange {
                start: k,
                width: b,
                len: self.len,
            });
        }
        let mut out = Self::zeros(self.len - b);
        for i in 0..k - 1 {
            out.set_raw(i, self.get_raw(i));
        }
        for i in k - 1 + b..self.len {
            out.set_raw(i - b, self.get_raw(i));
        }
        Ok(out)
    }

    /// Swaps positions k and k+1.
    pub fn transpose(&self, k: usize) -> Result<BitSeq> {
        if k < 1 || k + 1 > self.len {
            return Err(Error::PositionOutOfRange {
                pos: k,
                max: self.len.saturating_sub(1),
            });
        }
        let mut out = self.clone();
        let (a, b) = (self.get_raw(k - 1), self.get_raw(k));
        out.set_raw(k - 1, b);
        out.set_raw(k, a);
        Ok(out)
    }

    /// Swaps the adjacent blocks k..k+b-1 and k+b..k+2b-1.
    pub fn transpose_block(&self, b: usize, k: usize) -> Result<BitSeq> {
        if k < 1 || k + 2 * b > self.len + 1 {
            return Err(Error::BlockOutOfRange {
                start: k,
                width: 2 * b,
                len: self.len,
            });
        }
        let mut out = self.clone();
        for j in 0..b {
            out.set_raw(k - 1 + j, self.get_raw(k - 1 + b + j));
            out.set_raw(k - 1 + b + j, self.get_raw(k - 1 + j));
        }
        Ok(out)
    }

    /// x^{(f,b)} = (x_f, x_{f+b}, x_{f+2b}, ...).
    pub fn interleave(&self, f: usize, b: usize) -> Result<BitSeq> {
        if f < 1 || f > b || b > self.len.max(1) {
            return Err(Error::InvalidInterleave {
                row: f,
                stride: b,
                len: self.len,
            });
        }
        Ok(self.interleave_unchecked(f, b))
    }

    /// Same as [`BitSeq::interleave`] but tolerates `b > len` (rows past the
    /// end are empty).
    pub(crate) fn interleave_unchecked(&self, f: usize, b: usize) -> BitSeq {
        let mut out = BitSeq::new();
        let mut i = f;
        while i <= self.len {
            out.push(self.get_raw(i - 1) as u8);
            i += b;
        }
        out
    }

    /// Inverse of taking every row of stride `b`: `rows[f-1]` becomes x^{(f,b)}.
    pub fn deinterleave(rows: &[BitSeq], len: usize) -> Result<BitSeq> {
        let b = rows.len();
        let mut out = Self::zeros(len);
        for (f, row) in rows.iter().enumerate() {
            let expected = if len > f { (len - f).div_ceil(b) } else { 0 };
            row.expect_len(expected)?;
            for j in 0..row.len {
                out.set_raw(f + j * b, row.get_raw(j));
            }
        }
        Ok(out)
    }

    /// True when every full or partial length-b window after the first
    /// agrees with (v_1, ..., v_b) where both are defined.
    pub fn is_repeating_pattern(&self, b: usize) -> bool {
        if b == 0 {
            return true;
        }
        (b..self.len).all(|i| self.get_raw(i) == self.get_raw(i % b))
    }

    /// Positions `start..start+len-1`.
    pub fn substring(&self, start: usize, len: usize) -> Result<BitSeq> {
        if start < 1 || start - 1 + len > self.len {
            return Err(Error::BlockOutOfRange {
                start,
                width: len,
                len: self.len,
            });
        }
        let mut out = Self::zeros(len);
        for i in 0..len {
            out.set_raw(i, self.get_raw(start - 1 + i));
        }
        Ok(out)
    }

    pub fn concat(&self, other: &BitSeq) -> BitSeq {
        self.insert(other, self.len + 1)
            .expect("append position is always valid")
    }
}

impl Ord for BitSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        let full = common / WORD;
        for i in 0..full {
            let diff = self.words[i] ^ other.words[i];
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return ((self.words[i] >> bit) & 1).cmp(&((other.words[i] >> bit) & 1));
            }
        }
        let rem = common % WORD;
        if rem != 0 {
            let mask = (1u64 << rem) - 1;
            let diff = (self.words[full] ^ other.words[full]) & mask;
            if diff != 0 {
                let bit = diff.trailing_zeros();
                return ((self.words[full] >> bit) & 1).cmp(&((other.words[full] >> bit) & 1));
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BitSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSeq({self})")
    }
}

impl FromStr for BitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = BitSeq::new();
        for c in s.chars() {
            match c {
                '0' => out.push(0),
                '1' => out.push(1),
                other => return Err(Error::InvalidSymbol(other)),
            }
        }
        Ok(out)
    }
}

impl serde::Serialize for BitSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BitSeq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for literal words in tests and examples. Panics on bad input.
pub fn bits(s: &str) -> BitSeq {
    s.parse().expect("literal bit string")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn derivative_and_integral_examples() {
        assert_eq!(bits("00110").derivative().unwrap(), bits("00101"));
        assert_eq!(bits("0000").derivative().unwrap(), bits("0000"));
        assert_eq!(bits("111").derivative().unwrap(), bits("100"));
        assert_eq!(bits("00101").integral().unwrap(), bits("00110"));
        assert_eq!(bits("100").integral().unwrap(), bits("111"));
        assert_eq!(bits("000000").integral().unwrap(), bits("000000"));
        assert_eq!(BitSeq::new().derivative(), Err(Error::EmptySequence));
        assert_eq!(BitSeq::new().integral(), Err(Error::EmptySequence));
    }

    #[test]
    fn derivative_crosses_word_boundary() {
        let mut x = BitSeq::zeros(130);
        x.set(64, 1);
        x.set(65, 1);
        let d = x.derivative().unwrap();
        assert_eq!(d.bit(64), 1);
        assert_eq!(d.bit(65), 0);
        assert_eq!(d.bit(66), 1);
        assert_eq!(d.weight(), 2);
        assert_eq!(d.integral().unwrap(), x);
    }

    #[test]
    fn runs_examples() {
        assert_eq!(bits("00110").runs().unwrap(), 3);
        assert_eq!(bits("0101").runs().unwrap(), 4);
        assert_eq!(bits("1111").runs().unwrap(), 1);
        assert!(BitSeq::new().runs().is_err());
    }

    #[test]
    fn insert_examples() {
        assert_eq!(
            bits("011001").insert(&bits("01"), 1).unwrap(),
            bits("01011001")
        );
        assert_eq!(
            bits("011001").insert(&BitSeq::new(), 3).unwrap(),
            bits("011001")
        );
        assert_eq!(bits("10").insert(&bits("1"), 3).unwrap(), bits("101"));
        assert!(bits("10").insert(&bits("1"), 4).is_err());
        assert!(bits("10").insert(&bits("1"), 0).is_err());
    }

    #[test]
    fn delete_examples() {
        assert_eq!(bits("011001").delete_block(2, 2).unwrap(), bits("0001"));
        assert_eq!(bits("011001").delete_block(0, 4).unwrap(), bits("011001"));
        assert_eq!(bits("101").delete_block(3, 1).unwrap(), BitSeq::new());
        assert!(bits("101").delete_block(2, 3).is_err());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(bits("00110").transpose(2).unwrap(), bits("01010"));
        assert_eq!(bits("110").transpose(1).unwrap(), bits("110"));
        assert!(bits("110").transpose(3).is_err());
        assert!(bits("110").transpose(0).is_err());
    }

    #[test]
    fn block_transpose() {
        assert_eq!(
            bits("100000110").transpose_block(3, 1).unwrap(),
            bits("000100110")
        );
        assert!(bits("100000110").transpose_block(3, 5).is_err());
    }

    #[test]
    fn interleave_examples() {
        let x = bits("011001");
        assert_eq!(x.interleave(1, 2).unwrap(), bits("010"));
        assert_eq!(x.interleave(2, 2).unwrap(), bits("101"));
        assert_eq!(x.interleave(1, 1).unwrap(), x);
        assert!(x.interleave(3, 2).is_err());
        assert!(x.interleave(1, 7).is_err());
        let rows: Vec<_> = (1..=4).map(|f| x.interleave(f, 4).unwrap()).collect();
        assert_eq!(BitSeq::deinterleave(&rows, 6).unwrap(), x);
    }

    #[test]
    fn repeating_pattern_examples() {
        assert!(bits("011011").is_repeating_pattern(3));
        assert!(bits("01").is_repeating_pattern(3));
        assert!(bits("011").is_repeating_pattern(3));
        assert!(!bits("0100").is_repeating_pattern(2));
        assert!(bits("01101").is_repeating_pattern(3));
    }

    #[test]
    fn order_is_lexicographic() {
        let words: Vec<_> = BitSeq::all(4).collect();
        let mut strings: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        let before = strings.clone();
        strings.sort();
        assert_eq!(strings, before);
        assert!(bits("01") < bits("010"));
        assert!(bits("011") > bits("0101"));
        assert_eq!(bits("0110").to_index(), 6);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(bits("0011").to_string(), "0011");
        assert_eq!("".parse::<BitSeq>().unwrap(), BitSeq::new());
        assert_eq!("01a".parse::<BitSeq>(), Err(Error::InvalidSymbol('a')));
        assert!(BitSeq::from_bits(&[0, 2]).is_err());
        assert_eq!(bits("0101").weighted_sum(), 6);
    }

    fn word(max: usize) -> impl Strategy<Value = BitSeq> {
        prop::collection::vec(0u8..2, 1..max).prop_map(|v| BitSeq::from_bits(&v).unwrap())
    }

    proptest! {
        #[test]
        fn derivative_is_a_bijection(x in word(150)) {
            prop_assert_eq!(x.derivative().unwrap().integral().unwrap(), x.clone());
            prop_assert_eq!(x.integral().unwrap().derivative().unwrap(), x);
        }

        #[test]
        fn transposition_touches_one_integral_coordinate(x in word(40), k in 1usize..40) {
            prop_assume!(k < x.len() && x.bit(k) != x.bit(k + 1));
            let a = x.integral().unwrap();
            let b = x.transpose(k).unwrap().integral().unwrap();
            prop_assert_eq!(a.hamming(&b).unwrap(), 1);
            prop_assert_ne!(a.bit(k), b.bit(k));
        }

        #[test]
        fn delete_undoes_insert(y in word(80), v in word(6), k in 1usize..90) {
            prop_assume!(k <= y.len() + 1);
            let z = y.insert(&v, k).unwrap();
            prop_assert_eq!(z.delete_block(v.len(), k).unwrap(), y);
        }

        #[test]
        fn transpose_is_involution(x in word(80), k in 1usize..80) {
            prop_assume!(k < x.len());
            prop_assert_eq!(x.transpose(k).unwrap().transpose(k).unwrap(), x);
        }

        #[test]
        fn parse_round_trip(x in word(100)) {
            prop_assert_eq!(x.to_string().parse::<BitSeq>().unwrap(), x);
        }
    }
}
