//! Word-packed bit strings.
//!
//! A [`Mask`] plays two roles throughout the crate: a computational-basis
//! string over `n` qubits, and a subset of qubit indices (flip sets,
//! supports, Hadamard masks). Qubit indices are 0-based everywhere.
//!
//! Ordering is lexicographic on the bit string `b_0 b_1 … b_{n-1}`, i.e.
//! bit 0 is the most significant position. All deterministic enumeration
//! in the crate (witnesses, tie-breaking, search order) uses this order.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

/// A fixed-length bit string packed into machine words.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mask {
    n: usize,
    words: Vec<u64>,
}

impl Mask {
    /// All-zero string of length `n`.
    pub fn zeros(n: usize) -> Self {
        Mask {
            n,
            words: vec![0; n.div_ceil(WORD_BITS).max(1)],
        }
    }

    /// String of length `n` with the given bits set.
    ///
    /// Panics if an index is out of range.
    pub fn from_indices(n: usize, bits: &[usize]) -> Self {
        let mut m = Mask::zeros(n);
        for &b in bits {
            m.set(b, true);
        }
        m
    }

    /// Single-bit string: bit `i` set in a length-`n` mask.
    pub fn unit(n: usize, i: usize) -> Self {
        Mask::from_indices(n, &[i])
    }

    /// The `rank`-th string of length `n` in lexicographic order
    /// (rank 0 is all zeros, rank 2^n - 1 is all ones). Requires `n <= 63`.
    pub fn from_lex_rank(n: usize, rank: u64) -> Self {
        assert!(n <= 63, "lexicographic enumeration limited to 63 bits");
        let mut m = Mask::zeros(n);
        for i in 0..n {
            if (rank >> (n - 1 - i)) & 1 == 1 {
                m.set(i, true);
            }
        }
        m
    }

    /// Parse from a string of '0'/'1' characters, bit 0 first.
    pub fn from_bitstring(s: &str) -> Option<Self> {
        let mut m = Mask::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => m.set(i, true),
                _ => return None,
            }
        }
        Some(m)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.n, "bit index {} out of range for length {}", i, self.n);
        let w = &mut self.words[i / WORD_BITS];
        if value {
            *w |= 1 << (i % WORD_BITS);
        } else {
            *w &= !(1 << (i % WORD_BITS));
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.n);
        self.words[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
    }

    pub fn popcount(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_len(&self, other: &Mask) {
        assert_eq!(self.n, other.n, "mask length mismatch: {} vs {}", self.n, other.n);
    }

    pub fn xor(&self, other: &Mask) -> Mask {
        self.check_len(other);
        Mask {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn and(&self, other: &Mask) -> Mask {
        self.check_len(other);
        Mask {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn or(&self, other: &Mask) -> Mask {
        self.check_len(other);
        Mask {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    /// Set difference `self \ other`.
    pub fn minus(&self, other: &Mask) -> Mask {
        self.check_len(other);
        Mask {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    /// Parity of `popcount(self AND other)`; the building block of the
    /// symplectic form.
    #[inline]
    pub fn parity_and(&self, other: &Mask) -> bool {
        self.check_len(other);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_subset_of(&self, other: &Mask) -> bool {
        self.check_len(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &Mask) -> bool {
        self.check_len(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn first_set_bit(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                let i = wi * WORD_BITS + w.trailing_zeros() as usize;
                return (i < self.n).then_some(i);
            }
        }
        None
    }

    /// Indices of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.get(i))
    }

    /// Reinterpret as an integer with bit `i` of the string at binary
    /// weight `2^i`. This is the basis-state index convention used by the
    /// dense backend. Requires `n <= 63`.
    pub fn to_index(&self) -> usize {
        assert!(self.n <= 63);
        self.words.first().copied().unwrap_or(0) as usize
    }

    /// Inverse of [`Mask::to_index`].
    pub fn from_index(n: usize, index: usize) -> Self {
        assert!(n <= 63);
        let mut m = Mask::zeros(n);
        if !m.words.is_empty() {
            m.words[0] = index as u64;
        }
        m
    }

    /// Bit string rendered bit 0 first, e.g. `0110`.
    pub fn to_bitstring(&self) -> String {
        (0..self.n).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    /// All length-`n` strings in lexicographic order.
    pub fn lex_iter(n: usize) -> impl Iterator<Item = Mask> {
        assert!(n <= 30, "exhaustive enumeration capped at 30 bits");
        (0u64..(1u64 << n)).map(move |r| Mask::from_lex_rank(n, r))
    }

    /// All subsets of `self`'s set bits (as full-length masks), in
    /// lexicographic order of the embedded strings.
    pub fn subsets(&self) -> SubsetIter {
        let positions: Vec<usize> = self.iter_ones().collect();
        assert!(positions.len() <= 30, "subset enumeration capped at 30 bits");
        SubsetIter {
            n: self.n,
            positions,
            next: 0,
            done: false,
        }
    }
}

pub struct SubsetIter {
    n: usize,
    positions: Vec<usize>,
    next: u64,
    done: bool,
}

impl Iterator for SubsetIter {
    type Item = Mask;

    fn next(&mut self) -> Option<Mask> {
        if self.done {
            return None;
        }
        let k = self.positions.len();
        let rank = self.next;
        let mut m = Mask::zeros(self.n);
        for (j, &pos) in self.positions.iter().enumerate() {
            // positions ascending; earliest position is most significant
            if (rank >> (k - 1 - j)) & 1 == 1 {
                m.set(pos, true);
            }
        }
        if self.next + 1 == 1u64 << k {
            self.done = true;
        } else {
            self.next += 1;
        }
        Some(m)
    }
}

impl PartialOrd for Mask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mask {
    fn cmp(&self, other: &Self) -> Ordering {
        // lexicographic with bit 0 most significant: reverse bits per word
        match self.n.cmp(&other.n) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.words.iter().zip(&other.words) {
            match a.reverse_bits().cmp(&b.reverse_bits()) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mask({})", self.to_bitstring())
    }
}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_roundtrip() {
        let mut m = Mask::zeros(70);
        m.set(0, true);
        m.set(63, true);
        m.set(64, true);
        m.set(69, true);
        assert!(m.get(0) && m.get(63) && m.get(64) && m.get(69));
        assert!(!m.get(1) && !m.get(65));
        assert_eq!(m.popcount(), 4);
        assert_eq!(m.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 69]);
    }

    #[test]
    fn lex_order_bit_zero_most_significant() {
        // 10 > 01 in lexicographic order of b0 b1
        let a = Mask::from_indices(2, &[0]);
        let b = Mask::from_indices(2, &[1]);
        assert!(a > b);
        let ranks: Vec<String> = (0..4).map(|r| Mask::from_lex_rank(2, r).to_bitstring()).collect();
        assert_eq!(ranks, vec!["00", "01", "10", "11"]);
        let mut sorted: Vec<Mask> = Mask::lex_iter(2).collect();
        sorted.sort();
        assert_eq!(
            sorted.iter().map(|m| m.to_bitstring()).collect::<Vec<_>>(),
            ranks
        );
    }

    #[test]
    fn subsets_enumerate_in_lex_order() {
        let sup = Mask::from_indices(5, &[1, 3]);
        let subs: Vec<String> = sup.subsets().map(|m| m.to_bitstring()).collect();
        assert_eq!(subs, vec!["00000", "00010", "01000", "01010"]);
    }

    #[test]
    fn parity_and_matches_popcount() {
        let a = Mask::from_indices(8, &[0, 2, 5]);
        let b = Mask::from_indices(8, &[2, 5, 7]);
        assert_eq!(a.parity_and(&b), a.and(&b).popcount() % 2 == 1);
        assert!(!a.parity_and(&b));
    }

    #[test]
    fn index_roundtrip() {
        for idx in 0..16 {
            assert_eq!(Mask::from_index(4, idx).to_index(), idx);
        }
    }
}
