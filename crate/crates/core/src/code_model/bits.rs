//! Fixed-width bitset shared by error strings and syndromes.

use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};

/// Number of 64-bit words backing a [`Bits`] value.
pub const WORDS: usize = 5;

/// Largest index a [`Bits`] value can hold (exclusive). Enough for d = 17 (289 qubits).
pub const MAX_BITS: usize = WORDS * 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Bits([u64; WORDS]);

impl Bits {
    pub const fn empty() -> Self {
        Bits([0; WORDS])
    }

    pub fn single(i: usize) -> Self {
        let mut b = Self::empty();
        b.set(i, true);
        b
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut b = Self::empty();
        for i in indices {
            b.toggle(i);
        }
        b
    }

    /// Builds from the low bits of `value`; bit `i` of `value` becomes index `i`.
    pub fn from_u64(value: u64) -> Self {
        let mut b = Self::empty();
        b.0[0] = value;
        b
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < MAX_BITS, "bit index {i} out of range");
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < MAX_BITS, "bit index {i} out of range");
        let mask = 1u64 << (i % 64);
        if value {
            self.0[i / 64] |= mask;
        } else {
            self.0[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < MAX_BITS, "bit index {i} out of range");
        self.0[i / 64] ^= 1u64 << (i % 64);
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Parity of the intersection with `other`.
    #[inline]
    pub fn overlap_parity(&self, other: &Bits) -> bool {
        let mut acc = 0u64;
        for k in 0..WORDS {
            acc ^= self.0[k] & other.0[k];
        }
        acc.count_ones() & 1 == 1
    }

    /// The lowest word. Only meaningful for sets confined to indices below 64.
    #[inline]
    pub fn low_word(&self) -> u64 {
        self.0[0]
    }

    /// Highest set index plus one, or 0 when empty.
    pub fn len_hint(&self) -> usize {
        for k in (0..WORDS).rev() {
            if self.0[k] != 0 {
                return k * 64 + 64 - self.0[k].leading_zeros() as usize;
            }
        }
        0
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + tz)
                }
            })
        })
    }
}

impl BitXor for Bits {
    type Output = Bits;
    #[inline]
    fn bitxor(mut self, rhs: Bits) -> Bits {
        self ^= rhs;
        self
    }
}

impl BitXorAssign for Bits {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Bits) {
        for k in 0..WORDS {
            self.0[k] ^= rhs.0[k];
        }
    }
}

impl BitAnd for Bits {
    type Output = Bits;
    #[inline]
    fn bitand(mut self, rhs: Bits) -> Bits {
        for k in 0..WORDS {
            self.0[k] &= rhs.0[k];
        }
        self
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iter_ones_crosses_word_boundaries() {
        let b = Bits::from_indices([0, 63, 64, 200, 319]);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 200, 319]);
        assert_eq!(b.count_ones(), 5);
        assert_eq!(b.len_hint(), 320);
    }

    #[test]
    fn overlap_parity_counts_shared_bits() {
        let a = Bits::from_indices([1, 2, 70]);
        let b = Bits::from_indices([2, 70, 71]);
        assert!(!a.overlap_parity(&b));
        assert!(a.overlap_parity(&Bits::single(70)));
    }

    #[test]
    #[should_panic]
    fn out_of_range_index_panics() {
        Bits::single(MAX_BITS);
    }
}
