use std::fmt;
use std::ops::{Mul, MulAssign};

use super::bits::Bits;

/// A product of Pauli-Z operators: bit `j` set means Z on data qubit `j`.
///
/// Z-strings form an abelian group under multiplication, which is XOR of supports.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ZString(pub Bits);

impl ZString {
    pub const fn identity() -> Self {
        ZString(Bits::empty())
    }

    pub fn single(qubit: usize) -> Self {
        ZString(Bits::single(qubit))
    }

    pub fn from_qubits<I: IntoIterator<Item = usize>>(qubits: I) -> Self {
        ZString(Bits::from_indices(qubits))
    }

    #[inline]
    pub fn contains(&self, qubit: usize) -> bool {
        self.0.get(qubit)
    }

    #[inline]
    pub fn flip(&mut self, qubit: usize) {
        self.0.toggle(qubit);
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter_ones()
    }

    #[inline]
    pub fn bits(&self) -> &Bits {
        &self.0
    }
}

impl Mul for ZString {
    type Output = ZString;
    #[inline]
    fn mul(self, rhs: ZString) -> ZString {
        ZString(self.0 ^ rhs.0)
    }
}

impl MulAssign for ZString {
    #[inline]
    fn mul_assign(&mut self, rhs: ZString) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for ZString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "Z[]");
        }
        write!(f, "Z{:?}", self.0)
    }
}

/// Outcomes of the X-type checks. Bit `f` set means check `f` returned -1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Syndrome(pub Bits);

impl Syndrome {
    pub const fn trivial() -> Self {
        Syndrome(Bits::empty())
    }

    /// Syndrome whose set bits are the set bits of `index` (requires fewer than 64 checks).
    pub fn from_index(index: usize) -> Self {
        Syndrome(Bits::from_u64(index as u64))
    }

    /// Inverse of [`Syndrome::from_index`].
    #[inline]
    pub fn index(&self) -> usize {
        debug_assert!(self.0.len_hint() <= 64);
        self.0.low_word() as usize
    }

    #[inline]
    pub fn get(&self, check: usize) -> bool {
        self.0.get(check)
    }

    #[inline]
    pub fn flip(&mut self, check: usize) {
        self.0.toggle(check);
    }

    #[inline]
    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.count_ones()
    }

    pub fn flagged(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter_ones()
    }
}

impl std::ops::BitXor for Syndrome {
    type Output = Syndrome;
    #[inline]
    fn bitxor(self, rhs: Syndrome) -> Syndrome {
        Syndrome(self.0 ^ rhs.0)
    }
}

impl std::ops::BitXorAssign for Syndrome {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Syndrome) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{:?}", self.0)
    }
}

/// Recorded syndromes of consecutive measurement cycles, oldest first.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct MultiCycleSyndrome {
    pub cycles: Vec<Syndrome>,
}

impl MultiCycleSyndrome {
    pub fn new(cycles: Vec<Syndrome>) -> Self {
        MultiCycleSyndrome { cycles }
    }

    pub fn trivial(t: usize) -> Self {
        MultiCycleSyndrome { cycles: vec![Syndrome::trivial(); t] }
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn last(&self) -> Option<&Syndrome> {
        self.cycles.last()
    }

    /// Packs the history into an integer, cycle `r` check `f` at bit `r * checks + f`.
    pub fn pack(&self, checks: usize) -> u64 {
        assert!(self.cycles.len() * checks <= 64, "history too large to pack");
        self.cycles
            .iter()
            .enumerate()
            .fold(0u64, |acc, (r, s)| acc | ((s.index() as u64) << (r * checks)))
    }

    pub fn unpack(packed: u64, checks: usize, t: usize) -> Self {
        let mask = if checks == 64 { u64::MAX } else { (1u64 << checks) - 1 };
        MultiCycleSyndrome {
            cycles: (0..t)
                .map(|r| Syndrome::from_index(((packed >> (r * checks)) & mask) as usize))
                .collect(),
        }
    }
}
