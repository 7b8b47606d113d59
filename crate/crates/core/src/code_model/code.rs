use super::bits::{Bits, MAX_BITS};
use super::group::GrayGroup;
use super::strings::{Syndrome, ZString};
use crate::error::{Error, Result};

/// Default cap on the number of Z-stabilizer generators for group enumeration.
pub const DEFAULT_GROUP_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeKind {
    /// The two-qubit phase-flip code with the single check X_A X_B.
    Repetition,
    /// Rotated planar surface code of odd distance.
    Surface { distance: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogicalClass {
    Trivial,
    Logical,
}

impl LogicalClass {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            LogicalClass::Logical
        } else {
            LogicalClass::Trivial
        }
    }

    pub fn is_logical(self) -> bool {
        self == LogicalClass::Logical
    }
}

/// A CSS code seen through Z-type errors only: X-checks detect, Z-stabilizers are
/// the degeneracy group, one logical qubit.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    kind: CodeKind,
    n: usize,
    x_checks: Vec<Vec<usize>>,
    x_check_masks: Vec<Bits>,
    /// X-check plaquette anchors (row, col of the top-left corner) for surface codes.
    x_check_anchors: Vec<(i32, i32)>,
    qubit_checks: Vec<Vec<usize>>,
    qubit_syndromes: Vec<Syndrome>,
    z_stab_generators: Vec<ZString>,
    destabilizers: Vec<ZString>,
    logical_x_support: Vec<usize>,
    logical_x_mask: Bits,
    logical_z: ZString,
}

impl StabilizerCode {
    /// Two data qubits A = 0 and B = 1 with the check X_A X_B.
    pub fn repetition() -> Self {
        Self::assemble(
            CodeKind::Repetition,
            2,
            vec![vec![0, 1]],
            vec![(0, 0)],
            Vec::new(),
            vec![ZString::single(0)],
            vec![0],
            ZString::from_qubits([0, 1]),
        )
    }

    /// Rotated surface code on a `d x d` grid, qubit `(row, col)` at index `row * d + col`.
    ///
    /// Plaquettes are anchored at their top-left qubit `(i, j)` with `i, j` in `-1..d-1` and
    /// are X-type when `i + j` is even. Weight-2 X-checks sit on the left and right edges,
    /// weight-2 Z-checks on the top and bottom, so Z-error chains terminate on the top and
    /// bottom edges. Logical Z is column 0; logical X is row 0.
    pub fn surface(d: usize) -> Result<Self> {
        if d < 3 || d % 2 == 0 || d * d > MAX_BITS {
            return Err(Error::InvalidDistance(d));
        }
        let di = d as i32;
        let q = |r: i32, c: i32| (r * di + c) as usize;
        let inside = |r: i32, c: i32| (0..di).contains(&r) && (0..di).contains(&c);

        let mut x_checks = Vec::new();
        let mut anchors = Vec::new();
        let mut z_gens = Vec::new();
        for i in -1..di {
            for j in -1..di {
                let qubits: Vec<usize> = [(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)]
                    .into_iter()
                    .filter(|&(r, c)| inside(r, c))
                    .map(|(r, c)| q(r, c))
                    .collect();
                let is_x = (i + j).rem_euclid(2) == 0;
                let bulk = (0..di - 1).contains(&i) && (0..di - 1).contains(&j);
                let side = (j == -1 || j == di - 1) && (0..di - 1).contains(&i);
                let top_bottom = (i == -1 || i == di - 1) && (0..di - 1).contains(&j);
                if is_x && (bulk || side) {
                    x_checks.push(qubits);
                    anchors.push((i, j));
                } else if !is_x && (bulk || top_bottom) {
                    z_gens.push(ZString::from_qubits(qubits));
                }
            }
        }

        // Straight Z-path up column max(j, 0) through rows 0..=i: it overlaps its own check
        // once and every other X-check an even number of times.
        let destabilizers = anchors
            .iter()
            .map(|&(i, j)| {
                let col = j.max(0);
                ZString::from_qubits((0..=i).map(|r| q(r, col)))
            })
            .collect();

        let code = Self::assemble(
            CodeKind::Surface { distance: d },
            d * d,
            x_checks,
            anchors,
            z_gens,
            destabilizers,
            (0..d).collect(),
            ZString::from_qubits((0..d).map(|r| r * d)),
        );
        debug_assert!(code.verify_structure().is_ok());
        Ok(code)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        kind: CodeKind,
        n: usize,
        x_checks: Vec<Vec<usize>>,
        x_check_anchors: Vec<(i32, i32)>,
        z_stab_generators: Vec<ZString>,
        destabilizers: Vec<ZString>,
        logical_x_support: Vec<usize>,
        logical_z: ZString,
    ) -> Self {
        let x_check_masks: Vec<Bits> =
            x_checks.iter().map(|c| Bits::from_indices(c.iter().copied())).collect();
        let mut qubit_checks = vec![Vec::new(); n];
        for (f, check) in x_checks.iter().enumerate() {
            for &j in check {
                qubit_checks[j].push(f);
            }
        }
        let qubit_syndromes = qubit_checks
            .iter()
            .map(|fs| Syndrome(Bits::from_indices(fs.iter().copied())))
            .collect();
        let logical_x_mask = Bits::from_indices(logical_x_support.iter().copied());
        StabilizerCode {
            kind,
            n,
            x_checks,
            x_check_masks,
            x_check_anchors,
            qubit_checks,
            qubit_syndromes,
            z_stab_generators,
            destabilizers,
            logical_x_support,
            logical_x_mask,
            logical_z,
        }
    }

    /// Checks every structural invariant; returns a description of the first violation.
    pub fn verify_structure(&self) -> std::result::Result<(), String> {
        for (g, s) in self.z_stab_generators.iter().enumerate() {
            if !self.syndrome_of(s).is_trivial() {
                return Err(format!("Z generator {g} has a nontrivial syndrome"));
            }
            if self.logical_parity(s) {
                return Err(format!("Z generator {g} anticommutes with logical X"));
            }
        }
        for (f, e) in self.destabilizers.iter().enumerate() {
            let s = self.syndrome_of(e);
            if s != Syndrome(Bits::single(f)) {
                return Err(format!("destabilizer {f} flags {s:?}"));
            }
        }
        if !self.syndrome_of(&self.logical_z).is_trivial() || !self.logical_parity(&self.logical_z) {
            return Err("logical Z is not a logical operator".into());
        }
        Ok(())
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    /// Surface code distance; 1 for the repetition code, which cannot correct.
    pub fn distance(&self) -> usize {
        match self.kind {
            CodeKind::Repetition => 1,
            CodeKind::Surface { distance } => distance,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_checks(&self) -> usize {
        self.x_checks.len()
    }

    pub fn x_checks(&self) -> &[Vec<usize>] {
        &self.x_checks
    }

    pub fn x_check_mask(&self, f: usize) -> &Bits {
        &self.x_check_masks[f]
    }

    pub fn x_check_anchor(&self, f: usize) -> (i32, i32) {
        self.x_check_anchors[f]
    }

    /// X-checks that contain data qubit `j` (one or two for the surface code).
    pub fn qubit_checks(&self, j: usize) -> &[usize] {
        &self.qubit_checks[j]
    }

    pub fn z_stab_generators(&self) -> &[ZString] {
        &self.z_stab_generators
    }

    pub fn destabilizers(&self) -> &[ZString] {
        &self.destabilizers
    }

    pub fn logical_x_support(&self) -> &[usize] {
        &self.logical_x_support
    }

    pub fn logical_x_mask(&self) -> &Bits {
        &self.logical_x_mask
    }

    pub fn logical_z(&self) -> ZString {
        self.logical_z
    }

    /// Syndrome of the single-qubit error Z_j.
    #[inline]
    pub fn qubit_syndrome(&self, j: usize) -> Syndrome {
        self.qubit_syndromes[j]
    }

    pub fn syndrome_of(&self, e: &ZString) -> Syndrome {
        let mut s = Syndrome::trivial();
        for j in e.qubits() {
            s ^= self.qubit_syndromes[j];
        }
        s
    }

    /// Product of the destabilizers of every flagged check.
    pub fn canonical_representative(&self, s: &Syndrome) -> ZString {
        let mut e = ZString::identity();
        for f in s.flagged() {
            e *= self.destabilizers[f];
        }
        e
    }

    /// Parity of the overlap with the logical-X support, without a syndrome check.
    #[inline]
    pub fn logical_parity(&self, e: &ZString) -> bool {
        e.bits().overlap_parity(&self.logical_x_mask)
    }

    pub fn logical_class_of(&self, e: &ZString) -> Result<LogicalClass> {
        if !self.syndrome_of(e).is_trivial() {
            return Err(Error::NontrivialSyndrome);
        }
        Ok(LogicalClass::from_parity(self.logical_parity(e)))
    }

    /// Gray-code walk over the Z-stabilizer group.
    pub fn z_stabilizer_group(&self, cap: usize) -> Result<GrayGroup<'_>> {
        GrayGroup::new(&self.z_stab_generators, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn repetition_code_syndromes() {
        let code = StabilizerCode::repetition();
        assert_eq!(code.n(), 2);
        assert_eq!(code.num_checks(), 1);
        assert!(code.z_stab_generators().is_empty());
        assert!(!code.syndrome_of(&ZString::single(0)).is_trivial());
        assert!(code.syndrome_of(&ZString::identity()).is_trivial());
        assert!(code.syndrome_of(&ZString::from_qubits([0, 1])).is_trivial());
        assert_eq!(code.canonical_representative(&Syndrome::from_index(1)), ZString::single(0));
        assert_eq!(code.logical_class_of(&code.logical_z()).unwrap(), LogicalClass::Logical);
        code.verify_structure().unwrap();
    }

    #[test]
    fn surface_code_sizes() {
        for (d, checks) in [(3, 4), (5, 12), (7, 24), (17, 144)] {
            let code = StabilizerCode::surface(d).unwrap();
            assert_eq!(code.n(), d * d);
            assert_eq!(code.num_checks(), checks);
            assert_eq!(code.z_stab_generators().len(), checks);
            assert_eq!(code.destabilizers().len(), checks);
            code.verify_structure().unwrap();
        }
    }

    #[test]
    fn rejects_bad_distance() {
        for d in [0, 1, 2, 4, 6, 19] {
            assert!(matches!(StabilizerCode::surface(d), Err(Error::InvalidDistance(_))));
        }
    }

    #[test]
    fn every_weight_one_error_is_detected_d3() {
        let code = StabilizerCode::surface(3).unwrap();
        for j in 0..9 {
            assert!(!code.syndrome_of(&ZString::single(j)).is_trivial(), "qubit {j}");
            assert!(!code.qubit_checks(j).is_empty() && code.qubit_checks(j).len() <= 2);
        }
    }

    #[test]
    fn canonical_representative_is_a_section() {
        for d in [3, 5] {
            let code = StabilizerCode::surface(d).unwrap();
            for idx in 0..(1usize << code.num_checks()) {
                let s = Syndrome::from_index(idx);
                assert_eq!(code.syndrome_of(&code.canonical_representative(&s)), s);
            }
        }
        let code = StabilizerCode::surface(3).unwrap();
        assert!(code.canonical_representative(&Syndrome::trivial()).is_identity());
        for f in 0..4 {
            let s = Syndrome(Bits::single(f));
            assert_eq!(code.canonical_representative(&s), code.destabilizers()[f]);
        }
    }

    #[test]
    fn logical_class_rejects_detected_errors() {
        let code = StabilizerCode::surface(3).unwrap();
        assert!(matches!(
            code.logical_class_of(&ZString::single(4)),
            Err(Error::NontrivialSyndrome)
        ));
        assert_eq!(code.logical_class_of(&ZString::identity()).unwrap(), LogicalClass::Trivial);
        assert_eq!(code.logical_class_of(&code.logical_z()).unwrap(), LogicalClass::Logical);
    }

    #[test]
    fn coset_partition_is_unique_d3() {
        // Every Z-string is E_s * S * ZL^alpha for exactly one (s, S, alpha).
        let code = StabilizerCode::surface(3).unwrap();
        let group: Vec<ZString> = code.z_stabilizer_group(DEFAULT_GROUP_CAP).unwrap().map(|(s, _)| s).collect();
        let mut seen = std::collections::HashSet::new();
        for idx in 0..16 {
            let es = code.canonical_representative(&Syndrome::from_index(idx));
            for s in &group {
                for alpha in [false, true] {
                    let mut e = es * *s;
                    if alpha {
                        e *= code.logical_z();
                    }
                    assert!(seen.insert(e));
                }
            }
        }
        assert_eq!(seen.len(), 512);
        for raw in 0u64..512 {
            let e = ZString(Bits::from_u64(raw));
            let s = code.syndrome_of(&e);
            let rest = e * code.canonical_representative(&s);
            let class = code.logical_class_of(&rest).unwrap();
            let stab = if class.is_logical() { rest * code.logical_z() } else { rest };
            assert!(group.contains(&stab));
        }
    }

    proptest! {
        #[test]
        fn syndrome_is_a_homomorphism(d in prop::sample::select(vec![3usize, 5, 7, 9]), a in any::<[u64; 2]>(), b in any::<[u64; 2]>()) {
            let code = StabilizerCode::surface(d).unwrap();
            let mk = |w: [u64; 2]| ZString::from_qubits((0..code.n()).filter(|&j| (w[j / 64] >> (j % 64)) & 1 == 1));
            let (ea, eb) = (mk(a), mk(b));
            prop_assert_eq!(code.syndrome_of(&(ea * eb)), code.syndrome_of(&ea) ^ code.syndrome_of(&eb));
        }

        #[test]
        fn syndrome_bit_is_overlap_parity(d in prop::sample::select(vec![3usize, 5]), w in any::<u64>()) {
            let code = StabilizerCode::surface(d).unwrap();
            let e = ZString::from_qubits((0..code.n()).filter(|&j| (w >> (j % 64)) & 1 == 1));
            let s = code.syndrome_of(&e);
            for f in 0..code.num_checks() {
                prop_assert_eq!(s.get(f), e.bits().overlap_parity(code.x_check_mask(f)));
            }
        }
    }
}
