//! Per-syndrome coset amplitudes of the coherent error unitary.
//!
//! For a code state |psi>, projecting U|psi> onto syndrome s leaves
//! E_s (a(s) + b(s) Z_L) |psi>, with a(s) (b(s)) the sum of the rotation amplitudes of
//! every Z-string in the trivial (logical) class of the coset E_s * Zstab.
//!
//! The map E -> (syndrome, class) is linear over GF(2), and the amplitude is a product
//! over qubits, so its Fourier transform on the key space factorizes:
//! F(k) = prod_j (cos t_j + (-1)^{k.col_j} i sin t_j) = exp(i sum_j +-t_j).
//! A Walsh-Hadamard transform of F recovers all coset sums in O(2^(N+1) (n + N)).

use num_complex::Complex64;

use super::AngleVector;
use crate::code_model::{StabilizerCode, Syndrome};
use crate::error::{Error, Result};

/// Largest check count the coherent backend accepts (d = 5 surface code).
pub const MAX_COHERENT_CHECKS: usize = 12;

/// Largest qubit count for the full 2^n enumeration route.
pub const MAX_SWEEP_QUBITS: usize = 26;

#[derive(Clone, Debug)]
pub struct CosetTable {
    checks: usize,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

/// Key column of Z_j: syndrome bits, then the class bit relative to the canonical
/// representative at position `checks`.
fn key_columns(code: &StabilizerCode) -> Vec<usize> {
    let checks = code.num_checks();
    let destab_parity: Vec<bool> =
        code.destabilizers().iter().map(|d| code.logical_parity(d)).collect();
    (0..code.n())
        .map(|j| {
            let s = code.qubit_syndrome(j);
            let class = s.flagged().fold(code.logical_parity(&crate::code_model::ZString::single(j)), |acc, f| {
                acc ^ destab_parity[f]
            });
            s.index() | (usize::from(class) << checks)
        })
        .collect()
}

fn check_cap(code: &StabilizerCode) -> Result<()> {
    if code.num_checks() > MAX_COHERENT_CHECKS {
        return Err(Error::CoherentCapExceeded { checks: code.num_checks(), cap: MAX_COHERENT_CHECKS });
    }
    Ok(())
}

/// In-place unnormalized Walsh-Hadamard transform.
fn walsh_hadamard(v: &mut [Complex64]) {
    let len = v.len();
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let (x, y) = (v[i], v[i + h]);
                v[i] = x + y;
                v[i + h] = x - y;
            }
        }
        h *= 2;
    }
}

impl CosetTable {
    /// Builds the table by character sums and a Walsh-Hadamard transform.
    pub fn build(code: &StabilizerCode, theta: &AngleVector) -> Result<Self> {
        check_cap(code)?;
        assert_eq!(theta.len(), code.n(), "angle count must match qubit count");
        let checks = code.num_checks();
        let cols = key_columns(code);
        let size = 1usize << (checks + 1);
        let mut spectrum: Vec<Complex64> = (0..size)
            .map(|k| {
                let phase: f64 = cols
                    .iter()
                    .zip(theta.angles())
                    .map(|(&col, &t)| if (k & col).count_ones() & 1 == 0 { t } else { -t })
                    .sum();
                Complex64::from_polar(1.0, phase)
            })
            .collect();
        walsh_hadamard(&mut spectrum);
        let scale = 1.0 / size as f64;
        let half = 1usize << checks;
        let a = spectrum[..half].iter().map(|z| z * scale).collect();
        let b = spectrum[half..].iter().map(|z| z * scale).collect();
        Ok(CosetTable { checks, a, b })
    }

    /// Builds the table by summing the amplitude of every one of the 2^n Z-strings into
    /// its (syndrome, class) bucket. Each amplitude is the product of two precomputed
    /// half-register amplitudes, so no error accumulates along the walk.
    pub fn build_by_sweep(code: &StabilizerCode, theta: &AngleVector) -> Result<Self> {
        check_cap(code)?;
        let n = code.n();
        if n > MAX_SWEEP_QUBITS {
            return Err(Error::CoherentCapExceeded { checks: code.num_checks(), cap: MAX_COHERENT_CHECKS });
        }
        assert_eq!(theta.len(), n, "angle count must match qubit count");
        let checks = code.num_checks();
        let cols = key_columns(code);
        let low_bits = n / 2;
        let half_tables = |range: std::ops::Range<usize>| {
            let width = range.len();
            let mut amp = vec![Complex64::new(1.0, 0.0); 1 << width];
            let mut key = vec![0usize; 1 << width];
            for mask in 0..(1usize << width) {
                for (bit, j) in range.clone().enumerate() {
                    let t = theta.angles()[j];
                    if (mask >> bit) & 1 == 1 {
                        amp[mask] *= Complex64::new(0.0, t.sin());
                        key[mask] ^= cols[j];
                    } else {
                        amp[mask] *= t.cos();
                    }
                }
            }
            (amp, key)
        };
        let (amp_lo, key_lo) = half_tables(0..low_bits);
        let (amp_hi, key_hi) = half_tables(low_bits..n);
        let mut buckets = vec![Complex64::new(0.0, 0.0); 1 << (checks + 1)];
        for (ah, &kh) in amp_hi.iter().zip(&key_hi) {
            for (al, &kl) in amp_lo.iter().zip(&key_lo) {
                buckets[kh ^ kl] += ah * al;
            }
        }
        let half = 1usize << checks;
        let b = buckets.split_off(half);
        Ok(CosetTable { checks, a: buckets, b })
    }

    pub fn checks(&self) -> usize {
        self.checks
    }

    pub fn num_syndromes(&self) -> usize {
        self.a.len()
    }

    #[inline]
    pub fn a(&self, s: &Syndrome) -> Complex64 {
        self.a[s.index()]
    }

    #[inline]
    pub fn b(&self, s: &Syndrome) -> Complex64 {
        self.b[s.index()]
    }

    #[inline]
    pub fn pair(&self, index: usize) -> (Complex64, Complex64) {
        (self.a[index], self.b[index])
    }

    /// sum_s |a(s)|^2 + |b(s)|^2, equal to one for a unitary error.
    pub fn completeness(&self) -> f64 {
        self.a.iter().chain(&self.b).map(|z| z.norm_sqr()).sum()
    }
}
