//! Dense statevector reference for small codes, in the computational Z basis.

use num_complex::Complex64;

use super::AngleVector;
use crate::code_model::{MultiCycleSyndrome, StabilizerCode, ZString};
use crate::error::{Error, Result};

pub const MAX_ORACLE_QUBITS: usize = 12;

#[derive(Clone, Copy, Debug)]
pub struct OracleOutcome {
    /// Overlap with E_s |+_L>, E_s the canonical representative of the last syndrome.
    pub alpha: Complex64,
    /// Overlap with Z_L E_s |+_L>.
    pub beta: Complex64,
    /// Squared norm of the projected state: the probability of the syndrome history.
    pub norm: f64,
}

fn mask_of(bits: impl IntoIterator<Item = usize>) -> usize {
    bits.into_iter().fold(0, |m, j| m | (1 << j))
}

fn project(state: &mut [Complex64], mask: usize, sign: f64) {
    let copy = state.to_vec();
    for (z, v) in state.iter_mut().enumerate() {
        *v = (copy[z] + copy[z ^ mask] * sign) * 0.5;
    }
}

fn apply_z(state: &mut [Complex64], e: &ZString) {
    let mask = mask_of(e.qubits());
    for (z, v) in state.iter_mut().enumerate() {
        if (z & mask).count_ones() & 1 == 1 {
            *v = -*v;
        }
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// |+_L>: the all-zeros state projected onto the +1 eigenspaces of every X-check and of
/// logical X, then normalized.
pub fn plus_logical_state(code: &StabilizerCode) -> Result<Vec<Complex64>> {
    if code.n() > MAX_ORACLE_QUBITS {
        return Err(Error::OracleTooLarge { n: code.n(), cap: MAX_ORACLE_QUBITS });
    }
    let mut state = vec![Complex64::new(0.0, 0.0); 1 << code.n()];
    state[0] = Complex64::new(1.0, 0.0);
    for check in code.x_checks() {
        project(&mut state, mask_of(check.iter().copied()), 1.0);
    }
    project(&mut state, mask_of(code.logical_x_support().iter().copied()), 1.0);
    let norm = inner(&state, &state).re.sqrt();
    state.iter_mut().for_each(|v| *v /= norm);
    Ok(state)
}

/// Applies U then the projector onto each recorded syndrome, cycle by cycle, starting
/// from |+_L>.
pub fn statevector_oracle(
    code: &StabilizerCode,
    theta: &AngleVector,
    syndromes: &MultiCycleSyndrome,
) -> Result<OracleOutcome> {
    let last = syndromes.last().ok_or(Error::NoCycles)?;
    let initial = plus_logical_state(code)?;
    let n = code.n();
    let phases: Vec<Complex64> = (0..1usize << n)
        .map(|z| {
            let phase: f64 =
                (0..n).map(|j| if (z >> j) & 1 == 0 { theta.angles()[j] } else { -theta.angles()[j] }).sum();
            Complex64::from_polar(1.0, phase)
        })
        .collect();
    let masks: Vec<usize> = code.x_checks().iter().map(|c| mask_of(c.iter().copied())).collect();
    let mut state = initial.clone();
    for s in &syndromes.cycles {
        state.iter_mut().zip(&phases).for_each(|(v, ph)| *v *= ph);
        for (f, &mask) in masks.iter().enumerate() {
            project(&mut state, mask, if s.get(f) { -1.0 } else { 1.0 });
        }
    }
    let mut reference = initial;
    apply_z(&mut reference, &code.canonical_representative(last));
    let alpha = inner(&reference, &state);
    apply_z(&mut reference, &code.logical_z());
    let beta = inner(&reference, &state);
    Ok(OracleOutcome { alpha, beta, norm: inner(&state, &state).re })
}
