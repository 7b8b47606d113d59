//! Independent phase flips with rate p per qubit and cycle, plus readout flips with
//! rate q on every cycle but the last.

use rand::Rng;

use crate::code_model::{MultiCycleSyndrome, StabilizerCode, Syndrome, ZString};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct PauliShot {
    /// Flips drawn before each cycle's measurement.
    pub fresh: Vec<ZString>,
    pub cumulative: ZString,
    pub true_syndromes: MultiCycleSyndrome,
    pub recorded: MultiCycleSyndrome,
}

fn check_probability(x: f64) -> Result<()> {
    if (0.0..=0.5).contains(&x) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(x))
    }
}

/// Copies a syndrome history, flipping each bit with probability q except in the
/// final cycle.
pub fn apply_readout_noise<R: Rng + ?Sized>(
    true_syndromes: &MultiCycleSyndrome,
    checks: usize,
    q: f64,
    rng: &mut R,
) -> MultiCycleSyndrome {
    let mut recorded = true_syndromes.clone();
    if q > 0.0 {
        let t = recorded.len();
        for s in recorded.cycles.iter_mut().take(t.saturating_sub(1)) {
            for f in 0..checks {
                if rng.random::<f64>() < q {
                    s.flip(f);
                }
            }
        }
    }
    recorded
}

pub fn run_pauli_shot<R: Rng + ?Sized>(
    code: &StabilizerCode,
    p: f64,
    q: f64,
    t: usize,
    rng: &mut R,
) -> Result<PauliShot> {
    check_probability(p)?;
    check_probability(q)?;
    if t == 0 {
        return Err(Error::NoCycles);
    }
    let mut fresh = Vec::with_capacity(t);
    let mut history = Vec::with_capacity(t);
    let mut cumulative = ZString::identity();
    let mut syndrome = Syndrome::trivial();
    for _ in 0..t {
        let mut flips = ZString::identity();
        if p > 0.0 {
            for j in 0..code.n() {
                if rng.random::<f64>() < p {
                    flips.flip(j);
                    syndrome ^= code.qubit_syndrome(j);
                }
            }
        }
        cumulative *= flips;
        fresh.push(flips);
        history.push(syndrome);
    }
    let true_syndromes = MultiCycleSyndrome::new(history);
    let recorded = apply_readout_noise(&true_syndromes, code.num_checks(), q, rng);
    Ok(PauliShot { fresh, cumulative, true_syndromes, recorded })
}

/// Whether the correction leaves a logical Z on the code.
pub fn failure_of(code: &StabilizerCode, shot: &PauliShot, correction: &ZString) -> Result<bool> {
    let residual = *correction * shot.cumulative;
    if !code.syndrome_of(&residual).is_trivial() {
        return Err(Error::InconsistentCorrection);
    }
    Ok(code.logical_class_of(&residual)?.is_logical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::pauli_two_cycle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn noiseless_shot_is_trivial() {
        let code = StabilizerCode::surface(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let shot = run_pauli_shot(&code, 0.0, 0.0, 5, &mut rng).unwrap();
        assert!(shot.recorded.cycles.iter().all(Syndrome::is_trivial));
        assert!(!failure_of(&code, &shot, &ZString::identity()).unwrap());
    }

    #[test]
    fn logical_residual_fails() {
        let code = StabilizerCode::surface(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut shot = run_pauli_shot(&code, 0.0, 0.0, 1, &mut rng).unwrap();
        shot.cumulative = code.logical_z();
        assert!(failure_of(&code, &shot, &ZString::identity()).unwrap());
        shot.cumulative = ZString::single(0);
        assert!(matches!(failure_of(&code, &shot, &ZString::identity()), Err(Error::InconsistentCorrection)));
    }

    #[test]
    fn true_syndrome_tracks_cumulative_error() {
        let code = StabilizerCode::surface(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let shot = run_pauli_shot(&code, 0.1, 0.1, 5, &mut rng).unwrap();
            let mut acc = ZString::identity();
            for (r, e) in shot.fresh.iter().enumerate() {
                acc *= *e;
                assert_eq!(shot.true_syndromes.cycles[r], code.syndrome_of(&acc));
            }
            assert_eq!(acc, shot.cumulative);
            assert_eq!(shot.recorded.last(), shot.true_syndromes.last());
        }
    }

    #[test]
    fn rejects_bad_rates() {
        let code = StabilizerCode::repetition();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(run_pauli_shot(&code, 0.6, 0.0, 1, &mut rng).is_err());
        assert!(run_pauli_shot(&code, 0.1, -0.1, 1, &mut rng).is_err());
        assert!(run_pauli_shot(&code, 0.1, 0.1, 0, &mut rng).is_err());
    }

    #[test]
    fn two_cycle_repetition_distribution() {
        let code = StabilizerCode::repetition();
        let p = 0.2;
        let shots = 200_000;
        let mut counts = [[0u32; 2]; 4];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..shots {
            let shot = run_pauli_shot(&code, p, 0.0, 2, &mut rng).unwrap();
            let s = &shot.true_syndromes.cycles;
            let idx = usize::from(s[0].get(0)) | (usize::from(s[1].get(0)) << 1);
            let offset = code.canonical_representative(&s[1]) * shot.cumulative;
            counts[idx][usize::from(code.logical_class_of(&offset).unwrap().is_logical())] += 1;
        }
        let ch = pauli_two_cycle(p);
        for k in 0..4 {
            for (class, expected) in [ch.c[k], ch.d[k]].into_iter().enumerate() {
                let freq = counts[k][class] as f64 / shots as f64;
                let se = (expected * (1.0 - expected) / shots as f64).sqrt();
                assert!((freq - expected).abs() < 4.0 * se, "cell {k}/{class}: {freq} vs {expected}");
            }
        }
    }
}
