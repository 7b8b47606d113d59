use num_complex::Complex64;
use rand::Rng;

use super::{AngleVector, CosetTable, NoiseParams};
use crate::code_model::{MultiCycleSyndrome, StabilizerCode, Syndrome, ZString};
use crate::error::{Error, Result};
use crate::pauli_sim::apply_readout_noise;

/// One coherent shot. The unnormalized post-measurement state is
/// e_acc (alpha + beta Z_L) |psi> for any code state |psi> orthogonal to Z_L |psi>,
/// so |alpha|^2 + |beta|^2 is the probability of the true syndrome history.
#[derive(Clone, Debug)]
pub struct TrajectoryRecord {
    pub theta: AngleVector,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub e_acc: ZString,
    pub true_syndromes: MultiCycleSyndrome,
    pub recorded: MultiCycleSyndrome,
}

impl TrajectoryRecord {
    pub fn norm(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }

    /// (alpha, beta) re-expressed against the canonical representative of the final
    /// syndrome instead of `e_acc`.
    pub fn canonical_amplitudes(&self, code: &StabilizerCode) -> Result<(Complex64, Complex64)> {
        let last = self.true_syndromes.last().ok_or(Error::NoCycles)?;
        let offset = code.canonical_representative(last) * self.e_acc;
        Ok(if code.logical_class_of(&offset)?.is_logical() {
            (self.beta, self.alpha)
        } else {
            (self.alpha, self.beta)
        })
    }

    /// |Re(alpha conj(beta))| / (|alpha| |beta|): zero when the residual is a pure
    /// logical Z rotation.
    pub fn rotation_phase_defect(&self) -> f64 {
        let denom = self.alpha.norm() * self.beta.norm();
        if denom == 0.0 {
            0.0
        } else {
            (self.alpha * self.beta.conj()).re.abs() / denom
        }
    }
}

struct Evolution {
    alpha: Complex64,
    beta: Complex64,
    e_acc: ZString,
    history: Vec<Syndrome>,
    weights: Vec<f64>,
}

impl Evolution {
    fn new(table_size: usize, t: usize) -> Self {
        Evolution {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
            e_acc: ZString::identity(),
            history: Vec::with_capacity(t),
            weights: vec![0.0; table_size],
        }
    }

    fn cycle<R: Rng + ?Sized>(&mut self, code: &StabilizerCode, table: &CosetTable, rng: &mut R) {
        let (al, be) = (self.alpha, self.beta);
        let mut total = 0.0;
        for (idx, w) in self.weights.iter_mut().enumerate() {
            let (a, b) = table.pair(idx);
            *w = (al * a + be * b).norm_sqr() + (al * b + be * a).norm_sqr();
            total += *w;
        }
        assert!(total > 0.0, "syndrome distribution has zero total weight");
        let mut pick = rng.random::<f64>() * total;
        let mut chosen = self.weights.len() - 1;
        for (idx, &w) in self.weights.iter().enumerate() {
            if pick < w {
                chosen = idx;
                break;
            }
            pick -= w;
        }
        // Guard against landing on a zero-weight tail through rounding.
        while self.weights[chosen] == 0.0 {
            chosen -= 1;
        }
        let (a, b) = table.pair(chosen);
        self.alpha = al * a + be * b;
        self.beta = al * b + be * a;
        let shifted = Syndrome::from_index(chosen);
        let observed = shifted ^ code.syndrome_of(&self.e_acc);
        self.e_acc *= code.canonical_representative(&shifted);
        self.history.push(observed);
    }
}

fn finish<R: Rng + ?Sized>(
    code: &StabilizerCode,
    theta: AngleVector,
    evo: Evolution,
    q: f64,
    rng: &mut R,
) -> TrajectoryRecord {
    let true_syndromes = MultiCycleSyndrome::new(evo.history);
    let recorded = apply_readout_noise(&true_syndromes, code.num_checks(), q, rng);
    TrajectoryRecord { theta, alpha: evo.alpha, beta: evo.beta, e_acc: evo.e_acc, true_syndromes, recorded }
}

/// Samples one angle vector, then t syndrome-measurement cycles with it held fixed.
pub fn run_shot<R: Rng + ?Sized>(
    code: &StabilizerCode,
    params: &NoiseParams,
    t: usize,
    rng: &mut R,
) -> Result<TrajectoryRecord> {
    if t == 0 {
        return Err(Error::NoCycles);
    }
    let theta = AngleVector::sample(code.n(), params.sigma, rng);
    let table = CosetTable::build(code, &theta)?;
    let mut evo = Evolution::new(table.num_syndromes(), t);
    for _ in 0..t {
        evo.cycle(code, &table, rng);
    }
    Ok(finish(code, theta, evo, params.q, rng))
}

/// As [`run_shot`], but with fresh angles every cycle. The returned `theta` is the last
/// cycle's sample.
pub fn refresh_angle_variant<R: Rng + ?Sized>(
    code: &StabilizerCode,
    params: &NoiseParams,
    t: usize,
    rng: &mut R,
) -> Result<TrajectoryRecord> {
    if t == 0 {
        return Err(Error::NoCycles);
    }
    let mut evo = Evolution::new(1 << code.num_checks(), t);
    let mut theta = AngleVector::new(vec![0.0; code.n()]);
    for _ in 0..t {
        theta = AngleVector::sample(code.n(), params.sigma, rng);
        let table = CosetTable::build(code, &theta)?;
        evo.cycle(code, &table, rng);
    }
    Ok(finish(code, theta, evo, params.q, rng))
}

/// A fresh readout-noise realization of the same true history.
pub fn resample_readout<R: Rng + ?Sized>(
    code: &StabilizerCode,
    record: &TrajectoryRecord,
    q: f64,
    rng: &mut R,
) -> MultiCycleSyndrome {
    apply_readout_noise(&record.true_syndromes, code.num_checks(), q, rng)
}

/// Infidelity of the corrected state with the initial logical state, sin^2 of the
/// residual logical rotation angle.
pub fn logical_infidelity(code: &StabilizerCode, record: &TrajectoryRecord, correction: &ZString) -> Result<f64> {
    let residual = *correction * record.e_acc;
    if !code.syndrome_of(&residual).is_trivial() {
        return Err(Error::InconsistentCorrection);
    }
    let norm = record.norm();
    let flipped = code.logical_class_of(&residual)?.is_logical();
    Ok(if flipped { record.alpha.norm_sqr() } else { record.beta.norm_sqr() } / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent_sim::statevector_oracle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_noise_is_trivial() {
        let code = StabilizerCode::surface(3).unwrap();
        let params = NoiseParams::from_sigma(0.0, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rec = run_shot(&code, &params, 3, &mut rng).unwrap();
        assert!(rec.true_syndromes.cycles.iter().all(Syndrome::is_trivial));
        assert_eq!(rec.recorded, rec.true_syndromes);
        assert!((rec.alpha - 1.0).norm() < 1e-15 && rec.beta.norm() < 1e-15);
        assert_eq!(logical_infidelity(&code, &rec, &ZString::identity()).unwrap(), 0.0);
        let refreshed = refresh_angle_variant(&code, &params, 3, &mut rng).unwrap();
        assert!(refreshed.true_syndromes.cycles.iter().all(Syndrome::is_trivial));
    }

    #[test]
    fn matches_statevector_oracle_d3() {
        let code = StabilizerCode::surface(3).unwrap();
        let params = NoiseParams::from_sigma(0.6, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for t in 1..=3 {
            for _ in 0..10 {
                let rec = run_shot(&code, &params, t, &mut rng).unwrap();
                let oracle = statevector_oracle(&code, &rec.theta, &rec.true_syndromes).unwrap();
                let (a, b) = rec.canonical_amplitudes(&code).unwrap();
                assert!((a - oracle.alpha).norm() < 1e-10);
                assert!((b - oracle.beta).norm() < 1e-10);
                assert!((rec.norm() - oracle.norm).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn surface_code_residual_is_a_z_rotation() {
        let code = StabilizerCode::surface(3).unwrap();
        let params = NoiseParams::from_sigma(0.4, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let rec = run_shot(&code, &params, 3, &mut rng).unwrap();
            assert!(rec.rotation_phase_defect() < 1e-9);
        }
    }

    #[test]
    fn inconsistent_correction_is_rejected() {
        let code = StabilizerCode::surface(3).unwrap();
        let params = NoiseParams::from_sigma(0.0, 0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rec = run_shot(&code, &params, 1, &mut rng).unwrap();
        assert!(matches!(
            logical_infidelity(&code, &rec, &ZString::single(4)),
            Err(Error::InconsistentCorrection)
        ));
        assert!(matches!(run_shot(&code, &params, 0, &mut rng), Err(Error::NoCycles)));
    }

    #[test]
    fn final_cycle_is_recorded_faithfully() {
        let code = StabilizerCode::surface(3).unwrap();
        let params = NoiseParams::from_sigma(0.5, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let rec = run_shot(&code, &params, 3, &mut rng).unwrap();
            assert_eq!(rec.recorded.last(), rec.true_syndromes.last());
        }
    }

    #[test]
    fn negated_angles_give_same_probabilities() {
        let code = StabilizerCode::surface(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let theta = AngleVector::sample(9, 0.5, &mut rng);
            let t1 = CosetTable::build(&code, &theta).unwrap();
            let t2 = CosetTable::build(&code, &theta.negated()).unwrap();
            let seed = rng.random::<u64>();
            let run = |table: &CosetTable| {
                let mut r = ChaCha8Rng::seed_from_u64(seed);
                let mut evo = Evolution::new(16, 3);
                for _ in 0..3 {
                    evo.cycle(&code, table, &mut r);
                }
                (evo.history, evo.alpha.norm_sqr(), evo.beta.norm_sqr())
            };
            let (h1, a1, b1) = run(&t1);
            let (h2, a2, b2) = run(&t2);
            assert_eq!(h1, h2);
            assert!((a1 - a2).abs() < 1e-12 && (b1 - b2).abs() < 1e-12);
        }
    }
}
