//! Quasistatic phase damping: per-qubit Z rotations exp(i t_j Z_j) with Gaussian angles
//! that stay fixed for every measurement cycle of a shot.
//!
//! The simulation is exact. For one angle sample the [`CosetTable`] gives, for every
//! syndrome, the pair (a, b) multiplying the canonical representative and its logical
//! partner. A shot then only tracks two complex amplitudes and the accumulated
//! representative string.

mod oracle;
mod scenarios;
mod table;
mod trajectory;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::analytics::p_of_sigma;
use crate::code_model::ZString;
use crate::error::{Error, Result};

pub use oracle::{statevector_oracle, OracleOutcome, MAX_ORACLE_QUBITS};
pub use scenarios::{logical_level_probabilities, signed_scenario_weights, LogicalLevel, ScenarioWeight};
pub use table::{CosetTable, MAX_COHERENT_CHECKS, MAX_SWEEP_QUBITS};
pub use trajectory::{logical_infidelity, refresh_angle_variant, resample_readout, run_shot, TrajectoryRecord};

/// Rotation angles, one per data qubit, in radians.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleVector {
    theta: Vec<f64>,
}

impl AngleVector {
    pub fn new(theta: Vec<f64>) -> Self {
        AngleVector { theta }
    }

    /// Draws i.i.d. N(0, sigma) angles. Samples are used unfolded since only cos and sin
    /// of them enter.
    pub fn sample<R: Rng + ?Sized>(n: usize, sigma: f64, rng: &mut R) -> Self {
        if sigma == 0.0 {
            return AngleVector { theta: vec![0.0; n] };
        }
        let normal = Normal::new(0.0, sigma).expect("sigma is finite and non-negative");
        AngleVector { theta: (0..n).map(|_| normal.sample(rng)).collect() }
    }

    pub fn angles(&self) -> &[f64] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn negated(&self) -> Self {
        AngleVector { theta: self.theta.iter().map(|t| -t).collect() }
    }
}

/// prod_j cos(t_j)^(1 - e_j) (i sin t_j)^e_j.
pub fn amplitude(e: &ZString, theta: &AngleVector) -> Complex64 {
    let mut magnitude = 1.0;
    for (j, &t) in theta.angles().iter().enumerate() {
        magnitude *= if e.contains(j) { t.sin() } else { t.cos() };
    }
    let i_powers = [Complex64::new(1.0, 0.0), Complex64::i(), Complex64::new(-1.0, 0.0), -Complex64::i()];
    i_powers[e.weight() % 4] * magnitude
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseParams {
    pub sigma: f64,
    pub p: f64,
    pub q: f64,
}

impl NoiseParams {
    pub fn from_sigma(sigma: f64, q: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::Config(format!("sigma must be finite and non-negative, got {sigma}")));
        }
        check_readout(q)?;
        Ok(NoiseParams { sigma, p: p_of_sigma(sigma), q })
    }

    pub fn from_p(p: f64, q: f64) -> Result<Self> {
        let sigma = crate::analytics::sigma_of_p(p)?;
        check_readout(q)?;
        Ok(NoiseParams { sigma, p, q })
    }
}

fn check_readout(q: f64) -> Result<()> {
    if (0.0..=0.5).contains(&q) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn amplitude_special_cases() {
        let theta = AngleVector::new(vec![0.3, -0.2, 1.1]);
        let id = amplitude(&ZString::identity(), &theta);
        assert!((id.re - 0.3f64.cos() * 0.2f64.cos() * 1.1f64.cos()).abs() < 1e-15);
        assert_eq!(id.im, 0.0);
        let half_pi = AngleVector::new(vec![std::f64::consts::FRAC_PI_2]);
        assert!((amplitude(&ZString::single(0), &half_pi) - Complex64::i()).norm() < 1e-15);
    }

    #[test]
    fn amplitudes_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let theta = AngleVector::sample(3, 0.8, &mut rng);
            let total: f64 = (0..8u64)
                .map(|m| amplitude(&ZString(crate::code_model::Bits::from_u64(m)), &theta).norm_sqr())
                .sum();
            assert!((total - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn noise_params_validate() {
        let np = NoiseParams::from_sigma(0.2, 0.01).unwrap();
        assert!((np.p - (1.0 - (-0.08f64).exp()) / 2.0).abs() < 1e-15);
        assert!(NoiseParams::from_sigma(0.2, 0.6).is_err());
        assert!(NoiseParams::from_p(0.5, 0.0).is_err());
        let back = NoiseParams::from_p(np.p, 0.0).unwrap();
        assert!((back.sigma - 0.2).abs() < 1e-12);
    }
}
