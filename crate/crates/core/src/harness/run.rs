use std::sync::Arc;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Backend, ExperimentConfig};
use crate::code_model::{MultiCycleSyndrome, StabilizerCode, ZString};
use crate::coherent_sim::{logical_infidelity, refresh_angle_variant, resample_readout, run_shot, NoiseParams};
use crate::decoder::{mwpm_decode, CheckGraph, DetectionGraph, LookupDecoder};
use crate::error::Result;
use crate::pauli_sim::{failure_of, run_pauli_shot};

const CHUNK: usize = 512;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Independent stream for one shot of one grid point.
pub fn shot_rng(seed: u64, grid_index: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed ^ splitmix(grid_index)));
    rng.set_stream(shot);
    rng
}

/// Decoder fixed for one grid point.
#[derive(Clone, Debug)]
pub enum ShotDecoder {
    Lookup(&'static LookupDecoder),
    Mwpm { checks: Arc<CheckGraph>, p: f64, q: f64 },
}

impl ShotDecoder {
    pub fn for_config(cfg: &ExperimentConfig, code: &StabilizerCode) -> Self {
        if cfg.uses_lookup() {
            ShotDecoder::Lookup(LookupDecoder::shared())
        } else {
            ShotDecoder::Mwpm { checks: Arc::new(CheckGraph::new(code)), p: cfg.p(), q: cfg.q }
        }
    }

    pub fn decode(&self, recorded: &MultiCycleSyndrome) -> Result<ZString> {
        match self {
            ShotDecoder::Lookup(table) => table.decode(recorded),
            ShotDecoder::Mwpm { checks, p, q } => mwpm_decode(&DetectionGraph::new(checks.clone(), recorded, *p, *q)?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub d: usize,
    pub p: f64,
    pub q: f64,
    pub sigma: f64,
    pub backend: String,
    pub t: usize,
    pub pl: f64,
    pub stderr: f64,
    /// Decoded samples: shots, or angle samples times readout resamples.
    pub n: usize,
    #[serde(skip)]
    pub wall_time: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

#[derive(Clone, Copy, Default)]
struct Moments {
    sum: f64,
    sum_sq: f64,
    count: usize,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
        self.count += 1;
    }

    fn merge(self, o: Moments) -> Moments {
        Moments { sum: self.sum + o.sum, sum_sq: self.sum_sq + o.sum_sq, count: self.count + o.count }
    }
}

/// Sums per fixed chunk of shots, merged in chunk order, so the result does not depend
/// on the number of worker threads.
fn accumulate(samples: usize, per_sample: impl Fn(u64) -> Result<f64> + Sync) -> Result<Moments> {
    let chunks: Vec<Result<Moments>> = (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut m = Moments::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                m.push(per_sample(i as u64)?);
            }
            Ok(m)
        })
        .collect();
    chunks.into_iter().try_fold(Moments::default(), |acc, m| Ok(acc.merge(m?)))
}

/// Estimate and standard error. For the pauli backend the samples are 0/1 flags and
/// the error is binomial; for coherent backends it is the empirical error of the
/// per-angle means. Both are floored at 1/n so they stay positive.
fn estimate(m: Moments, n_total: usize) -> (f64, f64) {
    let n = m.count as f64;
    let mean = m.sum / n;
    let var = if m.count > 1 { ((m.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
    let stderr = (var / n).sqrt().max(1.0 / n_total as f64);
    (mean, stderr)
}

pub fn run_point(cfg: &ExperimentConfig, grid_index: u64) -> Result<SweepRow> {
    cfg.validate()?;
    let start = Instant::now();
    let code = cfg.code()?;
    let decoder = ShotDecoder::for_config(cfg, &code);
    let (t, q, p) = (cfg.t, cfg.q, cfg.p());
    let (moments, n_total) = match cfg.backend {
        Backend::Pauli => {
            let m = accumulate(cfg.samples, |i| {
                let mut rng = shot_rng(cfg.seed, grid_index, i);
                let shot = run_pauli_shot(&code, p, q, t, &mut rng)?;
                let correction = decoder.decode(&shot.recorded)?;
                Ok(if failure_of(&code, &shot, &correction)? { 1.0 } else { 0.0 })
            })?;
            (m, cfg.samples)
        }
        Backend::Coherent | Backend::Refresh => {
            let params: NoiseParams = cfg.noise_params()?;
            let m = accumulate(cfg.samples, |i| {
                let mut rng = shot_rng(cfg.seed, grid_index, i);
                let record = if cfg.backend == Backend::Coherent {
                    run_shot(&code, &params, t, &mut rng)?
                } else {
                    refresh_angle_variant(&code, &params, t, &mut rng)?
                };
                let mut total = logical_infidelity(&code, &record, &decoder.decode(&record.recorded)?)?;
                for _ in 1..cfg.readout_samples {
                    let recorded = resample_readout(&code, &record, q, &mut rng);
                    total += logical_infidelity(&code, &record, &decoder.decode(&recorded)?)?;
                }
                Ok(total / cfg.readout_samples as f64)
            })?;
            (m, cfg.samples * cfg.readout_samples)
        }
    };
    let (pl, stderr) = estimate(moments, n_total);
    Ok(SweepRow {
        d: cfg.d,
        p,
        q,
        sigma: cfg.sigma().unwrap_or(f64::INFINITY),
        backend: cfg.backend.name().to_string(),
        t,
        pl,
        stderr,
        n: n_total,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Runs grid points in order; point k draws from streams keyed by k.
pub fn run_sweep(points: &[ExperimentConfig]) -> Result<SweepResult> {
    let rows = points.iter().enumerate().map(|(k, cfg)| run_point(cfg, k as u64)).collect::<Result<_>>()?;
    Ok(SweepResult { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::{CodeFamily, DecoderChoice, Noise};
    use rand::Rng;

    fn cfg(backend: Backend, noise: Noise, q: f64, samples: usize) -> ExperimentConfig {
        ExperimentConfig {
            code: CodeFamily::Surface,
            d: 3,
            t: 3,
            backend,
            noise,
            q,
            samples,
            readout_samples: 4,
            seed: 17,
            decoder: DecoderChoice::Auto,
        }
    }

    #[test]
    fn noiseless_point_has_zero_rate() {
        for backend in [Backend::Pauli, Backend::Coherent, Backend::Refresh] {
            let row = run_point(&cfg(backend, Noise::Sigma(0.0), 0.0, 200), 0).unwrap();
            assert_eq!(row.pl, 0.0);
            assert!(row.stderr > 0.0);
        }
    }

    #[test]
    fn streams_are_distinct_and_reproducible() {
        let a: u64 = shot_rng(1, 2, 3).random();
        assert_eq!(a, shot_rng(1, 2, 3).random::<u64>());
        assert_ne!(a, shot_rng(1, 2, 4).random::<u64>());
        assert_ne!(a, shot_rng(1, 3, 3).random::<u64>());
        assert_ne!(a, shot_rng(2, 2, 3).random::<u64>());
    }

    #[test]
    fn independent_of_thread_count() {
        let c = cfg(Backend::Coherent, Noise::P(0.05), 0.05, 700);
        let multi = run_point(&c, 3).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| run_point(&c, 3).unwrap());
        assert_eq!(multi.pl.to_bits(), single.pl.to_bits());
        assert_eq!(multi.stderr.to_bits(), single.stderr.to_bits());
    }

    #[test]
    fn doubling_samples_shrinks_error() {
        let small = run_point(&cfg(Backend::Pauli, Noise::P(0.08), 0.08, 20_000), 0).unwrap();
        let large = run_point(&cfg(Backend::Pauli, Noise::P(0.08), 0.08, 40_000), 0).unwrap();
        let ratio = small.stderr / large.stderr;
        assert!((ratio / 2f64.sqrt() - 1.0).abs() < 0.1, "ratio {ratio}");
    }
}
