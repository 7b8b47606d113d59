use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::analytics::{p_of_sigma, sigma_of_p};
use crate::code_model::StabilizerCode;
use crate::coherent_sim::{NoiseParams, MAX_COHERENT_CHECKS};
use crate::error::{Error, Result};

pub const DEFAULT_PAULI_SHOTS: usize = 100_000;
pub const DEFAULT_OUTER_PER_CYCLE: usize = 2_000;
pub const DEFAULT_READOUT_SAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeFamily {
    Repetition,
    #[default]
    Surface,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Coherent,
    #[default]
    Pauli,
    /// Coherent rotations with fresh angles every cycle.
    Refresh,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Coherent => "coherent",
            Backend::Pauli => "pauli",
            Backend::Refresh => "refresh",
        }
    }

    pub fn is_coherent(self) -> bool {
        self != Backend::Pauli
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderChoice {
    /// Lookup table for the distance-3 code over three cycles when p = q, where it
    /// coincides with matching; matching otherwise.
    #[default]
    Auto,
    Mwpm,
    Lookup,
}

/// Rotation spread or flip probability; the other follows from p = (1 - e^{-2 sigma^2}) / 2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Noise {
    Sigma(f64),
    P(f64),
}

/// One grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub code: CodeFamily,
    pub d: usize,
    pub t: usize,
    pub backend: Backend,
    pub noise: Noise,
    pub q: f64,
    /// Shots (pauli) or angle samples (coherent).
    pub samples: usize,
    /// Readout resamples per angle sample; coherent backends only.
    pub readout_samples: usize,
    pub seed: u64,
    pub decoder: DecoderChoice,
}

impl ExperimentConfig {
    pub fn code(&self) -> Result<StabilizerCode> {
        match self.code {
            CodeFamily::Repetition => Ok(StabilizerCode::repetition()),
            CodeFamily::Surface => StabilizerCode::surface(self.d),
        }
    }

    pub fn p(&self) -> f64 {
        match self.noise {
            Noise::Sigma(s) => p_of_sigma(s),
            Noise::P(p) => p,
        }
    }

    pub fn sigma(&self) -> Result<f64> {
        match self.noise {
            Noise::Sigma(s) => Ok(s),
            Noise::P(p) => sigma_of_p(p),
        }
    }

    pub fn noise_params(&self) -> Result<NoiseParams> {
        match self.noise {
            Noise::Sigma(s) => NoiseParams::from_sigma(s, self.q),
            Noise::P(p) => NoiseParams::from_p(p, self.q),
        }
    }

    pub fn uses_lookup(&self) -> bool {
        match self.decoder {
            DecoderChoice::Lookup => true,
            DecoderChoice::Mwpm => false,
            DecoderChoice::Auto => {
                self.code == CodeFamily::Surface && self.d == 3 && self.t == 3 && self.p() == self.q
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.code == CodeFamily::Surface && (self.d < 3 || self.d % 2 == 0) {
            return bad(format!("surface code distance must be odd and at least 3, got {}", self.d));
        }
        if self.t == 0 {
            return bad("at least one cycle is required".into());
        }
        if self.samples == 0 || self.readout_samples == 0 {
            return bad("sample counts must be positive".into());
        }
        if !(0.0..=0.5).contains(&self.q) {
            return bad(format!("q = {} outside [0, 1/2]", self.q));
        }
        match self.noise {
            Noise::Sigma(s) if !(s >= 0.0 && s.is_finite()) => return bad(format!("sigma = {s} must be finite and >= 0")),
            Noise::P(p) if !(0.0..=0.5).contains(&p) => return bad(format!("p = {p} outside [0, 1/2]")),
            Noise::P(p) if p == 0.5 && self.backend.is_coherent() => return bad("p = 1/2 has no finite sigma".into()),
            _ => {}
        }
        if self.backend.is_coherent() {
            let checks = self.code()?.num_checks();
            if checks > MAX_COHERENT_CHECKS {
                return bad(format!("coherent backends need d <= 5, got d = {}", self.d));
            }
        }
        if self.decoder == DecoderChoice::Lookup && !(self.code == CodeFamily::Surface && self.d == 3 && self.t == 3) {
            return bad("the lookup decoder covers d = 3, t = 3 only".into());
        }
        Ok(())
    }
}

/// A grid of experiments: every distance times every noise value times every q.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub code: CodeFamily,
    pub d: Vec<usize>,
    /// Cycles; `None` means t = d.
    pub t: Option<usize>,
    pub backend: Backend,
    pub sigma: Vec<f64>,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    /// Ties q to each point's p instead of using the `q` list.
    pub q_equals_p: bool,
    pub samples: Option<usize>,
    pub readout_samples: Option<usize>,
    pub seed: u64,
    pub decoder: DecoderChoice,
    pub output: Option<PathBuf>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            code: CodeFamily::Surface,
            d: vec![3],
            t: None,
            backend: Backend::Pauli,
            sigma: Vec::new(),
            p: Vec::new(),
            q: vec![0.0],
            q_equals_p: false,
            samples: None,
            readout_samples: None,
            seed: 0,
            decoder: DecoderChoice::Auto,
            output: None,
        }
    }
}

impl SweepSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Replaces every field set in `text` and keeps the rest.
    pub fn merge_toml(&self, text: &str) -> Result<Self> {
        let overrides: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        let mut base = toml::Table::try_from(self).map_err(|e| Error::Config(e.to_string()))?;
        for (k, v) in overrides {
            base.insert(k, v);
        }
        base.try_into().map_err(|e: toml::de::Error| Error::Config(e.to_string()))
    }

    pub fn expand(&self) -> Result<Vec<ExperimentConfig>> {
        let noises: Vec<Noise> = match (self.sigma.is_empty(), self.p.is_empty()) {
            (false, true) => self.sigma.iter().map(|&s| Noise::Sigma(s)).collect(),
            (true, false) => self.p.iter().map(|&p| Noise::P(p)).collect(),
            _ => return Err(Error::Config("give exactly one of sigma or p".into())),
        };
        if self.d.is_empty() {
            return Err(Error::Config("no distances given".into()));
        }
        if !self.q_equals_p && self.q.is_empty() {
            return Err(Error::Config("no readout error rates given".into()));
        }
        let mut out = Vec::new();
        for &d in &self.d {
            let t = self.t.unwrap_or(d);
            for &noise in &noises {
                let qs = if self.q_equals_p {
                    vec![match noise {
                        Noise::Sigma(s) => p_of_sigma(s),
                        Noise::P(p) => p,
                    }]
                } else {
                    self.q.clone()
                };
                for q in qs {
                    let samples = self.samples.unwrap_or(if self.backend.is_coherent() {
                        DEFAULT_OUTER_PER_CYCLE * t
                    } else {
                        DEFAULT_PAULI_SHOTS
                    });
                    let readout_samples =
                        if self.backend.is_coherent() { self.readout_samples.unwrap_or(DEFAULT_READOUT_SAMPLES) } else { 1 };
                    let cfg = ExperimentConfig {
                        code: self.code,
                        d,
                        t,
                        backend: self.backend,
                        noise,
                        q,
                        samples,
                        readout_samples,
                        seed: self.seed,
                        decoder: self.decoder,
                    };
                    cfg.validate()?;
                    out.push(cfg);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expands_grid_with_defaults() {
        let spec = SweepSpec::from_toml("d = [3, 5]\np = [0.01, 0.02]\nq_equals_p = true\nbackend = \"coherent\"").unwrap();
        let points = spec.expand().unwrap();
        assert_eq!(points.len(), 4);
        assert_eq!(points[0].t, 3);
        assert_eq!(points[0].samples, 6000);
        assert_eq!(points[0].readout_samples, 20);
        assert_eq!(points[3].q, 0.02);
        assert!(points[0].uses_lookup());
        assert!(!points[2].uses_lookup());
        let off = ExperimentConfig { q: 0.3, ..points[0].clone() };
        assert!(!off.uses_lookup());
    }

    #[test]
    fn rejects_bad_grids() {
        let both = SweepSpec { sigma: vec![0.1], p: vec![0.1], ..SweepSpec::default() };
        assert!(matches!(both.expand(), Err(Error::Config(_))));
        let big = SweepSpec { d: vec![7], p: vec![0.01], backend: Backend::Coherent, ..SweepSpec::default() };
        assert!(matches!(big.expand(), Err(Error::Config(_))));
        let even = SweepSpec { d: vec![4], p: vec![0.01], ..SweepSpec::default() };
        assert!(matches!(even.expand(), Err(Error::Config(_))));
        assert!(SweepSpec::from_toml("bogus = 1").is_err());
    }

    #[test]
    fn toml_overrides_replace_fields() {
        let base = SweepSpec { d: vec![3], p: vec![0.1], seed: 4, ..SweepSpec::default() };
        let merged = base.merge_toml("seed = 9\nd = [5, 7]").unwrap();
        assert_eq!(merged.seed, 9);
        assert_eq!(merged.d, vec![5, 7]);
        assert_eq!(merged.p, vec![0.1]);
    }
}
