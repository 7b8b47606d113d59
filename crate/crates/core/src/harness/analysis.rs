use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::{Backend, CodeFamily, DecoderChoice, ExperimentConfig, Noise, SweepSpec};
use super::run::{run_point, run_sweep, SweepRow};
use crate::analytics::{best_pauli, p_of_sigma, sigma_of_p, tvd, HardwarePoint};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trend {
    Decreasing,
    Increasing,
    Unresolved,
}

/// How p_L moves with distance at one p: every step to the next distance must change
/// it by more than two combined standard errors.
pub fn distance_trend(rows: &[&SweepRow]) -> Trend {
    let mut sorted: Vec<&SweepRow> = rows.to_vec();
    sorted.sort_by_key(|r| r.d);
    if sorted.len() < 2 {
        return Trend::Unresolved;
    }
    let steps: Vec<(f64, f64)> = sorted
        .windows(2)
        .map(|w| (w[1].pl - w[0].pl, 2.0 * (w[0].stderr.powi(2) + w[1].stderr.powi(2)).sqrt()))
        .collect();
    if steps.iter().all(|&(diff, tol)| diff < -tol) {
        Trend::Decreasing
    } else if steps.iter().all(|&(diff, tol)| diff > tol) {
        Trend::Increasing
    } else {
        Trend::Unresolved
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdBracket {
    /// Greatest p where p_L decreases with distance.
    pub lower: Option<f64>,
    /// Smallest p where p_L increases with distance.
    pub upper: Option<f64>,
    /// Set when a decreasing point lies above an increasing one; the bracket is then
    /// widened to span both.
    pub flagged: bool,
    pub trends: Vec<(f64, Trend)>,
}

/// Threshold bracket from rows at a fixed q (or q tied to p), grouped by p.
pub fn threshold_bracket(rows: &[SweepRow]) -> ThresholdBracket {
    let mut by_p: BTreeMap<u64, Vec<&SweepRow>> = BTreeMap::new();
    for r in rows {
        by_p.entry(r.p.to_bits()).or_default().push(r);
    }
    let mut trends: Vec<(f64, Trend)> = by_p.values().map(|g| (g[0].p, distance_trend(g))).collect();
    trends.sort_by(|a, b| a.0.total_cmp(&b.0));
    let lower = trends.iter().filter(|t| t.1 == Trend::Decreasing).map(|t| t.0).reduce(f64::max);
    let upper = trends.iter().filter(|t| t.1 == Trend::Increasing).map(|t| t.0).reduce(f64::min);
    let (lower, upper, flagged) = match (lower, upper) {
        (Some(l), Some(u)) if l > u => (Some(u), Some(l), true),
        other => (other.0, other.1, false),
    };
    ThresholdBracket { lower, upper, flagged, trends }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PqThreshold {
    pub q: f64,
    pub bracket: ThresholdBracket,
}

/// Threshold brackets in p for each q of the spec.
pub fn pq_plane(spec: &SweepSpec) -> Result<(Vec<SweepRow>, Vec<PqThreshold>)> {
    if spec.q_equals_p {
        return Err(Error::Config("the (p, q) plane needs an explicit q list".into()));
    }
    let rows = run_sweep(&spec.expand()?)?.rows;
    let mut by_q: BTreeMap<u64, Vec<SweepRow>> = BTreeMap::new();
    for r in &rows {
        by_q.entry(r.q.to_bits()).or_default().push(r.clone());
    }
    let mut out: Vec<PqThreshold> =
        by_q.into_values().map(|g| PqThreshold { q: g[0].q, bracket: threshold_bracket(&g) }).collect();
    out.sort_by(|a, b| a.q.total_cmp(&b.q));
    Ok((rows, out))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BreakEvenCell {
    pub p: f64,
    pub q: f64,
    pub pl: f64,
    pub stderr: f64,
    /// p_L < p.
    pub green: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BreakEvenMap {
    pub backend: Backend,
    pub cells: Vec<BreakEvenCell>,
    pub hardware: Vec<(HardwarePoint, BreakEvenCell)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BreakEvenSpec {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub backend: Backend,
    pub samples: usize,
    pub readout_samples: usize,
    pub seed: u64,
    pub hardware: Vec<HardwarePoint>,
}

fn d3_point(backend: Backend, p: f64, q: f64, samples: usize, readout_samples: usize, seed: u64) -> Result<ExperimentConfig> {
    let noise = if backend.is_coherent() { Noise::Sigma(sigma_of_p(p)?) } else { Noise::P(p) };
    Ok(ExperimentConfig {
        code: CodeFamily::Surface,
        d: 3,
        t: 3,
        backend,
        noise,
        q,
        samples,
        readout_samples: if backend.is_coherent() { readout_samples } else { 1 },
        seed,
        decoder: DecoderChoice::Mwpm,
    })
}

fn cell(row: &SweepRow, p: f64) -> BreakEvenCell {
    BreakEvenCell { p, q: row.q, pl: row.pl, stderr: row.stderr, green: row.pl < p }
}

/// d = 3, t = 3 with rate-weighted matching on every (p, q) of the grid, and on the
/// hardware points.
pub fn break_even_map_d3(spec: &BreakEvenSpec) -> Result<BreakEvenMap> {
    let mut cells = Vec::new();
    let mut index = 0u64;
    for &q in &spec.q {
        for &p in &spec.p {
            let cfg = d3_point(spec.backend, p, q, spec.samples, spec.readout_samples, spec.seed)?;
            cells.push(cell(&run_point(&cfg, index)?, p));
            index += 1;
        }
    }
    let mut hardware = Vec::new();
    for hp in &spec.hardware {
        let cfg = d3_point(spec.backend, hp.p, hp.q, spec.samples, spec.readout_samples, spec.seed)?;
        let row = run_point(&cfg, index)?;
        index += 1;
        hardware.push((*hp, cell(&row, hp.p)));
    }
    Ok(BreakEvenMap { backend: spec.backend, cells, hardware })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TvdRow {
    pub sigma: f64,
    pub p_sigma: f64,
    pub p_best: f64,
    pub delta_min: f64,
    pub delta_at_p_sigma: f64,
}

pub fn tvd_curve(sigmas: &[f64]) -> Vec<TvdRow> {
    sigmas
        .iter()
        .map(|&sigma| {
            let (p_best, delta_min) = best_pauli(sigma);
            let p_sigma = p_of_sigma(sigma);
            TvdRow { sigma, p_sigma, p_best, delta_min, delta_at_p_sigma: tvd(p_sigma, sigma) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(d: usize, p: f64, pl: f64, stderr: f64) -> SweepRow {
        SweepRow { d, p, q: p, sigma: 0.0, backend: "pauli".into(), t: d, pl, stderr, n: 1000, wall_time: 0.0 }
    }

    #[test]
    fn bracket_from_clean_crossing() {
        let rows = vec![
            row(3, 0.01, 0.02, 0.001),
            row(5, 0.01, 0.01, 0.001),
            row(3, 0.02, 0.05, 0.001),
            row(5, 0.02, 0.049, 0.001),
            row(3, 0.03, 0.08, 0.001),
            row(5, 0.03, 0.10, 0.001),
        ];
        let b = threshold_bracket(&rows);
        assert_eq!((b.lower, b.upper, b.flagged), (Some(0.01), Some(0.03), false));
        assert_eq!(b.trends[1].1, Trend::Unresolved);
    }

    #[test]
    fn non_monotone_bracket_is_flagged() {
        let rows = vec![
            row(3, 0.01, 0.02, 0.001),
            row(5, 0.01, 0.04, 0.001),
            row(3, 0.02, 0.05, 0.001),
            row(5, 0.02, 0.03, 0.001),
        ];
        let b = threshold_bracket(&rows);
        assert_eq!((b.lower, b.upper, b.flagged), (Some(0.01), Some(0.02), true));
    }

    #[test]
    fn tvd_curve_is_below_naive_choice() {
        for r in tvd_curve(&[0.05, 0.2, 0.5]) {
            assert!(r.delta_min <= r.delta_at_p_sigma + 1e-9);
        }
    }

    #[test]
    fn break_even_extremes() {
        let spec = BreakEvenSpec {
            p: vec![0.005, 0.10],
            q: vec![0.02, 0.10],
            backend: Backend::Pauli,
            samples: 20_000,
            readout_samples: 1,
            seed: 3,
            hardware: Vec::new(),
        };
        let map = break_even_map_d3(&spec).unwrap();
        let at = |p: f64, q: f64| map.cells.iter().find(|c| c.p == p && c.q == q).unwrap().green;
        assert!(at(0.005, 0.02));
        assert!(!at(0.10, 0.10));
    }
}
