//! Closed-form results for the repetition code and the spin-qubit hardware mapping.

mod table1;

pub use table1::{table1_weights, Table1Row};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Phase-flip probability equivalent to Gaussian angle spread sigma: <sin^2 t>.
pub fn p_of_sigma(sigma: f64) -> f64 {
    -(-2.0 * sigma * sigma).exp_m1() / 2.0
}

pub fn sigma_of_p(p: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok((-(-2.0 * p).ln_1p() / 2.0).sqrt())
}

/// Two-cycle repetition-code channel. Index 0..4 is (s_1 flagged) + 2 (s_2 flagged),
/// i.e. ++, -+, +-, --. `c` weights the class of the canonical representative
/// (identity or Z_A), `d` its logical partner (Z_A Z_B or Z_B).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoCycleChannel {
    pub c: [f64; 4],
    pub d: [f64; 4],
}

impl TwoCycleChannel {
    pub fn index(s1_flagged: bool, s2_flagged: bool) -> usize {
        usize::from(s1_flagged) | (usize::from(s2_flagged) << 1)
    }

    pub fn total(&self) -> f64 {
        self.c.iter().chain(&self.d).sum()
    }

    /// Number of distinct coefficient values up to `tol`.
    pub fn distinct_values(&self, tol: f64) -> usize {
        let mut seen: Vec<f64> = Vec::new();
        for &v in self.c.iter().chain(&self.d) {
            if !seen.iter().any(|s| (s - v).abs() <= tol) {
                seen.push(v);
            }
        }
        seen.len()
    }
}

pub fn pauli_two_cycle(p: f64) -> TwoCycleChannel {
    let r = 1.0 - p;
    let same = r.powi(4) + p.powi(4);
    let pair = 2.0 * p * p * r * r;
    let odd = p * r.powi(3) + p.powi(3) * r;
    TwoCycleChannel { c: [same, pair, odd, odd], d: [pair, pair, odd, odd] }
}

pub fn coherent_two_cycle(sigma: f64) -> TwoCycleChannel {
    let x = (-4.0 * sigma * sigma).exp();
    let (x2, x4) = (x * x, x.powi(4));
    let cpp = (x4 + 2.0 * x2 + 8.0 * x + 5.0) / 16.0;
    let cmp = (x4 + 2.0 * x2 - 8.0 * x + 5.0) / 16.0;
    let dd = (1.0 - x2).powi(2) / 16.0;
    let odd = (1.0 - x4) / 16.0;
    TwoCycleChannel { c: [cpp, cmp, odd, odd], d: [dd, dd, odd, odd] }
}

/// Largest coefficient deviation between the Pauli and coherent two-cycle channels.
pub fn tvd(p: f64, sigma: f64) -> f64 {
    let a = pauli_two_cycle(p);
    let b = coherent_two_cycle(sigma);
    a.c.iter()
        .zip(&b.c)
        .chain(a.d.iter().zip(&b.d))
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

const GRID_POINTS: usize = 1000;
const GOLDEN_TOL: f64 = 1e-10;

/// Phase-flip rate minimizing [`tvd`] at this sigma, and the minimum.
pub fn best_pauli(sigma: f64) -> (f64, f64) {
    let upper = 0.5;
    let step = upper / GRID_POINTS as f64;
    let best = (0..GRID_POINTS)
        .map(|i| (i, tvd(i as f64 * step, sigma)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i)
        .expect("grid is non-empty");
    let lo = best.saturating_sub(1) as f64 * step;
    let hi = ((best + 1) as f64 * step).min(upper - f64::EPSILON);
    let p = golden_section(|p| tvd(p, sigma), lo, hi, GOLDEN_TOL);
    (p, tvd(p, sigma))
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    (a + b) / 2.0
}

/// Spin-qubit operating point. Times in microseconds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardwarePoint {
    pub t_meas: f64,
    pub t2_star: f64,
    pub tau: f64,
    pub sigma: f64,
    pub p: f64,
    pub q: f64,
}

impl HardwarePoint {
    pub fn new(t_meas: f64, t2_star: f64, tau: f64) -> Self {
        let sigma = std::f64::consts::SQRT_2 * t_meas / t2_star;
        HardwarePoint { t_meas, t2_star, tau, sigma, p: p_of_sigma(sigma), q: (tau / t_meas).powi(5) }
    }
}

/// `points` evenly spaced operating points over [t_min, t_max].
pub fn hardware_curve(t_min: f64, t_max: f64, points: usize, t2_star: f64, tau: f64) -> Vec<HardwarePoint> {
    match points {
        0 => Vec::new(),
        1 => vec![HardwarePoint::new(t_min, t2_star, tau)],
        _ => (0..points)
            .map(|i| {
                let t = t_min + (t_max - t_min) * i as f64 / (points - 1) as f64;
                HardwarePoint::new(t, t2_star, tau)
            })
            .collect(),
    }
}
