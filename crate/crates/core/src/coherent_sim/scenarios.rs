//! Exact angle-averaged weights of cycle-resolved error scenarios.
//!
//! A scenario is a sequence (E_1, ..., E_t) of Z-strings. Its signed weight is the sum of
//! <A(E) A*(E')> over every E' with the same syndrome history and merged string. Each
//! amplitude factor is a Laurent monomial pair in z_j = exp(i t_j), and for Gaussian
//! angles <z^k> = exp(-k^2 sigma^2 / 2) = (1 - 2p)^(k^2 / 4).

use std::collections::HashMap;

use num_complex::Complex64;

use crate::code_model::{Bits, MultiCycleSyndrome, StabilizerCode, Syndrome, ZString};
use crate::error::{Error, Result};

const MAX_SCENARIO_BITS: usize = 18;

#[derive(Clone, Debug)]
pub struct ScenarioWeight {
    pub errors: Vec<ZString>,
    pub syndromes: MultiCycleSyndrome,
    pub merged: ZString,
    pub weight: f64,
}

#[derive(Clone, Debug)]
pub struct LogicalLevel {
    pub syndromes: MultiCycleSyndrome,
    /// Weight of merged strings in the class of the canonical representative.
    pub trivial: f64,
    /// Weight of merged strings in the logical partner class.
    pub logical: f64,
}

/// <prod_r f(e_r) conj(f(e'_r))> for one qubit, indexed by the interleaved pattern
/// bit 2r = e_r, bit 2r+1 = e'_r. f(0) = cos, f(1) = i sin.
fn single_qubit_moments(t: usize, p: f64) -> Vec<f64> {
    let x = 1.0 - 2.0 * p;
    let offset = 2 * t;
    let moment = |k: i64| -> f64 {
        let k2 = (k * k) as f64;
        x.powf(k2 / 4.0)
    };
    (0..1usize << (2 * t))
        .map(|pattern| {
            // Laurent polynomial in z, coefficient of z^(k - offset) at index k.
            let mut poly = vec![Complex64::new(0.0, 0.0); 4 * t + 1];
            poly[offset] = Complex64::new(1.0, 0.0);
            for factor in 0..2 * t {
                let flip = (pattern >> factor) & 1 == 1;
                let conjugated = factor % 2 == 1;
                // cos = (z + 1/z)/2, i sin = (z - 1/z)/2, conj(i sin) = (1/z - z)/2.
                let (up, down) = match (flip, conjugated) {
                    (false, _) => (0.5, 0.5),
                    (true, false) => (0.5, -0.5),
                    (true, true) => (-0.5, 0.5),
                };
                let mut next = vec![Complex64::new(0.0, 0.0); 4 * t + 1];
                for k in 0..poly.len() {
                    if poly[k] == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    if k + 1 < next.len() {
                        next[k + 1] += poly[k] * up;
                    }
                    if k > 0 {
                        next[k - 1] += poly[k] * down;
                    }
                }
                poly = next;
            }
            poly.iter().enumerate().map(|(k, c)| c.re * moment(k as i64 - offset as i64)).sum()
        })
        .collect()
}

fn scenario_errors(index: u64, n: usize, t: usize) -> Vec<ZString> {
    let mask = (1u64 << n) - 1;
    (0..t).map(|r| ZString(Bits::from_u64((index >> (r * n)) & mask))).collect()
}

/// Signed weights for all 2^(n t) scenarios of a small code at physical rate
/// p = <sin^2 t>. Ordered by scenario index, with qubit j of cycle r at bit r n + j.
pub fn signed_scenario_weights(code: &StabilizerCode, t: usize, p: f64) -> Result<Vec<ScenarioWeight>> {
    if t == 0 {
        return Err(Error::NoCycles);
    }
    if !(0.0..0.5).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let n = code.n();
    if n * t > MAX_SCENARIO_BITS {
        return Err(Error::OracleTooLarge { n: n * t, cap: MAX_SCENARIO_BITS });
    }
    let moments = single_qubit_moments(t, p);
    let checks = code.num_checks();

    let scenarios: Vec<(Vec<ZString>, MultiCycleSyndrome, ZString)> = (0..1u64 << (n * t))
        .map(|idx| {
            let errors = scenario_errors(idx, n, t);
            let mut merged = ZString::identity();
            let mut history = Vec::with_capacity(t);
            for e in &errors {
                merged *= *e;
                history.push(code.syndrome_of(&merged));
            }
            (errors, MultiCycleSyndrome::new(history), merged)
        })
        .collect();

    let mut groups: HashMap<(u64, ZString), Vec<usize>> = HashMap::new();
    for (i, (_, hist, merged)) in scenarios.iter().enumerate() {
        groups.entry((hist.pack(checks), *merged)).or_default().push(i);
    }

    let pattern = |a: &[ZString], b: &[ZString], j: usize| -> usize {
        (0..t).fold(0, |acc, r| {
            acc | (usize::from(a[r].contains(j)) << (2 * r)) | (usize::from(b[r].contains(j)) << (2 * r + 1))
        })
    };
    let mut weights = vec![0.0; scenarios.len()];
    for members in groups.values() {
        for &i in members {
            weights[i] = members
                .iter()
                .map(|&k| (0..n).map(|j| moments[pattern(&scenarios[i].0, &scenarios[k].0, j)]).product::<f64>())
                .sum();
        }
    }
    Ok(scenarios
        .into_iter()
        .zip(weights)
        .map(|((errors, syndromes, merged), weight)| ScenarioWeight { errors, syndromes, merged, weight })
        .collect())
}

/// Weights grouped by syndrome history and by the class of the merged string relative
/// to the canonical representative of the last syndrome.
pub fn logical_level_probabilities(code: &StabilizerCode, t: usize, p: f64) -> Result<Vec<LogicalLevel>> {
    let checks = code.num_checks();
    let mut grouped: HashMap<u64, LogicalLevel> = HashMap::new();
    for sw in signed_scenario_weights(code, t, p)? {
        let last: Syndrome = *sw.syndromes.last().expect("t >= 1");
        let offset = sw.merged * code.canonical_representative(&last);
        let logical = code.logical_class_of(&offset)?.is_logical();
        let entry = grouped.entry(sw.syndromes.pack(checks)).or_insert_with(|| LogicalLevel {
            syndromes: sw.syndromes.clone(),
            trivial: 0.0,
            logical: 0.0,
        });
        if logical {
            entry.logical += sw.weight;
        } else {
            entry.trivial += sw.weight;
        }
    }
    let mut out: Vec<(u64, LogicalLevel)> = grouped.into_iter().collect();
    out.sort_by_key(|(k, _)| *k);
    Ok(out.into_iter().map(|(_, v)| v).collect())
}
