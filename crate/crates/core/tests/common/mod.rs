//! Independent brute-force references shared by the integration tests.

#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use qsd_core::code_model::{MultiCycleSyndrome, StabilizerCode, Syndrome, ZString};
use qsd_core::decoder::{detection_events, Node};
use rand::Rng;

/// Explicit space-time graph: node r * checks + f for cycle r and check f, plus one
/// boundary node at the end.
pub struct SpaceTimeGraph {
    pub checks: usize,
    pub cycles: usize,
    adj: Vec<Vec<(usize, i64)>>,
}

impl SpaceTimeGraph {
    pub fn new(code: &StabilizerCode, cycles: usize, w_s: Option<i64>, w_t: Option<i64>) -> Self {
        let checks = code.num_checks();
        let boundary = checks * cycles;
        let mut adj = vec![Vec::new(); boundary + 1];
        let mut link = |a: usize, b: usize, w: i64| {
            adj[a].push((b, w));
            adj[b].push((a, w));
        };
        for r in 0..cycles {
            for j in 0..code.n() {
                let on = code.qubit_checks(j);
                if let Some(w) = w_s {
                    match on {
                        [f] => link(r * checks + f, boundary, w),
                        [f, g] => link(r * checks + f, r * checks + g, w),
                        _ => {}
                    }
                }
            }
            if let (Some(w), true) = (w_t, r + 1 < cycles) {
                for f in 0..checks {
                    link(r * checks + f, (r + 1) * checks + f, w);
                }
            }
        }
        SpaceTimeGraph { checks, cycles, adj }
    }

    pub fn boundary(&self) -> usize {
        self.checks * self.cycles
    }

    pub fn index(&self, n: &Node) -> usize {
        n.cycle * self.checks + n.check
    }

    /// Dijkstra from `source`; paths may not pass through the boundary node.
    pub fn distances(&self, source: usize) -> Vec<Option<i64>> {
        let mut dist = vec![None; self.adj.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = Some(0);
        heap.push(Reverse((0i64, source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if dist[u] != Some(d) || (u == self.boundary() && u != source) {
                continue;
            }
            for &(v, w) in &self.adj[u] {
                if dist[v].is_none_or(|old| d + w < old) {
                    dist[v] = Some(d + w);
                    heap.push(Reverse((d + w, v)));
                }
            }
        }
        dist
    }
}

/// Minimum total over all ways to pair defects or send them to the boundary.
pub fn brute_force_pairing(pair: &[Vec<Option<i64>>], boundary: &[Option<i64>]) -> Option<i64> {
    fn go(left: &mut Vec<usize>, pair: &[Vec<Option<i64>>], boundary: &[Option<i64>]) -> Option<i64> {
        let Some(i) = left.pop() else { return Some(0) };
        let mut best: Option<i64> = None;
        let mut consider = |v: Option<i64>| {
            if let Some(v) = v {
                best = Some(best.map_or(v, |b: i64| b.min(v)));
            }
        };
        if let Some(b) = boundary[i] {
            consider(go(left, pair, boundary).map(|r| r + b));
        }
        for k in 0..left.len() {
            if let Some(w) = pair[i][left[k]] {
                let j = left.remove(k);
                consider(go(left, pair, boundary).map(|r| r + w));
                left.insert(k, j);
            }
        }
        left.push(i);
        best
    }
    let mut left: Vec<usize> = (0..boundary.len()).rev().collect();
    go(&mut left, pair, boundary)
}

/// Oracle weight for the defects of `recorded`.
pub fn oracle_weight(code: &StabilizerCode, recorded: &MultiCycleSyndrome, w_s: Option<i64>, w_t: Option<i64>) -> Option<i64> {
    let graph = SpaceTimeGraph::new(code, recorded.len(), w_s, w_t);
    let defects = detection_events(recorded, code.num_checks());
    let rows: Vec<Vec<Option<i64>>> = defects.iter().map(|d| graph.distances(graph.index(d))).collect();
    let pair: Vec<Vec<Option<i64>>> = rows.iter().map(|row| defects.iter().map(|d| row[graph.index(d)]).collect()).collect();
    let boundary: Vec<Option<i64>> = rows.iter().map(|row| row[graph.boundary()]).collect();
    brute_force_pairing(&pair, &boundary)
}

/// Syndrome history whose detection events are exactly `events` (cycle, check).
pub fn history_from_events(events: &[(usize, usize)], checks: usize, t: usize) -> MultiCycleSyndrome {
    let mut flips = vec![Syndrome::trivial(); t];
    for &(r, f) in events {
        flips[r].flip(f);
    }
    let mut current = Syndrome::trivial();
    let cycles = flips
        .into_iter()
        .map(|s| {
            current ^= s;
            current
        })
        .collect();
    let out = MultiCycleSyndrome::new(cycles);
    debug_assert_eq!(detection_events(&out, checks).len(), {
        let mut e = events.to_vec();
        e.sort_unstable();
        e.dedup();
        e.len()
    });
    out
}

/// Random set of at most `max` distinct detection events.
pub fn random_events<R: Rng>(rng: &mut R, checks: usize, t: usize, max: usize) -> Vec<(usize, usize)> {
    let k = rng.random_range(0..=max.min(checks * t));
    let mut events = Vec::with_capacity(k);
    while events.len() < k {
        let e = (rng.random_range(0..t), rng.random_range(0..checks));
        if !events.contains(&e) {
            events.push(e);
        }
    }
    events
}

/// Single fault location of the t-cycle circuit: a phase flip on a data qubit before
/// a cycle, or a flipped readout of a check in any cycle but the last.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    Data { cycle: usize, qubit: usize },
    Readout { cycle: usize, check: usize },
}

pub fn fault_locations(code: &StabilizerCode, t: usize) -> Vec<Fault> {
    let data = (0..t).flat_map(|cycle| (0..code.n()).map(move |qubit| Fault::Data { cycle, qubit }));
    let readout =
        (0..t.saturating_sub(1)).flat_map(|cycle| (0..code.num_checks()).map(move |check| Fault::Readout { cycle, check }));
    data.chain(readout).collect()
}

/// (accumulated error, recorded history) produced by a set of faults.
pub fn apply_faults(code: &StabilizerCode, t: usize, faults: &[Fault]) -> (ZString, MultiCycleSyndrome) {
    let mut cumulative = ZString::identity();
    let mut cycles = Vec::with_capacity(t);
    for r in 0..t {
        for f in faults {
            if let Fault::Data { cycle, qubit } = *f {
                if cycle == r {
                    cumulative.flip(qubit);
                }
            }
        }
        let mut s = code.syndrome_of(&cumulative);
        for f in faults {
            if let Fault::Readout { cycle, check } = *f {
                if cycle == r {
                    s.flip(check);
                }
            }
        }
        cycles.push(s);
    }
    (cumulative, MultiCycleSyndrome::new(cycles))
}

/// Whether `correction` leaves a logical error on top of `cumulative`.
pub fn fails(code: &StabilizerCode, cumulative: &ZString, correction: &ZString) -> bool {
    let residual = *cumulative * *correction;
    assert!(code.syndrome_of(&residual).is_trivial(), "correction does not match the final syndrome");
    code.logical_parity(&residual)
}
