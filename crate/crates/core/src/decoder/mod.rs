//! Space-time minimum-weight perfect matching for phase flips with readout errors,
//! and an equal-weight lookup decoder for the distance-3 surface code over three
//! cycles.
//!
//! Detection events live on (check, cycle) nodes. Spacelike moves cost `w_s` per hop
//! of the check graph, timelike moves `w_t` per cycle, so the shortest-path distance
//! between two nodes is `w_s * hops + w_t * |dr|`, and the distance to the boundary is
//! `w_s * boundary_hops`. Weights are log-likelihood ratios quantized to integers.

mod blossom;
mod graph;
mod lookup;

use std::sync::Arc;

pub use blossom::{max_weight_matching, max_weight_matching_verified};
pub use graph::CheckGraph;
pub use lookup::{lookup_decode_d3, LookupDecoder};

use crate::code_model::{MultiCycleSyndrome, StabilizerCode, ZString};
use crate::error::{Error, Result};

/// Fixed-point scale of edge weights.
pub const WEIGHT_SCALE: f64 = (1u64 << 20) as f64;

/// Matchings with at most this many defects are solved by exhaustive dynamic
/// programming with lexicographic tie-breaking; larger ones by the blossom algorithm.
pub const EXACT_DEFECT_LIMIT: usize = 14;

/// ln((1-p)/p) in fixed point. `None` for p = 0, where the edge does not exist.
pub fn edge_weight(p: f64) -> Result<Option<i64>> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if p == 0.0 {
        return Ok(None);
    }
    Ok(Some((((1.0 - p) / p).ln() * WEIGHT_SCALE).round() as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub cycle: usize,
    pub check: usize,
}

#[derive(Clone, Debug)]
pub struct DetectionGraph {
    checks: Arc<CheckGraph>,
    cycles: usize,
    w_s: Option<i64>,
    w_t: Option<i64>,
    /// Sorted by (cycle, check).
    defects: Vec<Node>,
}

/// Detection events of `recorded`: nodes where a check's outcome differs from the
/// previous cycle, the cycle before the first being trivial.
pub fn detection_events(recorded: &MultiCycleSyndrome, checks: usize) -> Vec<Node> {
    let mut out = Vec::new();
    let mut prev = None;
    for (r, s) in recorded.cycles.iter().enumerate() {
        let diff = match prev {
            Some(p) => *s ^ p,
            None => *s,
        };
        out.extend(diff.flagged().filter(|&f| f < checks).map(|check| Node { cycle: r, check }));
        prev = Some(*s);
    }
    out
}

pub fn build_detection_graph(code: &StabilizerCode, recorded: &MultiCycleSyndrome, p: f64, q: f64) -> Result<DetectionGraph> {
    DetectionGraph::new(Arc::new(CheckGraph::new(code)), recorded, p, q)
}

impl DetectionGraph {
    pub fn new(checks: Arc<CheckGraph>, recorded: &MultiCycleSyndrome, p: f64, q: f64) -> Result<Self> {
        let w_s = edge_weight(p)?;
        let w_t = edge_weight(q)?;
        Self::with_weights(checks, recorded, w_s, w_t)
    }

    /// Explicit integer weights; `None` removes that kind of edge.
    pub fn with_weights(
        checks: Arc<CheckGraph>,
        recorded: &MultiCycleSyndrome,
        w_s: Option<i64>,
        w_t: Option<i64>,
    ) -> Result<Self> {
        if recorded.is_empty() {
            return Err(Error::NoCycles);
        }
        let defects = detection_events(recorded, checks.num_checks());
        Ok(DetectionGraph { cycles: recorded.len(), checks, w_s, w_t, defects })
    }

    pub fn defects(&self) -> &[Node] {
        &self.defects
    }

    pub fn cycles(&self) -> usize {
        self.cycles
    }

    pub fn w_s(&self) -> Option<i64> {
        self.w_s
    }

    pub fn w_t(&self) -> Option<i64> {
        self.w_t
    }

    pub fn check_graph(&self) -> &CheckGraph {
        &self.checks
    }

    /// Shortest-path weight between defects `a` and `b`.
    pub fn distance(&self, a: usize, b: usize) -> Option<i64> {
        let (u, v) = (self.defects[a], self.defects[b]);
        let space = if u.check == v.check {
            0
        } else {
            self.w_s? * i64::from(self.checks.hops(u.check, v.check)?)
        };
        let time = if u.cycle == v.cycle { 0 } else { self.w_t? * u.cycle.abs_diff(v.cycle) as i64 };
        Some(space + time)
    }

    pub fn boundary_distance(&self, a: usize) -> Option<i64> {
        Some(self.w_s? * i64::from(self.checks.boundary_hops(self.defects[a].check)?))
    }
}

/// Defect pairs (i < j, indices into [`DetectionGraph::defects`]) and defects matched
/// to the boundary.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub boundary: Vec<usize>,
    pub weight: i64,
}

impl Matching {
    /// XOR of the spacelike parts of the matched paths.
    pub fn correction(&self, graph: &DetectionGraph) -> ZString {
        let checks = graph.check_graph();
        let mut out = ZString::identity();
        for &(a, b) in &self.pairs {
            out *= checks.path(graph.defects[a].check, graph.defects[b].check);
        }
        for &a in &self.boundary {
            out *= checks.boundary_path(graph.defects[a].check);
        }
        out
    }

    fn finish(mut self) -> Self {
        self.pairs.sort_unstable();
        self.boundary.sort_unstable();
        self
    }
}

/// Minimum-weight perfect matching of the defects, with the boundary available to any
/// number of them.
pub fn mwpm_match(graph: &DetectionGraph) -> Result<Matching> {
    if graph.defects.len() <= EXACT_DEFECT_LIMIT {
        exact_match(graph)
    } else {
        blossom_match(graph)
    }
}

pub fn mwpm_decode(graph: &DetectionGraph) -> Result<ZString> {
    Ok(mwpm_match(graph)?.correction(graph))
}

/// Cap on the optimal matchings compared by [`exact_match`] when breaking ties.
pub const MAX_TIED_MATCHINGS: usize = 1 << 16;

/// Subset dynamic programming over the lowest unmatched defect. Among optimal
/// matchings it returns the one whose correction has the lexicographically smallest
/// sorted qubit list, the first in edge order among equals.
pub fn exact_match(graph: &DetectionGraph) -> Result<Matching> {
    let n = graph.defects.len();
    if n > 24 {
        return blossom_match(graph);
    }
    let full = (1usize << n) - 1;
    let pair: Vec<Option<i64>> =
        (0..n * n).map(|k| if k / n == k % n { None } else { graph.distance(k / n, k % n) }).collect();
    let bnd: Vec<Option<i64>> = (0..n).map(|a| graph.boundary_distance(a)).collect();

    let mut best: Vec<Option<i64>> = vec![None; full + 1];
    best[0] = Some(0);
    for mask in 1..=full {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut value = bnd[i].zip(best[rest]).map(|(b, r)| b + r);
        let mut others = rest;
        while others != 0 {
            let j = others.trailing_zeros() as usize;
            others &= others - 1;
            if let Some(c) = pair[i * n + j].zip(best[rest & !(1 << j)]).map(|(d, r)| d + r) {
                value = Some(value.map_or(c, |v: i64| v.min(c)));
            }
        }
        best[mask] = value;
    }
    let weight = best[full].ok_or(Error::UnmatchedDefect)?;

    let mut search = TieSearch {
        graph,
        pair: &pair,
        bnd: &bnd,
        best: &best,
        n,
        stack: Vec::with_capacity(n),
        chosen: None,
        visited: 0,
    };
    search.descend(full, ZString::identity());
    let (_, edges) = search.chosen.expect("an optimal matching exists");
    let mut matching = Matching { weight, ..Matching::default() };
    for (i, j) in edges {
        match j {
            Some(j) => matching.pairs.push((i, j)),
            None => matching.boundary.push(i),
        }
    }
    Ok(matching.finish())
}

struct TieSearch<'a> {
    graph: &'a DetectionGraph,
    pair: &'a [Option<i64>],
    bnd: &'a [Option<i64>],
    best: &'a [Option<i64>],
    n: usize,
    stack: Vec<(usize, Option<usize>)>,
    chosen: Option<(ZString, Vec<(usize, Option<usize>)>)>,
    visited: usize,
}

impl TieSearch<'_> {
    fn descend(&mut self, mask: usize, correction: ZString) {
        if self.visited >= MAX_TIED_MATCHINGS {
            return;
        }
        if mask == 0 {
            self.visited += 1;
            let better = match &self.chosen {
                None => true,
                Some((c, _)) => correction.qubits().lt(c.qubits()),
            };
            if better {
                self.chosen = Some((correction, self.stack.clone()));
            }
            return;
        }
        let target = self.best[mask];
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let checks = self.graph.check_graph();
        let fi = self.graph.defects[i].check;
        let mut others = rest;
        while others != 0 {
            let j = others.trailing_zeros() as usize;
            others &= others - 1;
            let next = rest & !(1 << j);
            if self.pair[i * self.n + j].zip(self.best[next]).map(|(d, r)| d + r) == target {
                self.stack.push((i, Some(j)));
                self.descend(next, correction * checks.path(fi, self.graph.defects[j].check));
                self.stack.pop();
            }
        }
        if self.bnd[i].zip(self.best[rest]).map(|(b, r)| b + r) == target {
            self.stack.push((i, None));
            self.descend(rest, correction * checks.boundary_path(fi));
            self.stack.pop();
        }
    }
}

/// Boundary reduction to maximum-weight matching: with b(u) the boundary distance, the
/// cost of a matching is sum_u b(u) minus the sum over pairs of b(u) + b(v) - d(u, v),
/// so only pairs with positive gain need edges.
pub fn blossom_match(graph: &DetectionGraph) -> Result<Matching> {
    let n = graph.defects.len();
    let pair_cap = (0..n).flat_map(|a| (a + 1..n).filter_map(move |b| graph.distance(a, b))).max().unwrap_or(0);
    let absent = (n as i64 + 1) * (pair_cap + 1);
    let bnd: Vec<Option<i64>> = (0..n).map(|a| graph.boundary_distance(a)).collect();
    let b = |a: usize| bnd[a].unwrap_or(absent);

    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if let Some(d) = graph.distance(u, v) {
                let gain = b(u) + b(v) - d;
                if gain > 0 {
                    edges.push((u, v, gain));
                }
            }
        }
    }
    let mate = max_weight_matching(n, &edges, false);
    let mut matching = Matching::default();
    for u in 0..n {
        match mate[u] {
            Some(v) if u < v => {
                matching.weight += graph.distance(u, v).expect("matched along an existing edge");
                matching.pairs.push((u, v));
            }
            Some(_) => {}
            None => {
                matching.weight += bnd[u].ok_or(Error::UnmatchedDefect)?;
                matching.boundary.push(u);
            }
        }
    }
    Ok(matching.finish())
}
