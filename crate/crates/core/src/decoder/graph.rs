use std::collections::VecDeque;

use crate::code_model::{StabilizerCode, ZString};

pub(crate) const UNREACHABLE: u32 = u32::MAX;

/// Hop distances between X-checks, where two checks are adjacent when they share a
/// data qubit, and from each check to the boundary through a qubit that belongs to a
/// single check. Each distance comes with the Z-string of one shortest path.
#[derive(Clone, Debug)]
pub struct CheckGraph {
    checks: usize,
    hops: Vec<u32>,
    paths: Vec<ZString>,
    boundary_hops: Vec<u32>,
    boundary_paths: Vec<ZString>,
}

impl CheckGraph {
    pub fn new(code: &StabilizerCode) -> Self {
        let m = code.num_checks();
        let mut neighbors: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
        let mut boundary_qubit: Vec<Option<usize>> = vec![None; m];
        for (f, qubits) in code.x_checks().iter().enumerate() {
            for &j in qubits {
                match code.qubit_checks(j) {
                    [only] => {
                        debug_assert_eq!(*only, f);
                        boundary_qubit[f].get_or_insert(j);
                    }
                    [a, b] => neighbors[f].push((if *a == f { *b } else { *a }, j)),
                    _ => {}
                }
            }
        }

        let mut hops = vec![UNREACHABLE; m * m];
        let mut paths = vec![ZString::identity(); m * m];
        let mut boundary_hops = vec![UNREACHABLE; m];
        let mut boundary_paths = vec![ZString::identity(); m];
        let mut queue = VecDeque::new();
        for src in 0..m {
            let row = src * m;
            hops[row + src] = 0;
            queue.push_back(src);
            while let Some(f) = queue.pop_front() {
                let (hf, pf) = (hops[row + f], paths[row + f]);
                if let Some(j) = boundary_qubit[f] {
                    if boundary_hops[src] == UNREACHABLE {
                        boundary_hops[src] = hf + 1;
                        let mut p = pf;
                        p.flip(j);
                        boundary_paths[src] = p;
                    }
                }
                for &(g, j) in &neighbors[f] {
                    if hops[row + g] == UNREACHABLE {
                        hops[row + g] = hf + 1;
                        let mut p = pf;
                        p.flip(j);
                        paths[row + g] = p;
                        queue.push_back(g);
                    }
                }
            }
        }
        CheckGraph { checks: m, hops, paths, boundary_hops, boundary_paths }
    }

    pub fn num_checks(&self) -> usize {
        self.checks
    }

    pub fn hops(&self, f: usize, g: usize) -> Option<u32> {
        let h = self.hops[f * self.checks + g];
        (h != UNREACHABLE).then_some(h)
    }

    pub fn boundary_hops(&self, f: usize) -> Option<u32> {
        let h = self.boundary_hops[f];
        (h != UNREACHABLE).then_some(h)
    }

    pub fn path(&self, f: usize, g: usize) -> ZString {
        self.paths[f * self.checks + g]
    }

    pub fn boundary_path(&self, f: usize) -> ZString {
        self.boundary_paths[f]
    }
}
