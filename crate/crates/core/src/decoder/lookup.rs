use std::sync::{Arc, OnceLock};

use super::{mwpm_decode, CheckGraph, DetectionGraph};
use crate::code_model::{MultiCycleSyndrome, StabilizerCode, ZString};
use crate::error::{Error, Result};

const DISTANCE: usize = 3;
const CYCLES: usize = 3;
const CHECKS: usize = 4;

/// Corrections for every recorded history of the distance-3 surface code over three
/// cycles, from matching with equal spacelike and timelike weights.
#[derive(Clone, Debug)]
pub struct LookupDecoder {
    table: Vec<ZString>,
}

impl LookupDecoder {
    pub fn new() -> Self {
        let code = StabilizerCode::surface(DISTANCE).expect("distance 3 is valid");
        let checks = Arc::new(CheckGraph::new(&code));
        let table = (0..1u64 << (CHECKS * CYCLES))
            .map(|packed| {
                let rec = MultiCycleSyndrome::unpack(packed, CHECKS, CYCLES);
                let graph = DetectionGraph::with_weights(checks.clone(), &rec, Some(1), Some(1))
                    .expect("three cycles");
                mwpm_decode(&graph).expect("the boundary is reachable from every check")
            })
            .collect();
        LookupDecoder { table }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn decode(&self, recorded: &MultiCycleSyndrome) -> Result<ZString> {
        let wrong = || Error::WrongDimensions {
            got: recorded.len(),
            checks: recorded.cycles.iter().filter_map(|s| s.flagged().max()).max().map_or(0, |f| f + 1),
            expected_cycles: CYCLES,
            expected_checks: CHECKS,
        };
        if recorded.len() != CYCLES || recorded.cycles.iter().any(|s| s.flagged().any(|f| f >= CHECKS)) {
            return Err(wrong());
        }
        Ok(self.table[recorded.pack(CHECKS) as usize])
    }
}

impl Default for LookupDecoder {
    fn default() -> Self {
        Self::new()
    }
}

impl LookupDecoder {
    /// Process-wide table built on first use.
    pub fn shared() -> &'static LookupDecoder {
        static TABLE: OnceLock<LookupDecoder> = OnceLock::new();
        TABLE.get_or_init(LookupDecoder::new)
    }
}

pub fn lookup_decode_d3(recorded: &MultiCycleSyndrome) -> Result<ZString> {
    LookupDecoder::shared().decode(recorded)
}
