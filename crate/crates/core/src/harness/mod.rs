//! Declarative experiment grids, deterministic execution and CSV/JSON output.
//!
//! Every shot draws from its own ChaCha8 stream keyed by (seed, grid index, shot
//! index), and per-chunk sums are merged in a fixed order, so results are identical
//! for any number of worker threads.

mod analysis;
mod config;
mod output;
mod run;

pub use analysis::{
    break_even_map_d3, distance_trend, pq_plane, threshold_bracket, tvd_curve, BreakEvenCell, BreakEvenMap,
    BreakEvenSpec, PqThreshold, ThresholdBracket, Trend, TvdRow,
};
pub use config::{
    Backend, CodeFamily, DecoderChoice, ExperimentConfig, Noise, SweepSpec, DEFAULT_OUTER_PER_CYCLE,
    DEFAULT_PAULI_SHOTS, DEFAULT_READOUT_SAMPLES,
};
pub use output::{sidecar_path, sweep_csv, table_csv, version_string, write_json_sidecar, write_text, CSV_HEADER};
pub use run::{run_point, run_sweep, shot_rng, ShotDecoder, SweepResult, SweepRow};
