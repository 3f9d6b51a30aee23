//! Trace-driven ground truth: IRM trace generation, LRU simulation,
//! stack/re-reference distance profiles and measured working sets.

mod distance;
mod lru;
mod stack;
mod trace;
mod working_set;

pub use distance::{DistanceCcdf, DistanceKind};
pub use lru::{lru_misses, simulate_lru};
pub use stack::{naive_stack_distances, reref_ccdf, stack_ccdf, stack_distances};
pub use trace::{generate_irm_trace, Trace, TRACE_MAGIC};
pub use working_set::{
    summarize, ws_sliding_window, ws_sliding_window_at, ws_steady_state, ws_steady_state_at, TraceSummary,
    DEFAULT_BINNING,
};
