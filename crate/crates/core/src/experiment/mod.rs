//! Time sweeps of the two-qutrit relation, their summaries, CSV output and
//! the figure presets.

mod csv;
mod presets;
mod summary;
mod sweep;

pub use csv::{emit_csv, parse_csv, provenance_line, write_csv, write_summary, CSV_HEADER};
pub use presets::{figure_preset, LambdaReading, PRESET_NAMES, PRESET_STEPS, PRESET_T_MAX};
pub use summary::{local_maxima, local_minima, summarize, Extremum, SweepSummary, MIN_PROMINENCE};
pub use sweep::{run_sweep, SweepConfig, SweepRecord};
