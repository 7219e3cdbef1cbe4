//! Experiment harness for the amplitude estimators in `qae-core`.
//!
//! - [`experiment`]: repetition plans, seeded parallel execution and per-run records.
//! - [`summary`]: per-cell statistics (median error, complexity, coverage, radius ratios).
//! - [`fit`]: log-log and `√(a(1-a))` scaling fits.
//! - [`observable`]: weighted sums of term expectations `1 - 2a` with interval arithmetic.
//! - [`io`]: CSV and JSON export/import of records.

mod error;
pub mod experiment;
pub mod fit;
pub mod io;
pub mod method;
pub mod observable;
pub mod summary;

pub use error::{BenchError, Result};
pub use experiment::{run_experiment, run_single, ExperimentRecord, Plan, RunSettings};
pub use fit::{fit_scaling, scaling_points, ScalingFit, ScalingModel};
pub use io::{export_records, import_records, read_records, write_records, Format, CSV_HEADER};
pub use method::Method;
pub use observable::{estimate_observable, true_value, ObservableEstimate, ObservableTerm};
pub use summary::{mean_radius_ratio, summarize, CellSummary};
