//! The sampling experiment comparing syntactic and semantic modules.

mod compare;
mod culprit;
mod report;
mod sampling;

pub use compare::{run_comparison, Comparison, DifferenceRecord, HarnessError, TestMode};
pub use culprit::{classify_culprit, CulpritType};
pub use report::{render_report, ReportFormat, CSV_HEADER};
pub use sampling::{sample_signatures, SamplingConfig};
