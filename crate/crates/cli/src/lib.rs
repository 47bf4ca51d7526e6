//! Command-line front end for channel capacity.
//!
//! | module        | contents                                         |
//! |---------------|--------------------------------------------------|
//! | [`app`]       | argument parsing, exit codes, [`run`]            |
//! | [`solve`]     | solver selection, [`solve::solve`]               |
//! | [`report`]    | [`CapacityResult`], JSON and text rendering      |
//! | [`spec_file`] | channel file parsing and ingest validation       |

pub mod app;
pub mod report;
pub mod solve;
pub mod spec_file;

pub use app::run;
pub use report::{emit_report, parse_report, CapacityResult, Format, SolverMethod};
pub use solve::{Method, SolveError, SolveOptions, Solved};
pub use spec_file::{ChannelSpecFile, IngestError};
