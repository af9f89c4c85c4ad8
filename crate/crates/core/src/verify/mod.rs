//! Seeded sampling, property suites, and reports.

pub mod report;
pub mod sampler;
pub mod suites;

pub use report::{emit_report, parse_report, Format, VerificationReport, Witness};
pub use sampler::{sample_points, SamplerConfig, ZMode};
pub use suites::{
    deck_test_elements, modular_test_elements, run_all, run_suite, run_suite_named, SuiteId,
};
