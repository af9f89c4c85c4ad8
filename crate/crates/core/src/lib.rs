//! Evaluation and numerical verification of the natural hermitian metric on
//! the universal family of elliptic curves fibered with its complexified
//! Kähler cone, computed on the cover `ℂ × ℍ × ℍ`.
//!
//! * [`geometry`]: points, hermitian coefficient matrices, real metrics, pullbacks.
//! * [`metric`]: the closed-form metric, its blocks, and the volume normalization.
//! * [`oracle`]: the same blocks rebuilt from flat metrics, harmonic forms and quadrature.
//! * [`calculus`]: jets, Wirtinger derivatives, `dω`, Kähler defects, fiber restriction.
//! * [`symmetries`]: deck group, `SL₂(ℤ)` lift, fibrations, mirror map.
//! * [`verify`]: seeded suites and JSON/text reports.

pub mod calculus;
pub mod error;
pub mod geometry;
pub mod metric;
pub mod oracle;
pub mod symmetries;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{ComplexJacobian3, Coord, HermitianMatrix3, RealMetric6, TotalSpacePoint};
pub use metric::{blocks, metric, normalized_metric, MetricBlocks, NaturalMetric, NormalizedMetric};
