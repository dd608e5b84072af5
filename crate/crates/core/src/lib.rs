//! Exact symbolic tensor calculus for coordinate metrics with
//! rational-function components: curvature pipelines, Kulkarni–Nomizu
//! products, residuals and exact linear solving for the associated
//! one-form families, and a symmetry-taxonomy classifier.

pub mod expr;
pub mod geometry;
pub mod interface;
pub mod symmetry;

pub use expr::{Chart, Expression, Rat};
pub use geometry::{ChristoffelSymbols, CurvatureData, MetricSpec, TensorField};
pub use symmetry::{ClassificationReport, EwsSolution, FormFamily15, FormFamily9, Pattern};
