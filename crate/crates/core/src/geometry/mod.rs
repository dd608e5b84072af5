//! Curvature pipeline over exact rational-function scalars.

pub mod curvature;
pub mod metric;
pub mod oracle;
pub mod tensor;

pub use curvature::{
    apply_ricci, christoffel, contract_metric, covariant_derivative, kulkarni_nomizu, lower,
    raise, ricci, ricci_operator, riemann, riemann_dense, scalar_curvature, weyl,
    ChristoffelSymbols, CurvatureData, GeometryError,
};
pub use metric::{MetricError, MetricSpec, Signature};
pub use oracle::{oracle_check, OracleMismatch, OracleReport};
pub use tensor::{has_riemann_symmetries, satisfies_first_bianchi, Symmetry, TensorField, Valence};
