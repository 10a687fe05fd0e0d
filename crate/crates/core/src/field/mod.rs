//! Stationary unit-variance Gaussian random fields on regular grids.

mod check;
mod covariance;
mod grid;
pub mod io;
mod linalg;
mod sample;

pub use check::{empirical_cov_check, empirical_covariance, MIN_FIELDS_FOR_CHECK};
pub use covariance::{covariance_matrix, second_spectral_moment, CovarianceKind, CovarianceModel, DENSE_CAP};
pub use grid::{GridField, GridSpec, Topology};
pub use linalg::{LowerTriangular, SymMatrix, JITTER_SCHEDULE};
pub use sample::{sample_field, FieldSampler, RngSeed, SamplerConfig, SamplingMethod, SamplingReport};
