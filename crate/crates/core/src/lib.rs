//! Persistent homology of random-field excursion sets and random geometric
//! complexes, Euler integration on grids, and Gaussian kinematic closed forms.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases at the crate root fix the scalar to `f64`.
//!
//! ```
//! use tdalab_core::{field, persistence, complex};
//!
//! let spec = field::GridSpec::<f64>::unit_box(2, 16).unwrap();
//! let model = field::CovarianceModel::squared_exponential(100.0).unwrap();
//! let f = field::sample_field(&spec, &model, field::RngSeed(7)).unwrap();
//! let bc = persistence::reduce(&complex::superlevel_filtration(&f).unwrap()).unwrap();
//! assert_eq!(bc.in_degree(0).filter(|b| b.is_essential()).count(), 1);
//! ```

pub mod closed_forms;
pub mod complex;
mod error;
pub mod euler;
pub mod field;
pub mod persistence;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type GridSpec64 = field::GridSpec<f64>;
pub type GridField64 = field::GridField<f64>;
pub type CovarianceModel64 = field::CovarianceModel<f64>;
pub type FieldSampler64 = field::FieldSampler<f64>;
pub type FilteredComplex64 = complex::FilteredComplex<f64>;
pub type PointCloud64 = complex::PointCloud<f64>;
pub type Bar64 = persistence::Bar<f64>;
pub type Barcode64 = persistence::Barcode<f64>;
pub type PersistenceDiagram64 = persistence::PersistenceDiagram<f64>;
pub type ECCurve64 = euler::ECCurve<f64>;
pub type ConstructibleField64 = euler::ConstructibleField<f64>;
pub type TargetScene64 = euler::TargetScene<f64>;
pub type LKVector64 = closed_forms::LKVector<f64>;

pub type GridField32 = field::GridField<f32>;
pub type Barcode32 = persistence::Barcode<f32>;
