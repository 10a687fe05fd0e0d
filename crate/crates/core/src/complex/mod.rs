//! Filtered cell complexes: cubical filtrations of grid fields and
//! Rips/Čech filtrations of point clouds.

mod cubical;
mod filtered;
pub mod io;
mod meb;
mod point_cloud;

pub use cubical::{sublevel_filtration, superlevel_filtration, CubicalGrid};
pub use filtered::{
    boundary_squares_to_zero, complex_at, is_face_closed, monotone_completion, Cell, FilteredComplex, TimeAxis,
};
pub use meb::{circumball, min_enclosing_ball, Ball};
pub use point_cloud::{cech_filtration, rips_filtration, Metric, PointCloud, SimplexOptions, DEFAULT_POINT_CAP};
