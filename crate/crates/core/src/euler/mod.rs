//! Euler characteristics, EC curves, Euler integrals and target counting on
//! cubical grids.

mod chi;
mod constructible;
mod curve;
mod integral;

pub use chi::{euler_char_closed, euler_char_lf, OpenCellComplex};
pub use constructible::{
    count_targets, euler_integral_constructible, rasterize, ConstructibleField, SceneFile, Shape, TargetScene,
};
pub use curve::{ec_curve_sublevel, ec_curve_superlevel, ECCurve, LevelKind};
pub use integral::{
    barcode_identity_check, euler_integral_cells, euler_integral_real, euler_integral_real_checked,
    euler_integral_real_stepwise, euler_integral_upper, euler_integral_upper_checked, euler_integral_upper_stepwise,
};
