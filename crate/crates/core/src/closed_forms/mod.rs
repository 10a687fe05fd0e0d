//! Closed-form Gaussian expectations: Hermite polynomials, Gaussian
//! quadrature, Lipschitz–Killing curvatures, kinematic expectations, expected
//! Euler integrals and barcode Euler characteristics, and torus coverage.

mod coverage;
mod gkf;
mod hermite;
mod quadrature;
mod transform;

pub use coverage::{
    coverage_polynomial, coverage_scale, torus_coverage_expectation, torus_coverage_expectation_with, CoverageBase,
    CoveragePolynomial,
};
pub use gkf::{
    expected_barcode_ec, expected_ec_excursion, expected_lk_excursion, flag_coefficient, gaussian_minkowski_halfline,
    lk_box, lk_torus, LKVector,
};
pub use hermite::{hermite, hermite_f64, mills_ratio, normal_cdf, normal_pdf, normal_sf};
pub use quadrature::{
    gauss_hermite_rule, gaussian_expectation, gaussian_inner_product, QuadratureRule, QuadratureSpec, TRUNCATION,
};
pub use transform::{
    expected_euler_integral, expected_euler_integral_general, expected_euler_integral_identity, Monotonicity, Piece,
    RealFn, TransformSpec,
};
