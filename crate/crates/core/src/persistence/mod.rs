//! Persistent homology over Z/2: reduction, barcodes, diagrams, Betti
//! numbers and the barcode Euler characteristic.

mod barcode;
mod betti;
mod diagram;
pub mod export;
mod extrema;
mod reduce;

pub use barcode::{barcode_euler_char, betti_at, Bar, Barcode, BettiVector};
pub use betti::{brute_force_betti, BRUTE_FORCE_CAP};
pub use diagram::{
    birth_death_marginals, diagram, diagram_with, DiagramOptions, DiagramPoint, Histogram, PersistenceDiagram,
    DEFAULT_BIN_WIDTH,
};
pub use extrema::{local_maxima, star_minima};
pub use reduce::reduce;
