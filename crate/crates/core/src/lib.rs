pub mod coeff;
pub mod complex;
pub mod error;
pub mod linalg;
pub mod homology;
pub mod fixtures;
pub mod surface;
pub mod hqft;
pub mod random;
pub mod report;
pub mod bridge;
pub mod io;
pub mod suites;
pub mod cli;
