pub mod cli;
pub mod covariant;
pub mod deformation;
pub mod error;
pub mod graded_matrix;
pub mod parse;
pub mod random;
pub mod report;
pub mod verify;
pub mod scalars;
pub mod grassmann;
