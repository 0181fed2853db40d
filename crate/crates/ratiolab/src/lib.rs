//! Command-line tools, dataset formats and parallel batch evaluation for
//! [`ratiolab_core`].

pub mod cli;
pub mod dataset;
pub mod json;
pub mod literal;
pub mod parallel;
