pub mod error;
pub mod field;
pub mod groebner;
pub mod poly;
pub mod report;

pub use error::{Error, Result};
pub use field::{BaseField, Scalar};
pub mod acceptance;
pub mod cli;
pub mod comm;
pub mod dimension;
pub mod essential;
pub mod homology;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod nc;
pub mod points;
pub mod smoothness;
pub mod verdict;
