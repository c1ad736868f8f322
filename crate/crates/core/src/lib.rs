pub mod error;
pub mod lagrangian;
pub mod linalg;
pub mod lusztig;
pub mod maya_bz;
pub mod quiver_rep;
pub mod suites;
pub mod weyl_words;

pub use error::{Error, Result};
