pub mod basis;
pub mod error;
pub mod hamcore;
pub mod problems;
pub mod qaoa;
pub mod simkernel;
pub mod sweep;

pub use error::{Error, Result};
