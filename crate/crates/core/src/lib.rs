pub mod catalog;
pub mod error;
pub mod exterior;
pub mod gradings;
pub mod kernelmap;
pub mod liealg;
pub mod linalg;
pub mod notation;
pub mod report;
pub mod sampling;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};
