pub mod cavity;
pub mod cli;
pub mod error;
pub mod fields;
pub mod output;
pub mod quad;
pub mod roots;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
