pub mod algebra;
pub mod cli;
pub mod error;
pub mod hcseries;
pub mod heckeops;
pub mod macops;
pub mod rankone;
pub mod rootdata;
pub mod serial;

pub use error::{Error, Result};
