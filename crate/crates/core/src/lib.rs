pub mod apps;
pub mod config;
pub mod error;
pub mod groupfn;
pub mod groups;
pub mod hilbert;
pub mod io;
pub mod qha;
pub mod quant;
pub mod rep;
pub mod report;
pub mod signals;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
