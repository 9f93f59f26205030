pub mod disk_counting;
pub mod error;
pub mod exact;
pub(crate) mod floor;
pub mod io;
pub mod special;
pub mod spectra;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
