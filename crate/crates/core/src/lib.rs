pub mod cli;
pub mod error;
pub mod frame;
pub mod io;
pub mod nucleus;
pub mod oracle;
pub mod pca;
pub mod trees;

pub use error::{Error, Result};
