pub mod cli;
pub mod components;
pub mod error;
pub mod exact;
pub mod expansion;
pub mod harness;
pub mod oracle;
pub mod special;
pub mod tails;
pub mod transfer;

pub use error::{Error, Result};
