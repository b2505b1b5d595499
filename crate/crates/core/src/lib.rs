pub mod census;
pub mod cli;
pub mod config;
pub mod error;
pub mod graph;
pub mod poly;
pub mod ring;
pub mod theorems;
pub mod zd;

pub use config::{Limits, ValidationConfig};
pub use error::{Error, Result};
pub use ring::{ElemId, Ring, RingSpec};
