pub mod error;
pub mod exact;
pub mod series;

pub use error::{Error, Result};
pub mod toric;
pub mod localize;
pub mod instanton;
pub mod lattice;
pub mod universal;
pub mod qseries;
pub mod closed;
pub mod monopole;
pub mod cache;
pub mod checks;
