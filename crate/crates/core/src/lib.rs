pub mod classify;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod normalform;
pub mod random;
pub mod stabilizer;
pub mod state;
pub mod surface;

pub use error::{Error, Result};
