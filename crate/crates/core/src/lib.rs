//! Classification of separable coordinate webs from Killing tensors in Euclidean space.

pub mod canonical;
pub mod classify;
pub mod error;
pub mod exactmath;
pub mod invariants;
pub mod killing;
pub mod parser;
pub mod pipeline;

pub use error::{Error, Result};
