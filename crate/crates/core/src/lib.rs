//! Default reasoning with System Z, possibilistic plausibility orderings, the
//! revision operator they induce, and a calculus of surprising, revealing and
//! incongruous statements built on top of it.

pub mod defaults;
pub mod error;
pub mod humor;
pub mod kbio;
pub mod km;
pub mod logic;
pub mod orders;
pub mod report;

pub use error::{Error, Result};
