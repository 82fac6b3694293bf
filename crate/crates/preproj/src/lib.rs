//! Generic extensions and flag combinatorics for preprojective algebras of type A.

pub mod compgraph;
pub mod error;
pub mod fixtures;
pub mod flags;
pub mod linalg;
pub mod multiseg;
pub mod quiver;
pub mod roots;
pub mod shuffle;

pub use error::{Error, Result};
