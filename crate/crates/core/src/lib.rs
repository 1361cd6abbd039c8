pub mod cli;
pub mod constraints;
pub mod error;
pub mod gallery;
pub mod graph;
pub mod matrix;
pub mod model;
pub mod poly;
pub mod separation;
pub mod trek;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{MixedGraph, SubdivisionMap};
pub use poly::{Polynomial, Variable};
