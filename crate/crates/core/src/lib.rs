//! Lagrangian varieties of doubled quivers with loops: seminilpotent
//! representations, their irreducible components, and the convolution
//! algebra of constructible functions on them.

pub mod algebra;
pub mod cli;
pub mod components;
pub mod error;
pub mod field;
pub mod flags;
pub mod matrix;
pub mod quiver;
pub mod rep;
pub mod sampler;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
