//! The convolution algebra of constructible functions on `Λ`.

pub mod basis;
pub mod euler;
pub mod expr;

pub use basis::{one_vertex_basis, AlgebraConfig, Distinguisher, Evaluator, OneVertexBasis};
pub use euler::{euler_characteristic, EulerResult, OracleConfig};
pub use expr::{Atom, FunctionExpr, Word};
