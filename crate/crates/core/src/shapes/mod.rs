//! Compiled SHACL shapes.

mod compile;
mod model;

pub use compile::{compile_constraints, compile_graph, discover, to_graph, ShapeError};
pub use model::{Constraint, ConstraintComponent, Shape, ShapeId, ShapeKind, ShapesGraph, Target};
