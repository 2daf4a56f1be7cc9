//! Exact field and polynomial arithmetic.

pub mod field;
pub mod linalg;
pub mod macaulay;
pub mod poly;
pub mod quadric;

pub use field::{ElemJson, Field, FieldSpec};
pub use linalg::Mat3;
pub use macaulay::{is_projectively_empty, macaulay_degree};
pub use poly::{HomogPoly, PolyJson};
pub use quadric::{quadric_split, QuadricSplit};
