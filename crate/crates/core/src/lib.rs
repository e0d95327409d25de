//! Clique-width expressions for (S_{1,2,2}, triangle)-free graphs.
//!
//! The crate recognizes the class, decomposes a member into modules and
//! prime pieces, builds an explicit bounded-label expression for each prime
//! piece and checks every construction by evaluation.

pub mod c5;
pub mod chain;
pub mod cycles;
pub mod format;
pub mod gen;
pub mod graph;
pub mod kexpr;
pub mod modular;
pub mod oracle;
pub mod pattern;
pub mod pipeline;

pub use graph::{Graph, GraphError, VertexId};
pub use kexpr::{eval, width, KExpr, Label, LabeledGraph};
