//! Certifying recognition of B0-VPG graphs among block graphs.
//!
//! A graph is B0-VPG when each vertex can be drawn as a horizontal or
//! vertical path on the integer grid so that two vertices are adjacent
//! exactly when their paths share a grid point. For block graphs the crate
//! decides membership and always returns a checkable witness: a grid
//! representation when the answer is yes, or a vertex set inducing a member
//! of the forbidden family when it is no.

pub mod blocks;
pub mod build;
pub mod canon;
pub mod certify;
pub mod cli;
pub mod error;
pub mod family;
pub mod generate;
pub mod graph;
pub mod grid;
pub mod io;
pub mod oracle;
pub mod recognize;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{find_induced_copy, Graph, VertexSet};
