//! Oriented simplicial chains on integer-labeled vertices and sphere
//! triangulations ("triations").

mod chain;
mod iso;
mod simplex;
mod triation;

pub use chain::{Chain, Chain2, Chain3};
pub use iso::{automorphisms, canonical_code, isomorphic};
pub use simplex::{canonicalize, tet_faces, OrientedTet, OrientedTriple, Simplex, Vertex};
pub use triation::{cone, icosahedron, validate_triation, Triation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate vertex label in {0:?}")]
    DuplicateLabel(Vec<Vertex>),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty face list")]
    Empty,

    #[error("labels are not dense: expected 0..{expected}, label {missing} never appears")]
    SparseLabels { expected: u32, missing: u32 },

    #[error("face {0:?} listed more than once")]
    DuplicateFace([Vertex; 3]),

    #[error("edge {edge:?} lies in {count} faces (need exactly 2)")]
    NonManifoldEdge { edge: [Vertex; 2], count: usize },

    #[error("inconsistent orientation on edges {0:?}")]
    InconsistentOrientation(Vec<[Vertex; 2]>),

    #[error("link of vertex {0} is not a single cycle")]
    VertexLink(Vertex),

    #[error("surface is disconnected")]
    Disconnected,

    #[error("Euler characteristic {chi} (v={v}, e={e}, f={f}); a sphere needs 2")]
    Euler { v: usize, e: usize, f: usize, chi: i64 },

    #[error("vertex {vertex} out of range 0..{v}")]
    VertexOutOfRange { vertex: Vertex, v: u32 },
}
