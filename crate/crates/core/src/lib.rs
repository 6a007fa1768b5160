//! Strength labelings of simple graphs.
//!
//! A *numbering* of a graph on `p` vertices is a bijection onto `1..=p`.
//! Its strength is the largest `f(u) + f(v)` over the edges, and the strength
//! of the graph is the smallest strength over all numberings. This crate
//! builds numberings that provably reach `p + δ` via minimum-degree deletion
//! sequences, computes the standard lower and upper bounds, provides explicit
//! constructions for 2-regular graphs and hypercubes, and ships an exact
//! branch-and-bound oracle for small graphs.
//!
//! ```
//! use graph_strength::{delta, family, labeling};
//!
//! let g = family::cycle(6).unwrap();
//! let seq = delta::find_delta_sequence(&g, delta::Mode::MinDegree, 1_000_000)
//!     .unwrap()
//!     .found()
//!     .unwrap();
//! let f = delta::label_from_sequence(&g, &seq).unwrap();
//! assert_eq!(labeling::strength_of(&g, &f).unwrap(), 6 + 2);
//! ```

pub mod bounds;
pub mod canon;
pub mod constructions;
pub mod delta;
pub mod family;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod labeling;
pub mod oracle;
pub mod repro;

pub use graph::{Graph, Vertex, VertexSet};
pub use labeling::{Numbering, StrengthCertificate, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("family spec error at position {position}: {message}")]
    FamilySpec { position: usize, message: String },
    #[error("graph6 error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
    #[error("edge list error on line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("not a bijection onto [1, p]: {0}")]
    NotBijective(String),
    #[error("strength is undefined for a graph without edges")]
    UndefinedStrength,
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{what} is limited to {cap} vertices, got {got}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        got: usize,
    },
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture {name}: {message}")]
    Fixture { name: String, message: String },
    #[error("io: {0}")]
    Io(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/numberings.md")]
    mod numberings {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
