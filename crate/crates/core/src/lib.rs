//! b-colorings of star-graph operators.
//!
//! Graphs are built from stars, paths, cycles and complete graphs and composed with the
//! Cartesian product, line graph, total graph and graph power. On top of that sit an exact
//! solver for the b-chromatic number (and the b-coloring counter `B(G, k)`), explicit
//! constructions that emit checkable certificates, and a table of closed-form values.
//!
//! ```
//! use bchroma::{graph::star, operators::cartesian_product, solver};
//!
//! let g = cartesian_product(&star(3), &star(3)).unwrap().graph;
//! let report = solver::b_chromatic_number(&g, &solver::SearchConfig::default()).unwrap();
//! assert_eq!(report.phi, 5);
//! ```

pub mod coloring;
pub mod constructions;
pub mod expr;
pub mod formulas;
pub mod graph;
pub mod operators;
pub mod solver;
pub mod verify;

/// Version tag carried by every JSON document this crate writes.
pub const SCHEMA: &str = "bchroma/1";

pub use coloring::{BColoringCertificate, Coloring};
pub use expr::GraphSpec;
pub use formulas::PhiResult;
pub use graph::{Graph, GraphError, VertexLabel};
pub use solver::{CountReport, SearchConfig, SearchReport, SolverError};
