//! Tree decompositions of planar and bounded-genus embedded graphs whose
//! width is bounded by the BFS depth, and the algorithms built on them:
//! level-slicing approximation schemes, exact dynamic programs over nice
//! decompositions and fixed-pattern subgraph isomorphism.

pub mod baker;
pub mod checks;
pub mod decomp;
pub mod dp;
pub mod embed;
pub mod error;
pub mod format;
pub mod generators;
pub mod genus_td;
pub mod graph;
pub mod oracles;
pub mod planar_td;

pub use baker::{build_slices, ptas, ptas_ds, ptas_mis, ptas_vc, PtasOutcome, SliceFamily, SliceMode};
pub use decomp::{make_nice, validate, NiceDecomposition, TreeDecomposition};
pub use dp::{dp_ds, dp_mis, dp_subiso, dp_vc, subiso_driver};
pub use embed::{validate_embedding, Dart, EmbeddedGraph};
pub use error::{Error, Result};
pub use genus_td::{cut_graph, genus_td, CutGraph};
pub use graph::{bfs_layering, diameter, Graph, Layering, Vertex};
pub use oracles::{exact_treewidth, oracle_solve, subiso_backtracking, OracleBudget, Problem};
pub use planar_td::{planar_bfs_td, slice_td};
