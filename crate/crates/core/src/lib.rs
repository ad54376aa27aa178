//! Locating colorings of graphs.
//!
//! A proper coloring is *locating* when every vertex is identified by its
//! vector of distances to the color classes. This crate provides:
//!
//! * [`graph`]: path/cycle/complete families, Cartesian products, distances;
//! * [`coloring`]: color codes, the locating check, colorful vertices and
//!   the product coloring of two locating colorings;
//! * [`matrix`]: matrix view of product-graph colorings and the file format;
//! * [`solver`]: an exhaustive, symmetry-pruned search that computes the
//!   locating chromatic number of small graphs;
//! * [`constructions`]: explicit locating colorings of grids, `K_m □ P_n`
//!   and `K_m □ K_n`;
//! * [`matching`]: bipartite perfect matching;
//! * [`latin`]: the Latin-rectangle view of `K_m □ K_n` colorings;
//! * [`conjecture`]: desk-scale evidence runs for open questions about
//!   product graphs.

pub mod coloring;
pub mod conjecture;
pub mod constructions;
pub mod graph;
pub mod latin;
pub mod matching;
pub mod matrix;
pub mod solver;

pub use coloring::{Color, ColorCode, ColorPartition, Coloring, ColoringError, Locating};
pub use graph::{Family, Graph, GraphError, GraphSpec, GridShape};
pub use matrix::{ColoringDocument, ColoringMatrix, FormatError};
pub use solver::{SolveBudget, SolveError, SolveOptions};
