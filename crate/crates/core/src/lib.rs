//! Generalized Sierpiński graphs `S(G, t)`, exact domination and Roman
//! domination solvers, and explicit Roman dominating functions on `S(G, t)`
//! for paths, cycles, complete graphs and arbitrary base graphs.

pub mod bitset;
pub mod constructions;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod random;
pub mod report;
pub mod roman;
pub mod sierpinski;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{families, Graph, Vertex};
pub use roman::{derived_sets, DerivedSets, RomanFunction};
pub use sierpinski::{SierpinskiGraph, Word};
