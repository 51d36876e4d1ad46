//! Command-line front end: matrix files, analysis reports, decomposition bundles and the
//! bipartite-graph check.

pub mod analyze;
pub mod bundle;
pub mod error;
pub mod graph;
pub mod io;
