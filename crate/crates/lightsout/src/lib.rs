//! Lights Out on arbitrary simple graphs.
//!
//! Pressing a vertex toggles its closed neighborhood, so a configuration is
//! solvable iff it lies in the column space of N(G) = A(G) + I over GF(2),
//! and every configuration is solvable iff N(G) is invertible. On top of that
//! linear-algebra core this crate provides:
//!
//! - exact enumeration of graph isomorphism classes (orderly generation by
//!   vertex count or by edge count), canonical forms, and exact censuses of
//!   the solvable classes near the complete graph;
//! - exact solvability probabilities over isomorphism classes with a fixed
//!   number of vertices and edges;
//! - a rejection sampler producing uniformly random isomorphism classes with
//!   fixed (n, e), and a Monte Carlo harness that estimates solvability
//!   probabilities with reproducible, seed-deterministic output.
//!
//! # Example
//!
//! ```
//! use lightsout::census::Catalog;
//! use lightsout::format::parse_graph;
//! use lightsout::solver::{is_universally_solvable, odd_dominating_set};
//!
//! # fn main() -> lightsout::Result<()> {
//! let g = parse_graph("Dhc")?; // C5
//! assert!(is_universally_solvable(&g));
//! assert_eq!(odd_dominating_set(&g).unwrap().len(), 5);
//!
//! let catalog = Catalog::new();
//! assert_eq!(catalog.compute_e(15, 5)?.len(), 5);
//! assert_eq!(catalog.exact_probability(8, 2)?.to_string(), "1/2");
//! # Ok(())
//! # }
//! ```

pub mod canon;
pub mod census;
pub mod cubic;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod gf2;
pub mod graph;
pub mod montecarlo;
pub mod sampler;
pub mod solver;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
