//! Constructive discrepancy bounds for set systems arising from sparse graphs.
//!
//! The crate builds neighborhood systems of graphs, graph powers and
//! quantifier-free definable systems over pointer structures, colors them
//! with an exact-arithmetic Beck–Fiala procedure, and certifies every bound
//! it reports. Brute-force oracles (exact discrepancy, exhaustive weak
//! coloring numbers, shatter functions) are included for desk-scale
//! validation.
//!
//! ```
//! use herdisc::graph::Graph;
//! use herdisc::orderings::{degeneracy_order, orient_along};
//! use herdisc::power::orientation_coloring;
//!
//! let g = Graph::grid(4, 4);
//! let (order, deg) = degeneracy_order(&g);
//! let run = orientation_coloring(&g, &orient_along(&g, &order).unwrap()).unwrap();
//! assert!(run.achieved < 3 * deg as u64);
//! ```

pub mod approx;
pub mod cli;
pub mod discrepancy;
pub mod error;
pub mod graph;
pub mod orderings;
pub mod pointer;
pub mod power;
pub mod rng;
pub mod setsystem;

pub use error::{Error, Result};
