//! Multiphoton path-identity experiments as multigraphs.
//!
//! Vertices are photon paths (detectors), edges are down-conversion crystals
//! emitting a photon pair into their two paths with given modes and a complex
//! amplitude. Conditioned on one photon per detector, the experiment outputs
//! the coherent sum over the graph's perfect matchings.
//!
//! ```
//! use pathgraph::{state_from_graph, EdgeSpec, GraphBuilder, Limits};
//!
//! // Three layers of crystals on four paths, one mode per layer.
//! let g = GraphBuilder::new(["a", "b", "c", "d"])
//!     .edge(EdgeSpec::new("a", "b").mode(0))
//!     .edge(EdgeSpec::new("c", "d").mode(0))
//!     .edge(EdgeSpec::new("a", "c").mode(1))
//!     .edge(EdgeSpec::new("b", "d").mode(1))
//!     .edge(EdgeSpec::new("a", "d").mode(2))
//!     .edge(EdgeSpec::new("b", "c").mode(2))
//!     .build()
//!     .unwrap();
//! let state = state_from_graph(&g, true, &Limits::default()).unwrap();
//! assert_eq!(state.to_string().lines().count(), 3);
//! ```
//!
//! Modules:
//! - [`graph`] and [`io`]: the experiment graph, its file format, DOT export;
//! - [`matching`]: perfect matchings, disjoint matchings, 1-factorizations;
//! - [`counters`]: hafnian and permanent;
//! - [`state`]: post-selected states, target verification, graph search;
//! - [`feasibility`]: Hall and Tutte certificates;
//! - [`compiler`]: layered experiment plans;
//! - [`network`]: random-network ensembles.

mod bits;
pub mod compiler;
pub mod counters;
pub mod error;
pub mod feasibility;
pub mod graph;
pub mod io;
pub mod matching;
pub mod network;
pub mod state;

pub use error::{Error, Result};
pub use graph::{Amplitude, Edge, EdgeSpec, ExperimentGraph, GraphBuilder, VertexId};
pub use io::{parse_graph, serialize_graph, to_dot};
pub use matching::{
    count_pm, enumerate_pm, find_pm, max_disjoint_pms, Limits, PerfectMatching,
};
pub use state::{state_from_graph, Ket, QuantumState};
