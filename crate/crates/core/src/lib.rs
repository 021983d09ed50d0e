//! Uniform spanning tree samplers and random-walk potential theory on finite
//! weighted networks.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] holds the immutable [`Network`] multigraph, the graph-family
//!   generators, contraction `G/W` and the sunny network.
//! * [`walk`] holds lazy random walks, the exact linear-algebra backend and the
//!   Monte Carlo estimators (capacity, closeness, Green functions, effective
//!   conductance, bubble sums, target time).
//! * [`ust`] holds loop erasure, cut times, Wilson's algorithm, Aldous–Broder,
//!   oriented forests and the exact spanning-tree oracles.
//! * [`interlacement`] holds the `W`-wired interlacement process and the
//!   height-of-past statistics built on it.
//! * [`stats`] holds the goodness-of-fit helpers used by the law tests.

pub mod error;
pub mod graph;
pub mod interlacement;
pub mod rng;
pub mod stats;
pub mod ust;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, HalfEdge, Network, VertexSet};
pub use rng::{split_seed, stream_rng, WalkRng};

pub use ust::forest::OrientedForest;
pub use walk::{Estimate, Walk, WalkLaw};
