//! Uniform spanning trees: loop erasure, cut times, Wilson's algorithm,
//! Aldous–Broder and exact enumeration oracles.

pub mod aldous_broder;
pub mod cuts;
pub mod forest;
pub mod loop_erasure;
pub mod oracle;
pub mod path;
pub mod wilson;

pub use aldous_broder::{aldous_broder, aldous_broder_traced, AldousBroderRun};
pub use cuts::{cut_points, cut_times, segment_decomposition, Segment};
pub use forest::OrientedForest;
pub use loop_erasure::{loop_erase, LoopErasure};
pub use oracle::{
    edge_marginals, enumerate_spanning_trees, path_law, spanning_tree_count, tree_law,
    wired_tree_law,
};
pub use path::{loop_erased_walk, ust_path, ust_path_with, LoopErasedPath};
pub use wilson::{wilson, wilson_fast, wilson_with, Stepping};
