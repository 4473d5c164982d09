//! Exhaustive enumeration of small labeled networks, independent of the
//! generating functions.

mod enumerate;
mod graph;

pub use enumerate::{
    enumerate_canonical, enumerate_count, enumerate_count_with, enumerate_networks, role_profile, OracleClass, OracleConfig, OracleCount,
    DEFAULT_CAP,
};
pub use graph::{is_normal, is_tree_child, NetworkGraph, Role};
