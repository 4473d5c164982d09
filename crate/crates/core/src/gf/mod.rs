//! Network generating functions: closed forms, skeleton constructions and
//! exact counts.

mod algebraic;
mod catalog;
mod counts;
mod operators;

pub use algebraic::{egf_count, factorial, AlgebraicGF};
pub use catalog::{catalog, NetworkClass};
pub use counts::{
    caterpillar_lower_bound, caterpillar_path, caterpillar_path_from_trees, count, egf_coefficient, is_integral_egf, is_odd_series,
    leaf_from_vertex, leaf_labeled_count, unicyclic_gf, unicyclic_in, CountTable,
};
pub use operators::{operator_in, operator_n, operator_t, OperatorContext};
