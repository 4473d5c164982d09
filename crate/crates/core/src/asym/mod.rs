//! High-precision asymptotic estimates and the published comparison tables.

pub mod bigfloat;
pub mod constants;
pub mod estimate;
pub mod golden;

pub use bigfloat::{bits_for_digits, BigFloat, Scientific};
pub use constants::{derived_constants, stated_constants, AsymConstants};
pub use estimate::{
    appendix_table, asym_estimate, compare_printed, compare_printed_int, default_rows, leaf_asym_estimate, probe_from_count, scale,
    second_order_probe, AppendixRow, Estimate, PrintedCheck, DEFAULT_DIGITS, SHOWN_DIGITS,
};
pub use golden::{golden_table, GoldenRow, GoldenTable, GOLDEN};
