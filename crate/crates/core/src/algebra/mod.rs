//! Exact coefficient rings: the scalar fields and the nilpotent multilinear
//! algebra that turns "differentiate once in every marker, then set all
//! markers to zero" into reading off a single coefficient.

mod dyadic;
mod multilinear;
mod scalar;

pub use dyadic::{rational_to_integer, Dyadic};
pub use multilinear::MultilinearElem;
pub use scalar::{is_nonnegative_integer, Coeff, Scalar};

/// Largest supported number of marker variables.
pub const MAX_MARKERS: usize = 8;
