//! Truncated power series and the tree/path generating functions built on them.

mod builders;
mod trunc;

pub use builders::{build_m, build_mb, build_mtilde, build_mu, build_p, build_phat};
pub(crate) use builders::{build_p_from, build_phat_from};
pub use trunc::TruncSeries;
