//! Primary critical values, common fixed points and invariant-interval
//! decompositions of strongly commuting pairs.

mod construct;
mod primary;
mod split;

pub use construct::{
    classify, decompose, verify_decomposition, Block, Case, Decomposition, IntervalClass,
};
pub use primary::{orientation, primary_critical_values, Orientation, PrimaryValues};
pub use split::{common_fixed_point, split_common_fixed};
