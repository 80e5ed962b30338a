//! Exact piecewise-linear interval maps.
//!
//! Maps of `[0, 1]` are stored by their rational breakpoints. On top of the
//! map algebra the crate decides commutation and strong commutation
//! (`f ∘ g⁻¹ = g⁻¹ ∘ f` as set-valued maps), enumerates hats and endpoints of
//! the set-valued graphs, builds invariant-interval decompositions and common
//! fixed points of strongly commuting pairs, and computes topological
//! entropy. Every decision is made in exact rational arithmetic.

pub mod decompose;
pub mod entropy;
mod error;
mod interval;
pub mod oracle;
mod plmap;
pub mod pwl;
mod rational;
mod report;
pub mod setvalued;

pub use error::{Error, Result};
pub use interval::Interval;
pub use plmap::{CriticalPoint, CriticalSet, Extremum, FixedSet, PLMap, DEFAULT_BREAKPOINT_CAP};
pub use rational::{format_rational, int, one, parse_rational, rat, to_f64, zero, Rational};
pub use report::{Check, Report};
