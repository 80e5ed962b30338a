//! Graphs of `f ∘ g⁻¹` and `g⁻¹ ∘ f`, commutation tests, hats, endpoints and
//! the consequences of strong commutation.

mod consequences;
mod features;
mod graph;
mod segment;

pub use consequences::verify_strong_consequences;
pub use features::{endpoints, hats, profile, FeatureKind, GraphFeature, Inequality, Profile};
pub use graph::{commute, forward_graph, graphs_equal, pullback_graph, strongly_commute};
pub use segment::{Point, Segment, SegmentSet};
