//! The frame data model.

mod examples;
mod frame;
pub mod random;

pub use examples::{example_phi1, example_phi2, example_phi3};
pub use frame::{Frame, FrameBounds};
pub use random::random_frame;
