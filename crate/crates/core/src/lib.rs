//! Shared domain types for the mission pipeline.
//!
//! Everything downstream — the model gateway, the agents, the flight
//! simulator, and the benchmark harness — builds on the pixel-space
//! geometry and scene types defined here. All types are immutable after
//! construction and safe to share across threads.

pub mod error;
pub mod geometry;
pub mod keypoint;
pub mod mission;
pub mod raster;
pub mod scene;

pub use error::CoreError;
pub use geometry::{euclidean_distance, lerp, BoundingBox, PixelPoint};
pub use keypoint::LabeledKeypoint;
pub use mission::{MissionPlan, MissionQuery};
pub use scene::SceneImage;
