//! The mission tool set for both agents, plus the pipeline that wires
//! them together.
//!
//! The airspace manager gets scene reading, captioning, pixel-pointing,
//! keypoint visualization and final answer; the flight agent gets
//! simulation-image reading, flight simulation, per-frame fire detection
//! and final answer. Waypoint ordering (highest fire probability first,
//! nearest-first within ties) runs between the two agents.

pub mod ama;
pub mod context;
pub mod detect;
pub mod error;
pub mod ordering;
pub mod pipeline;
pub mod render;
pub mod store;
pub mod uav;

pub use ama::{ama_registry, describe_satellite_image, pixelpoint_objects};
pub use context::{MissionContext, TaskAssignment, VisionOpts};
pub use detect::{detect_and_display, CropGeometry, DetectionResult};
pub use error::ToolsError;
pub use ordering::order_waypoints;
pub use pipeline::{run_mission, MissionOutcome, PipelineConfig, SceneRef};
pub use render::{visualize_keypoints, MarkerStyle};
pub use store::ImageStore;
pub use uav::uav_registry;
