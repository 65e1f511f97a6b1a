//! Lightweight 2D flight simulation over a scene image.
//!
//! A mission's ordered waypoints are interpolated into a dense position
//! sequence; at each position a view is cropped around the simulated
//! vehicle, resized, annotated with the segment label, and collected both
//! as a frame map and as an animated GIF trace. Everything here is a pure
//! function of its inputs — identical inputs produce bit-identical output.

pub mod annotate;
pub mod config;
pub mod error;
pub mod path;
pub mod simulate;
pub mod view;

pub use annotate::annotate_frame;
pub use config::{Density, SimConfig};
pub use error::SimError;
pub use path::{interpolate_path, PathSample};
pub use simulate::{uav_simulation, FrameRecord, SimOutput};
pub use view::{crop_to_scene, crop_view, crop_window, scene_to_crop, CropWindow};
