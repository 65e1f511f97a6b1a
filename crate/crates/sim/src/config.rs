use serde::{Deserialize, Serialize};

use crate::error::SimError;

/// How densely a flight segment is sampled. Exactly one policy applies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Density {
    /// Fixed number of interpolation steps per segment.
    StepsPerSegment(u32),
    /// Target distance in pixels between consecutive positions; the step
    /// count per segment is `ceil(length / step_length)`, at least 1.
    StepLength(f64),
}

/// Simulation parameters.
///
/// Defaults: 25 px step length (density scales with segment length across
/// differently sized images), 128 px crop window, 256 px output frames,
/// 5 fps animation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub density: Density,
    /// Square window side cropped from the scene, pre-resize.
    pub crop_size: u32,
    /// Square side of the emitted frames, post-resize.
    pub output_size: u32,
    /// Animation playback rate in frames per second.
    pub frame_rate: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            density: Density::StepLength(25.0),
            crop_size: 128,
            output_size: 256,
            frame_rate: 5.0,
        }
    }
}

impl SimConfig {
    pub fn validated(self) -> Result<Self, SimError> {
        match self.density {
            Density::StepsPerSegment(0) => {
                return Err(SimError::InvalidConfig("steps_per_segment must be positive".into()))
            }
            Density::StepLength(l) if !(l > 0.0) => {
                return Err(SimError::InvalidConfig("step_length must be positive".into()))
            }
            _ => {}
        }
        if self.crop_size == 0 || self.output_size == 0 {
            return Err(SimError::InvalidConfig("crop_size and output_size must be positive".into()));
        }
        if !(self.frame_rate > 0.0) {
            return Err(SimError::InvalidConfig("frame_rate must be positive".into()));
        }
        Ok(self)
    }
}
