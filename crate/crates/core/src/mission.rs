use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::keypoint::LabeledKeypoint;

/// The operator's natural-language request plus the benchmark sample it
/// belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionQuery {
    text: String,
    sample_id: String,
}

impl MissionQuery {
    pub fn new(text: impl Into<String>, sample_id: impl Into<String>) -> Result<Self, CoreError> {
        let text = text.into();
        if text.is_empty() {
            return Err(CoreError::EmptyQueryText);
        }
        Ok(Self {
            text,
            sample_id: sample_id.into(),
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn sample_id(&self) -> &str {
        &self.sample_id
    }
}

/// An ordered visit sequence over grounded keypoints.
///
/// Producers guarantee the waypoint list is a permutation of their input —
/// nothing dropped, nothing duplicated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionPlan {
    pub ordered_waypoints: Vec<LabeledKeypoint>,
    pub rationale: String,
}
