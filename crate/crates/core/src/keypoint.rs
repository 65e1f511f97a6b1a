use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::geometry::{BoundingBox, PixelPoint};

/// A named pixel location — the grounding atom produced by pixel-pointing.
///
/// Construction enforces the type's invariants: non-empty label, the point
/// inside the bounding box when one is present, and a fire probability in
/// `[0, 1]` when present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KeypointRepr", into = "KeypointRepr")]
pub struct LabeledKeypoint {
    label: String,
    point: PixelPoint,
    bbox: Option<BoundingBox>,
    fire_probability: Option<f64>,
}

impl LabeledKeypoint {
    pub fn new(
        label: impl Into<String>,
        point: PixelPoint,
        bbox: Option<BoundingBox>,
        fire_probability: Option<f64>,
    ) -> Result<Self, CoreError> {
        let label = label.into();
        if label.is_empty() {
            return Err(CoreError::EmptyLabel);
        }
        if let Some(b) = &bbox {
            if !b.contains(point) {
                return Err(CoreError::PointOutsideBox {
                    x: point.x(),
                    y: point.y(),
                });
            }
        }
        if let Some(p) = fire_probability {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(CoreError::ProbabilityOutOfRange(p));
            }
        }
        Ok(Self {
            label,
            point,
            bbox,
            fire_probability,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn point(&self) -> PixelPoint {
        self.point
    }

    pub fn bbox(&self) -> Option<BoundingBox> {
        self.bbox
    }

    pub fn fire_probability(&self) -> Option<f64> {
        self.fire_probability
    }

    /// Probability used for path ordering; a missing value sorts last.
    pub fn probability_or_zero(&self) -> f64 {
        self.fire_probability.unwrap_or(0.0)
    }
}

#[derive(Serialize, Deserialize)]
struct KeypointRepr {
    label: String,
    point: PixelPoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bbox: Option<BoundingBox>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fire_probability: Option<f64>,
}

impl TryFrom<KeypointRepr> for LabeledKeypoint {
    type Error = CoreError;

    fn try_from(r: KeypointRepr) -> Result<Self, CoreError> {
        LabeledKeypoint::new(r.label, r.point, r.bbox, r.fire_probability)
    }
}

impl From<LabeledKeypoint> for KeypointRepr {
    fn from(k: LabeledKeypoint) -> KeypointRepr {
        KeypointRepr {
            label: k.label,
            point: k.point,
            bbox: k.bbox,
            fire_probability: k.fire_probability,
        }
    }
}
