use std::path::PathBuf;

/// Errors raised while constructing or loading core domain types.
#[derive(Debug, thiserror::Error)]
pub enum CoreError {
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("bounding box corners out of order: ({x1},{y1}) .. ({x2},{y2})")]
    InvalidBox { x1: f64, y1: f64, x2: f64, y2: f64 },

    #[error("keypoint label must be non-empty")]
    EmptyLabel,

    #[error("point ({x},{y}) lies outside its bounding box")]
    PointOutsideBox { x: f64, y: f64 },

    #[error("fire probability {0} outside [0,1]")]
    ProbabilityOutOfRange(f64),

    #[error("mission query text must be non-empty")]
    EmptyQueryText,

    #[error("scene image id must be non-empty")]
    EmptyImageId,

    #[error("scene image '{id}' has zero area ({width}x{height})")]
    EmptyImage { id: String, width: u32, height: u32 },

    #[error("failed to load image from {path}: {source}")]
    ImageLoad {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },

    #[error("failed to encode image '{id}': {source}")]
    ImageEncode {
        id: String,
        #[source]
        source: image::ImageError,
    },
}
