use std::path::PathBuf;

/// Errors raised by mission tools.
#[derive(Debug, thiserror::Error)]
pub enum ToolsError {
    #[error("image index {index} out of range (store has {len} images)")]
    IndexOutOfRange { index: i64, len: usize },

    #[error("no image with id '{0}' in the store")]
    UnknownImageId(String),

    #[error("image store manifest {path}: {detail}")]
    StoreManifest { path: PathBuf, detail: String },

    #[error("objects query must be non-empty")]
    EmptyObjectsQuery,

    #[error("frames map must be non-empty")]
    EmptyFrames,

    #[error("no frame set with id '{0}' in this mission")]
    UnknownFrameSet(String),

    #[error("no scene image bound to the mission yet")]
    NoCurrentScene,

    #[error(transparent)]
    Gateway(#[from] model_gateway::GatewayError),

    #[error(transparent)]
    Sim(#[from] flight_sim::SimError),

    #[error(transparent)]
    Core(#[from] mission_core::CoreError),
}
