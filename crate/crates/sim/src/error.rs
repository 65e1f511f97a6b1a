/// Errors raised by the simulator.
#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("flight path requires at least one waypoint")]
    EmptyPath,

    #[error("frame label must be non-empty")]
    EmptyLabel,

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("GIF encoding failed: {0}")]
    GifEncode(String),

    #[error(transparent)]
    Core(#[from] mission_core::CoreError),
}
