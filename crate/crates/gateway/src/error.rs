use std::path::PathBuf;

/// Errors surfaced by backends and the structured-output parsers.
#[derive(Debug, thiserror::Error)]
pub enum GatewayError {
    #[error("request {request_id}: endpoint unreachable after retries: {detail}")]
    EndpointUnreachable { request_id: String, detail: String },

    #[error("request {request_id}: credential rejected (HTTP {status})")]
    AuthRejected { request_id: String, status: u16 },

    #[error("request {request_id}: scripted scenario exhausted at call {call_index}")]
    ScenarioExhausted { request_id: String, call_index: u64 },

    #[error("no parseable JSON value found (best attempt at byte offset {offset})")]
    Unparseable { offset: usize },

    #[error("no keypoint could be parsed from the model output")]
    EmptyResult,

    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("scenario file {path}: {detail}")]
    ScenarioFile { path: PathBuf, detail: String },

    #[error("request {request_id}: malformed completion response: {detail}")]
    MalformedResponse { request_id: String, detail: String },

    #[error(transparent)]
    Core(#[from] mission_core::CoreError),
}
