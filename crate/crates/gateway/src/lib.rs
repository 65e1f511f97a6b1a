//! Uniform access to chat/vision models.
//!
//! Two backends share one trait: an OpenAI-compatible HTTP client with
//! retry/backoff, and a deterministic scripted backend that replays canned
//! responses for desk-scale testing. On top of those sit the tolerant
//! JSON extractor for model text and the keypoint parser that turns
//! grounding output into domain types.

pub mod backend;
pub mod error;
pub mod keypoints;
pub mod message;
pub mod repair;
pub mod scenario;

pub use backend::{HttpBackend, HttpConfig, ModelBackend, RecordingBackend, RetryPolicy, ScriptedBackend};
pub use error::GatewayError;
pub use keypoints::{parse_keypoints, KeypointParse};
pub use message::{MessagePart, ModelMessage, ModelRequest, ModelResponse, Role};
pub use repair::{extract_structured, Extracted};
pub use scenario::{Matcher, ScenarioEntry, ScriptedScenario};
