//! Backend implementations behind the `ModelBackend` trait.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use serde_json::{json, Value};

use crate::error::GatewayError;
use crate::message::{MessagePart, ModelRequest, ModelResponse};
use crate::scenario::{Matcher, ScriptedScenario};

/// A chat/vision completion backend. Handles are immutable and safe to
/// share; concurrent `complete` calls are permitted.
pub trait ModelBackend: Send + Sync {
    fn id(&self) -> &str;
    fn complete(&self, request: &ModelRequest) -> Result<ModelResponse, GatewayError>;
}

/// Retry schedule for transient HTTP failures: `max_retries` extra
/// attempts with delays `base_delay * 2^k`.
#[derive(Debug, Clone)]
pub struct RetryPolicy {
    pub max_retries: u32,
    pub base_delay: Duration,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        // 3 retries at 1s/2s/4s
        Self {
            max_retries: 3,
            base_delay: Duration::from_secs(1),
        }
    }
}

/// Configuration for the OpenAI-compatible HTTP backend.
#[derive(Debug, Clone)]
pub struct HttpConfig {
    /// Base URL; the request goes to `<base>/chat/completions`.
    pub base_url: String,
    /// Name of the environment variable holding the bearer credential.
    /// When the variable is unset no Authorization header is sent.
    pub credential_env: String,
    pub retry: RetryPolicy,
    pub timeout: Duration,
}

impl HttpConfig {
    pub fn new(base_url: impl Into<String>, credential_env: impl Into<String>) -> Self {
        Self {
            base_url: base_url.into(),
            credential_env: credential_env.into(),
            retry: RetryPolicy::default(),
            timeout: Duration::from_secs(120),
        }
    }
}

/// OpenAI-compatible `POST <base>/chat/completions` client.
pub struct HttpBackend {
    id: String,
    config: HttpConfig,
    credential: Option<String>,
    agent: ureq::Agent,
}

impl HttpBackend {
    pub fn new(config: HttpConfig) -> Self {
        let credential = std::env::var(&config.credential_env).ok();
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(config.timeout))
            .build()
            .into();
        Self {
            id: format!("http:{}", config.base_url),
            config,
            credential,
            agent,
        }
    }

    /// Build the chat-completions payload. Image parts become
    /// `data:image/png;base64,` URLs inline in the message content.
    pub fn build_payload(&self, request: &ModelRequest) -> Result<Value, GatewayError> {
        let mut messages = Vec::new();
        for m in request.messages() {
            let has_image = m
                .parts()
                .iter()
                .any(|p| matches!(p, MessagePart::Image(_)));
            let content = if has_image {
                let mut parts = Vec::new();
                for p in m.parts() {
                    match p {
                        MessagePart::Text(t) => parts.push(json!({"type": "text", "text": t})),
                        MessagePart::Image(img) => {
                            let png = img.to_png_bytes()?;
                            let url = format!("data:image/png;base64,{}", BASE64.encode(png));
                            parts.push(json!({"type": "image_url", "image_url": {"url": url}}));
                        }
                    }
                }
                Value::Array(parts)
            } else {
                let text = m
                    .parts()
                    .iter()
                    .map(|p| match p {
                        MessagePart::Text(t) => t.as_str(),
                        MessagePart::Image(_) => unreachable!(),
                    })
                    .collect::<Vec<_>>()
                    .join("\n");
                Value::String(text)
            };
            messages.push(json!({"role": m.role().as_str(), "content": content}));
        }
        Ok(json!({
            "model": request.model_name(),
            "temperature": request.temperature(),
            "max_tokens": request.max_tokens(),
            "messages": messages,
        }))
    }

    fn post_once(&self, url: &str, payload: &Value) -> Result<Value, AttemptError> {
        let mut req = self.agent.post(url);
        if let Some(cred) = &self.credential {
            req = req.header("Authorization", &format!("Bearer {cred}"));
        }
        match req.send_json(payload) {
            Ok(mut resp) => resp
                .body_mut()
                .read_json::<Value>()
                .map_err(|e| AttemptError::Transient(format!("body read: {e}"))),
            Err(ureq::Error::StatusCode(code)) if code == 401 || code == 403 => {
                Err(AttemptError::Auth(code))
            }
            Err(ureq::Error::StatusCode(code)) if code == 429 || code >= 500 => {
                Err(AttemptError::Transient(format!("HTTP {code}")))
            }
            Err(ureq::Error::StatusCode(code)) => {
                Err(AttemptError::Fatal(format!("HTTP {code}")))
            }
            Err(e) => Err(AttemptError::Transient(format!("transport: {e}"))),
        }
    }
}

enum AttemptError {
    Transient(String),
    Auth(u16),
    Fatal(String),
}

impl ModelBackend for HttpBackend {
    fn id(&self) -> &str {
        &self.id
    }

    fn complete(&self, request: &ModelRequest) -> Result<ModelResponse, GatewayError> {
        let started = Instant::now();
        let url = format!("{}/chat/completions", self.config.base_url.trim_end_matches('/'));
        let payload = self.build_payload(request)?;

        let mut last_detail = String::new();
        for attempt in 0..=self.config.retry.max_retries {
            if attempt > 0 {
                let delay = self.config.retry.base_delay * 2u32.pow(attempt - 1);
                std::thread::sleep(delay);
            }
            match self.post_once(&url, &payload) {
                Ok(body) => {
                    let text = body
                        .pointer("/choices/0/message/content")
                        .and_then(Value::as_str)
                        .ok_or_else(|| GatewayError::MalformedResponse {
                            request_id: request.request_id().to_string(),
                            detail: "missing choices[0].message.content".into(),
                        })?
                        .to_string();
                    return Ok(ModelResponse {
                        text,
                        latency: started.elapsed(),
                        backend_id: self.id.clone(),
                    });
                }
                Err(AttemptError::Auth(status)) => {
                    return Err(GatewayError::AuthRejected {
                        request_id: request.request_id().to_string(),
                        status,
                    });
                }
                Err(AttemptError::Fatal(detail)) => {
                    return Err(GatewayError::EndpointUnreachable {
                        request_id: request.request_id().to_string(),
                        detail,
                    });
                }
                Err(AttemptError::Transient(detail)) => last_detail = detail,
            }
        }
        Err(GatewayError::EndpointUnreachable {
            request_id: request.request_id().to_string(),
            detail: last_detail,
        })
    }
}

/// Deterministic canned-response backend.
///
/// Matching is serialized internally so concurrent callers observe one
/// consistent entry sequence: identical scenario + request sequence gives
/// identical responses.
pub struct ScriptedBackend {
    id: String,
    scenario: ScriptedScenario,
    state: Mutex<ScriptedState>,
}

struct ScriptedState {
    next_call: u64,
    consumed: Vec<bool>,
}

impl ScriptedBackend {
    pub fn new(scenario: ScriptedScenario) -> Self {
        let consumed = vec![false; scenario.entries().len()];
        Self {
            id: "scripted".to_string(),
            scenario,
            state: Mutex::new(ScriptedState {
                next_call: 1,
                consumed,
            }),
        }
    }

    /// Number of `complete` calls served so far.
    pub fn calls_served(&self) -> u64 {
        self.state.lock().unwrap().next_call - 1
    }
}

impl ModelBackend for ScriptedBackend {
    fn id(&self) -> &str {
        &self.id
    }

    fn complete(&self, request: &ModelRequest) -> Result<ModelResponse, GatewayError> {
        let text = request.text_content();
        let mut state = self.state.lock().unwrap();
        let call = state.next_call;
        state.next_call += 1;

        let hit = self
            .scenario
            .entries()
            .iter()
            .enumerate()
            .find(|(i, e)| {
                !state.consumed[*i]
                    && match &e.matcher {
                        Matcher::Substring(s) => text.contains(s.as_str()),
                        Matcher::Ordinal(n) => *n == call,
                    }
            })
            .map(|(i, e)| (i, e.response.clone()));

        match hit {
            Some((i, response)) => {
                state.consumed[i] = true;
                Ok(ModelResponse {
                    text: response,
                    latency: Duration::ZERO,
                    backend_id: self.id.clone(),
                })
            }
            None => Err(GatewayError::ScenarioExhausted {
                request_id: request.request_id().to_string(),
                call_index: call,
            }),
        }
    }
}

/// Snapshot of one request as seen by a backend — used to assert on
/// request shapes in tests and to debug prompt assembly.
#[derive(Debug, Clone)]
pub struct RequestSnapshot {
    pub request_id: String,
    pub model_name: String,
    pub temperature: f64,
    pub max_tokens: u32,
    pub message_count: usize,
    pub text: String,
    pub image_ids: Vec<String>,
}

/// Wraps any backend and records a snapshot of every request.
pub struct RecordingBackend<B> {
    inner: B,
    log: Mutex<Vec<RequestSnapshot>>,
}

impl<B: ModelBackend> RecordingBackend<B> {
    pub fn new(inner: B) -> Self {
        Self {
            inner,
            log: Mutex::new(Vec::new()),
        }
    }

    pub fn snapshots(&self) -> Vec<RequestSnapshot> {
        self.log.lock().unwrap().clone()
    }
}

impl<B: ModelBackend> ModelBackend for RecordingBackend<B> {
    fn id(&self) -> &str {
        self.inner.id()
    }

    fn complete(&self, request: &ModelRequest) -> Result<ModelResponse, GatewayError> {
        let snapshot = RequestSnapshot {
            request_id: request.request_id().to_string(),
            model_name: request.model_name().to_string(),
            temperature: request.temperature(),
            max_tokens: request.max_tokens(),
            message_count: request.messages().len(),
            text: request.text_content(),
            image_ids: request
                .messages()
                .iter()
                .flat_map(|m| m.image_ids())
                .map(String::from)
                .collect(),
        };
        self.log.lock().unwrap().push(snapshot);
        self.inner.complete(request)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::message::{ModelMessage, Role};
    use crate::scenario::ScenarioEntry;

    fn request(text: &str) -> ModelRequest {
        ModelRequest::new(vec![ModelMessage::text(Role::User, text)], 0.5, 64, "m").unwrap()
    }

    fn scenario(entries: Vec<(Matcher, &str)>) -> ScriptedScenario {
        ScriptedScenario::new(
            entries
                .into_iter()
                .map(|(matcher, response)| ScenarioEntry {
                    matcher,
                    response: response.to_string(),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn scripted_passthrough_first_entry() {
        let b = ScriptedBackend::new(scenario(vec![(
            Matcher::Ordinal(1),
            "A satellite view of farmland with a river crossing it",
        )]));
        let r = b.complete(&request("anything")).unwrap();
        assert_eq!(r.text, "A satellite view of farmland with a river crossing it");
        assert_eq!(r.backend_id, "scripted");
    }

    #[test]
    fn scripted_exhaustion_on_third_call() {
        let b = ScriptedBackend::new(scenario(vec![
            (Matcher::Ordinal(1), "a"),
            (Matcher::Ordinal(2), "b"),
        ]));
        b.complete(&request("x")).unwrap();
        b.complete(&request("x")).unwrap();
        let err = b.complete(&request("x")).unwrap_err();
        assert!(matches!(
            err,
            GatewayError::ScenarioExhausted { call_index: 3, .. }
        ));
    }

    #[test]
    fn substring_matching_consumes_entries_once() {
        let b = ScriptedBackend::new(scenario(vec![
            (Matcher::Substring("fire".into()), "first"),
            (Matcher::Substring("fire".into()), "second"),
        ]));
        assert_eq!(b.complete(&request("is there fire?")).unwrap().text, "first");
        assert_eq!(b.complete(&request("fire again")).unwrap().text, "second");
        assert!(b.complete(&request("no match here")).is_err());
    }

    #[test]
    fn scripted_is_deterministic_across_instances() {
        let make = || {
            ScriptedBackend::new(scenario(vec![
                (Matcher::Substring("describe".into()), "caption"),
                (Matcher::Ordinal(2), "fallback"),
            ]))
        };
        let (a, b) = (make(), make());
        for req_text in ["please describe", "next"] {
            let ra = a.complete(&request(req_text)).unwrap().text;
            let rb = b.complete(&request(req_text)).unwrap().text;
            assert_eq!(ra, rb);
        }
    }
}
