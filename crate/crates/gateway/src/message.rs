use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::Duration;

use mission_core::SceneImage;

use crate::error::GatewayError;

/// Conversation role in a chat request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    System,
    User,
    Assistant,
    Tool,
}

impl Role {
    pub fn as_str(&self) -> &'static str {
        match self {
            Role::System => "system",
            Role::User => "user",
            Role::Assistant => "assistant",
            Role::Tool => "tool",
        }
    }
}

/// One part of a message: plain text or a reference to a scene image.
///
/// Image parts carry the full scene so the HTTP backend can inline the
/// raster as base64 without a separate lookup step.
#[derive(Debug, Clone)]
pub enum MessagePart {
    Text(String),
    Image(Arc<SceneImage>),
}

/// A typed chat message. Image parts are only valid on user messages.
#[derive(Debug, Clone)]
pub struct ModelMessage {
    role: Role,
    parts: Vec<MessagePart>,
}

impl ModelMessage {
    pub fn new(role: Role, parts: Vec<MessagePart>) -> Result<Self, GatewayError> {
        if parts.is_empty() {
            return Err(GatewayError::InvalidRequest(
                "message must have at least one part".into(),
            ));
        }
        if role != Role::User && parts.iter().any(|p| matches!(p, MessagePart::Image(_))) {
            return Err(GatewayError::InvalidRequest(
                "image parts are only allowed in user messages".into(),
            ));
        }
        Ok(Self { role, parts })
    }

    pub fn text(role: Role, text: impl Into<String>) -> Self {
        Self {
            role,
            parts: vec![MessagePart::Text(text.into())],
        }
    }

    pub fn user_with_image(text: impl Into<String>, image: Arc<SceneImage>) -> Self {
        Self {
            role: Role::User,
            parts: vec![MessagePart::Text(text.into()), MessagePart::Image(image)],
        }
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn parts(&self) -> &[MessagePart] {
        &self.parts
    }

    pub fn image_ids(&self) -> Vec<&str> {
        self.parts
            .iter()
            .filter_map(|p| match p {
                MessagePart::Image(img) => Some(img.id()),
                MessagePart::Text(_) => None,
            })
            .collect()
    }
}

static REQUEST_COUNTER: AtomicU64 = AtomicU64::new(1);

/// A complete chat request. Temperature is confined to `[0, 2]`.
#[derive(Debug, Clone)]
pub struct ModelRequest {
    request_id: String,
    messages: Vec<ModelMessage>,
    temperature: f64,
    max_tokens: u32,
    model_name: String,
}

impl ModelRequest {
    pub fn new(
        messages: Vec<ModelMessage>,
        temperature: f64,
        max_tokens: u32,
        model_name: impl Into<String>,
    ) -> Result<Self, GatewayError> {
        if messages.is_empty() {
            return Err(GatewayError::InvalidRequest("messages must be non-empty".into()));
        }
        if !(0.0..=2.0).contains(&temperature) || temperature.is_nan() {
            return Err(GatewayError::InvalidRequest(format!(
                "temperature {temperature} outside [0,2]"
            )));
        }
        if max_tokens == 0 {
            return Err(GatewayError::InvalidRequest("max_tokens must be positive".into()));
        }
        let n = REQUEST_COUNTER.fetch_add(1, Ordering::Relaxed);
        Ok(Self {
            request_id: format!("req-{n}"),
            messages,
            temperature,
            max_tokens,
            model_name: model_name.into(),
        })
    }

    pub fn request_id(&self) -> &str {
        &self.request_id
    }

    pub fn messages(&self) -> &[ModelMessage] {
        &self.messages
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn max_tokens(&self) -> u32 {
        self.max_tokens
    }

    pub fn model_name(&self) -> &str {
        &self.model_name
    }

    /// All text parts concatenated, newline-separated. Scripted scenarios
    /// match their substring rules against this view of the request.
    pub fn text_content(&self) -> String {
        let mut out = String::new();
        for m in &self.messages {
            for p in &m.parts {
                if let MessagePart::Text(t) = p {
                    if !out.is_empty() {
                        out.push('\n');
                    }
                    out.push_str(t);
                }
            }
        }
        out
    }
}

/// What a backend returned, with the measured call latency.
#[derive(Debug, Clone)]
pub struct ModelResponse {
    pub text: String,
    pub latency: Duration,
    pub backend_id: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use image::RgbImage;

    #[test]
    fn image_parts_only_in_user_messages() {
        let img = Arc::new(SceneImage::new("i1", RgbImage::new(2, 2)).unwrap());
        let err = ModelMessage::new(Role::Assistant, vec![MessagePart::Image(img.clone())]);
        assert!(err.is_err());
        assert!(ModelMessage::new(Role::User, vec![MessagePart::Image(img)]).is_ok());
    }

    #[test]
    fn request_validation() {
        let msg = ModelMessage::text(Role::User, "hi");
        assert!(ModelRequest::new(vec![], 0.5, 64, "m").is_err());
        assert!(ModelRequest::new(vec![msg.clone()], 2.5, 64, "m").is_err());
        assert!(ModelRequest::new(vec![msg.clone()], 0.5, 0, "m").is_err());
        let ok = ModelRequest::new(vec![msg], 0.5, 64, "m").unwrap();
        assert!(ok.request_id().starts_with("req-"));
    }
}
