use std::path::Path;

use serde::Deserialize;

use crate::error::GatewayError;

/// How a scenario entry decides whether it answers a given call.
#[derive(Debug, Clone, PartialEq)]
pub enum Matcher {
    /// Matches when the request's text contains this substring.
    Substring(String),
    /// Matches exactly the n-th `complete` call (1-based).
    Ordinal(u64),
}

/// One canned response plus the rule that selects it.
#[derive(Debug, Clone)]
pub struct ScenarioEntry {
    pub matcher: Matcher,
    pub response: String,
}

/// An ordered list of canned responses for the scripted backend.
///
/// Each entry is consumed at most once; the first unconsumed entry whose
/// matcher fits the call wins. Ordinal matchers must be strictly
/// increasing through the list.
#[derive(Debug, Clone)]
pub struct ScriptedScenario {
    entries: Vec<ScenarioEntry>,
}

impl ScriptedScenario {
    pub fn new(entries: Vec<ScenarioEntry>) -> Result<Self, GatewayError> {
        if entries.is_empty() {
            return Err(GatewayError::InvalidRequest(
                "scenario must have at least one entry".into(),
            ));
        }
        let mut last_ordinal = 0u64;
        for e in &entries {
            if let Matcher::Ordinal(n) = e.matcher {
                if n <= last_ordinal {
                    return Err(GatewayError::InvalidRequest(format!(
                        "ordinal matchers must be strictly increasing (saw {n} after {last_ordinal})"
                    )));
                }
                last_ordinal = n;
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[ScenarioEntry] {
        &self.entries
    }

    /// Parse the on-disk format:
    /// `{"entries": [{"match": <string|integer>, "response": <string>}]}`.
    pub fn from_json_str(text: &str) -> Result<Self, GatewayError> {
        let raw: RawScenario = serde_json::from_str(text)
            .map_err(|e| GatewayError::InvalidRequest(format!("scenario JSON: {e}")))?;
        let entries = raw
            .entries
            .into_iter()
            .map(|e| {
                let matcher = match e.matcher {
                    RawMatcher::Text(s) => Matcher::Substring(s),
                    RawMatcher::Ordinal(n) => Matcher::Ordinal(n),
                };
                ScenarioEntry {
                    matcher,
                    response: e.response,
                }
            })
            .collect();
        Self::new(entries)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, GatewayError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| GatewayError::ScenarioFile {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })?;
        Self::from_json_str(&text).map_err(|e| GatewayError::ScenarioFile {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })
    }
}

#[derive(Deserialize)]
struct RawScenario {
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    #[serde(rename = "match")]
    matcher: RawMatcher,
    response: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawMatcher {
    Ordinal(u64),
    Text(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_matcher_kinds() {
        let s = ScriptedScenario::from_json_str(
            r#"{"entries":[{"match":1,"response":"a"},{"match":"fire","response":"b"}]}"#,
        )
        .unwrap();
        assert_eq!(s.entries().len(), 2);
        assert_eq!(s.entries()[0].matcher, Matcher::Ordinal(1));
        assert_eq!(s.entries()[1].matcher, Matcher::Substring("fire".into()));
    }

    #[test]
    fn rejects_non_increasing_ordinals() {
        let err = ScriptedScenario::from_json_str(
            r#"{"entries":[{"match":2,"response":"a"},{"match":2,"response":"b"}]}"#,
        );
        assert!(err.is_err());
    }

    #[test]
    fn rejects_empty_scenario() {
        assert!(ScriptedScenario::from_json_str(r#"{"entries":[]}"#).is_err());
    }
}
