//! Tolerant extraction of structured values from model text.
//!
//! Model output rarely arrives as clean JSON: it gets wrapped in code
//! fences, padded with prose, truncated mid-structure, or written with
//! Python-style quoting. `extract_structured` locates the first balanced
//! JSON value and applies repair passes in a fixed, documented order:
//!
//! 1. strip code fences
//! 2. remove trailing commas
//! 3. convert single-quoted strings to double-quoted
//! 4. balance unclosed brackets/braces by appending closers
//!    (a dangling comma at the end is dropped so the closers parse)
//!
//! Text that already parses as-is is returned untouched with the repair
//! flag false.

use serde_json::Value;

use crate::error::GatewayError;

/// A parsed value plus whether any repair pass had to run.
#[derive(Debug, Clone, PartialEq)]
pub struct Extracted {
    pub value: Value,
    pub repaired: bool,
}

/// Locate and parse the first JSON value in `text`, repairing if needed.
pub fn extract_structured(text: &str) -> Result<Extracted, GatewayError> {
    if text.trim().is_empty() {
        return Err(GatewayError::Unparseable { offset: 0 });
    }

    // Fast path: the whole text is already valid JSON.
    if let Ok(value) = serde_json::from_str::<Value>(text.trim()) {
        return Ok(Extracted {
            value,
            repaired: false,
        });
    }

    // Pass 1: if a fenced code block exists, search inside it.
    let (working, base_offset) = match strip_code_fence(text) {
        Some((body, off)) => (body, off),
        None => (text, 0),
    };

    let Some(start) = working.find(['{', '[']) else {
        // No container in sight; a fence may still have wrapped a scalar.
        if let Ok(value) = serde_json::from_str::<Value>(working.trim()) {
            return Ok(Extracted {
                value,
                repaired: true,
            });
        }
        return Err(GatewayError::Unparseable {
            offset: base_offset,
        });
    };
    let candidate = balanced_slice(&working[start..]);

    let pass2 = remove_trailing_commas(candidate);
    let pass3 = normalize_quotes(&pass2);
    let pass4 = balance_closers(&pass3);

    match serde_json::from_str::<Value>(&pass4) {
        Ok(value) => Ok(Extracted {
            value,
            repaired: true,
        }),
        Err(_) => Err(GatewayError::Unparseable {
            offset: base_offset + start,
        }),
    }
}

/// Body of the first fenced block, with its byte offset in the input.
/// The language tag line after the opening fence is skipped; an unclosed
/// fence runs to the end of the text.
fn strip_code_fence(text: &str) -> Option<(&str, usize)> {
    let open = text.find("```")?;
    let after_ticks = open + 3;
    let body_start = match text[after_ticks..].find('\n') {
        Some(nl) => after_ticks + nl + 1,
        None => after_ticks,
    };
    let body_end = text[body_start..]
        .find("```")
        .map(|i| body_start + i)
        .unwrap_or(text.len());
    Some((&text[body_start..body_end], body_start))
}

/// Tracks whether a scan position sits inside a quoted string. Both quote
/// styles are honored so brackets and commas inside strings are ignored.
#[derive(Default)]
struct StringState {
    in_double: bool,
    in_single: bool,
    escaped: bool,
}

impl StringState {
    fn step(&mut self, c: char) {
        if self.escaped {
            self.escaped = false;
            return;
        }
        match c {
            '\\' if self.in_double || self.in_single => self.escaped = true,
            '"' if !self.in_single => self.in_double = !self.in_double,
            '\'' if !self.in_double => self.in_single = !self.in_single,
            _ => {}
        }
    }

    fn outside(&self) -> bool {
        !self.in_double && !self.in_single
    }
}

/// The slice from the first bracket to its balancing closer, or to the
/// end of input when the structure is left open.
fn balanced_slice(s: &str) -> &str {
    let mut state = StringState::default();
    let mut depth = 0i64;
    for (i, c) in s.char_indices() {
        let outside_before = state.outside();
        state.step(c);
        if outside_before && state.outside() {
            match c {
                '{' | '[' => depth += 1,
                '}' | ']' => {
                    depth -= 1;
                    if depth <= 0 {
                        return &s[..i + c.len_utf8()];
                    }
                }
                _ => {}
            }
        }
    }
    s
}

/// Drop commas that directly precede a closing bracket/brace.
fn remove_trailing_commas(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let chars: Vec<char> = s.chars().collect();
    let mut state = StringState::default();
    for (i, &c) in chars.iter().enumerate() {
        let outside_before = state.outside();
        state.step(c);
        if c == ',' && outside_before {
            let next = chars[i + 1..].iter().find(|ch| !ch.is_whitespace());
            if matches!(next, Some('}') | Some(']')) {
                continue;
            }
        }
        out.push(c);
    }
    out
}

/// Rewrite single-quoted strings as double-quoted, re-escaping quotes as
/// needed. Content inside double-quoted strings is left untouched.
fn normalize_quotes(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars().peekable();
    let mut in_double = false;
    let mut in_single = false;
    let mut escaped = false;
    while let Some(c) = chars.next() {
        if escaped {
            escaped = false;
            out.push(c);
            continue;
        }
        match c {
            '\\' if in_double => {
                escaped = true;
                out.push(c);
            }
            '\\' if in_single => {
                // \' inside a single-quoted string becomes a plain quote
                match chars.peek() {
                    Some('\'') => {
                        chars.next();
                        out.push('\'');
                    }
                    _ => out.push(c),
                }
            }
            '"' if in_single => out.push_str("\\\""),
            '"' if !in_single => {
                in_double = !in_double;
                out.push(c);
            }
            '\'' if !in_double => {
                in_single = !in_single;
                out.push('"');
            }
            _ => out.push(c),
        }
    }
    out
}

/// Append closers for any brackets/braces left open. A dangling comma at
/// the end (with trailing whitespace) is removed first.
fn balance_closers(s: &str) -> String {
    let mut state = StringState::default();
    let mut stack = Vec::new();
    for c in s.chars() {
        let outside_before = state.outside();
        state.step(c);
        if outside_before && state.outside() {
            match c {
                '{' => stack.push('}'),
                '[' => stack.push(']'),
                '}' | ']' => {
                    stack.pop();
                }
                _ => {}
            }
        }
    }
    if stack.is_empty() {
        return s.to_string();
    }
    let mut out = s.trim_end().to_string();
    if out.ends_with(',') {
        out.pop();
    }
    while let Some(closer) = stack.pop() {
        out.push(closer);
    }
    out
}
