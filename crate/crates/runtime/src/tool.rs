//! Tool declarations, the per-agent registry, and the dispatch session.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::Value;

use crate::error::RuntimeError;
use crate::react::FINAL_ANSWER_TOOL;

/// A failure inside a tool handler. The text is fed back to the model as
/// an observation so it can correct course.
#[derive(Debug, Clone)]
pub struct ToolError {
    message: String,
}

impl ToolError {
    pub fn msg(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
        }
    }

    pub fn message(&self) -> &str {
        &self.message
    }
}

impl std::fmt::Display for ToolError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for ToolError {}

impl From<String> for ToolError {
    fn from(message: String) -> Self {
        Self { message }
    }
}

impl From<&str> for ToolError {
    fn from(message: &str) -> Self {
        Self {
            message: message.to_string(),
        }
    }
}

/// Handler signature: a JSON args object in, a JSON result out.
pub type ToolHandler = Arc<dyn Fn(&Value) -> Result<Value, ToolError> + Send + Sync>;

/// One declared argument of a tool.
#[derive(Debug, Clone)]
pub struct ArgSpec {
    pub name: String,
    pub semantic: String,
    pub required: bool,
}

/// A named tool: description, argument schema, and its handler.
#[derive(Clone)]
pub struct ToolSpec {
    name: String,
    description: String,
    args: Vec<ArgSpec>,
    handler: ToolHandler,
}

impl ToolSpec {
    pub fn new(
        name: impl Into<String>,
        description: impl Into<String>,
        args: Vec<ArgSpec>,
        handler: ToolHandler,
    ) -> Result<Self, RuntimeError> {
        let name = name.into();
        if name.is_empty() {
            return Err(RuntimeError::InvalidSpec("tool name must be non-empty".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for a in &args {
            if !seen.insert(a.name.as_str()) {
                return Err(RuntimeError::InvalidSpec(format!(
                    "duplicate argument '{}' on tool '{}'",
                    a.name, name
                )));
            }
        }
        Ok(Self {
            name,
            description: description.into(),
            args,
            handler,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn args(&self) -> &[ArgSpec] {
        &self.args
    }
}

impl std::fmt::Debug for ToolSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ToolSpec")
            .field("name", &self.name)
            .field("args", &self.args.iter().map(|a| &a.name).collect::<Vec<_>>())
            .finish()
    }
}

/// The set of tools one agent may call. Registration rejects duplicates.
#[derive(Default, Clone)]
pub struct ToolRegistry {
    tools: BTreeMap<String, ToolSpec>,
}

impl ToolRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, spec: ToolSpec) -> Result<(), RuntimeError> {
        if self.tools.contains_key(spec.name()) {
            return Err(RuntimeError::DuplicateTool(spec.name().to_string()));
        }
        self.tools.insert(spec.name().to_string(), spec);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&ToolSpec> {
        self.tools.get(name)
    }

    pub fn names(&self) -> Vec<String> {
        self.tools.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.tools.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tools.is_empty()
    }

    /// Render the tool catalog for the agent's system prompt.
    pub fn describe_for_prompt(&self) -> String {
        let mut out = String::new();
        for spec in self.tools.values() {
            let args = spec
                .args()
                .iter()
                .map(|a| {
                    if a.required {
                        format!("{}: {}", a.name, a.semantic)
                    } else {
                        format!("{}?: {}", a.name, a.semantic)
                    }
                })
                .collect::<Vec<_>>()
                .join(", ");
            out.push_str(&format!("- {}({}): {}\n", spec.name(), args, spec.description()));
        }
        out
    }
}

/// Stateful dispatch for one mission run. Once `final_answer` executes,
/// every further call is rejected.
pub struct ToolSession<'r> {
    registry: &'r ToolRegistry,
    terminated: bool,
}

impl<'r> ToolSession<'r> {
    pub fn new(registry: &'r ToolRegistry) -> Self {
        Self {
            registry,
            terminated: false,
        }
    }

    pub fn terminated(&self) -> bool {
        self.terminated
    }

    pub fn execute(&mut self, name: &str, args: &Value) -> Result<Value, RuntimeError> {
        if self.terminated {
            return Err(RuntimeError::RunTerminated);
        }
        let spec = self
            .registry
            .get(name)
            .ok_or_else(|| RuntimeError::UnknownTool(name.to_string()))?;
        for arg in spec.args() {
            if arg.required && args.get(&arg.name).is_none() {
                return Err(RuntimeError::ToolFailed {
                    name: name.to_string(),
                    detail: format!("missing required argument '{}'", arg.name),
                });
            }
        }
        let result = (spec.handler)(args).map_err(|e| RuntimeError::ToolFailed {
            name: name.to_string(),
            detail: e.to_string(),
        })?;
        if name == FINAL_ANSWER_TOOL {
            self.terminated = true;
        }
        Ok(result)
    }
}
