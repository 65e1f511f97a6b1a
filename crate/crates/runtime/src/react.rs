//! The reactive reasoning loop.
//!
//! Each iteration sends the query plus the transcript so far to the
//! model, parses the reply for a single action object of the form
//! `{"action": "<tool>", "args": {...}}`, executes the tool, and feeds
//! the result back in. The loop ends when the `final_answer` tool runs
//! or the step budget is exhausted.
//!
//! Actions are structured tool calls, never generated code: the model is
//! instructed to emit one JSON action per turn and everything else it
//! writes is kept as reasoning text in the trace.

use model_gateway::{extract_structured, ModelBackend, ModelMessage, ModelRequest, Role};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use mission_core::MissionQuery;

use crate::error::RuntimeError;
use crate::tool::{ToolRegistry, ToolSession};

/// Tool name that terminates a run.
pub const FINAL_ANSWER_TOOL: &str = "final_answer";

/// Annotation of what a trace step was doing.
///
/// Tool executions are always logged as `Act` steps. The model turn that
/// chose the action is logged separately, tagged by the action's kind:
/// an image fetch is an `Observe` turn, a describe tool a `Describe`
/// turn, a planning/ordering tool a `Decide` turn, and anything else —
/// including turns with no action at all — plain `Reason`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Observe,
    Describe,
    Reason,
    Decide,
    Act,
}

/// A parsed tool invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolCall {
    pub name: String,
    pub args: Value,
}

/// One entry of a run trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReactStep {
    pub phase: Phase,
    pub content: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tool_call: Option<ToolCall>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tool_result: Option<String>,
    pub step_index: usize,
}

/// Loop budget and sampling parameters.
#[derive(Debug, Clone)]
pub struct RunLimits {
    /// Maximum model turns (and therefore tool executions) per run.
    pub max_steps: usize,
    pub temperature: f64,
    pub max_tokens: u32,
    pub model: String,
}

impl Default for RunLimits {
    fn default() -> Self {
        Self {
            max_steps: 8,
            temperature: 0.5,
            max_tokens: 1024,
            model: "qwen2.5-vl-32b-instruct".to_string(),
        }
    }
}

/// How a run ended.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RunOutcome {
    /// `final_answer` was invoked with this value.
    Answer { value: Value },
    /// The step budget ran out before `final_answer`.
    BudgetExhausted,
    /// A hard failure stopped the loop (the trace is still valid).
    Aborted { error: String },
}

/// A finished run: outcome plus the full step trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReactRun {
    pub agent_id: String,
    pub outcome: RunOutcome,
    pub trace: Vec<ReactStep>,
    pub model_calls: usize,
}

impl ReactRun {
    pub fn answer(&self) -> Option<&Value> {
        match &self.outcome {
            RunOutcome::Answer { value } => Some(value),
            _ => None,
        }
    }

    pub fn act_steps(&self) -> usize {
        self.trace.iter().filter(|s| s.phase == Phase::Act).count()
    }
}

/// Run the reactive loop for one agent.
pub fn run_react(
    agent_id: &str,
    query: &MissionQuery,
    registry: &ToolRegistry,
    gateway: &dyn ModelBackend,
    limits: &RunLimits,
) -> Result<ReactRun, RuntimeError> {
    run_react_with(agent_id, query, registry, gateway, limits, &mut |_| {})
}

/// Like [`run_react`], invoking `on_step` after every appended step —
/// used to drive periodic state reports and trace streaming.
pub fn run_react_with(
    agent_id: &str,
    query: &MissionQuery,
    registry: &ToolRegistry,
    gateway: &dyn ModelBackend,
    limits: &RunLimits,
    on_step: &mut dyn FnMut(&ReactStep),
) -> Result<ReactRun, RuntimeError> {
    if registry.get(FINAL_ANSWER_TOOL).is_none() {
        return Err(RuntimeError::InvalidSpec(format!(
            "registry must contain a '{FINAL_ANSWER_TOOL}' tool"
        )));
    }
    if limits.max_steps == 0 {
        return Err(RuntimeError::InvalidSpec("max_steps must be >= 1".into()));
    }

    let system_prompt = build_system_prompt(agent_id, registry);
    let mut session = ToolSession::new(registry);
    let mut trace: Vec<ReactStep> = Vec::new();
    let mut transcript: Vec<(String, String)> = Vec::new(); // (assistant, observation)
    let mut failure_counts: std::collections::HashMap<String, u32> = std::collections::HashMap::new();
    let mut model_calls = 0usize;
    let mut push = |trace: &mut Vec<ReactStep>, mut step: ReactStep| {
        step.step_index = trace.len();
        on_step(&step);
        trace.push(step);
    };

    for _turn in 0..limits.max_steps {
        let messages = build_messages(&system_prompt, query, &transcript)?;
        let request = ModelRequest::new(
            messages,
            limits.temperature,
            limits.max_tokens,
            limits.model.clone(),
        )?;
        let response = match gateway.complete(&request) {
            Ok(r) => r,
            Err(e) => {
                return Ok(ReactRun {
                    agent_id: agent_id.to_string(),
                    outcome: RunOutcome::Aborted { error: e.to_string() },
                    trace,
                    model_calls,
                });
            }
        };
        model_calls += 1;

        let Some(call) = parse_action(&response.text) else {
            push(&mut trace, ReactStep {
                phase: Phase::Reason,
                content: response.text.clone(),
                tool_call: None,
                tool_result: None,
                step_index: 0,
            });
            transcript.push((
                response.text,
                "No action found. Reply with exactly one JSON action object.".to_string(),
            ));
            continue;
        };

        push(&mut trace, ReactStep {
            phase: classify_phase(&call.name),
            content: response.text.clone(),
            tool_call: None,
            tool_result: None,
            step_index: 0,
        });

        match session.execute(&call.name, &call.args) {
            Ok(result) => {
                let summary = summarize(&result);
                let terminal = call.name == FINAL_ANSWER_TOOL;
                push(&mut trace, ReactStep {
                    phase: Phase::Act,
                    content: format!("{}({})", call.name, compact(&call.args)),
                    tool_call: Some(call.clone()),
                    tool_result: Some(summary.clone()),
                    step_index: 0,
                });
                if terminal {
                    return Ok(ReactRun {
                        agent_id: agent_id.to_string(),
                        outcome: RunOutcome::Answer { value: result },
                        trace,
                        model_calls,
                    });
                }
                transcript.push((response.text, format!("Result of {}: {}", call.name, summary)));
            }
            Err(err) => {
                let (name, detail) = match err {
                    RuntimeError::ToolFailed { name, detail } => (name, detail),
                    RuntimeError::UnknownTool(name) => {
                        let detail = format!("no tool named '{name}' is registered");
                        (name, detail)
                    }
                    other => {
                        return Ok(ReactRun {
                            agent_id: agent_id.to_string(),
                            outcome: RunOutcome::Aborted { error: other.to_string() },
                            trace,
                            model_calls,
                        });
                    }
                };
                let failures = failure_counts.entry(name.clone()).or_insert(0);
                *failures += 1;
                push(&mut trace, ReactStep {
                    phase: Phase::Act,
                    content: format!("{}({})", call.name, compact(&call.args)),
                    tool_call: Some(call.clone()),
                    tool_result: Some(format!("error: {detail}")),
                    step_index: 0,
                });
                if *failures > 1 {
                    return Ok(ReactRun {
                        agent_id: agent_id.to_string(),
                        outcome: RunOutcome::Aborted {
                            error: format!("tool '{name}' failed twice: {detail}"),
                        },
                        trace,
                        model_calls,
                    });
                }
                transcript.push((
                    response.text,
                    format!("Tool {name} failed: {detail}. Re-evaluate and try a different action."),
                ));
            }
        }
    }

    Ok(ReactRun {
        agent_id: agent_id.to_string(),
        outcome: RunOutcome::BudgetExhausted,
        trace,
        model_calls,
    })
}

/// Phase tag for the model turn that selected this tool.
fn classify_phase(tool_name: &str) -> Phase {
    if tool_name.starts_with("read_image") {
        Phase::Observe
    } else if tool_name.contains("describe") {
        Phase::Describe
    } else if tool_name.contains("order") || tool_name.contains("plan") {
        Phase::Decide
    } else {
        Phase::Reason
    }
}

/// Find the action object in model text. Accepts `action`/`tool` for the
/// name and `args`/`arguments` for the argument map.
fn parse_action(text: &str) -> Option<ToolCall> {
    let extracted = extract_structured(text).ok()?;
    let obj = extracted.value.as_object()?;
    let name = obj
        .get("action")
        .or_else(|| obj.get("tool"))?
        .as_str()?
        .to_string();
    let args = obj
        .get("args")
        .or_else(|| obj.get("arguments"))
        .cloned()
        .unwrap_or_else(|| Value::Object(Default::default()));
    Some(ToolCall { name, args })
}

fn build_system_prompt(agent_id: &str, registry: &ToolRegistry) -> String {
    format!(
        "You are agent '{agent_id}'. Work the mission step by step using the tools below.\n\
         Tools:\n{}\n\
         Every turn, reply with exactly one action as a JSON object:\n\
         {{\"action\": \"<tool name>\", \"args\": {{...}}}}\n\
         Brief reasoning before the JSON is allowed. When the mission is
         complete, call {{\"action\": \"final_answer\", \"args\": {{\"answer\": <result>}}}}.",
        registry.describe_for_prompt()
    )
}

fn build_messages(
    system_prompt: &str,
    query: &MissionQuery,
    transcript: &[(String, String)],
) -> Result<Vec<ModelMessage>, RuntimeError> {
    let mut messages = vec![
        ModelMessage::text(Role::System, system_prompt),
        ModelMessage::text(
            Role::User,
            format!("Mission query: {}\nSample: {}", query.text(), query.sample_id()),
        ),
    ];
    for (assistant, observation) in transcript {
        messages.push(ModelMessage::text(Role::Assistant, assistant));
        messages.push(ModelMessage::text(Role::User, observation));
    }
    Ok(messages)
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

/// Shorten a tool result for transcript/trace purposes.
fn summarize(v: &Value) -> String {
    const LIMIT: usize = 600;
    let s = compact(v);
    if s.len() <= LIMIT {
        s
    } else {
        let cut: String = s.chars().take(LIMIT).collect();
        format!("{cut}... ({} bytes total)", s.len())
    }
}
