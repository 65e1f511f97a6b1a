//! Agent execution runtime.
//!
//! Hosts the ReAct loop that drives each agent, the tool registry it
//! dispatches against, the in-process message bus agents coordinate
//! through, and the run clock that timestamps everything. The runtime is
//! mission-agnostic: concrete tools are registered by callers.

pub mod bus;
pub mod clock;
pub mod error;
pub mod react;
pub mod state;
pub mod tool;

pub use bus::{AgentMessage, DeliveryReceipt, MessageBus, MessageKind};
pub use clock::{RunClock, SimClock, TickingBackend, WallClock};
pub use error::RuntimeError;
pub use react::{
    run_react, run_react_with, Phase, ReactRun, ReactStep, RunLimits, RunOutcome, ToolCall,
    FINAL_ANSWER_TOOL,
};
pub use state::{AgentState, StateReporter};
pub use tool::{ArgSpec, ToolError, ToolHandler, ToolRegistry, ToolSession, ToolSpec};
