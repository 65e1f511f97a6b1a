/// Errors raised by the runtime itself (tool-level failures are fed back
/// into the reasoning loop instead, see `react`).
#[derive(Debug, thiserror::Error)]
pub enum RuntimeError {
    #[error("tool '{0}' is already registered")]
    DuplicateTool(String),

    #[error("unknown recipient '{0}'")]
    UnknownRecipient(String),

    #[error("unknown tool '{0}'")]
    UnknownTool(String),

    #[error("run already terminated by final_answer")]
    RunTerminated,

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("tool '{name}' failed: {detail}")]
    ToolFailed { name: String, detail: String },

    #[error("message invalid: {0}")]
    InvalidMessage(String),

    #[error("report period must be positive")]
    InvalidPeriod,

    #[error(transparent)]
    Gateway(#[from] model_gateway::GatewayError),

    #[error(transparent)]
    Core(#[from] mission_core::CoreError),
}
