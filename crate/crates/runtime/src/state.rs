//! Periodic agent state reporting.

use std::sync::Mutex;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use mission_core::{LabeledKeypoint, PixelPoint};

use crate::bus::{AgentMessage, DeliveryReceipt, MessageBus, MessageKind};
use crate::error::RuntimeError;

/// A snapshot of what an agent currently knows about itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentState {
    pub agent_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<PixelPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub last_image_id: Option<String>,
    #[serde(default)]
    pub annotations: Vec<LabeledKeypoint>,
}

impl AgentState {
    pub fn new(agent_id: impl Into<String>) -> Result<Self, RuntimeError> {
        let agent_id = agent_id.into();
        if agent_id.is_empty() {
            return Err(RuntimeError::InvalidSpec("agent_id must be non-empty".into()));
        }
        Ok(Self {
            agent_id,
            position: None,
            last_image_id: None,
            annotations: Vec::new(),
        })
    }

    pub fn to_payload(&self) -> Value {
        serde_json::to_value(self).expect("state serializes")
    }

    pub fn from_payload(payload: &Value) -> Result<Self, RuntimeError> {
        serde_json::from_value(payload.clone())
            .map_err(|e| RuntimeError::InvalidMessage(format!("bad state payload: {e}")))
    }
}

/// Emits `state_report` messages at least once per period.
///
/// The reporter is ticked at loop points (after each agent step); it
/// compares the run clock against the last emission and sends when due.
/// The first tick always emits. A stopped agent simply stops ticking.
pub struct StateReporter {
    recipient: String,
    period: Duration,
    last_emit: Mutex<Option<Duration>>,
}

impl StateReporter {
    pub fn new(recipient: impl Into<String>, period: Duration) -> Result<Self, RuntimeError> {
        if period.is_zero() {
            return Err(RuntimeError::InvalidPeriod);
        }
        Ok(Self {
            recipient: recipient.into(),
            period,
            last_emit: Mutex::new(None),
        })
    }

    /// Emit a report if one is due. Returns the receipt when sent.
    pub fn tick(
        &self,
        bus: &MessageBus,
        state: &AgentState,
    ) -> Result<Option<DeliveryReceipt>, RuntimeError> {
        let now = bus.clock().now();
        let mut last = self.last_emit.lock().unwrap();
        let due = match *last {
            None => true,
            Some(prev) => now.saturating_sub(prev) >= self.period,
        };
        if !due {
            return Ok(None);
        }
        let message = AgentMessage::new(
            state.agent_id.clone(),
            self.recipient.clone(),
            MessageKind::StateReport,
            state.to_payload(),
        )?;
        let receipt = bus.send(message)?;
        *last = Some(now);
        Ok(Some(receipt))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::SimClock;
    use std::sync::Arc;

    #[test]
    fn at_least_one_report_per_period() {
        let clock = Arc::new(SimClock::new());
        let bus = MessageBus::new(clock.clone());
        bus.register_agent("operator");
        let reporter = StateReporter::new("operator", Duration::from_secs(1)).unwrap();
        let state = AgentState::new("uav").unwrap();

        // simulated 3-second run ticked every 0.5s
        let mut sent = 0;
        for _ in 0..6 {
            clock.advance(Duration::from_millis(500));
            if reporter.tick(&bus, &state).unwrap().is_some() {
                sent += 1;
            }
        }
        assert!(sent >= 3, "expected >=3 reports over 3s at period 1s, got {sent}");
        assert_eq!(bus.mailbox_len("operator"), sent);
    }

    #[test]
    fn stopped_agent_reports_nothing_further() {
        let clock = Arc::new(SimClock::new());
        let bus = MessageBus::new(clock.clone());
        bus.register_agent("operator");
        let reporter = StateReporter::new("operator", Duration::from_secs(1)).unwrap();
        let state = AgentState::new("uav").unwrap();
        reporter.tick(&bus, &state).unwrap();
        let before = bus.mailbox_len("operator");
        // agent stops: no more ticks, clock keeps moving
        clock.advance(Duration::from_secs(10));
        assert_eq!(bus.mailbox_len("operator"), before);
    }

    #[test]
    fn state_payload_round_trips() {
        let mut state = AgentState::new("uav").unwrap();
        state.position = Some(PixelPoint::new(12.0, 34.0).unwrap());
        state.last_image_id = Some("img-3".into());
        state.annotations = vec![LabeledKeypoint::new(
            "fire",
            PixelPoint::new(5.0, 6.0).unwrap(),
            None,
            Some(0.8),
        )
        .unwrap()];
        let payload = state.to_payload();
        let back = AgentState::from_payload(&payload).unwrap();
        assert_eq!(back, state);
    }

    #[test]
    fn zero_period_is_rejected() {
        assert!(StateReporter::new("x", Duration::ZERO).is_err());
    }
}
