//! In-process message passing between agents.
//!
//! Each registered agent owns a mailbox; delivery per sender–recipient
//! pair is FIFO and nothing is lost or duplicated under concurrent
//! senders. Timestamps are stamped by the bus from its run clock, which
//! keeps them monotone per sender.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Condvar, Mutex};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::clock::RunClock;
use crate::error::RuntimeError;

/// The four message kinds agents exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MessageKind {
    StateReport,
    TaskAssignment,
    Observation,
    FinalAnswer,
}

/// A typed envelope between two distinct agents.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AgentMessage {
    pub from_agent: String,
    pub to_agent: String,
    pub kind: MessageKind,
    pub payload: Value,
    /// Seconds since run start, stamped at send time.
    pub timestamp: f64,
}

impl AgentMessage {
    pub fn new(
        from_agent: impl Into<String>,
        to_agent: impl Into<String>,
        kind: MessageKind,
        payload: Value,
    ) -> Result<Self, RuntimeError> {
        let from_agent = from_agent.into();
        let to_agent = to_agent.into();
        if from_agent == to_agent {
            return Err(RuntimeError::InvalidMessage(format!(
                "sender and recipient must differ (both '{from_agent}')"
            )));
        }
        Ok(Self {
            from_agent,
            to_agent,
            kind,
            payload,
            timestamp: 0.0,
        })
    }
}

/// Proof of enqueue: global sequence number plus the stamped send time.
#[derive(Debug, Clone, PartialEq)]
pub struct DeliveryReceipt {
    pub to: String,
    pub seq: u64,
    pub timestamp: f64,
}

struct BusInner {
    mailboxes: HashMap<String, VecDeque<AgentMessage>>,
    log: Vec<AgentMessage>,
    seq: u64,
}

/// The shared bus. Safe for concurrent send/receive.
pub struct MessageBus {
    inner: Mutex<BusInner>,
    signal: Condvar,
    clock: Arc<dyn RunClock>,
}

impl MessageBus {
    pub fn new(clock: Arc<dyn RunClock>) -> Self {
        Self {
            inner: Mutex::new(BusInner {
                mailboxes: HashMap::new(),
                log: Vec::new(),
                seq: 0,
            }),
            signal: Condvar::new(),
            clock,
        }
    }

    /// Create a mailbox for `agent_id`. Returns false if it existed.
    pub fn register_agent(&self, agent_id: impl Into<String>) -> bool {
        let mut inner = self.inner.lock().unwrap();
        let id = agent_id.into();
        if inner.mailboxes.contains_key(&id) {
            return false;
        }
        inner.mailboxes.insert(id, VecDeque::new());
        true
    }

    pub fn send(&self, mut message: AgentMessage) -> Result<DeliveryReceipt, RuntimeError> {
        let mut inner = self.inner.lock().unwrap();
        if !inner.mailboxes.contains_key(&message.to_agent) {
            return Err(RuntimeError::UnknownRecipient(message.to_agent));
        }
        message.timestamp = self.clock.now_secs();
        inner.seq += 1;
        let receipt = DeliveryReceipt {
            to: message.to_agent.clone(),
            seq: inner.seq,
            timestamp: message.timestamp,
        };
        inner.log.push(message.clone());
        inner
            .mailboxes
            .get_mut(&message.to_agent)
            .expect("checked above")
            .push_back(message);
        self.signal.notify_all();
        Ok(receipt)
    }

    /// Pop the oldest message for `agent_id`, if any.
    pub fn try_receive(&self, agent_id: &str) -> Option<AgentMessage> {
        let mut inner = self.inner.lock().unwrap();
        inner.mailboxes.get_mut(agent_id)?.pop_front()
    }

    /// Block until a message arrives for `agent_id` or `timeout` passes.
    pub fn receive_timeout(&self, agent_id: &str, timeout: Duration) -> Option<AgentMessage> {
        let deadline = std::time::Instant::now() + timeout;
        let mut inner = self.inner.lock().unwrap();
        loop {
            if let Some(mailbox) = inner.mailboxes.get_mut(agent_id) {
                if let Some(msg) = mailbox.pop_front() {
                    return Some(msg);
                }
            }
            let now = std::time::Instant::now();
            if now >= deadline {
                return None;
            }
            let (guard, result) = self
                .signal
                .wait_timeout(inner, deadline - now)
                .unwrap();
            inner = guard;
            if result.timed_out() {
                if let Some(mailbox) = inner.mailboxes.get_mut(agent_id) {
                    if let Some(msg) = mailbox.pop_front() {
                        return Some(msg);
                    }
                }
                return None;
            }
        }
    }

    pub fn mailbox_len(&self, agent_id: &str) -> usize {
        let inner = self.inner.lock().unwrap();
        inner.mailboxes.get(agent_id).map_or(0, VecDeque::len)
    }

    /// Every message ever sent, in send order — the trace export reads this.
    pub fn log_snapshot(&self) -> Vec<AgentMessage> {
        self.inner.lock().unwrap().log.clone()
    }

    pub fn clock(&self) -> &Arc<dyn RunClock> {
        &self.clock
    }
}
