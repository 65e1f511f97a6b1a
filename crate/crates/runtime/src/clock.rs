//! Run clocks: wall time for live runs, a manually advanced simulated
//! clock for deterministic ones.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use model_gateway::{GatewayError, ModelBackend, ModelRequest, ModelResponse};

/// Monotonic time since the start of a run.
pub trait RunClock: Send + Sync {
    fn now(&self) -> Duration;

    fn now_secs(&self) -> f64 {
        self.now().as_secs_f64()
    }
}

/// Wall-clock time anchored at construction.
pub struct WallClock {
    start: Instant,
}

impl WallClock {
    pub fn new() -> Self {
        Self {
            start: Instant::now(),
        }
    }
}

impl Default for WallClock {
    fn default() -> Self {
        Self::new()
    }
}

impl RunClock for WallClock {
    fn now(&self) -> Duration {
        self.start.elapsed()
    }
}

/// A simulated clock that only moves when advanced. Advancing is
/// monotone; attempts to go backward are ignored.
pub struct SimClock {
    now: Mutex<Duration>,
}

impl SimClock {
    pub fn new() -> Self {
        Self {
            now: Mutex::new(Duration::ZERO),
        }
    }

    pub fn advance(&self, by: Duration) {
        let mut now = self.now.lock().unwrap();
        *now += by;
    }
}

impl Default for SimClock {
    fn default() -> Self {
        Self::new()
    }
}

impl RunClock for SimClock {
    fn now(&self) -> Duration {
        *self.now.lock().unwrap()
    }
}

/// Backend adapter that advances a simulated clock by a fixed tick per
/// completed model call, giving scripted runs a deterministic timeline.
pub struct TickingBackend {
    inner: std::sync::Arc<dyn ModelBackend>,
    clock: std::sync::Arc<SimClock>,
    tick: Duration,
}

impl TickingBackend {
    pub fn new(
        inner: std::sync::Arc<dyn ModelBackend>,
        clock: std::sync::Arc<SimClock>,
        tick: Duration,
    ) -> Self {
        Self { inner, clock, tick }
    }
}

impl ModelBackend for TickingBackend {
    fn id(&self) -> &str {
        self.inner.id()
    }

    fn complete(&self, request: &ModelRequest) -> Result<ModelResponse, GatewayError> {
        let result = self.inner.complete(request);
        self.clock.advance(self.tick);
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sim_clock_advances_monotonically() {
        let c = SimClock::new();
        assert_eq!(c.now(), Duration::ZERO);
        c.advance(Duration::from_millis(500));
        c.advance(Duration::from_millis(500));
        assert_eq!(c.now(), Duration::from_secs(1));
    }
}
