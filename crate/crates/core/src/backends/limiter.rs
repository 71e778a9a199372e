//! Sliding-window rate limiter with an injectable clock.

use std::collections::VecDeque;
use std::sync::Mutex;
use std::time::Duration;

/// Time source abstraction so rate-limit behavior is testable without
/// real sleeps.
pub trait Clock: Send + Sync {
    /// Monotonic milliseconds since an arbitrary origin.
    fn now_ms(&self) -> u64;
    fn sleep(&self, duration: Duration);
}

/// Wall-clock implementation used in production.
#[derive(Debug, Default)]
pub struct SystemClock {
    origin: std::sync::OnceLock<std::time::Instant>,
}

impl Clock for SystemClock {
    fn now_ms(&self) -> u64 {
        let origin = self.origin.get_or_init(std::time::Instant::now);
        origin.elapsed().as_millis() as u64
    }

    fn sleep(&self, duration: Duration) {
        std::thread::sleep(duration);
    }
}

const WINDOW_MS: u64 = 60_000;

/// Allows at most `limit` acquisitions per sliding 60-second window,
/// sleeping callers past the window boundary when the budget is spent.
pub struct RateLimiter {
    limit: u32,
    clock: Box<dyn Clock>,
    calls: Mutex<VecDeque<u64>>,
}

impl RateLimiter {
    pub fn new(limit: u32, clock: Box<dyn Clock>) -> Self {
        RateLimiter {
            limit,
            clock,
            calls: Mutex::new(VecDeque::new()),
        }
    }

    /// Block (via the clock) until a call slot is available, then claim it.
    pub fn acquire(&self) {
        let mut calls = self.calls.lock().expect("limiter poisoned");
        loop {
            let now = self.clock.now_ms();
            while let Some(&front) = calls.front() {
                if now.saturating_sub(front) >= WINDOW_MS {
                    calls.pop_front();
                } else {
                    break;
                }
            }
            if (calls.len() as u32) < self.limit {
                calls.push_back(now);
                return;
            }
            let wait = WINDOW_MS - now.saturating_sub(*calls.front().expect("nonempty"));
            self.clock.sleep(Duration::from_millis(wait));
        }
    }
}
