//! Computation caps and cooperative cancellation.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use crate::error::{Error, Result};

/// Resource limits shared by every computation over a ring. Exceeding a cap
/// is reported as [`Error::CapExceeded`], never as a wrong answer.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Maximum number of S-pairs treated by a single Groebner computation.
    pub max_pairs: usize,
    /// Maximum sugar degree of an S-pair.
    pub max_degree: u32,
    /// Maximum length of a free resolution.
    pub resolution_len: usize,
    /// Number of Tor/Ext indices checked by the verification pipelines.
    pub tor_window: usize,
    cancel: Option<Arc<AtomicBool>>,
    deadline: Option<Instant>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_pairs: 500_000,
            max_degree: 200,
            resolution_len: 8,
            tor_window: 6,
            cancel: None,
            deadline: None,
        }
    }
}

impl Caps {
    pub fn with_cancel_token(mut self, token: Arc<AtomicBool>) -> Self {
        self.cancel = Some(token);
        self
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    /// Checked between pair reductions.
    pub fn check(&self) -> Result<()> {
        if let Some(c) = &self.cancel {
            if c.load(Ordering::Relaxed) {
                return Err(Error::Cancelled);
            }
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return Err(Error::Cancelled);
            }
        }
        Ok(())
    }
}
