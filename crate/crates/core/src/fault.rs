//! Deliberate faults for exercising the verification suite.

use std::sync::atomic::{AtomicBool, Ordering};

static TRANSPOSE_DEGREE_SIGN: AtomicBool = AtomicBool::new(false);

/// Makes the transpose keep the degrees of the presentation instead of
/// negating them.
pub fn set_transpose_degree_sign(on: bool) {
    TRANSPOSE_DEGREE_SIGN.store(on, Ordering::SeqCst);
}

pub(crate) fn transpose_degree_sign() -> bool {
    TRANSPOSE_DEGREE_SIGN.load(Ordering::Relaxed)
}
