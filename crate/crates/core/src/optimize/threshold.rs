use std::fmt;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ThresholdKind {
    /// Largest white-noise weight `F` that still violates: `1 - B/Q`.
    Fidelity,
    /// Smallest visibility `V` that still violates: `B/Q`.
    Visibility,
}

impl fmt::Display for ThresholdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdKind::Fidelity => "fidelity",
            ThresholdKind::Visibility => "visibility",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub quantum: f64,
    pub bound: f64,
    pub threshold: f64,
    pub kind: ThresholdKind,
}

/// Noise threshold of a violation `Q` of a bound `B`, assuming white noise
/// contributes nothing to the left-hand side.
pub fn threshold(quantum: f64, bound: f64, kind: ThresholdKind) -> Result<ThresholdReport> {
    if !(quantum > 0.0) {
        return Err(Error::Invalid(format!("quantum value must be positive, got {quantum}")));
    }
    if quantum <= bound {
        return Err(Error::NoViolation { quantum, bound });
    }
    let visibility = bound / quantum;
    let threshold = match kind {
        ThresholdKind::Visibility => visibility,
        ThresholdKind::Fidelity => 1.0 - visibility,
    };
    Ok(ThresholdReport {
        quantum,
        bound,
        threshold,
        kind,
    })
}
