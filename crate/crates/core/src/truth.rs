//! Evidence-grounded truth values.
//!
//! A [`TruthValue`] is the `(frequency, confidence)` image of an amount of
//! [`Evidence`]: `f = w⁺ / w` and `c = w / (w + 1)`. Revision pools evidence
//! by adding it in evidence space, which keeps every other operation here a
//! plain function of two numbers.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default per-step confidence decay used by [`project`].
pub const DEFAULT_DECAY: f64 = 0.75;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TruthError {
    #[error("no evidence: total evidence must be positive")]
    NoEvidence,
    #[error("frequency {0} outside [0, 1]")]
    Frequency(f64),
    #[error("confidence {0} outside [0, 1)")]
    Confidence(f64),
    #[error("invalid evidence: positive {positive}, total {total}")]
    Evidence { positive: f64, total: f64 },
}

/// A `(frequency, confidence)` pair with `f ∈ [0, 1]` and `c ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruthValue {
    frequency: f64,
    confidence: f64,
}

impl TruthValue {
    /// Truth of an unannotated input judgment or goal.
    pub const DEFAULT: TruthValue = TruthValue {
        frequency: 1.0,
        confidence: 0.9,
    };

    pub fn new(frequency: f64, confidence: f64) -> Result<Self, TruthError> {
        if !(0.0..=1.0).contains(&frequency) {
            return Err(TruthError::Frequency(frequency));
        }
        if !(0.0..1.0).contains(&confidence) {
            return Err(TruthError::Confidence(confidence));
        }
        Ok(Self {
            frequency,
            confidence,
        })
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn confidence(&self) -> f64 {
        self.confidence
    }

    pub fn expectation(&self) -> f64 {
        expectation(*self)
    }

    /// Clamps floating-point drift back into the valid range.
    fn clamped(frequency: f64, confidence: f64) -> Self {
        Self {
            frequency: frequency.clamp(0.0, 1.0),
            confidence: confidence.clamp(0.0, MAX_CONFIDENCE),
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{:.2}, {:.2}}}", self.frequency, self.confidence)
    }
}

// Largest representable confidence below one.
const MAX_CONFIDENCE: f64 = 1.0 - f64::EPSILON;

/// Positive (`w⁺`) and total (`w`) evidence, `0 ≤ w⁺ ≤ w`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Evidence {
    positive: f64,
    total: f64,
}

/// Componentwise sum of two disjoint bodies of evidence.
impl std::ops::Add for Evidence {
    type Output = Evidence;

    fn add(self, other: Evidence) -> Evidence {
        Evidence {
            positive: self.positive + other.positive,
            total: self.total + other.total,
        }
    }
}

impl Evidence {
    pub const NONE: Evidence = Evidence {
        positive: 0.0,
        total: 0.0,
    };

    pub fn new(positive: f64, total: f64) -> Result<Self, TruthError> {
        let valid = positive.is_finite()
            && total.is_finite()
            && positive >= 0.0
            && total >= 0.0
            && positive <= total * (1.0 + 1e-12);
        if !valid {
            return Err(TruthError::Evidence { positive, total });
        }
        Ok(Self {
            positive: positive.min(total),
            total,
        })
    }

    pub fn positive(&self) -> f64 {
        self.positive
    }

    pub fn negative(&self) -> f64 {
        self.total - self.positive
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0.0
    }

    /// Scales both components by `factor ∈ [0, 1]`; frequency is unchanged.
    pub fn scale(self, factor: f64) -> Evidence {
        let factor = factor.clamp(0.0, 1.0);
        Evidence {
            positive: self.positive * factor,
            total: self.total * factor,
        }
    }

    pub fn truth(&self) -> Result<TruthValue, TruthError> {
        truth_from_evidence(*self)
    }
}

pub fn truth_from_evidence(e: Evidence) -> Result<TruthValue, TruthError> {
    if e.total <= 0.0 {
        return Err(TruthError::NoEvidence);
    }
    Ok(TruthValue::clamped(
        e.positive / e.total,
        e.total / (e.total + 1.0),
    ))
}

pub fn evidence_from_truth(t: TruthValue) -> Evidence {
    let total = t.confidence / (1.0 - t.confidence);
    Evidence {
        positive: t.frequency * total,
        total,
    }
}

/// Pools two truth values by adding their evidence.
///
/// The caller is responsible for the operands resting on disjoint evidence.
/// Two zero-confidence operands revise to `{0.5, 0}`.
pub fn revise(a: TruthValue, b: TruthValue) -> TruthValue {
    let pooled = evidence_from_truth(a) + evidence_from_truth(b);
    truth_from_evidence(pooled).unwrap_or(TruthValue {
        frequency: 0.5,
        confidence: 0.0,
    })
}

/// Deduction: `f = f1·f2`, `c = f1·f2·c1·c2`.
pub fn deduction(a: TruthValue, b: TruthValue) -> TruthValue {
    let f = a.frequency * b.frequency;
    TruthValue::clamped(f, f * a.confidence * b.confidence)
}

/// Decision scalar `c·(f − 0.5) + 0.5`.
pub fn expectation(t: TruthValue) -> f64 {
    t.confidence * (t.frequency - 0.5) + 0.5
}

/// Discounts confidence by `decay^dt`; frequency is unchanged.
pub fn project(t: TruthValue, dt: u64, decay: f64) -> TruthValue {
    let factor = decay.powf(dt as f64);
    TruthValue::clamped(t.frequency, t.confidence * factor)
}
