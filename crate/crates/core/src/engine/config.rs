use serde::{Deserialize, Serialize};

use crate::truth::DEFAULT_DECAY;

/// Tunable parameters of the reasoner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Capacity of the event window (W).
    pub window_capacity: usize,
    /// Capacity of the attention queue (Q).
    pub queue_capacity: usize,
    /// Capacity of concept memory (C).
    pub memory_capacity: usize,
    /// Per-step confidence decay used for temporal projection (λ).
    pub decay: f64,
    /// Minimum expectation for a decision to execute (θ).
    pub decision_threshold: f64,
    /// Steps between an operation firing and its anticipation failing (D).
    pub anticipation_deadline: u64,
    /// Steps within which a precondition counts as present (H).
    pub match_horizon: u64,
    /// Chance of a random operation when no decision fires.
    pub motor_babbling: f64,
    /// Decisions whose expectation lies in `[θ, babbling_suppression)` may
    /// still be replaced by a babble, with the babbling chance. Setting this
    /// to θ or below disables the override.
    pub babbling_suppression: f64,
    /// Babbling draws from the first `babbling_ops` registered operations.
    pub babbling_ops: Option<usize>,
    /// Confidence of the implicit evidence added when an anticipation
    /// resolves without an accompanying induction.
    pub anticipation_confidence: f64,
    /// Ceiling on the total evidence a hypothesis retains from observations;
    /// older evidence is scaled down to make room for new evidence.
    pub evidence_cap: f64,
    /// Events processed from the attention queue per cycle.
    pub cycle_budget: usize,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            window_capacity: 20,
            queue_capacity: 512,
            memory_capacity: 4096,
            decay: DEFAULT_DECAY,
            decision_threshold: 0.501,
            anticipation_deadline: 50,
            match_horizon: 20,
            motor_babbling: 0.9,
            babbling_suppression: 0.55,
            babbling_ops: None,
            anticipation_confidence: 0.01,
            evidence_cap: 4.0,
            cycle_budget: 64,
            seed: 0,
        }
    }
}
