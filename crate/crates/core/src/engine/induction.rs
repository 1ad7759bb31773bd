use crate::narsese::Term;
use crate::truth::{project, TruthValue};

use super::memory::Stamp;
use super::window::{EventWindow, TimedEvent};

/// Confidence of a single unprojected observation, `w = 1`.
const OBSERVATION_CONFIDENCE: f64 = 0.5;

/// Candidate hypothesis produced by temporal induction.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    pub term: Term,
    pub truth: TruthValue,
    pub stamp: Stamp,
}

/// Temporal induction over the window.
///
/// `op_index` locates the executed operation in `window`; `outcome` is the
/// event that followed it. Every non-operation event that precedes the
/// operation by at most `horizon` steps yields `(s &/ op) =/> outcome`, and
/// every ordered pair of them yields `((s1 &/ s2) &/ op) =/> outcome`. The
/// frequency is the outcome's frequency; the confidence is a unit observation
/// projected over the age of the antecedent's first element.
pub fn induce(
    window: &EventWindow,
    op_index: usize,
    outcome: &TimedEvent,
    horizon: u64,
    decay: f64,
) -> Vec<Hypothesis> {
    let Some(op) = window.get(op_index) else {
        return Vec::new();
    };
    let op_name = match &op.term {
        Term::Operation(name) => name.as_str(),
        _ => return Vec::new(),
    };
    if op.time > outcome.time {
        return Vec::new();
    }
    let since = op.time.saturating_sub(horizon);
    let stimuli: Vec<&TimedEvent> = window
        .events()
        .take(op_index)
        .filter(|e| !e.is_operation() && e.time >= since)
        .collect();

    let frequency = outcome.truth.frequency();
    let truth_at = |first: &TimedEvent| {
        let unit = TruthValue::new(frequency, OBSERVATION_CONFIDENCE).expect("valid truth");
        project(unit, outcome.time - first.time, decay)
    };

    let mut out: Vec<Hypothesis> = Vec::new();
    let mut emit = |h: Hypothesis| match out.iter_mut().find(|o| o.term == h.term) {
        // Repeated stimuli: keep the most recent (most confident) derivation.
        Some(existing) if h.truth.confidence() > existing.truth.confidence() => *existing = h,
        Some(_) => {}
        None => out.push(h),
    };

    for s in &stimuli {
        emit(Hypothesis {
            term: Term::procedural(std::slice::from_ref(&s.term), op_name, outcome.term.clone()),
            truth: truth_at(s),
            stamp: Stamp::new([s.stamp, op.stamp, outcome.stamp]),
        });
    }
    for (i, first) in stimuli.iter().enumerate() {
        for second in &stimuli[i + 1..] {
            if first.term == second.term {
                continue;
            }
            emit(Hypothesis {
                term: Term::procedural(
                    &[first.term.clone(), second.term.clone()],
                    op_name,
                    outcome.term.clone(),
                ),
                truth: truth_at(first),
                stamp: Stamp::new([first.stamp, second.stamp, op.stamp, outcome.stamp]),
            });
        }
    }
    out
}
