//! The sensorimotor reasoner.
//!
//! Input events are stamped, pass through the attention queue and land in the
//! sliding event window. An event that follows an executed operation triggers
//! temporal induction, whose hypotheses are revised into concept memory.
//! Goals are answered by goal deduction over stored hypotheses whose
//! preconditions were recently observed, falling back to motor babbling.
//! Every executed operation leaves anticipations behind; a prediction that is
//! not confirmed before its deadline adds negative evidence.

mod anticipation;
mod config;
mod decision;
mod induction;
mod memory;
mod queue;
mod window;

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::narsese::{Directive, Occurrence, ParsedInput, Punctuation, Sentence, Term};
use crate::truth::{deduction, evidence_from_truth, expectation, project, Evidence, TruthValue};

pub use anticipation::{Anticipation, Resolution};
pub use config::EngineConfig;
pub use decision::{best_candidate, Candidate, Decision};
pub use induction::{induce, Hypothesis};
pub use memory::{
    ConceptMemory, EvidenceSource, MemoryEntry, MemoryStats, RevisionKind, RevisionOutcome, Stamp,
};
pub use queue::CyclingQueue;
pub use window::{EventWindow, TimedEvent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("goal `{0}` needs operations but none are registered")]
    UnknownOperation(String),
}

/// An operation the engine performed, with the decision behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct Execution {
    pub op: String,
    pub time: u64,
    pub decision: Decision,
}

/// Observable side effects, drained with [`Engine::take_trace`].
#[derive(Debug, Clone, PartialEq)]
pub enum TraceEvent {
    Executed(Execution),
    Derived { term: Term, truth: TruthValue },
    Revised {
        term: Term,
        truth: TruthValue,
        kind: RevisionKind,
    },
    Anticipated(Anticipation),
    AnticipationResolved {
        implication: Term,
        resolution: Resolution,
    },
    CapacityEviction(Term),
}

#[derive(Debug, Clone)]
enum QueueItem {
    Event(TimedEvent),
    Goal { term: Term, desire: TruthValue },
    Derived(Hypothesis),
    Belief(Hypothesis),
}

/// A stored hypothesis as exposed to callers.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisState {
    pub term: Term,
    pub truth: TruthValue,
    pub evidence: Evidence,
    pub use_count: u64,
}

pub struct Engine {
    config: EngineConfig,
    clock: u64,
    window: EventWindow,
    queue: CyclingQueue<QueueItem>,
    memory: ConceptMemory,
    anticipations: Vec<Anticipation>,
    ops: BTreeMap<usize, String>,
    rng: ChaCha8Rng,
    next_stamp: u64,
    trace: Vec<TraceEvent>,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Engine {
            clock: 0,
            window: EventWindow::new(config.window_capacity),
            queue: CyclingQueue::new(config.queue_capacity, config.decay),
            memory: ConceptMemory::new(config.memory_capacity, config.evidence_cap),
            anticipations: Vec::new(),
            ops: BTreeMap::new(),
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            next_stamp: 0,
            trace: Vec::new(),
            config,
        }
    }

    /// Engine with the two-operation setup used by the operant tasks.
    pub fn with_ops(config: EngineConfig, ops: &[&str]) -> Self {
        let mut engine = Engine::new(config);
        for (i, op) in ops.iter().enumerate() {
            engine.register_op(i + 1, op);
        }
        engine
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn window(&self) -> &EventWindow {
        &self.window
    }

    pub fn queue_len(&self) -> usize {
        self.queue.len()
    }

    pub fn memory(&self) -> &ConceptMemory {
        &self.memory
    }

    pub fn anticipations(&self) -> &[Anticipation] {
        &self.anticipations
    }

    /// Registered operation names in index order.
    pub fn ops(&self) -> Vec<&str> {
        self.ops.values().map(String::as_str).collect()
    }

    pub fn is_registered(&self, op: &str) -> bool {
        self.ops.values().any(|o| o == op)
    }

    pub fn register_op(&mut self, index: usize, name: &str) {
        self.ops.insert(index, name.to_string());
    }

    pub fn take_trace(&mut self) -> Vec<TraceEvent> {
        std::mem::take(&mut self.trace)
    }

    pub fn apply_directive(&mut self, directive: &Directive) {
        match directive {
            Directive::SetOpName { index, name } => self.register_op(*index, name),
            Directive::BabblingOps(n) => self.config.babbling_ops = Some(*n),
            Directive::MotorBabbling(p) => self.config.motor_babbling = *p,
            Directive::Decay(d) => {
                self.config.decay = *d;
                self.queue.set_decay(*d);
            }
            Directive::Threshold(t) => self.config.decision_threshold = *t,
            Directive::Deadline(d) => self.config.anticipation_deadline = *d,
            Directive::Horizon(h) => self.config.match_horizon = *h,
            Directive::Seed(s) => {
                self.config.seed = *s;
                self.rng = ChaCha8Rng::seed_from_u64(*s);
            }
            Directive::EvidenceCap(c) => {
                self.config.evidence_cap = *c;
                self.memory.set_evidence_cap(*c);
            }
            Directive::Suppression(s) => self.config.babbling_suppression = *s,
            // Verbosity belongs to the front end.
            Directive::Volume(_) => {}
        }
    }

    /// Line semantics shared by the shell and the laboratory: a sentence is
    /// ingested and followed by one cycle, a step count advances the clock.
    pub fn apply(&mut self, input: &ParsedInput) -> Result<Vec<Execution>, EngineError> {
        match input {
            ParsedInput::Sentence(sentence) => {
                let mut out = self.ingest(sentence)?;
                out.extend(self.step(1));
                Ok(out)
            }
            ParsedInput::StepCount(n) => Ok(self.step(*n)),
            ParsedInput::Config(directive) => {
                self.apply_directive(directive);
                Ok(Vec::new())
            }
            ParsedInput::Comment => Ok(Vec::new()),
        }
    }

    fn fresh_stamp(&mut self) -> u64 {
        let id = self.next_stamp;
        self.next_stamp += 1;
        id
    }

    /// Feeds one sentence at the current time and processes it. Returns the
    /// operations executed in response.
    pub fn ingest(&mut self, sentence: &Sentence) -> Result<Vec<Execution>, EngineError> {
        let truth = sentence.truth();
        match (sentence.punctuation, sentence.occurrence) {
            (Punctuation::Goal, _) => {
                if self.ops.is_empty() {
                    return Err(EngineError::UnknownOperation(sentence.term.to_string()));
                }
                let priority = truth.expectation();
                self.enqueue(
                    QueueItem::Goal {
                        term: sentence.term.clone(),
                        desire: truth,
                    },
                    priority,
                );
            }
            (Punctuation::Judgment, Occurrence::Now) => {
                let event = TimedEvent {
                    term: sentence.term.clone(),
                    truth,
                    time: self.clock,
                    stamp: self.fresh_stamp(),
                };
                self.enqueue(QueueItem::Event(event), truth.expectation());
            }
            (Punctuation::Judgment, Occurrence::Eternal) => {
                // Only procedural knowledge is stored; declarative beliefs
                // have no consumer without declarative inference.
                if sentence.term.as_implication().is_none() {
                    return Ok(Vec::new());
                }
                let belief = Hypothesis {
                    term: sentence.term.clone(),
                    truth,
                    stamp: Stamp::new([self.fresh_stamp()]),
                };
                self.enqueue(QueueItem::Belief(belief), truth.expectation());
            }
        }
        Ok(self.cycle())
    }

    /// Advances the clock by `n` steps, failing overdue anticipations.
    pub fn step(&mut self, n: u64) -> Vec<Execution> {
        let mut out = Vec::new();
        for _ in 0..n {
            self.clock += 1;
            self.expire_anticipations();
            out.extend(self.cycle());
        }
        out
    }

    fn enqueue(&mut self, item: QueueItem, priority: f64) {
        if let Some(QueueItem::Derived(h) | QueueItem::Belief(h)) =
            self.queue.push(item, priority, self.clock)
        {
            self.trace.push(TraceEvent::CapacityEviction(h.term));
        }
    }

    fn cycle(&mut self) -> Vec<Execution> {
        let mut out = Vec::new();
        for _ in 0..self.config.cycle_budget {
            let Some(item) = self.queue.pop(self.clock) else {
                break;
            };
            match item {
                QueueItem::Event(event) => self.process_event(event),
                QueueItem::Goal { term, desire } => {
                    if let Some(execution) = self.process_goal(&term, desire) {
                        out.push(execution);
                    }
                }
                QueueItem::Derived(h) | QueueItem::Belief(h) => {
                    let evidence = evidence_from_truth(h.truth);
                    if !evidence.is_empty() {
                        self.revise_into_memory(h.term, evidence, h.stamp, EvidenceSource::Observation);
                    }
                }
            }
        }
        out
    }

    fn process_event(&mut self, event: TimedEvent) {
        if event.is_operation() {
            self.record_operation(event);
            return;
        }

        let since = self.clock.saturating_sub(self.config.match_horizon);
        let mut derived = BTreeSet::new();
        if let Some(op_index) = self.window.last_operation_since(since) {
            let hypotheses = induce(
                &self.window,
                op_index,
                &event,
                self.config.match_horizon,
                self.config.decay,
            );
            for h in hypotheses {
                derived.insert(h.term.clone());
                self.trace.push(TraceEvent::Derived {
                    term: h.term.clone(),
                    truth: h.truth,
                });
                let priority = h.truth.expectation();
                self.enqueue(QueueItem::Derived(h), priority);
            }
        }

        // Resolve predictions of this event. Induction above already carries
        // the evidence for hypotheses it re-derived.
        let confirmed = event.truth.frequency() >= 0.5;
        let (resolved, pending): (Vec<_>, Vec<_>) = std::mem::take(&mut self.anticipations)
            .into_iter()
            .partition(|a| a.predicted == event.term && a.deadline >= self.clock);
        self.anticipations = pending;
        for a in resolved {
            let resolution = if confirmed {
                Resolution::Confirmed
            } else {
                Resolution::Failed
            };
            if !derived.contains(&a.implication) {
                self.implicit_evidence(&a.implication, confirmed);
            }
            self.trace.push(TraceEvent::AnticipationResolved {
                implication: a.implication,
                resolution,
            });
        }

        self.window.push(event);
    }

    fn process_goal(&mut self, term: &Term, desire: TruthValue) -> Option<Execution> {
        let decision = self.decide_for(term, desire);
        let op = decision.operation()?.to_string();
        Some(self.execute(op, decision))
    }

    /// Decides how to answer a goal sentence, executing the chosen operation.
    pub fn decide(&mut self, goal: &Sentence) -> Decision {
        debug_assert!(goal.is_goal(), "decide expects a goal");
        let decision = self.decide_for(&goal.term, goal.truth());
        if let Some(op) = decision.operation() {
            let op = op.to_string();
            self.execute(op, decision.clone());
        }
        decision
    }

    /// Scores every stored hypothesis that predicts `goal` and whose
    /// preconditions occurred within the match horizon.
    pub fn candidates(&self, goal: &Term, desire: TruthValue) -> Vec<Candidate> {
        let since = self.clock.saturating_sub(self.config.match_horizon);
        let mut out = Vec::new();
        for (term, entry) in self.memory.iter() {
            let Some((preconditions, op, consequent)) = term.procedural_parts() else {
                continue;
            };
            if consequent != goal || !self.is_registered(op) {
                continue;
            }
            let age = if preconditions.is_empty() {
                0
            } else {
                let Some(indices) =
                    self.window
                        .match_sequence(&preconditions, since, self.clock, self.window.len())
                else {
                    continue;
                };
                let last = self.window.get(indices[indices.len() - 1]).expect("matched index");
                self.clock - last.time
            };
            let projected = project(entry.truth(), age, self.config.decay);
            let desired = deduction(desire, projected);
            out.push(Candidate {
                implication: term.clone(),
                op: op.to_string(),
                expectation: expectation(desired),
                confidence: entry.truth().confidence(),
                created: entry.created,
            });
        }
        out
    }

    fn decide_for(&mut self, goal: &Term, desire: TruthValue) -> Decision {
        let candidates = self.candidates(goal, desire);
        let best = best_candidate(&candidates)
            .filter(|c| c.expectation >= self.config.decision_threshold)
            .cloned();
        if let Some(best) = &best {
            if best.expectation >= self.config.babbling_suppression {
                return self.commit(best);
            }
        }
        let ops: Vec<String> = self.ops.values().cloned().collect();
        let limit = self
            .config
            .babbling_ops
            .map_or(ops.len(), |n| n.min(ops.len()));
        if limit > 0 && self.rng.gen_bool(self.config.motor_babbling) {
            let op = ops[self.rng.gen_range(0..limit)].clone();
            return Decision::Babble { op };
        }
        match &best {
            Some(best) => self.commit(best),
            None => Decision::NoAction,
        }
    }

    fn commit(&mut self, best: &Candidate) -> Decision {
        self.memory.touch(&best.implication, self.clock);
        Decision::Execute {
            op: best.op.clone(),
            implication: best.implication.clone(),
            expectation: best.expectation,
        }
    }

    fn execute(&mut self, op: String, decision: Decision) -> Execution {
        let event = TimedEvent {
            term: Term::op(&op),
            truth: TruthValue::DEFAULT,
            time: self.clock,
            stamp: self.fresh_stamp(),
        };
        self.record_operation(event);
        let execution = Execution {
            op,
            time: self.clock,
            decision,
        };
        self.trace.push(TraceEvent::Executed(execution.clone()));
        execution
    }

    /// Puts an operation event into the window and anticipates the
    /// consequents of every hypothesis it just fired.
    fn record_operation(&mut self, event: TimedEvent) {
        let op_name = match &event.term {
            Term::Operation(name) => name.clone(),
            _ => unreachable!("record_operation takes operation events"),
        };
        let since = self.clock.saturating_sub(self.config.match_horizon);
        let fired: Vec<Term> = self
            .memory
            .iter()
            .filter(|(_, entry)| entry.truth().frequency() > 0.0)
            .filter_map(|(term, _)| {
                let (preconditions, op, _) = term.procedural_parts()?;
                if op != op_name || preconditions.is_empty() {
                    return None;
                }
                self.window
                    .match_sequence(&preconditions, since, self.clock, self.window.len())
                    .map(|_| term.clone())
            })
            .collect();
        for term in fired {
            self.register_anticipation(&term, self.clock);
        }
        self.window.push(event);
    }

    /// Expects the consequent of `implication` within the anticipation
    /// deadline. A hypothesis has at most one pending anticipation.
    pub fn register_anticipation(&mut self, implication: &Term, fired_at: u64) -> Option<Anticipation> {
        let (_, consequent) = implication.as_implication()?;
        if self.anticipations.iter().any(|a| &a.implication == implication) {
            return None;
        }
        let anticipation = Anticipation {
            implication: implication.clone(),
            predicted: consequent.clone(),
            created: fired_at,
            deadline: fired_at + self.config.anticipation_deadline,
        };
        self.anticipations.push(anticipation.clone());
        self.trace.push(TraceEvent::Anticipated(anticipation.clone()));
        Some(anticipation)
    }

    fn expire_anticipations(&mut self) {
        let now = self.clock;
        let (expired, pending): (Vec<_>, Vec<_>) = std::mem::take(&mut self.anticipations)
            .into_iter()
            .partition(|a| a.deadline < now);
        self.anticipations = pending;
        for a in expired {
            self.implicit_evidence(&a.implication, false);
            self.trace.push(TraceEvent::AnticipationResolved {
                implication: a.implication,
                resolution: Resolution::Failed,
            });
        }
    }

    fn implicit_evidence(&mut self, implication: &Term, positive: bool) {
        let truth = TruthValue::new(
            if positive { 1.0 } else { 0.0 },
            self.config.anticipation_confidence,
        )
        .expect("anticipation confidence in [0, 1)");
        let evidence = evidence_from_truth(truth);
        if evidence.is_empty() {
            return;
        }
        let stamp = Stamp::new([self.fresh_stamp()]);
        self.revise_into_memory(implication.clone(), evidence, stamp, EvidenceSource::Anticipation);
    }

    /// Merges evidence for a hypothesis and returns its stored truth.
    pub fn revise_into_memory(
        &mut self,
        term: Term,
        evidence: Evidence,
        stamp: Stamp,
        source: EvidenceSource,
    ) -> RevisionOutcome {
        let outcome = self
            .memory
            .revise(term.clone(), evidence, stamp, source, self.clock);
        if let Some(evicted) = &outcome.evicted {
            self.anticipations.retain(|a| &a.implication != evicted);
            self.trace.push(TraceEvent::CapacityEviction(evicted.clone()));
        }
        self.trace.push(TraceEvent::Revised {
            term,
            truth: outcome.truth,
            kind: outcome.kind,
        });
        outcome
    }

    /// Stored truth of a hypothesis, without touching usage statistics.
    pub fn query_hypothesis(&self, pattern: &Term) -> Option<TruthValue> {
        self.memory.truth(pattern)
    }

    /// All stored hypotheses in term order.
    pub fn hypotheses(&self) -> Vec<HypothesisState> {
        self.memory
            .iter()
            .map(|(term, e)| HypothesisState {
                term: term.clone(),
                truth: e.truth(),
                evidence: e.evidence,
                use_count: e.use_count,
            })
            .collect()
    }
}
