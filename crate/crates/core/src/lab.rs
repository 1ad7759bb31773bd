//! Operant-conditioning laboratory.
//!
//! Encodes the simple discrimination, changing contingencies and conditional
//! discrimination tasks, runs them against an [`Engine`] through the same
//! line protocol a researcher would type, scores every trial and samples the
//! target hypotheses after each block.
//!
//! A trial is fed as: one stimulus per step, `G! :|:`, up to
//! [`RESPONSE_WINDOW`] steps for a response, feedback (training only), then
//! [`INTER_TRIAL_STEPS`] steps.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Decision, Engine, EngineConfig, EngineError, Execution};
use crate::narsese::{parse_line, Directive, ParsedInput, Sentence, Term};

pub const TRIALS_PER_BLOCK: usize = 12;
/// Steps after the goal within which an operation counts as the response.
pub const RESPONSE_WINDOW: u64 = 8;
pub const INTER_TRIAL_STEPS: u64 = 100;

pub const GOAL: &str = "G! :|:";
pub const POSITIVE_FEEDBACK: &str = "G. :|:";
pub const NEGATIVE_FEEDBACK: &str = "G. :|: {0.0 0.9}";

/// Configuration block entered before every session.
pub const CONFIG_BLOCK: [&str; 5] = [
    "*babblingops=2",
    "*motorbabbling=0.9",
    "*setopname 1 ^left",
    "*setopname 2 ^right",
    "*volume=100",
];

#[derive(Debug, Error)]
pub enum LabError {
    #[error("engine fault: {0}")]
    EngineFault(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("invalid task id {0}; expected 1, 2 or 3")]
    UnknownTask(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Task {
    SimpleDiscrimination,
    ChangingContingencies,
    ConditionalDiscrimination,
}

impl Task {
    pub const ALL: [Task; 3] = [
        Task::SimpleDiscrimination,
        Task::ChangingContingencies,
        Task::ConditionalDiscrimination,
    ];

    pub fn id(self) -> u8 {
        match self {
            Task::SimpleDiscrimination => 1,
            Task::ChangingContingencies => 2,
            Task::ConditionalDiscrimination => 3,
        }
    }

    /// Stimulus layouts, indexed by condition id.
    pub fn conditions(self) -> Vec<Vec<Term>> {
        let p = Term::property;
        match self {
            Task::SimpleDiscrimination | Task::ChangingContingencies => vec![
                vec![p("A1", "left"), p("A2", "right")],
                vec![p("A2", "left"), p("A1", "right")],
            ],
            // Sample first, then the left and right comparisons.
            Task::ConditionalDiscrimination => vec![
                vec![p("A1", "sample"), p("B1", "left"), p("B2", "right")],
                vec![p("A1", "sample"), p("B2", "left"), p("B1", "right")],
                vec![p("A2", "sample"), p("B1", "left"), p("B2", "right")],
                vec![p("A2", "sample"), p("B2", "left"), p("B1", "right")],
            ],
        }
    }

    /// Phase ladder of the task.
    pub fn phases(self) -> Vec<PhaseSpec> {
        let table = |ops: &[&str]| -> BTreeMap<u8, String> {
            ops.iter()
                .enumerate()
                .map(|(i, op)| (i as u8, op.to_string()))
                .collect()
        };
        let phase = |kind, index, blocks, contingency: &BTreeMap<u8, String>| PhaseSpec {
            kind,
            index,
            blocks,
            feedback: kind == PhaseKind::Training,
            contingency: contingency.clone(),
        };
        use PhaseKind::*;
        match self {
            Task::SimpleDiscrimination => {
                let c = table(&["left", "right"]);
                vec![
                    phase(Baseline, 0, 3, &c),
                    phase(Training, 0, 3, &c),
                    phase(Testing, 0, 3, &c),
                ]
            }
            Task::ChangingContingencies => {
                let first = table(&["left", "right"]);
                let reversed = table(&["right", "left"]);
                vec![
                    phase(Baseline, 0, 2, &first),
                    phase(Training, 1, 4, &first),
                    phase(Testing, 1, 2, &first),
                    phase(Training, 2, 4, &reversed),
                    phase(Testing, 2, 2, &reversed),
                ]
            }
            Task::ConditionalDiscrimination => {
                let c = table(&["left", "right", "right", "left"]);
                vec![
                    phase(Baseline, 0, 3, &c),
                    phase(Training, 0, 6, &c),
                    phase(Testing, 0, 3, &c),
                ]
            }
        }
    }

    /// Hypotheses whose truth is tracked after every block.
    pub fn targets(self) -> Vec<Term> {
        let p = Term::property;
        let g = || Term::atom("G");
        match self {
            Task::SimpleDiscrimination => vec![
                Term::procedural(&[p("A1", "left")], "left", g()),
                Term::procedural(&[p("A1", "right")], "right", g()),
            ],
            Task::ChangingContingencies => vec![
                Term::procedural(&[p("A1", "left")], "left", g()),
                Term::procedural(&[p("A2", "right")], "right", g()),
            ],
            Task::ConditionalDiscrimination => vec![
                Term::procedural(&[p("A1", "sample"), p("B1", "left")], "left", g()),
                Term::procedural(&[p("A1", "sample"), p("B1", "right")], "right", g()),
                Term::procedural(&[p("A2", "sample"), p("B2", "left")], "left", g()),
                Term::procedural(&[p("A2", "sample"), p("B2", "right")], "right", g()),
            ],
        }
    }
}

impl TryFrom<u8> for Task {
    type Error = LabError;

    fn try_from(id: u8) -> Result<Self, Self::Error> {
        match id {
            1 => Ok(Task::SimpleDiscrimination),
            2 => Ok(Task::ChangingContingencies),
            3 => Ok(Task::ConditionalDiscrimination),
            other => Err(LabError::UnknownTask(other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhaseKind {
    Baseline,
    Training,
    Testing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpec {
    pub kind: PhaseKind,
    /// 0 when the task has a single phase of this kind.
    pub index: u8,
    pub blocks: usize,
    pub feedback: bool,
    /// Correct operation per condition id.
    pub contingency: BTreeMap<u8, String>,
}

impl PhaseSpec {
    pub fn name(&self) -> String {
        let base = match self.kind {
            PhaseKind::Baseline => "Baseline",
            PhaseKind::Training => "Training",
            PhaseKind::Testing => "Testing",
        };
        if self.index == 0 {
            base.to_string()
        } else {
            format!("{base}{}", self.index)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSpec {
    pub stimuli: Vec<Sentence>,
    pub correct_op: String,
    pub condition_id: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: TrialSpec,
    pub executed_op: Option<String>,
    pub correct: bool,
    pub feedback_sent: Option<String>,
    /// 1-based block number across the whole session.
    pub block_index: usize,
    pub phase_name: String,
    pub clock_at_goal: u64,
}

/// Twelve trials with balanced conditions in random order.
pub fn generate_block(task: Task, phase: &PhaseSpec, rng: &mut ChaCha8Rng) -> Vec<TrialSpec> {
    let conditions = task.conditions();
    let repeats = TRIALS_PER_BLOCK / conditions.len();
    let mut block: Vec<TrialSpec> = conditions
        .iter()
        .enumerate()
        .flat_map(|(id, stimuli)| {
            let trial = TrialSpec {
                stimuli: stimuli.iter().cloned().map(Sentence::event).collect(),
                correct_op: phase.contingency[&(id as u8)].clone(),
                condition_id: id as u8,
            };
            std::iter::repeat_n(trial, repeats)
        })
        .collect();
    block.shuffle(rng);
    block
}

/// One line of a session transcript.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TranscriptEntry {
    Input { clock: u64, input: String },
    Exec { clock: u64, exec: String, via: String },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub entries: Vec<TranscriptEntry>,
}

impl Transcript {
    /// JSON-lines rendering, one entry per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            out.push_str(&serde_json::to_string(entry).expect("transcript entries serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, serde_json::Error> {
        let entries = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<_, _>>()?;
        Ok(Transcript { entries })
    }

    /// The lines fed to the engine, in order.
    pub fn input_lines(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().filter_map(|e| match e {
            TranscriptEntry::Input { input, .. } => Some(input.as_str()),
            TranscriptEntry::Exec { .. } => None,
        })
    }

    /// Executed operations with the clock at which they happened.
    pub fn executions(&self) -> Vec<(u64, &str)> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                TranscriptEntry::Exec { clock, exec, .. } => Some((*clock, exec.as_str())),
                TranscriptEntry::Input { .. } => None,
            })
            .collect()
    }
}

/// An engine plus the transcript of everything sent to it.
pub struct LabSession {
    pub engine: Engine,
    pub transcript: Transcript,
}

impl LabSession {
    /// Fresh engine configured with the standard configuration block.
    pub fn new(seed: u64) -> Result<Self, LabError> {
        Self::with_config(EngineConfig::default(), seed)
    }

    pub fn with_config(config: EngineConfig, seed: u64) -> Result<Self, LabError> {
        let mut session = LabSession {
            engine: Engine::new(config),
            transcript: Transcript::default(),
        };
        session.send_line(&Directive::Seed(seed).to_string())?;
        for line in CONFIG_BLOCK {
            session.send_line(line)?;
        }
        Ok(session)
    }

    pub fn send_line(&mut self, line: &str) -> Result<Vec<Execution>, LabError> {
        let input = parse_line(line).map_err(|e| LabError::EngineFault(e.to_string()))?;
        self.send(line.to_string(), &input)
    }

    fn send(&mut self, line: String, input: &ParsedInput) -> Result<Vec<Execution>, LabError> {
        self.transcript.entries.push(TranscriptEntry::Input {
            clock: self.engine.clock(),
            input: line,
        });
        let executions = self.engine.apply(input)?;
        self.engine.take_trace();
        for e in &executions {
            if !self.engine.is_registered(&e.op) {
                return Err(LabError::EngineFault(format!(
                    "unregistered operation ^{}",
                    e.op
                )));
            }
            let via = match e.decision {
                Decision::Execute { .. } => "decision",
                Decision::Babble { .. } => "babble",
                Decision::NoAction => "none",
            };
            self.transcript.entries.push(TranscriptEntry::Exec {
                clock: e.time,
                exec: format!("^{}", e.op),
                via: via.to_string(),
            });
        }
        Ok(executions)
    }

    fn send_sentence(&mut self, sentence: &Sentence) -> Result<Vec<Execution>, LabError> {
        self.send(sentence.to_string(), &ParsedInput::Sentence(sentence.clone()))
    }

    fn send_steps(&mut self, n: u64) -> Result<Vec<Execution>, LabError> {
        self.send(n.to_string(), &ParsedInput::StepCount(n))
    }

    /// Truth of `term`, or `{0, 0}` when no such hypothesis exists.
    pub fn sample(&self, term: &Term) -> (f64, f64) {
        self.engine
            .query_hypothesis(term)
            .map_or((0.0, 0.0), |t| (t.frequency(), t.confidence()))
    }
}

/// Presents one trial and scores the first operation within the response
/// window.
pub fn run_trial(
    session: &mut LabSession,
    trial: &TrialSpec,
    feedback: bool,
) -> Result<TrialOutcome, LabError> {
    for stimulus in &trial.stimuli {
        session.send_sentence(stimulus)?;
    }
    let clock_at_goal = session.engine.clock();
    let mut executions = session.send_line(GOAL)?;
    if executions.is_empty() {
        executions = session.send_steps(RESPONSE_WINDOW - 1)?;
    }
    let executed_op = executions.first().map(|e| e.op.clone());
    let correct = executed_op.as_deref() == Some(trial.correct_op.as_str());
    let feedback_sent = if feedback {
        let line = if correct {
            POSITIVE_FEEDBACK
        } else {
            NEGATIVE_FEEDBACK
        };
        session.send_line(line)?;
        Some(line.to_string())
    } else {
        None
    };
    session.send_steps(INTER_TRIAL_STEPS)?;
    Ok(TrialOutcome {
        executed_op,
        correct,
        feedback_sent,
        clock_at_goal,
    })
}

/// Result of [`run_trial`], before block bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub executed_op: Option<String>,
    pub correct: bool,
    pub feedback_sent: Option<String>,
    pub clock_at_goal: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisSample {
    pub clock: u64,
    /// Block after which the sample was taken; 0 is the session start.
    pub block: usize,
    pub frequency: f64,
    pub confidence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockAccuracy {
    pub phase: String,
    pub block: usize,
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub task: Task,
    pub seed: u64,
    pub per_block_accuracy: Vec<BlockAccuracy>,
    pub hypothesis_trajectories: BTreeMap<String, Vec<HypothesisSample>>,
    /// Mean frequency and confidence over the target set, per sample.
    pub mean_trajectory: Vec<HypothesisSample>,
}

impl Metrics {
    pub fn accuracies(&self) -> Vec<f64> {
        self.per_block_accuracy.iter().map(|b| b.accuracy).collect()
    }

    pub fn phase_accuracies(&self, phase: &str) -> Vec<f64> {
        self.per_block_accuracy
            .iter()
            .filter(|b| b.phase == phase)
            .map(|b| b.accuracy)
            .collect()
    }

    pub fn trajectory(&self, term: &Term) -> &[HypothesisSample] {
        self.hypothesis_trajectories
            .get(&term.to_string())
            .map_or(&[], Vec::as_slice)
    }

    /// Mean-trajectory sample taken after the last block of `phase`.
    pub fn mean_after_phase(&self, phase: &str) -> Option<&HypothesisSample> {
        let last = self
            .per_block_accuracy
            .iter()
            .filter(|b| b.phase == phase)
            .map(|b| b.block)
            .max()?;
        self.mean_trajectory.iter().find(|s| s.block == last)
    }

    /// Mean-trajectory sample taken just before the first block of `phase`.
    pub fn mean_before_phase(&self, phase: &str) -> Option<&HypothesisSample> {
        let first = self
            .per_block_accuracy
            .iter()
            .filter(|b| b.phase == phase)
            .map(|b| b.block)
            .min()?;
        self.mean_trajectory.iter().find(|s| s.block == first - 1)
    }

    pub fn accuracy_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["task", "seed", "phase", "block", "accuracy"])
            .expect("in-memory csv");
        for b in &self.per_block_accuracy {
            w.write_record([
                self.task.id().to_string(),
                self.seed.to_string(),
                b.phase.clone(),
                b.block.to_string(),
                format!("{:.4}", b.accuracy),
            ])
            .expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
    }

    pub fn hypothesis_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["task", "seed", "clock", "hypothesis", "frequency", "confidence"])
            .expect("in-memory csv");
        for (term, samples) in &self.hypothesis_trajectories {
            for s in samples {
                w.write_record([
                    self.task.id().to_string(),
                    self.seed.to_string(),
                    s.clock.to_string(),
                    term.clone(),
                    format!("{:.6}", s.frequency),
                    format!("{:.6}", s.confidence),
                ])
                .expect("in-memory csv");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
    }
}

/// Per-block accuracy from trial records alone, plus the trajectories of the
/// sampled hypotheses. Absent hypotheses were sampled as `{0, 0}`.
pub fn compute_metrics(
    task: Task,
    seed: u64,
    records: &[TrialRecord],
    samples: BTreeMap<String, Vec<HypothesisSample>>,
) -> Metrics {
    let mut blocks: Vec<(usize, String, usize, usize)> = Vec::new();
    for r in records {
        match blocks.last_mut() {
            Some((block, _, correct, total)) if *block == r.block_index => {
                *correct += usize::from(r.correct);
                *total += 1;
            }
            _ => blocks.push((r.block_index, r.phase_name.clone(), usize::from(r.correct), 1)),
        }
    }
    let per_block_accuracy = blocks
        .into_iter()
        .map(|(block, phase, correct, total)| BlockAccuracy {
            phase,
            block,
            accuracy: correct as f64 / total as f64,
        })
        .collect();

    let mut mean_trajectory: Vec<HypothesisSample> = Vec::new();
    let n = samples.len().max(1) as f64;
    for series in samples.values() {
        for (i, s) in series.iter().enumerate() {
            if mean_trajectory.len() <= i {
                mean_trajectory.push(HypothesisSample {
                    clock: s.clock,
                    block: s.block,
                    frequency: 0.0,
                    confidence: 0.0,
                });
            }
            mean_trajectory[i].frequency += s.frequency / n;
            mean_trajectory[i].confidence += s.confidence / n;
        }
    }

    Metrics {
        task,
        seed,
        per_block_accuracy,
        hypothesis_trajectories: samples,
        mean_trajectory,
    }
}

/// Everything a finished session produced.
#[derive(Debug, Clone)]
pub struct ExperimentRun {
    pub transcript: Transcript,
    pub records: Vec<TrialRecord>,
    pub metrics: Metrics,
}

pub fn run_experiment(task: Task, seed: u64) -> Result<ExperimentRun, LabError> {
    run_experiment_with(task, seed, EngineConfig::default())
}

pub fn run_experiment_with(
    task: Task,
    seed: u64,
    config: EngineConfig,
) -> Result<ExperimentRun, LabError> {
    let mut session = LabSession::with_config(config, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);

    let targets = task.targets();
    let mut samples: BTreeMap<String, Vec<HypothesisSample>> = BTreeMap::new();
    let mut take_samples = |session: &LabSession, block: usize| {
        for t in &targets {
            let (frequency, confidence) = session.sample(t);
            samples.entry(t.to_string()).or_default().push(HypothesisSample {
                clock: session.engine.clock(),
                block,
                frequency,
                confidence,
            });
        }
    };
    take_samples(&session, 0);

    let mut records = Vec::new();
    let mut block_index = 0;
    for phase in task.phases() {
        for _ in 0..phase.blocks {
            block_index += 1;
            for trial in generate_block(task, &phase, &mut rng) {
                let outcome = run_trial(&mut session, &trial, phase.feedback)?;
                records.push(TrialRecord {
                    trial,
                    executed_op: outcome.executed_op,
                    correct: outcome.correct,
                    feedback_sent: outcome.feedback_sent,
                    block_index,
                    phase_name: phase.name(),
                    clock_at_goal: outcome.clock_at_goal,
                });
            }
            take_samples(&session, block_index);
        }
    }

    let metrics = compute_metrics(task, seed, &records, samples);
    Ok(ExperimentRun {
        transcript: session.transcript,
        records,
        metrics,
    })
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn condition_counts(block: &[TrialSpec]) -> BTreeMap<u8, usize> {
        let mut counts = BTreeMap::new();
        for t in block {
            *counts.entry(t.condition_id).or_insert(0) += 1;
        }
        counts
    }

    #[test]
    fn block_composition() {
        for seed in 0..20 {
            let phase = &Task::SimpleDiscrimination.phases()[0];
            let block = generate_block(Task::SimpleDiscrimination, phase, &mut rng(seed));
            assert_eq!(block.len(), TRIALS_PER_BLOCK);
            assert_eq!(condition_counts(&block), BTreeMap::from([(0, 6), (1, 6)]));

            let phase = &Task::ConditionalDiscrimination.phases()[1];
            let block = generate_block(Task::ConditionalDiscrimination, phase, &mut rng(seed));
            assert_eq!(
                condition_counts(&block),
                BTreeMap::from([(0, 3), (1, 3), (2, 3), (3, 3)])
            );
            for t in &block {
                assert_eq!(t.stimuli.len(), 3);
                assert!(t.stimuli[0].term.to_string().contains("[sample]"));
            }
        }
    }

    #[test]
    fn blocks_are_seeded() {
        let phase = &Task::SimpleDiscrimination.phases()[0];
        let a = generate_block(Task::SimpleDiscrimination, phase, &mut rng(3));
        let b = generate_block(Task::SimpleDiscrimination, phase, &mut rng(3));
        assert_eq!(a, b);
    }

    #[test]
    fn phase_ladders() {
        let blocks = |t: Task| t.phases().iter().map(|p| p.blocks).collect::<Vec<_>>();
        assert_eq!(blocks(Task::SimpleDiscrimination), [3, 3, 3]);
        assert_eq!(blocks(Task::ChangingContingencies), [2, 4, 2, 4, 2]);
        assert_eq!(blocks(Task::ConditionalDiscrimination), [3, 6, 3]);
        for task in Task::ALL {
            for p in task.phases() {
                assert!(p.blocks >= 1);
                assert_eq!(p.feedback, p.kind == PhaseKind::Training);
                assert_eq!(p.contingency.len(), task.conditions().len());
            }
        }
        let names: Vec<String> = Task::ChangingContingencies
            .phases()
            .iter()
            .map(PhaseSpec::name)
            .collect();
        assert_eq!(
            names,
            ["Baseline", "Training1", "Testing1", "Training2", "Testing2"]
        );
    }

    #[test]
    fn reversal_flips_every_condition() {
        let phases = Task::ChangingContingencies.phases();
        for (id, op) in &phases[1].contingency {
            assert_ne!(&phases[3].contingency[id], op);
        }
        // A2 on the left is rewarded with ^left after the reversal.
        let a2_left = Task::ChangingContingencies.conditions()[1][0].clone();
        assert_eq!(a2_left, Term::property("A2", "left"));
        assert_eq!(phases[3].contingency[&1], "left");
    }

    fn forced_session(op: &str) -> LabSession {
        let mut s = LabSession::new(0).unwrap();
        let other = if op == "left" { "right" } else { "left" };
        for line in [
            format!("*setopname 1 ^{op}"),
            format!("*setopname 2 ^{other}"),
            "*babblingops=1".to_string(),
            "*motorbabbling=1".to_string(),
        ] {
            s.send_line(&line).unwrap();
        }
        s
    }

    fn conditional_trial(condition: u8) -> TrialSpec {
        let phase = &Task::ConditionalDiscrimination.phases()[1];
        generate_block(Task::ConditionalDiscrimination, phase, &mut rng(0))
            .into_iter()
            .find(|t| t.condition_id == condition)
            .unwrap()
    }

    #[test]
    fn correct_response_is_reinforced() {
        // A1 sample, B2 left, B1 right: ^right is correct.
        let trial = conditional_trial(1);
        assert_eq!(trial.correct_op, "right");
        let mut s = forced_session("right");
        let out = run_trial(&mut s, &trial, true).unwrap();
        assert_eq!(out.executed_op.as_deref(), Some("right"));
        assert!(out.correct);
        assert_eq!(out.feedback_sent.as_deref(), Some(POSITIVE_FEEDBACK));
    }

    #[test]
    fn wrong_response_is_punished() {
        let trial = conditional_trial(0);
        assert_eq!(trial.correct_op, "left");
        let mut s = forced_session("right");
        let out = run_trial(&mut s, &trial, true).unwrap();
        assert!(!out.correct);
        assert_eq!(out.feedback_sent.as_deref(), Some(NEGATIVE_FEEDBACK));
    }

    #[test]
    fn no_response_scores_wrong() {
        let trial = conditional_trial(0);
        let mut s = LabSession::new(0).unwrap();
        s.send_line("*motorbabbling=0").unwrap();
        let clock = s.engine.clock();
        let out = run_trial(&mut s, &trial, true).unwrap();
        assert_eq!(out.executed_op, None);
        assert!(!out.correct);
        assert_eq!(out.feedback_sent.as_deref(), Some(NEGATIVE_FEEDBACK));
        // Stimuli, goal, response window, feedback, inter-trial gap.
        assert_eq!(s.engine.clock(), clock + 3 + RESPONSE_WINDOW + 1 + INTER_TRIAL_STEPS);
    }

    #[test]
    fn testing_trials_get_no_feedback() {
        let trial = conditional_trial(2);
        let mut s = forced_session("left");
        let out = run_trial(&mut s, &trial, false).unwrap();
        assert_eq!(out.feedback_sent, None);
        assert!(s.transcript.input_lines().all(|l| !l.starts_with("G.")));
    }

    #[test]
    fn feedback_only_in_training() {
        let run = run_experiment(Task::ChangingContingencies, 1).unwrap();
        assert_eq!(run.records.len(), 14 * TRIALS_PER_BLOCK);
        for r in &run.records {
            let training = r.phase_name.starts_with("Training");
            assert_eq!(r.feedback_sent.is_some(), training, "{}", r.phase_name);
            assert_eq!(r.correct, r.executed_op.as_deref() == Some(r.trial.correct_op.as_str()));
        }
        let feedback_lines = run
            .transcript
            .input_lines()
            .filter(|l| l.starts_with("G."))
            .count();
        assert_eq!(feedback_lines, 8 * TRIALS_PER_BLOCK);
    }

    fn record(block: usize, correct: bool) -> TrialRecord {
        TrialRecord {
            trial: conditional_trial(0),
            executed_op: correct.then(|| "left".to_string()),
            correct,
            feedback_sent: None,
            block_index: block,
            phase_name: "Training".into(),
            clock_at_goal: 0,
        }
    }

    #[test]
    fn accuracy_from_records_alone() {
        let mut records: Vec<TrialRecord> = (0..12).map(|_| record(1, true)).collect();
        records.extend((0..12).map(|i| record(2, i < 3)));
        let m = compute_metrics(Task::SimpleDiscrimination, 0, &records, BTreeMap::new());
        assert_eq!(m.accuracies(), [1.0, 0.25]);
    }

    #[test]
    fn absent_hypotheses_count_as_zero() {
        let sample = |f, c| HypothesisSample {
            clock: 10,
            block: 1,
            frequency: f,
            confidence: c,
        };
        let samples = BTreeMap::from([
            ("h1".to_string(), vec![sample(1.0, 0.6)]),
            ("h2".to_string(), vec![sample(0.0, 0.0)]),
        ]);
        let m = compute_metrics(Task::SimpleDiscrimination, 0, &[], samples);
        assert_eq!(m.mean_trajectory[0].frequency, 0.5);
        assert!((m.mean_trajectory[0].confidence - 0.3).abs() < 1e-12);
    }

    #[test]
    fn csv_layout() {
        let run = run_experiment(Task::SimpleDiscrimination, 0).unwrap();
        let acc = run.metrics.accuracy_csv();
        let mut lines = acc.lines();
        assert_eq!(lines.next(), Some("task,seed,phase,block,accuracy"));
        assert_eq!(lines.count(), 9);
        let hyp = run.metrics.hypothesis_csv();
        assert!(hyp.starts_with("task,seed,clock,hypothesis,frequency,confidence\n"));
        // Two targets sampled at the start and after each of nine blocks.
        assert_eq!(hyp.lines().count(), 1 + 2 * 10);
    }

    #[test]
    fn transcript_round_trips() {
        let run = run_experiment(Task::SimpleDiscrimination, 5).unwrap();
        let text = run.transcript.to_jsonl();
        assert_eq!(Transcript::from_jsonl(&text).unwrap(), run.transcript);
        let first: Vec<&str> = run.transcript.input_lines().take(6).collect();
        assert_eq!(first[0], "*seed=5");
        assert_eq!(&first[1..], CONFIG_BLOCK);
    }

    #[test]
    fn unknown_task_id() {
        assert!(matches!(Task::try_from(4), Err(LabError::UnknownTask(4))));
        assert_eq!(Task::try_from(2).unwrap(), Task::ChangingContingencies);
    }
}
