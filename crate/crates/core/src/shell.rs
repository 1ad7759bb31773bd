//! Line-protocol front end.
//!
//! [`Session::exec_line`] is the interactive mode: one input line in, zero or
//! more output lines back. [`batch_run`] drives the laboratory over a range of
//! seeds and writes the per-seed CSVs, transcripts and a summary.
//!
//! Output lines:
//!
//! ```text
//! ^left executed
//! derived: <(<A1 --> [left]> &/ ^left) =/> G>. {1.00 0.28}
//! error: column 9: expected `.` or `!`
//! ```
//!
//! Derived lines are printed only at volume 50 or more.

use std::fs;
use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::engine::{Engine, EngineConfig, TraceEvent};
use crate::lab::{self, LabError, Metrics, Task};
use crate::narsese::{parse_line, Directive, ParsedInput};

/// Volume from which derived hypotheses are echoed.
pub const DERIVED_VOLUME: u8 = 50;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`")]
    InvalidValue { key: String, value: String },
    #[error("{0}")]
    OutOfRange(String),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SessionConfig {
    pub engine: EngineConfig,
    /// Operation names registered as indices 1, 2, ...
    pub op_names: Vec<String>,
    pub volume: u8,
}

impl SessionConfig {
    /// Sets one parameter from a `key=value` pair.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
            value.trim().parse().map_err(|_| ConfigError::InvalidValue {
                key: key.to_string(),
                value: value.to_string(),
            })
        }
        let e = &mut self.engine;
        match key {
            "window" => e.window_capacity = parse(key, value)?,
            "queue" => e.queue_capacity = parse(key, value)?,
            "memory" => e.memory_capacity = parse(key, value)?,
            "decay" => e.decay = parse(key, value)?,
            "threshold" => e.decision_threshold = parse(key, value)?,
            "deadline" => e.anticipation_deadline = parse(key, value)?,
            "horizon" => e.match_horizon = parse(key, value)?,
            "motorbabbling" => e.motor_babbling = parse(key, value)?,
            "babblingops" => e.babbling_ops = Some(parse(key, value)?),
            "suppression" => e.babbling_suppression = parse(key, value)?,
            "anticipation" => e.anticipation_confidence = parse(key, value)?,
            "evidencecap" => e.evidence_cap = parse(key, value)?,
            "budget" => e.cycle_budget = parse(key, value)?,
            "seed" => e.seed = parse(key, value)?,
            "volume" => self.volume = parse(key, value)?,
            "ops" => {
                self.op_names = value
                    .split(',')
                    .map(|s| s.trim().trim_start_matches('^').to_string())
                    .filter(|s| !s.is_empty())
                    .collect()
            }
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let e = &self.engine;
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(ConfigError::OutOfRange(format!("{name} must lie in [0, 1], got {v}")))
            }
        };
        unit("motorbabbling", e.motor_babbling)?;
        unit("threshold", e.decision_threshold)?;
        unit("suppression", e.babbling_suppression)?;
        unit("decay", e.decay)?;
        if !(0.0..1.0).contains(&e.anticipation_confidence) {
            return Err(ConfigError::OutOfRange(
                "anticipation confidence must lie in [0, 1)".into(),
            ));
        }
        if e.evidence_cap <= 0.0 {
            return Err(ConfigError::OutOfRange("evidencecap must be positive".into()));
        }
        let counts = [
            ("window", e.window_capacity),
            ("queue", e.queue_capacity),
            ("memory", e.memory_capacity),
            ("budget", e.cycle_budget),
        ];
        for (name, n) in counts {
            if n == 0 {
                return Err(ConfigError::OutOfRange(format!("{name} must be at least 1")));
            }
        }
        if let Some(n) = e.babbling_ops {
            if n == 0 || (!self.op_names.is_empty() && n > self.op_names.len()) {
                return Err(ConfigError::OutOfRange(format!(
                    "babblingops must lie in 1..={}",
                    self.op_names.len().max(1)
                )));
            }
        }
        if self.volume > 100 {
            return Err(ConfigError::OutOfRange("volume must lie in 0..=100".into()));
        }
        Ok(())
    }
}

pub struct Session {
    engine: Engine,
    volume: u8,
}

impl Session {
    pub fn new(config: SessionConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        let mut engine = Engine::new(config.engine);
        for (i, name) in config.op_names.iter().enumerate() {
            engine.register_op(i + 1, name);
        }
        Ok(Session {
            engine,
            volume: config.volume,
        })
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn volume(&self) -> u8 {
        self.volume
    }

    /// Processes one input line. Problems are reported as `error:` lines;
    /// the session always remains usable.
    pub fn exec_line(&mut self, text: &str) -> Vec<String> {
        let input = match parse_line(text) {
            Ok(input) => input,
            Err(e) => return vec![format!("error: {e}")],
        };
        if let ParsedInput::Config(Directive::Volume(v)) = &input {
            self.volume = (*v).min(100);
        }
        let result = self.engine.apply(&input);
        let mut out = Vec::new();
        for event in self.engine.take_trace() {
            match event {
                TraceEvent::Executed(e) => out.push(format!("^{} executed", e.op)),
                TraceEvent::Derived { term, truth } if self.volume >= DERIVED_VOLUME => out.push(
                    format!(
                        "derived: {term}. {{{:.2} {:.2}}}",
                        truth.frequency(),
                        truth.confidence()
                    ),
                ),
                _ => {}
            }
        }
        if let Err(e) = result {
            out.push(format!("error: {e}"));
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum BatchError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Lab(#[from] LabError),
}

impl BatchError {
    /// Process exit code: 2 usage, 3 I/O, 1 engine fault.
    pub fn exit_code(&self) -> i32 {
        match self {
            BatchError::Config(_) => 2,
            BatchError::Io(_) => 3,
            BatchError::Lab(_) => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BatchRequest {
    pub task: Task,
    pub seeds: Vec<u64>,
    pub out_dir: PathBuf,
    pub config: EngineConfig,
}

/// Runs every seed and writes, per seed, `task<T>_seed<S>_accuracy.csv`,
/// `task<T>_seed<S>_hypotheses.csv` and `task<T>_seed<S>_transcript.jsonl`,
/// plus `task<T>_summary.csv` with the median accuracy of every block.
pub fn batch_run(request: &BatchRequest) -> Result<Vec<Metrics>, BatchError> {
    fs::create_dir_all(&request.out_dir)?;
    let task = request.task.id();
    let mut all = Vec::new();
    for &seed in &request.seeds {
        let run = lab::run_experiment_with(request.task, seed, request.config.clone())?;
        let file = |suffix: &str| request.out_dir.join(format!("task{task}_seed{seed}_{suffix}"));
        fs::write(file("accuracy.csv"), run.metrics.accuracy_csv())?;
        fs::write(file("hypotheses.csv"), run.metrics.hypothesis_csv())?;
        fs::write(file("transcript.jsonl"), run.transcript.to_jsonl())?;
        all.push(run.metrics);
    }
    fs::write(
        request.out_dir.join(format!("task{task}_summary.csv")),
        summary_csv(&all),
    )?;
    Ok(all)
}

/// Median per-block accuracy across seeds.
pub fn summary_csv(runs: &[Metrics]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["task", "phase", "block", "seeds", "median_accuracy"])
        .expect("in-memory csv");
    if let Some(first) = runs.first() {
        for (i, block) in first.per_block_accuracy.iter().enumerate() {
            let values: Vec<f64> = runs
                .iter()
                .filter_map(|m| m.per_block_accuracy.get(i).map(|b| b.accuracy))
                .collect();
            w.write_record([
                first.task.id().to_string(),
                block.phase.clone(),
                block.block.to_string(),
                values.len().to_string(),
                format!("{:.4}", median(values)),
            ])
            .expect("in-memory csv");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
}

fn median(mut values: Vec<f64>) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len().is_multiple_of(2) {
        (values[mid - 1] + values[mid]) / 2.0
    } else {
        values[mid]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::CONFIG_BLOCK;

    fn configured() -> Session {
        let mut s = Session::new(SessionConfig::default()).unwrap();
        for line in CONFIG_BLOCK {
            assert!(s.exec_line(line).is_empty());
        }
        s
    }

    #[test]
    fn setopname_registers() {
        let mut s = Session::new(SessionConfig::default()).unwrap();
        s.exec_line("*setopname 1 ^left");
        assert_eq!(s.engine().ops(), vec!["left"]);
    }

    #[test]
    fn interaction_script_derives_contingency() {
        let mut s = configured();
        let script = [
            "<A1 --> [left]>. :|: // A1 is presented to the left",
            "<A2 --> [right]>. :|: // A2 is presented to the right",
            "G! :|: // G is established as a desired event",
            "^left. :|: // ^left executed by the system",
            "G. :|: // G is provided as a consequence",
            "<(<A1 --> [left]> &/ ^left) =/> G> // Derived by the system",
        ];
        let out: Vec<String> = script.iter().flat_map(|l| s.exec_line(l)).collect();
        assert!(
            out.iter()
                .any(|l| l.starts_with("derived: <(<A1 --> [left]> &/ ^left) =/> G>.")),
            "{out:?}"
        );
        // The last line lacks punctuation: one diagnostic, nothing else.
        assert_eq!(out.last().unwrap().split(':').next(), Some("error"));
    }

    #[test]
    fn garbage_is_reported_and_session_continues() {
        let mut s = configured();
        let out = s.exec_line("garbage <<<");
        assert_eq!(out.len(), 1);
        assert!(out[0].starts_with("error:"));
        s.exec_line("<A1 --> [left]>. :|:");
        assert_eq!(s.engine().window().len(), 1);
    }

    #[test]
    fn quiet_volume_hides_derivations() {
        let mut s = configured();
        s.exec_line("*volume=0");
        let out: Vec<String> = ["<A1 --> [left]>. :|:", "^left. :|:", "G. :|:"]
            .iter()
            .flat_map(|l| s.exec_line(l))
            .collect();
        assert!(out.is_empty(), "{out:?}");
        assert_eq!(s.engine().hypotheses().len(), 1);
    }

    #[test]
    fn goal_without_operations_is_reported() {
        let mut s = Session::new(SessionConfig::default()).unwrap();
        let out = s.exec_line("G! :|:");
        assert_eq!(out.len(), 1);
        assert!(out[0].starts_with("error:"));
    }

    fn permutations(items: &[&'static str]) -> Vec<Vec<&'static str>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            for mut tail in permutations(&rest) {
                tail.insert(0, head);
                out.push(tail);
            }
        }
        out
    }

    #[test]
    fn config_block_order_does_not_matter() {
        let reference = configured();
        let perms = permutations(&CONFIG_BLOCK);
        assert_eq!(perms.len(), 120);
        for perm in perms {
            let mut s = Session::new(SessionConfig::default()).unwrap();
            for line in perm {
                s.exec_line(line);
            }
            assert_eq!(s.engine().config(), reference.engine().config());
            assert_eq!(s.engine().ops(), reference.engine().ops());
            assert_eq!(s.volume(), reference.volume());
        }
    }

    #[test]
    fn config_keys() {
        let mut c = SessionConfig::default();
        c.set("decay", "0.9").unwrap();
        c.set("ops", "^left,^right").unwrap();
        c.set("babblingops", "2").unwrap();
        assert_eq!(c.engine.decay, 0.9);
        assert_eq!(c.op_names, ["left", "right"]);
        assert!(c.validate().is_ok());
        c.set("babblingops", "3").unwrap();
        assert!(c.validate().is_err());
        assert!(matches!(c.set("colour", "red"), Err(ConfigError::UnknownKey(_))));
        assert!(matches!(
            c.set("decay", "fast"),
            Err(ConfigError::InvalidValue { .. })
        ));
        c.set("motorbabbling", "1.5").unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn median_of_blocks() {
        assert_eq!(median(vec![0.5, 1.0, 0.25]), 0.5);
        assert_eq!(median(vec![0.5, 1.0]), 0.75);
    }
}
