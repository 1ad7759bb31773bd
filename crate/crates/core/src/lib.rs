//! A sensorimotor non-axiomatic reasoner and an operant-conditioning
//! laboratory built on top of it.
//!
//! * [`narsese`] parses and prints the temporal Narsese subset.
//! * [`truth`] holds the evidence-grounded truth calculus.
//! * [`engine`] is the reasoner: event window, attention queue, concept
//!   memory, temporal induction, anticipation and decision making.
//! * [`lab`] encodes the three operant tasks and runs seeded sessions.
//! * [`shell`] is the line-protocol front end and batch runner.

pub mod engine;
pub mod lab;
pub mod narsese;
pub mod shell;
pub mod truth;

pub use engine::{Decision, Engine, EngineConfig, EngineError, Execution};
pub use narsese::{parse_line, serialize, ParseError, ParsedInput, Sentence, Term};
pub use truth::{Evidence, TruthValue};
