//! Pins the exact transcript bytes of a session's setup and first trial.

use nars_operant::lab::{run_experiment, Task};

const GOLDEN: &str = include_str!("golden/task1_seed0_first_trial.jsonl");

#[test]
fn first_trial_matches_golden_transcript() {
    let run = run_experiment(Task::SimpleDiscrimination, 0).unwrap();
    let lines = GOLDEN.lines().count();
    let head: String = run
        .transcript
        .to_jsonl()
        .lines()
        .take(lines)
        .map(|l| format!("{l}\n"))
        .collect();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        println!("{head}");
        return;
    }
    assert_eq!(head, GOLDEN);
}
