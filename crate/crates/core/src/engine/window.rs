use std::collections::VecDeque;

use crate::narsese::Term;
use crate::truth::TruthValue;

/// An event as seen by the sequencer: a term at a resolved time.
#[derive(Debug, Clone, PartialEq)]
pub struct TimedEvent {
    pub term: Term,
    pub truth: TruthValue,
    pub time: u64,
    /// Evidential id of this observation.
    pub stamp: u64,
}

impl TimedEvent {
    pub fn is_operation(&self) -> bool {
        self.term.is_operation()
    }
}

/// FIFO sliding window over the most recent events, oldest first.
#[derive(Debug, Clone)]
pub struct EventWindow {
    events: VecDeque<TimedEvent>,
    capacity: usize,
}

impl EventWindow {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "window capacity must be positive");
        EventWindow {
            events: VecDeque::with_capacity(capacity),
            capacity,
        }
    }

    /// Appends an event, evicting the oldest when full. Events must arrive in
    /// nondecreasing time order.
    pub fn push(&mut self, event: TimedEvent) -> Option<TimedEvent> {
        if let Some(last) = self.events.back() {
            debug_assert!(last.time <= event.time, "window events out of order");
        }
        let evicted = if self.events.len() == self.capacity {
            self.events.pop_front()
        } else {
            None
        };
        self.events.push_back(event);
        evicted
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn events(&self) -> impl DoubleEndedIterator<Item = &TimedEvent> + ExactSizeIterator {
        self.events.iter()
    }

    pub fn get(&self, index: usize) -> Option<&TimedEvent> {
        self.events.get(index)
    }

    /// Index of the most recent operation event at or after `since`.
    pub fn last_operation_since(&self, since: u64) -> Option<usize> {
        self.events
            .iter()
            .enumerate()
            .rev()
            .take_while(|(_, e)| e.time >= since)
            .find(|(_, e)| e.is_operation())
            .map(|(i, _)| i)
    }

    /// Finds the latest occurrence of `preconditions` as an ordered
    /// subsequence of non-operation events with times in `[since, until]`
    /// and window index below `before`. Returns the matched window indices.
    pub fn match_sequence(
        &self,
        preconditions: &[&Term],
        since: u64,
        until: u64,
        before: usize,
    ) -> Option<Vec<usize>> {
        let mut matched = Vec::with_capacity(preconditions.len());
        let mut limit = before.min(self.events.len());
        // Greedy from the back yields the latest match of every element.
        for want in preconditions.iter().rev() {
            let idx = (0..limit).rev().find(|&i| {
                let e = &self.events[i];
                !e.is_operation() && e.time >= since && e.time <= until && &&e.term == want
            })?;
            matched.push(idx);
            limit = idx;
        }
        matched.reverse();
        Some(matched)
    }
}
