use std::collections::{BTreeMap, BTreeSet};

use crate::narsese::Term;
use crate::truth::{Evidence, TruthValue};

/// Most recent evidential ids retained per stamp.
pub const STAMP_CAPACITY: usize = 64;

/// Evidential base: the ids of the observations a truth value rests on.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stamp(BTreeSet<u64>);

impl Stamp {
    pub fn new(ids: impl IntoIterator<Item = u64>) -> Self {
        let mut s = Stamp(ids.into_iter().collect());
        s.truncate();
        s
    }

    pub fn overlaps(&self, other: &Stamp) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn merge(&mut self, other: &Stamp) {
        self.0.extend(other.0.iter().copied());
        self.truncate();
    }

    pub fn ids(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn truncate(&mut self) {
        while self.0.len() > STAMP_CAPACITY {
            self.0.pop_first();
        }
    }
}

#[derive(Debug, Clone)]
pub struct MemoryEntry {
    pub evidence: Evidence,
    pub stamp: Stamp,
    pub created: u64,
    pub last_use: u64,
    pub use_count: u64,
}

impl MemoryEntry {
    pub fn truth(&self) -> TruthValue {
        self.evidence
            .truth()
            .expect("stored hypotheses always carry evidence")
    }

    fn priority(&self, now: u64) -> f64 {
        let recency = 1.0 + now.saturating_sub(self.last_use) as f64 / 100.0;
        (1.0 + self.use_count as f64) * self.truth().expectation() / recency
    }
}

/// How a piece of evidence reached memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvidenceSource {
    /// An observation (induction or input); subject to the evidence cap.
    Observation,
    /// Implicit evidence from a resolved anticipation; added as is.
    Anticipation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RevisionKind {
    Inserted,
    Revised,
    /// Overlapping stamps: the higher-confidence side was kept.
    Choice,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RevisionOutcome {
    pub truth: TruthValue,
    pub kind: RevisionKind,
    /// Hypothesis dropped to stay within capacity.
    pub evicted: Option<Term>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MemoryStats {
    pub revisions: u64,
    pub choices: u64,
    pub insertions: u64,
    pub evictions: u64,
    /// Revisions that combined overlapping stamps. Must stay zero.
    pub overlapping_revisions: u64,
}

/// Long-term store of temporal hypotheses keyed by implication term.
#[derive(Debug, Clone)]
pub struct ConceptMemory {
    entries: BTreeMap<Term, MemoryEntry>,
    capacity: usize,
    evidence_cap: f64,
    created: u64,
    stats: MemoryStats,
}

impl ConceptMemory {
    pub fn new(capacity: usize, evidence_cap: f64) -> Self {
        assert!(capacity > 0, "memory capacity must be positive");
        ConceptMemory {
            entries: BTreeMap::new(),
            capacity,
            evidence_cap,
            created: 0,
            stats: MemoryStats::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn stats(&self) -> MemoryStats {
        self.stats
    }

    pub fn set_evidence_cap(&mut self, cap: f64) {
        self.evidence_cap = cap;
    }

    pub fn get(&self, term: &Term) -> Option<&MemoryEntry> {
        self.entries.get(term)
    }

    pub fn truth(&self, term: &Term) -> Option<TruthValue> {
        self.entries.get(term).map(MemoryEntry::truth)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &MemoryEntry)> {
        self.entries.iter()
    }

    pub fn touch(&mut self, term: &Term, now: u64) {
        if let Some(entry) = self.entries.get_mut(term) {
            entry.last_use = now;
            entry.use_count += 1;
        }
    }

    /// Merges new evidence for `term`. Disjoint stamps are revised, overlapping
    /// ones go through the choice rule, unknown terms are inserted.
    pub fn revise(
        &mut self,
        term: Term,
        evidence: Evidence,
        stamp: Stamp,
        source: EvidenceSource,
        now: u64,
    ) -> RevisionOutcome {
        assert!(!evidence.is_empty(), "revision requires evidence");
        if let Some(entry) = self.entries.get_mut(&term) {
            entry.last_use = now;
            entry.use_count += 1;
            if entry.stamp.overlaps(&stamp) {
                self.stats.choices += 1;
                let incoming = evidence.truth().expect("nonempty evidence");
                if incoming.confidence() > entry.truth().confidence() {
                    entry.evidence = evidence;
                    entry.stamp = stamp;
                }
                return RevisionOutcome {
                    truth: entry.truth(),
                    kind: RevisionKind::Choice,
                    evicted: None,
                };
            }
            // Instrumentation for the stamp-safety invariant.
            if entry.stamp.overlaps(&stamp) {
                self.stats.overlapping_revisions += 1;
                debug_assert!(false, "revising overlapping evidence");
            }
            let mut prior = entry.evidence;
            if source == EvidenceSource::Observation {
                let room = self.evidence_cap - evidence.total();
                if prior.total() > room {
                    prior = prior.scale(room.max(0.0) / prior.total());
                }
            }
            entry.evidence = prior + evidence;
            entry.stamp.merge(&stamp);
            self.stats.revisions += 1;
            return RevisionOutcome {
                truth: entry.truth(),
                kind: RevisionKind::Revised,
                evicted: None,
            };
        }

        let evicted = if self.entries.len() >= self.capacity {
            self.evict(now)
        } else {
            None
        };
        let entry = MemoryEntry {
            evidence,
            stamp,
            created: self.created,
            last_use: now,
            use_count: 0,
        };
        self.created += 1;
        let truth = entry.truth();
        self.entries.insert(term, entry);
        self.stats.insertions += 1;
        RevisionOutcome {
            truth,
            kind: RevisionKind::Inserted,
            evicted,
        }
    }

    fn evict(&mut self, now: u64) -> Option<Term> {
        let victim = self
            .entries
            .iter()
            .min_by(|a, b| a.1.priority(now).total_cmp(&b.1.priority(now)))
            .map(|(t, _)| t.clone())?;
        self.entries.remove(&victim);
        self.stats.evictions += 1;
        Some(victim)
    }
}
