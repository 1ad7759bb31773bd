use crate::narsese::Term;

/// Outcome of goal processing.
#[derive(Debug, Clone, PartialEq)]
pub enum Decision {
    Execute {
        op: String,
        implication: Term,
        expectation: f64,
    },
    Babble {
        op: String,
    },
    NoAction,
}

impl Decision {
    pub fn operation(&self) -> Option<&str> {
        match self {
            Decision::Execute { op, .. } | Decision::Babble { op } => Some(op),
            Decision::NoAction => None,
        }
    }
}

/// An eligible hypothesis scored against the current goal.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub implication: Term,
    pub op: String,
    pub expectation: f64,
    /// Stored (unprojected) confidence, for tie-breaking.
    pub confidence: f64,
    /// Creation order, for tie-breaking.
    pub created: u64,
}

/// Highest expectation wins; ties go to higher confidence, then the older
/// hypothesis.
pub fn best_candidate(candidates: &[Candidate]) -> Option<&Candidate> {
    candidates.iter().reduce(|best, c| {
        let better = c.expectation > best.expectation
            || (c.expectation == best.expectation
                && (c.confidence > best.confidence
                    || (c.confidence == best.confidence && c.created < best.created)));
        if better {
            c
        } else {
            best
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cand(op: &str, expectation: f64, confidence: f64, created: u64) -> Candidate {
        Candidate {
            implication: Term::atom(op),
            op: op.into(),
            expectation,
            confidence,
            created,
        }
    }

    #[test]
    fn argmax_with_tie_breaks() {
        assert!(best_candidate(&[]).is_none());
        let cs = [cand("a", 0.6, 0.3, 0), cand("b", 0.7, 0.1, 1)];
        assert_eq!(best_candidate(&cs).unwrap().op, "b");
        let cs = [cand("a", 0.7, 0.3, 0), cand("b", 0.7, 0.4, 1)];
        assert_eq!(best_candidate(&cs).unwrap().op, "b");
        let cs = [cand("a", 0.7, 0.4, 3), cand("b", 0.7, 0.4, 1)];
        assert_eq!(best_candidate(&cs).unwrap().op, "b");
    }
}
