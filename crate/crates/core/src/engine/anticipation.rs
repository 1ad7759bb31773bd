use crate::narsese::Term;

/// A pending prediction: `implication` fired and `predicted` is expected by
/// `deadline`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anticipation {
    pub implication: Term,
    pub predicted: Term,
    pub created: u64,
    pub deadline: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Confirmed,
    Failed,
}
