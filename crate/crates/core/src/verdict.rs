use std::fmt;

use serde::Serialize;

/// Outcome of a decision procedure that may only be certified to a finite depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    UnknownUpTo(usize),
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    pub fn is_no(self) -> bool {
        self == Verdict::No
    }

    /// Process exit code used by the command line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::UnknownUpTo(_) => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No => write!(f, "no"),
            Verdict::UnknownUpTo(d) => write!(f, "unknown (checked to depth {d})"),
        }
    }
}

/// Verdict plus the depth it was checked to and an optional counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub certified_depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn yes(depth: usize) -> Self {
        CheckReport { verdict: Verdict::Yes, certified_depth: depth, witness: None, note: None }
    }

    pub fn unknown(depth: usize) -> Self {
        CheckReport { verdict: Verdict::UnknownUpTo(depth), certified_depth: depth, witness: None, note: None }
    }

    pub fn refuted(depth: usize, witness: impl Into<String>) -> Self {
        CheckReport { verdict: Verdict::No, certified_depth: depth, witness: Some(witness.into()), note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}
