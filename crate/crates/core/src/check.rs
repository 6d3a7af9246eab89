//! Result shapes shared by the checkers.

use serde::{Deserialize, Serialize};

/// A boolean with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<W> {
    Holds,
    Fails(W),
}

impl<W> Outcome<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Outcome::Holds => None,
            Outcome::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Outcome<V> {
        match self {
            Outcome::Holds => Outcome::Holds,
            Outcome::Fails(w) => Outcome::Fails(f(w)),
        }
    }
}

impl<W> From<Option<W>> for Outcome<W> {
    fn from(w: Option<W>) -> Self {
        w.map_or(Outcome::Holds, Outcome::Fails)
    }
}

/// Verdict of a conditional theorem on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Verified,
    /// A hypothesis failed, so the instance constrains nothing.
    Vacuous { hypothesis: String },
    Violated { witness: String },
}

impl Status {
    pub fn vacuous(h: impl Into<String>) -> Self {
        Status::Vacuous {
            hypothesis: h.into(),
        }
    }

    pub fn violated(w: impl Into<String>) -> Self {
        Status::Violated { witness: w.into() }
    }

    pub fn is_violated(&self) -> bool {
        matches!(self, Status::Violated { .. })
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, Status::Verified)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Vacuous { .. } => "vacuous",
            Status::Violated { .. } => "violated",
        }
    }

    /// Verified if `violations` is empty, else violated with the first one.
    pub fn from_violations(violations: &[String]) -> Self {
        match violations.first() {
            None => Status::Verified,
            Some(w) => Status::violated(w.clone()),
        }
    }
}
