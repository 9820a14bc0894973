//! Outcomes of the exhaustive identity checks.

use serde::Serialize;
use thiserror::Error;

/// A check that held for every case up to `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verified {
    pub identity: &'static str,
    pub n: usize,
    /// Number of individual comparisons made.
    pub checks: u64,
}

/// The first case where two sides of an identity disagreed.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{identity} fails at n = {n}{}: expected {expected}, found {found}",
        .k.map(|k| format!(", k = {k}")).unwrap_or_default())]
pub struct IdentityViolation {
    pub identity: &'static str,
    pub n: usize,
    pub k: Option<usize>,
    pub expected: String,
    pub found: String,
}

impl IdentityViolation {
    pub fn new(identity: &'static str, n: usize, expected: impl ToString, found: impl ToString) -> Self {
        IdentityViolation {
            identity,
            n,
            k: None,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub fn at_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }
}

pub type CheckResult = Result<Verified, IdentityViolation>;
