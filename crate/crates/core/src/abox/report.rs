//! Results of updates and the errors they raise.

use crate::kernel::Signal;
use crate::tbox::TboxError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KbError {
    #[error(transparent)]
    Scope(#[from] TboxError),
    #[error("{}", rejection_line(.0))]
    Rejected(Signal),
}

/// `rejected: inconsistent (<site>)` and friends.
pub fn rejection_line(s: &Signal) -> String {
    match s {
        Signal::Inconsistent(site) => format!("rejected: inconsistent ({site})"),
        other => format!("rejected: {other}"),
    }
}

/// Facts an accepted update added beyond what was asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpdateReport {
    /// Nothing changed at all.
    pub redundant: bool,
    /// Sorted `derived:` lines.
    pub derived: Vec<String>,
}

impl UpdateReport {
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.redundant {
            out.push("redundant".to_string());
        }
        out.extend(self.derived.iter().map(|d| format!("derived: {d}")));
        out
    }
}
