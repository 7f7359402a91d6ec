//! Rebuilding a knowledge base from scratch.

use crate::abox::{KbError, KnowledgeBase, Propagation};
use crate::syntax::KbCommand;

/// The command at `index` failed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("command {index} failed: {error}")]
pub struct ReplayError {
    pub index: usize,
    pub error: KbError,
}

/// Fingerprint of a fresh knowledge base after `commands`.
pub fn replay_batch(commands: &[KbCommand]) -> Result<String, ReplayError> {
    replay_with(commands, Propagation::Links)
}

/// Runs of consecutive assertions become one transaction each, so the
/// engine reaches the final state along a different path than the one the
/// commands were first executed on.
pub fn replay_with(commands: &[KbCommand], propagation: Propagation) -> Result<String, ReplayError> {
    let mut kb = KnowledgeBase::default().with_propagation(propagation);
    let mut i = 0;
    while i < commands.len() {
        if commands[i].is_update() {
            let run = commands[i..].iter().take_while(|c| c.is_update()).count();
            let batch = &commands[i..i + run];
            if kb.assert_all(batch).is_err() {
                return Err(locate(&kb, batch, i));
            }
            i += run;
        } else {
            kb.execute(&commands[i]).map_err(|error| ReplayError { index: i, error })?;
            i += 1;
        }
    }
    Ok(kb.fingerprint())
}

/// Replays a rejected batch one assertion at a time to find the culprit.
fn locate(kb: &KnowledgeBase, batch: &[KbCommand], offset: usize) -> ReplayError {
    let mut probe = kb.clone();
    for (j, c) in batch.iter().enumerate() {
        if let Err(error) = probe.execute(c) {
            return ReplayError { index: offset + j, error };
        }
    }
    // Only the combination fails; blame its last member.
    let error = kb.clone().assert_all(batch).expect_err("the batch was rejected");
    ReplayError { index: offset + batch.len() - 1, error }
}
