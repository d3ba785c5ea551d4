//! Execution traces: every action and observation of every acting node,
//! round by round, plus the terminal status.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{NodeAction, NodeId, RoundObservation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    /// 1-based round index.
    pub round: usize,
    pub actions: BTreeMap<NodeId, NodeAction>,
    pub observations: BTreeMap<NodeId, RoundObservation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceOutcome {
    SolvedAt(usize),
    Timeout,
}

impl TraceOutcome {
    pub fn solved_round(&self) -> Option<usize> {
        match self {
            TraceOutcome::SolvedAt(r) => Some(*r),
            TraceOutcome::Timeout => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExecutionTrace {
    pub rounds: Vec<RoundRecord>,
    pub outcome: TraceOutcome,
    /// For broadcast runs: the round each node first received the message
    /// (0 for the source). Empty for wake-up runs.
    pub activations: BTreeMap<NodeId, usize>,
}

impl ExecutionTrace {
    pub fn solved_round(&self) -> Option<usize> {
        self.outcome.solved_round()
    }

    /// One JSON object per line, one round per line.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for record in &self.rounds {
            serde_json::to_writer(&mut out, record)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}
