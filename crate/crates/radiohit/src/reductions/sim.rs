//! The shared wake-up simulation that players build proposals from.
//!
//! A player simulates the algorithm on all `k` nodes of a `k`-node network.
//! Each simulated round runs in two halves: first every node is stepped just
//! far enough to make its broadcast decision (from which proposals are
//! formed), and only afterwards is a *receive rule* applied to complete the
//! round — the rule invents every node's observation, since the player
//! resolves nothing for real. Node streams are keyed by `(seed, id)` alone,
//! so a fresh simulation replays identical per-node bits.

use std::collections::BTreeMap;

use crate::hitting::ElemSet;
use crate::model::{
    AlgorithmRef, ExecutionTrace, ModelConfig, NodeAction, NodeCtx, NodeId, RandomTape,
    RoundObservation, RoundRecord, TapeStream, TraceOutcome,
};

/// How a receive rule fills in a completed simulated round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReceiveRule {
    /// Everyone receives nothing: listeners hear silence, transmitters get
    /// no feedback.
    Nothing,
    /// Collision fiction: transmitters are told they were not alone (when
    /// the model gives transmitters feedback), listeners hear silence.
    CollisionForBroadcasters,
    /// Forced universal outcome: listeners hear silence (`collision =
    /// false`) or detect a collision (`collision = true`); transmitters are
    /// told they were not alone either way.
    Forced { collision: bool },
}

pub(crate) struct WakeupSimulation {
    k: usize,
    config: ModelConfig,
    algorithm: AlgorithmRef,
    histories: Vec<Vec<RoundObservation>>,
    streams: Vec<TapeStream>,
    pending: Option<BTreeMap<NodeId, NodeAction>>,
    records: Vec<RoundRecord>,
}

impl WakeupSimulation {
    pub fn new(algorithm: AlgorithmRef, k: usize, config: ModelConfig, tape: &RandomTape) -> Self {
        let histories = vec![Vec::new(); k + 1];
        let streams = (0..=k).map(|u| tape.node_stream(u)).collect();
        WakeupSimulation {
            k,
            config,
            algorithm,
            histories,
            streams,
            pending: None,
            records: Vec::new(),
        }
    }

    /// 1-based index of the most recently decided round.
    pub fn decided_rounds(&self) -> usize {
        self.records.len()
    }

    pub fn has_pending(&self) -> bool {
        self.pending.is_some()
    }

    /// Step every node to its next broadcast decision. The previous round
    /// must have been completed by a receive rule.
    pub fn next_decisions(&mut self) -> &BTreeMap<NodeId, NodeAction> {
        assert!(
            self.pending.is_none(),
            "previous simulated round is still open"
        );
        let round = self.records.len() + 1;
        let mut actions = BTreeMap::new();
        for u in 1..=self.k {
            let ctx = NodeCtx {
                id: u,
                n: self.k,
                config: self.config,
                local_round: round,
            };
            let action = self
                .algorithm
                .decide(&ctx, &self.histories[u], &mut self.streams[u]);
            actions.insert(u, action);
        }
        self.records.push(RoundRecord {
            round,
            actions: actions.clone(),
            observations: BTreeMap::new(),
        });
        self.pending = Some(actions);
        self.pending.as_ref().unwrap()
    }

    /// Complete the open round by assigning every node an observation.
    pub fn apply(&mut self, rule: ReceiveRule) {
        let actions = self.pending.take().expect("no open simulated round");
        let mut observations = BTreeMap::new();
        for (&u, action) in &actions {
            let obs = synthesize(action, rule, &self.config);
            self.histories[u].push(obs.clone());
            observations.insert(u, obs);
        }
        self.records.last_mut().unwrap().observations = observations;
    }

    /// Ids deciding to transmit in the open round, on any channel.
    pub fn broadcasters(&self) -> ElemSet {
        self.pending
            .as_ref()
            .expect("no open simulated round")
            .iter()
            .filter(|(_, a)| a.is_transmit())
            .map(|(&u, _)| u)
            .collect()
    }

    /// Ids transmitting on one specific channel in the open round.
    pub fn broadcasters_on(&self, channel: usize) -> ElemSet {
        self.pending
            .as_ref()
            .expect("no open simulated round")
            .iter()
            .filter(|(_, a)| a.transmits_on(channel))
            .map(|(&u, _)| u)
            .collect()
    }

    /// The simulation so far as a trace. The final round's observations are
    /// empty when it has only been decided, not completed.
    pub fn trace(&self) -> ExecutionTrace {
        ExecutionTrace {
            rounds: self.records.clone(),
            outcome: TraceOutcome::Timeout,
            activations: BTreeMap::new(),
        }
    }
}

fn synthesize(action: &NodeAction, rule: ReceiveRule, config: &ModelConfig) -> RoundObservation {
    let transmitter_feedback = || {
        if config.transmitter_cd {
            RoundObservation::TransmitFeedback { alone: false }
        } else {
            RoundObservation::NoFeedback
        }
    };
    match (rule, action.is_transmit()) {
        (ReceiveRule::Nothing, true) => RoundObservation::NoFeedback,
        (ReceiveRule::Nothing, false) => RoundObservation::Silence,
        (ReceiveRule::CollisionForBroadcasters, true) => transmitter_feedback(),
        (ReceiveRule::CollisionForBroadcasters, false) => RoundObservation::Silence,
        (ReceiveRule::Forced { .. }, true) => transmitter_feedback(),
        (ReceiveRule::Forced { collision: true }, false) => {
            if config.receiver_cd {
                RoundObservation::CollisionDetected
            } else {
                RoundObservation::Silence
            }
        }
        (ReceiveRule::Forced { collision: false }, false) => RoundObservation::Silence,
    }
}
