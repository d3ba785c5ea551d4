//! The synchronous radio network model.
//!
//! Executions proceed in rounds. Each round every acting node either
//! transmits on one channel or listens on one channel; a listener receives a
//! message iff exactly one of its neighbors transmits on that channel.
//! Collision detection (when enabled) lets receivers distinguish silence from
//! two-or-more transmitters, and — in single-hop networks only — lets
//! transmitters learn whether they broadcast alone.

mod tape;
mod topology;
mod trace;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use tape::{KeyDomain, RandomTape, TapeStream};
pub use topology::Topology;
pub use trace::{ExecutionTrace, RoundRecord, TraceOutcome};

/// Node ids are `1..=n`.
pub type NodeId = usize;

/// Opaque message payload; equality is byte equality.
pub type Payload = Vec<u8>;

/// The channel inactive nodes listen on, and the one wake-up is won on.
pub const DEFAULT_CHANNEL: usize = 1;

/// The sentinel broadcast message.
pub const BROADCAST_MESSAGE: &[u8] = b"m";

/// Model parameters: channel count and collision-detection flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelConfig {
    /// Number of orthogonal channels, at least 1.
    pub channels: usize,
    /// Receivers distinguish silence from collision.
    pub receiver_cd: bool,
    /// Transmitters learn alone-vs-not. Single-hop networks only; implies
    /// `receiver_cd`.
    pub transmitter_cd: bool,
}

impl ModelConfig {
    pub fn single_channel() -> Self {
        ModelConfig {
            channels: 1,
            receiver_cd: false,
            transmitter_cd: false,
        }
    }

    pub fn single_channel_cd() -> Self {
        ModelConfig {
            channels: 1,
            receiver_cd: true,
            transmitter_cd: true,
        }
    }

    pub fn multichannel(channels: usize) -> Self {
        ModelConfig {
            channels,
            receiver_cd: false,
            transmitter_cd: false,
        }
    }

    pub fn multichannel_cd(channels: usize) -> Self {
        ModelConfig {
            channels,
            receiver_cd: true,
            transmitter_cd: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.channels < 1 {
            return Err(Error::InvalidInput(
                "channel count must be at least 1".into(),
            ));
        }
        if self.transmitter_cd && !self.receiver_cd {
            return Err(Error::InvalidInput(
                "transmitter feedback is only defined on top of receiver collision detection"
                    .into(),
            ));
        }
        Ok(())
    }
}

/// What a node does in one round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeAction {
    Listen { channel: usize },
    Transmit { channel: usize, payload: Payload },
}

impl NodeAction {
    pub fn listen_default() -> Self {
        NodeAction::Listen {
            channel: DEFAULT_CHANNEL,
        }
    }

    pub fn channel(&self) -> usize {
        match self {
            NodeAction::Listen { channel } | NodeAction::Transmit { channel, .. } => *channel,
        }
    }

    pub fn is_transmit(&self) -> bool {
        matches!(self, NodeAction::Transmit { .. })
    }

    pub fn transmits_on(&self, channel: usize) -> bool {
        matches!(self, NodeAction::Transmit { channel: c, .. } if *c == channel)
    }
}

/// What a node learns from one round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RoundObservation {
    /// Listener: no neighbor transmitted on the listening channel (or two or
    /// more did and receiver collision detection is off).
    Silence,
    /// Listener: exactly one neighbor transmitted.
    Received { payload: Payload, sender: NodeId },
    /// Listener with receiver CD: two or more neighbors transmitted.
    CollisionDetected,
    /// Transmitter with transmitter CD in a single-hop network.
    TransmitFeedback { alone: bool },
    /// Transmitter without feedback.
    NoFeedback,
}

/// Static facts a node knows while deciding: its id, the network size, the
/// model parameters, and its own 1-based round counter (counted from
/// activation, so a broadcast node's first acting round is `local_round` 1).
#[derive(Clone, Copy, Debug)]
pub struct NodeCtx {
    pub id: NodeId,
    pub n: usize,
    pub config: ModelConfig,
    pub local_round: usize,
}

/// A distributed algorithm as a pure per-node step function.
///
/// `decide` is called once per acting round, in round order. It must be a
/// deterministic function of `(ctx, history, tape draws consumed so far)`;
/// the engine persists each node's stream across rounds and re-running a
/// node from round one with the same history prefix replays the exact same
/// decisions. Implementations may rewind the stream and replay it, but must
/// not use any other source of state.
pub trait Algorithm: Send + Sync {
    fn decide(
        &self,
        ctx: &NodeCtx,
        history: &[RoundObservation],
        tape: &mut TapeStream,
    ) -> NodeAction;
}

pub type AlgorithmRef = Arc<dyn Algorithm>;

/// Resolve one round on an explicit topology. Returns one observation per
/// acting node. Channels are resolved independently of one another.
pub fn resolve_round(
    topology: &Topology,
    config: &ModelConfig,
    actions: &BTreeMap<NodeId, NodeAction>,
) -> Result<BTreeMap<NodeId, RoundObservation>> {
    config.validate()?;
    for (&node, action) in actions {
        if !topology.contains(node) {
            return Err(Error::InvalidNode(format!(
                "acting node {node} is not in the topology"
            )));
        }
        check_channel(action, config)?;
    }
    let single_hop = topology.is_clique();
    let mut observations = BTreeMap::new();
    for (&node, action) in actions {
        let obs = match action {
            NodeAction::Listen { channel } => {
                let neighbors = topology.neighbors(node)?;
                let transmitters: Vec<NodeId> = actions
                    .iter()
                    .filter(|(id, a)| neighbors.contains(id) && a.transmits_on(*channel))
                    .map(|(&id, _)| id)
                    .collect();
                listener_observation(&transmitters, actions, config)
            }
            NodeAction::Transmit { channel, .. } => {
                if config.transmitter_cd && single_hop {
                    let others = actions
                        .iter()
                        .filter(|(&id, a)| id != node && a.transmits_on(*channel))
                        .count();
                    RoundObservation::TransmitFeedback { alone: others == 0 }
                } else {
                    RoundObservation::NoFeedback
                }
            }
        };
        observations.insert(node, obs);
    }
    Ok(observations)
}

/// Resolve one round among acting nodes of a single-hop network (every
/// acting node is every other acting node's neighbor). Used by the wake-up
/// engine so cliques never need to be materialized.
pub fn resolve_single_hop(
    config: &ModelConfig,
    actions: &BTreeMap<NodeId, NodeAction>,
) -> Result<BTreeMap<NodeId, RoundObservation>> {
    config.validate()?;
    for action in actions.values() {
        check_channel(action, config)?;
    }
    let mut per_channel: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
    for (&node, action) in actions {
        if let NodeAction::Transmit { channel, .. } = action {
            per_channel.entry(*channel).or_default().push(node);
        }
    }
    let empty = Vec::new();
    let mut observations = BTreeMap::new();
    for (&node, action) in actions {
        let channel = action.channel();
        let on_channel = per_channel.get(&channel).unwrap_or(&empty);
        let obs = match action {
            NodeAction::Listen { .. } => listener_observation(on_channel, actions, config),
            NodeAction::Transmit { .. } => {
                if config.transmitter_cd {
                    RoundObservation::TransmitFeedback {
                        alone: on_channel.len() == 1,
                    }
                } else {
                    RoundObservation::NoFeedback
                }
            }
        };
        observations.insert(node, obs);
    }
    Ok(observations)
}

fn listener_observation(
    transmitters: &[NodeId],
    actions: &BTreeMap<NodeId, NodeAction>,
    config: &ModelConfig,
) -> RoundObservation {
    match transmitters {
        [] => RoundObservation::Silence,
        [sender] => match &actions[sender] {
            NodeAction::Transmit { payload, .. } => RoundObservation::Received {
                payload: payload.clone(),
                sender: *sender,
            },
            NodeAction::Listen { .. } => unreachable!("transmitter set holds transmitters"),
        },
        _ if config.receiver_cd => RoundObservation::CollisionDetected,
        _ => RoundObservation::Silence,
    }
}

fn check_channel(action: &NodeAction, config: &ModelConfig) -> Result<()> {
    let channel = action.channel();
    if channel < 1 || channel > config.channels {
        return Err(Error::InvalidAction(format!(
            "channel {channel} outside [1,{}]",
            config.channels
        )));
    }
    Ok(())
}

/// Run a wake-up execution: `active` nodes step `algorithm` in a single-hop
/// network of `n` nodes until one of them transmits alone on the default
/// channel, or `max_rounds` elapse. Inactive nodes are implicit listeners on
/// the default channel and are not simulated.
pub fn run_wakeup(
    algorithm: &dyn Algorithm,
    n: usize,
    active: &BTreeSet<NodeId>,
    config: &ModelConfig,
    tape: &RandomTape,
    max_rounds: usize,
) -> Result<ExecutionTrace> {
    config.validate()?;
    if active.is_empty() {
        return Err(Error::InvalidInput("active set must be non-empty".into()));
    }
    if let Some(&bad) = active.iter().find(|&&u| u < 1 || u > n) {
        return Err(Error::InvalidNode(format!(
            "active node {bad} outside [1,{n}]"
        )));
    }
    let mut histories: BTreeMap<NodeId, Vec<RoundObservation>> =
        active.iter().map(|&u| (u, Vec::new())).collect();
    let mut streams: BTreeMap<NodeId, TapeStream> =
        active.iter().map(|&u| (u, tape.node_stream(u))).collect();
    let mut rounds = Vec::new();
    let mut outcome = TraceOutcome::Timeout;
    for round in 1..=max_rounds {
        let mut actions = BTreeMap::new();
        for &u in active {
            let ctx = NodeCtx {
                id: u,
                n,
                config: *config,
                local_round: round,
            };
            let action = algorithm.decide(&ctx, &histories[&u], streams.get_mut(&u).unwrap());
            actions.insert(u, action);
        }
        let observations = resolve_single_hop(config, &actions)?;
        let solved = actions
            .values()
            .filter(|a| a.transmits_on(DEFAULT_CHANNEL))
            .count()
            == 1;
        for (&u, obs) in &observations {
            histories.get_mut(&u).unwrap().push(obs.clone());
        }
        rounds.push(RoundRecord {
            round,
            actions,
            observations,
        });
        if solved {
            outcome = TraceOutcome::SolvedAt(round);
            break;
        }
    }
    Ok(ExecutionTrace {
        rounds,
        outcome,
        activations: BTreeMap::new(),
    })
}

/// The id that transmitted alone on the default channel in the solved round.
pub fn wakeup_winner(trace: &ExecutionTrace) -> Option<NodeId> {
    let solved = trace.solved_round()?;
    let record = trace.rounds.iter().find(|r| r.round == solved)?;
    let mut transmitters = record
        .actions
        .iter()
        .filter(|(_, a)| a.transmits_on(DEFAULT_CHANNEL))
        .map(|(&u, _)| u);
    let winner = transmitters.next();
    debug_assert!(transmitters.next().is_none());
    winner
}

/// Recompute the wake-up solved round from the raw trace: the first round
/// with exactly one default-channel transmitter.
pub fn recompute_wakeup_solved(trace: &ExecutionTrace) -> Option<usize> {
    trace
        .rounds
        .iter()
        .find(|r| {
            r.actions
                .values()
                .filter(|a| a.transmits_on(DEFAULT_CHANNEL))
                .count()
                == 1
        })
        .map(|r| r.round)
}

/// Run a broadcast execution on `topology` from `source`. Nodes are inactive
/// listeners on the default channel until they first receive the broadcast
/// message; a node activated in round `t` starts stepping the algorithm in
/// round `t + 1`. Solved in the round after which every node has the message.
pub fn run_broadcast(
    algorithm: AlgorithmRef,
    topology: &Topology,
    source: NodeId,
    config: &ModelConfig,
    tape: &RandomTape,
    max_rounds: usize,
) -> Result<ExecutionTrace> {
    config.validate()?;
    if !topology.contains(source) {
        return Err(Error::InvalidInput(format!(
            "source {source} outside [1,{}]",
            topology.n()
        )));
    }
    let adjacency: Vec<BTreeSet<NodeId>> = std::iter::once(BTreeSet::new())
        .chain(
            topology
                .nodes()
                .map(|u| topology.neighbors(u).unwrap().clone()),
        )
        .collect();
    let mut engine = BroadcastEngine::new(
        topology.n(),
        adjacency,
        algorithm,
        *config,
        tape,
        source,
        topology.is_clique(),
    );
    let mut rounds = Vec::new();
    let mut outcome = TraceOutcome::Timeout;
    for _ in 1..=max_rounds {
        let record = engine.step()?;
        let round = record.round;
        rounds.push(record);
        if engine.all_informed() {
            outcome = TraceOutcome::SolvedAt(round);
            break;
        }
    }
    Ok(ExecutionTrace {
        rounds,
        outcome,
        activations: engine.activations().clone(),
    })
}

/// Round-stepping core of a broadcast execution over an explicit adjacency
/// structure. The adjacency may be extended between rounds and nodes may be
/// activated out-of-band, which is what simulation-strategy players do as
/// hidden parts of the network are revealed to them.
pub struct BroadcastEngine {
    n: usize,
    adjacency: Vec<BTreeSet<NodeId>>,
    algorithm: AlgorithmRef,
    config: ModelConfig,
    single_hop: bool,
    histories: Vec<Vec<RoundObservation>>,
    streams: Vec<TapeStream>,
    /// Round in which each node received the message; 0 for the source.
    activations: BTreeMap<NodeId, usize>,
    completed_rounds: usize,
}

impl BroadcastEngine {
    pub fn new(
        n: usize,
        adjacency: Vec<BTreeSet<NodeId>>,
        algorithm: AlgorithmRef,
        config: ModelConfig,
        tape: &RandomTape,
        source: NodeId,
        single_hop: bool,
    ) -> Self {
        assert_eq!(adjacency.len(), n + 1, "adjacency is 1-indexed");
        let histories = vec![Vec::new(); n + 1];
        let streams = std::iter::once(tape.node_stream(0))
            .chain((1..=n).map(|u| tape.node_stream(u)))
            .collect();
        let mut activations = BTreeMap::new();
        activations.insert(source, 0);
        BroadcastEngine {
            n,
            adjacency,
            algorithm,
            config,
            single_hop,
            histories,
            streams,
            activations,
            completed_rounds: 0,
        }
    }

    pub fn round(&self) -> usize {
        self.completed_rounds
    }

    pub fn is_informed(&self, u: NodeId) -> bool {
        self.activations.contains_key(&u)
    }

    pub fn all_informed(&self) -> bool {
        self.activations.len() == self.n
    }

    pub fn activations(&self) -> &BTreeMap<NodeId, usize> {
        &self.activations
    }

    /// Mark `u` as having received the message in `round` without a
    /// simulated delivery. It starts stepping in `round + 1`.
    pub fn activate(&mut self, u: NodeId, round: usize) {
        self.activations.entry(u).or_insert(round);
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId) {
        self.adjacency[a].insert(b);
        self.adjacency[b].insert(a);
    }

    /// Advance one round. The returned record holds the actions and
    /// observations of stepping (informed) nodes only.
    pub fn step(&mut self) -> Result<RoundRecord> {
        let round = self.completed_rounds + 1;
        let mut actions = BTreeMap::new();
        let mut participants = Vec::new();
        for (&u, &activated) in &self.activations {
            if activated < round {
                participants.push(u);
                let ctx = NodeCtx {
                    id: u,
                    n: self.n,
                    config: self.config,
                    local_round: round - activated,
                };
                let action = self
                    .algorithm
                    .decide(&ctx, &self.histories[u], &mut self.streams[u]);
                actions.insert(u, action);
            }
        }
        // Everyone else is an implicit default-channel listener.
        let mut full_actions = actions.clone();
        for u in 1..=self.n {
            full_actions
                .entry(u)
                .or_insert_with(NodeAction::listen_default);
        }
        let observations = self.resolve(&full_actions)?;
        for u in 1..=self.n {
            if let RoundObservation::Received { payload, .. } = &observations[&u] {
                if payload.as_slice() == BROADCAST_MESSAGE {
                    self.activations.entry(u).or_insert(round);
                }
            }
        }
        let mut participant_obs = BTreeMap::new();
        for &u in &participants {
            let obs = observations[&u].clone();
            self.histories[u].push(obs.clone());
            participant_obs.insert(u, obs);
        }
        self.completed_rounds = round;
        Ok(RoundRecord {
            round,
            actions,
            observations: participant_obs,
        })
    }

    fn resolve(
        &self,
        actions: &BTreeMap<NodeId, NodeAction>,
    ) -> Result<BTreeMap<NodeId, RoundObservation>> {
        for (&node, action) in actions {
            if node < 1 || node > self.n {
                return Err(Error::InvalidNode(format!(
                    "acting node {node} outside [1,{}]",
                    self.n
                )));
            }
            check_channel(action, &self.config)?;
        }
        let mut observations = BTreeMap::new();
        for (&node, action) in actions {
            let obs = match action {
                NodeAction::Listen { channel } => {
                    let neighbors = &self.adjacency[node];
                    let transmitters: Vec<NodeId> = actions
                        .iter()
                        .filter(|(id, a)| neighbors.contains(id) && a.transmits_on(*channel))
                        .map(|(&id, _)| id)
                        .collect();
                    listener_observation(&transmitters, actions, &self.config)
                }
                NodeAction::Transmit { channel, .. } => {
                    if self.config.transmitter_cd && self.single_hop {
                        let others = actions
                            .iter()
                            .filter(|(&id, a)| id != node && a.transmits_on(*channel))
                            .count();
                        RoundObservation::TransmitFeedback { alone: others == 0 }
                    } else {
                        RoundObservation::NoFeedback
                    }
                }
            };
            observations.insert(node, obs);
        }
        Ok(observations)
    }
}
