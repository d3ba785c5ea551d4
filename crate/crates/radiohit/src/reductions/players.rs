//! Hitting-game players that simulate a wake-up algorithm.
//!
//! Each player keeps one rolling simulation of the algorithm on all `k`
//! nodes. Per simulated round it proposes broadcaster id sets, then — once
//! the proposals have failed — completes the round with its receive rule
//! and moves on. What distinguishes the players is what they propose and
//! what they pretend the nodes heard.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::hitting::{ElemSet, Player};
use crate::model::{AlgorithmRef, ExecutionTrace, ModelConfig, RandomTape};
use crate::reductions::sim::{ReceiveRule, WakeupSimulation};
use crate::reductions::ProposalTag;

/// Player for single-channel algorithms without collision detection: one
/// proposal per simulated round (the broadcaster ids), everyone then
/// receives nothing.
pub struct BasicPlayer {
    sim: WakeupSimulation,
    tags: Vec<ProposalTag>,
}

impl BasicPlayer {
    pub fn new(
        algorithm: AlgorithmRef,
        k: usize,
        config: ModelConfig,
        tape: &RandomTape,
    ) -> Result<Self> {
        config.validate()?;
        if k < 2 {
            return Err(Error::InvalidInput(format!("player needs k >= 2, got {k}")));
        }
        if config.receiver_cd {
            return Err(Error::InvalidInput(
                "the receive-nothing fiction is only sound without collision detection".into(),
            ));
        }
        Ok(BasicPlayer {
            sim: WakeupSimulation::new(algorithm, k, config, tape),
            tags: Vec::new(),
        })
    }

    pub fn simulation_trace(&self) -> ExecutionTrace {
        self.sim.trace()
    }

    pub fn tags(&self) -> &[ProposalTag] {
        &self.tags
    }
}

impl Player for BasicPlayer {
    fn next_proposal(&mut self) -> ElemSet {
        if self.sim.has_pending() {
            self.sim.apply(ReceiveRule::Nothing);
        }
        self.sim.next_decisions();
        self.tags.push(ProposalTag {
            sim_round: self.sim.decided_rounds(),
            channel: None,
        });
        self.sim.broadcasters()
    }
}

/// Player for single-channel algorithms with collision detection, sound for
/// the restricted game: broadcasters are simulated as detecting a collision,
/// everyone else as hearing nothing. With a two-element target this receive
/// fiction is exactly what the target execution produces until the round a
/// target node broadcasts alone — at which point the proposal has already
/// won. Larger targets get no such guarantee.
pub struct CdPlayer {
    sim: WakeupSimulation,
    tags: Vec<ProposalTag>,
}

impl CdPlayer {
    pub fn new(
        algorithm: AlgorithmRef,
        k: usize,
        config: ModelConfig,
        tape: &RandomTape,
    ) -> Result<Self> {
        config.validate()?;
        if k < 2 {
            return Err(Error::InvalidInput(format!("player needs k >= 2, got {k}")));
        }
        if !config.receiver_cd {
            return Err(Error::InvalidInput(
                "the collision-fiction player only makes sense with collision detection".into(),
            ));
        }
        Ok(CdPlayer {
            sim: WakeupSimulation::new(algorithm, k, config, tape),
            tags: Vec::new(),
        })
    }

    pub fn simulation_trace(&self) -> ExecutionTrace {
        self.sim.trace()
    }

    pub fn tags(&self) -> &[ProposalTag] {
        &self.tags
    }
}

impl Player for CdPlayer {
    fn next_proposal(&mut self) -> ElemSet {
        if self.sim.has_pending() {
            self.sim.apply(ReceiveRule::CollisionForBroadcasters);
        }
        self.sim.next_decisions();
        self.tags.push(ProposalTag {
            sim_round: self.sim.decided_rounds(),
            channel: None,
        });
        self.sim.broadcasters()
    }
}

/// Player for multichannel algorithms without collision detection: one
/// proposal per channel per simulated round (channel 1 first), each holding
/// the ids transmitting on that channel; everyone then receives nothing.
/// Exactly `channels` proposals are charged per round, empty ones included.
pub struct McChannelPlayer {
    sim: WakeupSimulation,
    channels: usize,
    queue: VecDeque<(ElemSet, ProposalTag)>,
    tags: Vec<ProposalTag>,
}

impl McChannelPlayer {
    pub fn new(
        algorithm: AlgorithmRef,
        k: usize,
        config: ModelConfig,
        tape: &RandomTape,
    ) -> Result<Self> {
        config.validate()?;
        if k < 2 {
            return Err(Error::InvalidInput(format!("player needs k >= 2, got {k}")));
        }
        if config.receiver_cd {
            return Err(Error::InvalidInput(
                "the receive-nothing fiction is only sound without collision detection".into(),
            ));
        }
        Ok(McChannelPlayer {
            sim: WakeupSimulation::new(algorithm, k, config, tape),
            channels: config.channels,
            queue: VecDeque::new(),
            tags: Vec::new(),
        })
    }

    pub fn simulation_trace(&self) -> ExecutionTrace {
        self.sim.trace()
    }

    pub fn tags(&self) -> &[ProposalTag] {
        &self.tags
    }
}

impl Player for McChannelPlayer {
    fn next_proposal(&mut self) -> ElemSet {
        if self.queue.is_empty() {
            if self.sim.has_pending() {
                self.sim.apply(ReceiveRule::Nothing);
            }
            self.sim.next_decisions();
            let round = self.sim.decided_rounds();
            for channel in 1..=self.channels {
                self.queue.push_back((
                    self.sim.broadcasters_on(channel),
                    ProposalTag {
                        sim_round: round,
                        channel: Some(channel),
                    },
                ));
            }
        }
        let (proposal, tag) = self.queue.pop_front().unwrap();
        self.tags.push(tag);
        proposal
    }
}

/// Player for multichannel algorithms without collision detection, sound
/// for the restricted game: up to two proposals per simulated round — all
/// broadcasters first, then the channel-1 broadcasters when that set is
/// non-empty and different; everyone then receives nothing.
pub struct McTwoProposalPlayer {
    sim: WakeupSimulation,
    queue: VecDeque<(ElemSet, ProposalTag)>,
    tags: Vec<ProposalTag>,
}

impl McTwoProposalPlayer {
    pub fn new(
        algorithm: AlgorithmRef,
        k: usize,
        config: ModelConfig,
        tape: &RandomTape,
    ) -> Result<Self> {
        config.validate()?;
        if k < 2 {
            return Err(Error::InvalidInput(format!("player needs k >= 2, got {k}")));
        }
        if config.receiver_cd {
            return Err(Error::InvalidInput(
                "the receive-nothing fiction is only sound without collision detection".into(),
            ));
        }
        Ok(McTwoProposalPlayer {
            sim: WakeupSimulation::new(algorithm, k, config, tape),
            queue: VecDeque::new(),
            tags: Vec::new(),
        })
    }

    pub fn simulation_trace(&self) -> ExecutionTrace {
        self.sim.trace()
    }

    pub fn tags(&self) -> &[ProposalTag] {
        &self.tags
    }
}

impl Player for McTwoProposalPlayer {
    fn next_proposal(&mut self) -> ElemSet {
        if self.queue.is_empty() {
            if self.sim.has_pending() {
                self.sim.apply(ReceiveRule::Nothing);
            }
            self.sim.next_decisions();
            let round = self.sim.decided_rounds();
            let all = self.sim.broadcasters();
            let on_default = self.sim.broadcasters_on(crate::model::DEFAULT_CHANNEL);
            self.queue.push_back((
                all.clone(),
                ProposalTag {
                    sim_round: round,
                    channel: None,
                },
            ));
            if !on_default.is_empty() && on_default != all {
                self.queue.push_back((
                    on_default,
                    ProposalTag {
                        sim_round: round,
                        channel: Some(crate::model::DEFAULT_CHANNEL),
                    },
                ));
            }
        }
        let (proposal, tag) = self.queue.pop_front().unwrap();
        self.tags.push(tag);
        proposal
    }
}
