//! Two-node simulation of a multichannel algorithm on one channel.
//!
//! Given an algorithm for `C` channels with collision detection, the wrapped
//! algorithm lets two active nodes simulate their multichannel counterparts
//! on a single channel with collision detection, spending a group of rounds
//! per simulated round.
//!
//! A group opens with each node transmitting iff its inner node transmits.
//! A lone transmission solves wake-up outright. Mutual silence means both
//! inner nodes heard nothing; the group ends after that one round. Mutual
//! transmission leaves the real question — same inner channel or not — which
//! the nodes settle by spelling out their channel numbers bit by bit,
//! `⌈log₂ C⌉` rounds, transmitting on 1-bits. Any differing bit produces a
//! lone transmission (solving wake-up); surviving every bit proves the
//! channels equal, so both inner nodes are simulated as detecting a
//! collision.
//!
//! The step function is pure over `(history, tape)`: each call rewinds the
//! node's stream and replays the inner algorithm's draws from round one, so
//! the inner node sees the same bits in every replay.

use std::sync::Arc;

use crate::algorithms::ceil_log2;
use crate::error::{Error, Result};
use crate::model::{
    run_wakeup, Algorithm, AlgorithmRef, ExecutionTrace, ModelConfig, NodeAction, NodeCtx, NodeId,
    RandomTape, RoundObservation, TapeStream, BROADCAST_MESSAGE, DEFAULT_CHANNEL,
};
use crate::reductions::tree::TreePlayer;

/// Rounds per simulated round: the opening round plus one per channel bit.
pub fn group_length(channels: usize) -> usize {
    ceil_log2(channels) + 1
}

/// The single-channel model the wrapped algorithm runs under.
pub fn outer_config() -> ModelConfig {
    ModelConfig::single_channel_cd()
}

pub struct CdmcPairSimulator {
    inner: AlgorithmRef,
    inner_config: ModelConfig,
    channel_bits: usize,
}

enum PairState {
    /// Next round opens a new group; the inner node is about to decide.
    GroupStart,
    /// Mid-group bit rounds for an inner transmission on `channel`;
    /// `next_bit` is 1-based.
    BitRounds { channel: usize, next_bit: usize },
    /// Wake-up was observed solved (or the history left the two-node
    /// contract); listen forever.
    Quiescent,
}

impl CdmcPairSimulator {
    fn bit_of(&self, channel: usize, bit_index: usize) -> bool {
        // Channels are encoded as channel - 1 in channel_bits bits, most
        // significant bit first.
        debug_assert!((1..=self.channel_bits).contains(&bit_index));
        (channel - 1) >> (self.channel_bits - bit_index) & 1 == 1
    }

    fn inner_collision_observation(&self) -> RoundObservation {
        if self.inner_config.transmitter_cd {
            RoundObservation::TransmitFeedback { alone: false }
        } else {
            RoundObservation::NoFeedback
        }
    }
}

impl Algorithm for CdmcPairSimulator {
    fn decide(
        &self,
        ctx: &NodeCtx,
        history: &[RoundObservation],
        tape: &mut TapeStream,
    ) -> NodeAction {
        tape.reset();
        let mut inner_history: Vec<RoundObservation> = Vec::new();
        let mut inner_round = 1usize;
        let mut state = PairState::GroupStart;
        let inner_decide =
            |inner_round: usize, inner_history: &[RoundObservation], tape: &mut TapeStream| {
                let inner_ctx = NodeCtx {
                    id: ctx.id,
                    n: ctx.n,
                    config: self.inner_config,
                    local_round: inner_round,
                };
                self.inner.decide(&inner_ctx, inner_history, tape)
            };
        for obs in history {
            state = match state {
                PairState::Quiescent => PairState::Quiescent,
                PairState::GroupStart => {
                    let decision = inner_decide(inner_round, &inner_history, tape);
                    if decision.is_transmit() {
                        match obs {
                            RoundObservation::TransmitFeedback { alone: false }
                            | RoundObservation::CollisionDetected => {
                                if self.channel_bits == 0 {
                                    // One inner channel: a mutual transmit is
                                    // already a collision there.
                                    inner_history.push(self.inner_collision_observation());
                                    inner_round += 1;
                                    PairState::GroupStart
                                } else {
                                    PairState::BitRounds {
                                        channel: decision.channel(),
                                        next_bit: 1,
                                    }
                                }
                            }
                            _ => PairState::Quiescent,
                        }
                    } else {
                        match obs {
                            RoundObservation::Silence => {
                                // Both inner nodes were silent; both hear
                                // nothing and the group ends early.
                                inner_history.push(RoundObservation::Silence);
                                inner_round += 1;
                                PairState::GroupStart
                            }
                            RoundObservation::CollisionDetected => {
                                // Impossible with two active nodes; forced
                                // simulations use it to declare a collision
                                // round, which passes straight through.
                                inner_history.push(RoundObservation::CollisionDetected);
                                inner_round += 1;
                                PairState::GroupStart
                            }
                            _ => PairState::Quiescent,
                        }
                    }
                }
                PairState::BitRounds { channel, next_bit } => {
                    let mine = self.bit_of(channel, next_bit);
                    let matched = if mine {
                        matches!(
                            obs,
                            RoundObservation::TransmitFeedback { alone: false }
                                | RoundObservation::CollisionDetected
                        )
                    } else {
                        matches!(
                            obs,
                            RoundObservation::Silence | RoundObservation::CollisionDetected
                        )
                    };
                    if !matched {
                        PairState::Quiescent
                    } else if next_bit == self.channel_bits {
                        // Every bit agreed: equal channels, hence an inner
                        // collision.
                        inner_history.push(self.inner_collision_observation());
                        inner_round += 1;
                        PairState::GroupStart
                    } else {
                        PairState::BitRounds {
                            channel,
                            next_bit: next_bit + 1,
                        }
                    }
                }
            };
        }
        match state {
            PairState::Quiescent => NodeAction::listen_default(),
            PairState::GroupStart => {
                let decision = inner_decide(inner_round, &inner_history, tape);
                if decision.is_transmit() {
                    NodeAction::Transmit {
                        channel: DEFAULT_CHANNEL,
                        payload: BROADCAST_MESSAGE.to_vec(),
                    }
                } else {
                    NodeAction::listen_default()
                }
            }
            PairState::BitRounds { channel, next_bit } => {
                if self.bit_of(channel, next_bit) {
                    NodeAction::Transmit {
                        channel: DEFAULT_CHANNEL,
                        payload: BROADCAST_MESSAGE.to_vec(),
                    }
                } else {
                    NodeAction::listen_default()
                }
            }
        }
    }
}

/// Wrap a `C`-channel collision-detection algorithm into the single-channel
/// two-node algorithm described above.
pub fn cdmc_pair_simulator(inner: AlgorithmRef, channels: usize) -> Result<AlgorithmRef> {
    if channels < 1 {
        return Err(Error::InvalidInput(
            "channel count must be at least 1".into(),
        ));
    }
    Ok(Arc::new(CdmcPairSimulator {
        inner,
        inner_config: ModelConfig::multichannel_cd(channels),
        channel_bits: ceil_log2(channels),
    }))
}

/// Run the wrapped algorithm as a wake-up execution with exactly two active
/// nodes — the only contract it is defined for.
pub fn run_pair_wakeup(
    wrapped: &dyn Algorithm,
    n: usize,
    pair: (NodeId, NodeId),
    tape: &RandomTape,
    max_rounds: usize,
) -> Result<ExecutionTrace> {
    if pair.0 == pair.1 {
        return Err(Error::InvalidInput(
            "the two-node simulation needs two distinct active nodes".into(),
        ));
    }
    let active = [pair.0, pair.1].into_iter().collect();
    run_wakeup(wrapped, n, &active, &outer_config(), tape, max_rounds)
}

/// Tree player over the two-node single-channel simulation of a
/// multichannel collision-detection algorithm, for the restricted game.
pub fn cdmc_tree_player(
    inner: AlgorithmRef,
    k: usize,
    channels: usize,
    depth: usize,
    tape: &RandomTape,
) -> Result<TreePlayer> {
    let wrapped = cdmc_pair_simulator(inner, channels)?;
    TreePlayer::new(wrapped, k, outer_config(), depth, tape)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Payload;

    /// Inner test algorithm: transmit on a fixed per-id channel every round
    /// until a collision is observed, then stay silent.
    struct FixedChannelUntilCollision {
        channels: Vec<(NodeId, usize)>,
    }

    impl Algorithm for FixedChannelUntilCollision {
        fn decide(
            &self,
            ctx: &NodeCtx,
            history: &[RoundObservation],
            _tape: &mut TapeStream,
        ) -> NodeAction {
            let heard_collision = history.iter().any(|o| {
                matches!(
                    o,
                    RoundObservation::CollisionDetected
                        | RoundObservation::TransmitFeedback { alone: false }
                )
            });
            if heard_collision {
                return NodeAction::listen_default();
            }
            let channel = self
                .channels
                .iter()
                .find(|(id, _)| *id == ctx.id)
                .map(|(_, c)| *c)
                .unwrap_or(DEFAULT_CHANNEL);
            NodeAction::Transmit {
                channel,
                payload: Payload::new(),
            }
        }
    }

    #[test]
    fn equal_channels_conclude_collision_and_feed_it_inward() {
        // Equal inner channels: group 1 runs the full bit sequence without a
        // lone transmission, the inner nodes are fed a collision, go silent,
        // and group 2 is a one-round silent group. Nothing ever solves.
        let channels = 8;
        let inner = Arc::new(FixedChannelUntilCollision {
            channels: vec![(1, 3), (2, 3)],
        });
        let wrapped = cdmc_pair_simulator(inner, channels).unwrap();
        let tape = RandomTape::new(0);
        let trace = run_pair_wakeup(wrapped.as_ref(), 4, (1, 2), &tape, 12).unwrap();
        assert_eq!(trace.solved_round(), None);
        let group = group_length(channels);
        // Opening round: both transmit.
        assert!(trace.rounds[0].actions.values().all(|a| a.is_transmit()));
        // Bits of channel 3 (010 as a 3-bit value 2): silent, transmit, silent.
        assert!(!trace.rounds[1].actions[&1].is_transmit());
        assert!(trace.rounds[2].actions[&1].is_transmit());
        assert!(!trace.rounds[3].actions[&1].is_transmit());
        // Next group opens right after and both are silent for good.
        for record in &trace.rounds[group..] {
            assert!(record.actions.values().all(|a| !a.is_transmit()));
        }
    }

    #[test]
    fn differing_channels_solve_within_one_group() {
        let channels = 8;
        let inner = Arc::new(FixedChannelUntilCollision {
            channels: vec![(1, 3), (2, 5)],
        });
        let wrapped = cdmc_pair_simulator(inner, channels).unwrap();
        let tape = RandomTape::new(0);
        let trace = run_pair_wakeup(wrapped.as_ref(), 4, (1, 2), &tape, 12).unwrap();
        let solved = trace.solved_round().expect("differing channels must solve");
        assert!(solved <= group_length(channels), "solved at {solved}");
    }

    #[test]
    fn single_channel_groups_are_one_round() {
        assert_eq!(group_length(1), 1);
        let inner = Arc::new(FixedChannelUntilCollision {
            channels: vec![(1, 1), (2, 1)],
        });
        let wrapped = cdmc_pair_simulator(inner, 1).unwrap();
        let tape = RandomTape::new(0);
        let trace = run_pair_wakeup(wrapped.as_ref(), 4, (1, 2), &tape, 6).unwrap();
        // Round 1 both transmit (fed collision immediately), round 2 on both
        // are silent.
        assert!(trace.rounds[0].actions.values().all(|a| a.is_transmit()));
        for record in &trace.rounds[1..] {
            assert!(record.actions.values().all(|a| !a.is_transmit()));
        }
    }

    #[test]
    fn rejects_degenerate_pair() {
        let inner = Arc::new(FixedChannelUntilCollision { channels: vec![] });
        let wrapped = cdmc_pair_simulator(inner, 2).unwrap();
        let tape = RandomTape::new(0);
        assert!(run_pair_wakeup(wrapped.as_ref(), 4, (2, 2), &tape, 4).is_err());
    }
}

#[cfg(test)]
mod tree_tests {
    use std::sync::Arc;

    use super::*;
    use crate::algorithms::cd_binary_search_wakeup;
    use crate::hitting::{play, FixedReferee, Player};
    use crate::model::{NodeCtx, Payload, RoundObservation};
    use crate::reductions::target_execution;

    /// Inner algorithm transmitting forever on a channel derived from the
    /// node id (so a pair of nodes usually differs).
    struct IdChannels {
        channels: usize,
    }

    impl Algorithm for IdChannels {
        fn decide(
            &self,
            ctx: &NodeCtx,
            _h: &[RoundObservation],
            _t: &mut TapeStream,
        ) -> NodeAction {
            NodeAction::Transmit {
                channel: (ctx.id - 1) % self.channels + 1,
                payload: Payload::new(),
            }
        }
    }

    #[test]
    fn single_channel_tree_equals_plain_tree_player() {
        let k = 8;
        let depth = 4;
        let tape = RandomTape::new(2);
        let inner = cd_binary_search_wakeup(k).unwrap();
        let mut plain =
            crate::reductions::TreePlayer::new(inner.clone(), k, outer_config(), depth, &tape)
                .unwrap();
        let mut wrapped = cdmc_tree_player(inner, k, 1, depth, &tape).unwrap();
        for i in 0..40 {
            assert_eq!(
                plain.next_proposal(),
                wrapped.next_proposal(),
                "proposal {i}"
            );
        }
    }

    #[test]
    fn tree_over_pair_simulation_wins_within_budget() {
        let k = 8;
        let channels = 4;
        let depth = 6;
        let inner: AlgorithmRef = Arc::new(IdChannels { channels });
        let wrapped = cdmc_pair_simulator(inner.clone(), channels).unwrap();
        for (a, b) in [(1usize, 2usize), (2, 6), (3, 5), (1, 5)] {
            let tape = RandomTape::new(a as u64 * 31 + b as u64);
            let target: crate::hitting::ElemSet = [a, b].into_iter().collect();
            let reference =
                target_execution(wrapped.as_ref(), k, &target, &outer_config(), &tape, 64).unwrap();
            let solve = reference.solved_round();
            let mut player = cdmc_tree_player(inner.clone(), k, channels, depth, &tape).unwrap();
            if let Some(solve) = solve {
                assert!(solve <= depth);
                let transcript = play(
                    &mut player,
                    &mut FixedReferee::new(target.clone()),
                    k,
                    true,
                    1 << 10,
                )
                .unwrap();
                let won = transcript.win_round().unwrap();
                assert!(won < (1 << solve), "({a},{b}) won {won} solve {solve}");
            } else {
                // Same id-derived channel: the pair never separates.
                assert_eq!((a - 1) % channels, (b - 1) % channels);
            }
        }
    }

    #[test]
    fn depth_zero_tree_proposes_opening_round_broadcasters() {
        let k = 8;
        let channels = 4;
        let inner: AlgorithmRef = Arc::new(IdChannels { channels });
        let tape = RandomTape::new(0);
        let mut player = cdmc_tree_player(inner, k, channels, 0, &tape).unwrap();
        // Every simulated node's inner transmits in round 1, so the group
        // opening has all of them broadcasting.
        let expected: crate::hitting::ElemSet = (1..=k).collect();
        assert_eq!(player.next_proposal(), expected);
    }
}
