//! Simulation strategies: turning wake-up and broadcast algorithms into
//! hitting-game players.
//!
//! Every player here locally simulates an algorithm on all `k` nodes and
//! derives proposals from the simulated broadcast decisions. The simulation
//! is generally *not* a faithful run of the algorithm — the player invents
//! every observation — but it does not need to be: it only has to keep the
//! nodes of the hidden target set behaving exactly as they would in the
//! *target execution*, the reference run in which just those nodes are
//! active on the same random tape. The first simulated round in which
//! exactly one target node broadcasts then yields a winning proposal, and
//! [`check_consistency`] verifies the tracking mechanically.

mod broadcast;
mod cdmc;
mod players;
mod sim;
mod tree;

use std::collections::BTreeSet;

use crate::error::Result;
use crate::hitting::ElemSet;
use crate::model::{run_wakeup, Algorithm, ExecutionTrace, ModelConfig, NodeId, RandomTape};

pub use broadcast::{
    layered_broadcast_network, BroadcastMultihitPlayer, LayeredLayout, LayeredNetwork,
};
pub use cdmc::{
    cdmc_pair_simulator, cdmc_tree_player, group_length, outer_config, run_pair_wakeup,
};
pub use players::{BasicPlayer, CdPlayer, McChannelPlayer, McTwoProposalPlayer};
pub use sim::ReceiveRule;
pub use tree::{breadth_first_paths, SimTreeNode, TreePlayer};

/// Which simulated round (and, for multichannel players, channel) a
/// proposal was derived from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProposalTag {
    pub sim_round: usize,
    pub channel: Option<usize>,
}

/// The reference execution a player must track: the algorithm run with
/// exactly the target set active, on the same tape the player draws the
/// simulated nodes' bits from.
pub fn target_execution(
    algorithm: &dyn Algorithm,
    k: usize,
    target: &ElemSet,
    config: &ModelConfig,
    tape: &RandomTape,
    max_rounds: usize,
) -> Result<ExecutionTrace> {
    run_wakeup(algorithm, k, target, config, tape, max_rounds)
}

/// Compare a player's simulation against the target execution on the target
/// set's nodes, round by round over the common prefix: first round where a
/// target node's action or recorded observation differs, or `None`.
/// Observations are only compared where both traces recorded one, so a
/// final round that the player never completed (it won at the proposal) is
/// checked on actions alone.
pub fn check_consistency(
    player_simulation: &ExecutionTrace,
    target_execution: &ExecutionTrace,
    target: &BTreeSet<NodeId>,
) -> Option<usize> {
    let rounds = player_simulation
        .rounds
        .len()
        .min(target_execution.rounds.len());
    for i in 0..rounds {
        let sim = &player_simulation.rounds[i];
        let reference = &target_execution.rounds[i];
        debug_assert_eq!(sim.round, reference.round);
        for &u in target {
            if sim.actions.get(&u) != reference.actions.get(&u) {
                return Some(sim.round);
            }
            if let (Some(a), Some(b)) = (sim.observations.get(&u), reference.observations.get(&u)) {
                if a != b {
                    return Some(sim.round);
                }
            }
        }
    }
    None
}

/// First round of a wake-up trace in which exactly one target node
/// transmits on some channel, together with the smallest such channel.
/// Independent scan used as the oracle for the multichannel player.
pub fn first_lone_target_broadcast(
    trace: &ExecutionTrace,
    target: &BTreeSet<NodeId>,
    channels: usize,
) -> Option<(usize, usize)> {
    for record in &trace.rounds {
        for channel in 1..=channels {
            let count = target
                .iter()
                .filter(|u| {
                    record
                        .actions
                        .get(u)
                        .is_some_and(|a| a.transmits_on(channel))
                })
                .count();
            if count == 1 {
                return Some((record.round, channel));
            }
        }
    }
    None
}

/// First *meaningful* round of a wake-up trace for a two-element target:
/// exactly one target node transmits on the default channel, or exactly one
/// target node transmits at all.
pub fn first_meaningful_round(trace: &ExecutionTrace, target: &BTreeSet<NodeId>) -> Option<usize> {
    for record in &trace.rounds {
        let transmitting: Vec<NodeId> = target
            .iter()
            .copied()
            .filter(|u| record.actions.get(u).is_some_and(|a| a.is_transmit()))
            .collect();
        let on_default = transmitting
            .iter()
            .filter(|u| record.actions[u].transmits_on(crate::model::DEFAULT_CHANNEL))
            .count();
        if on_default == 1 || transmitting.len() == 1 {
            return Some(record.round);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algorithms::{
        cd_binary_search_wakeup, decay_broadcast, decay_wakeup, multichannel_wakeup, willard_wakeup,
    };
    use crate::hitting::{play, play_multi, FixedReferee, MultiHittingConfig, Player, Referee};
    use crate::model::{
        run_broadcast, AlgorithmRef, NodeAction, NodeCtx, RoundObservation, TapeStream,
        DEFAULT_CHANNEL,
    };

    fn set(ids: &[usize]) -> BTreeSet<usize> {
        ids.iter().copied().collect()
    }

    fn all_pairs(k: usize) -> Vec<BTreeSet<usize>> {
        let mut out = Vec::new();
        for a in 1..=k {
            for b in (a + 1)..=k {
                out.push(set(&[a, b]));
            }
        }
        out
    }

    /// Transmits in round 1 from one fixed id; silent otherwise.
    struct OnceTransmitter {
        id: NodeId,
    }

    impl Algorithm for OnceTransmitter {
        fn decide(
            &self,
            ctx: &NodeCtx,
            _history: &[RoundObservation],
            _tape: &mut TapeStream,
        ) -> NodeAction {
            if ctx.id == self.id && ctx.local_round == 1 {
                NodeAction::Transmit {
                    channel: DEFAULT_CHANNEL,
                    payload: vec![],
                }
            } else {
                NodeAction::listen_default()
            }
        }
    }

    struct AlwaysTransmit;

    impl Algorithm for AlwaysTransmit {
        fn decide(
            &self,
            _ctx: &NodeCtx,
            _history: &[RoundObservation],
            _tape: &mut TapeStream,
        ) -> NodeAction {
            NodeAction::Transmit {
                channel: DEFAULT_CHANNEL,
                payload: vec![],
            }
        }
    }

    struct NeverTransmit;

    impl Algorithm for NeverTransmit {
        fn decide(
            &self,
            _ctx: &NodeCtx,
            _history: &[RoundObservation],
            _tape: &mut TapeStream,
        ) -> NodeAction {
            NodeAction::listen_default()
        }
    }

    /// Fixed ids transmit every round; everyone else listens.
    struct FixedTransmitters {
        ids: BTreeSet<NodeId>,
    }

    impl Algorithm for FixedTransmitters {
        fn decide(
            &self,
            ctx: &NodeCtx,
            _history: &[RoundObservation],
            _tape: &mut TapeStream,
        ) -> NodeAction {
            if self.ids.contains(&ctx.id) {
                NodeAction::Transmit {
                    channel: DEFAULT_CHANNEL,
                    payload: vec![],
                }
            } else {
                NodeAction::listen_default()
            }
        }
    }

    #[test]
    fn basic_player_wins_immediately_on_lone_round_one_transmitter() {
        let tape = RandomTape::new(0);
        let config = ModelConfig::single_channel();
        for target in [set(&[1, 5]), set(&[1]), set(&[1, 2, 3])] {
            let mut player =
                BasicPlayer::new(Arc::new(OnceTransmitter { id: 1 }), 8, config, &tape).unwrap();
            let t = play(&mut player, &mut FixedReferee::new(target), 8, false, 8).unwrap();
            assert_eq!(t.win_round(), Some(1));
        }
    }

    #[test]
    fn players_reject_mismatched_detection_settings() {
        let tape = RandomTape::new(0);
        let alg = decay_wakeup(8).unwrap();
        let cd = ModelConfig::single_channel_cd();
        let plain = ModelConfig::single_channel();
        assert!(BasicPlayer::new(alg.clone(), 8, cd, &tape).is_err());
        assert!(McChannelPlayer::new(alg.clone(), 8, cd, &tape).is_err());
        assert!(McTwoProposalPlayer::new(alg.clone(), 8, cd, &tape).is_err());
        assert!(CdPlayer::new(alg.clone(), 8, plain, &tape).is_err());
        assert!(TreePlayer::new(alg, 8, plain, 4, &tape).is_err());
    }

    #[test]
    fn basic_player_never_wins_when_everyone_transmits() {
        let tape = RandomTape::new(0);
        let config = ModelConfig::single_channel();
        let mut player = BasicPlayer::new(Arc::new(AlwaysTransmit), 8, config, &tape).unwrap();
        let t = play(
            &mut player,
            &mut FixedReferee::new(set(&[1, 2])),
            8,
            true,
            32,
        )
        .unwrap();
        assert_eq!(t.win_round(), None);
    }

    #[test]
    fn basic_player_win_round_equals_target_solve_round() {
        let k = 16;
        let config = ModelConfig::single_channel();
        let alg = decay_wakeup(k).unwrap();
        for seed in 0..10 {
            let tape = RandomTape::new(seed);
            for target in all_pairs(k).into_iter().step_by(7) {
                let reference =
                    target_execution(alg.as_ref(), k, &target, &config, &tape, 4096).unwrap();
                let solve = reference.solved_round().expect("pair decay solves");
                let mut player = BasicPlayer::new(alg.clone(), k, config, &tape).unwrap();
                let t = play(
                    &mut player,
                    &mut FixedReferee::new(target.clone()),
                    k,
                    true,
                    8192,
                )
                .unwrap();
                assert_eq!(t.win_round(), Some(solve), "seed {seed} target {target:?}");
                assert_eq!(
                    check_consistency(&player.simulation_trace(), &reference, &target),
                    None
                );
            }
        }
    }

    #[test]
    fn cd_player_is_consistent_for_pairs_and_wins_with_target() {
        let k = 16;
        let config = ModelConfig::single_channel_cd();
        for (name, alg) in [
            ("cd-binsearch", cd_binary_search_wakeup(k).unwrap()),
            ("willard", willard_wakeup(k).unwrap()),
        ] {
            for seed in 0..5 {
                let tape = RandomTape::new(seed);
                for target in all_pairs(k).into_iter().step_by(5) {
                    let reference =
                        target_execution(alg.as_ref(), k, &target, &config, &tape, 4096).unwrap();
                    let solve = reference.solved_round().unwrap();
                    let mut player = CdPlayer::new(alg.clone(), k, config, &tape).unwrap();
                    let t = play(
                        &mut player,
                        &mut FixedReferee::new(target.clone()),
                        k,
                        true,
                        8192,
                    )
                    .unwrap();
                    assert_eq!(t.win_round(), Some(solve), "{name} seed {seed} {target:?}");
                    assert_eq!(
                        check_consistency(&player.simulation_trace(), &reference, &target),
                        None,
                        "{name} seed {seed} {target:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn cd_player_three_element_target_diverges() {
        // Two fixed transmitters collide forever; the third target node
        // really detects those collisions but the receive fiction feeds it
        // silence.
        let k = 8;
        let config = ModelConfig::single_channel_cd();
        let alg: AlgorithmRef = Arc::new(FixedTransmitters { ids: set(&[1, 2]) });
        let tape = RandomTape::new(3);
        let target = set(&[1, 2, 3]);
        let reference = target_execution(alg.as_ref(), k, &target, &config, &tape, 8).unwrap();
        let mut player = CdPlayer::new(alg, k, config, &tape).unwrap();
        let t = play(
            &mut player,
            &mut FixedReferee::new(target.clone()),
            k,
            false,
            8,
        )
        .unwrap();
        assert_eq!(t.win_round(), None);
        assert_eq!(
            check_consistency(&player.simulation_trace(), &reference, &target),
            Some(1)
        );
    }

    #[test]
    fn tree_player_depth_zero_proposes_round_one_broadcasters() {
        let k = 8;
        let tape = RandomTape::new(1);
        let alg = cd_binary_search_wakeup(k).unwrap();
        let mut player =
            TreePlayer::new(alg, k, ModelConfig::single_channel_cd(), 0, &tape).unwrap();
        assert_eq!(player.capacity(), 1);
        let p = player.next_proposal();
        assert_eq!(p, set(&[1, 2, 3, 4]));
        // Wrapping: the same proposal again.
        assert_eq!(player.next_proposal(), set(&[1, 2, 3, 4]));
    }

    #[test]
    fn tree_player_hand_enumerated_prefix() {
        // Binary search on [8] with target {5,6}: the reference run is
        // silence, collision, lone transmit — solved in round 3, so the
        // matching depth-2 node ("01", fifth in breadth-first order) wins at
        // the latest. Walking the first guesses by hand: {1,2,3,4}, then
        // {1,2,5,6}, then {1,2}, then {1,3,5,7} from path "00" — which
        // already hits {5,6} in exactly one element. Early accidental hits
        // are fine; the 2^r - 1 bound is an upper bound.
        let k = 8;
        let tape = RandomTape::new(0);
        let alg = cd_binary_search_wakeup(k).unwrap();
        let config = ModelConfig::single_channel_cd();
        let target = set(&[5, 6]);
        let reference = target_execution(alg.as_ref(), k, &target, &config, &tape, 64).unwrap();
        assert_eq!(reference.solved_round(), Some(3));
        let mut player = TreePlayer::new(alg, k, config, 8, &tape).unwrap();
        let t = play(&mut player, &mut FixedReferee::new(target), k, true, 1024).unwrap();
        assert_eq!(t.win_round(), Some(4));
        assert!(t.win_round().unwrap() < (1 << 3));
    }

    #[test]
    fn tree_player_budget_holds_for_deterministic_search() {
        let k = 16;
        let depth = 8;
        let config = ModelConfig::single_channel_cd();
        let alg = cd_binary_search_wakeup(k).unwrap();
        for seed in 0..20 {
            let tape = RandomTape::new(seed);
            for target in all_pairs(k).into_iter().step_by(11) {
                let reference =
                    target_execution(alg.as_ref(), k, &target, &config, &tape, 64).unwrap();
                let solve = reference.solved_round().unwrap();
                assert!(solve <= depth);
                let mut player = TreePlayer::new(alg.clone(), k, config, depth, &tape).unwrap();
                let budget = (1usize << solve) - 1;
                let t = play(
                    &mut player,
                    &mut FixedReferee::new(target.clone()),
                    k,
                    true,
                    1024,
                )
                .unwrap();
                let won = t.win_round().unwrap();
                assert!(won <= budget, "won {won} > budget {budget} for {target:?}");
            }
        }
    }

    #[test]
    fn tree_player_budget_holds_for_randomized_search_at_exact_depth() {
        let k = 16;
        let config = ModelConfig::single_channel_cd();
        let alg = willard_wakeup(k).unwrap();
        for seed in 0..50 {
            let tape = RandomTape::new(seed);
            let target = set(&[(seed as usize % 15) + 1, 16]);
            let reference =
                target_execution(alg.as_ref(), k, &target, &config, &tape, 2048).unwrap();
            let solve = reference.solved_round().unwrap();
            if solve > 12 {
                continue;
            }
            let mut player = TreePlayer::new(alg.clone(), k, config, solve, &tape).unwrap();
            let budget = (1usize << solve) - 1;
            let t = play(
                &mut player,
                &mut FixedReferee::new(target.clone()),
                k,
                true,
                1 << 13,
            )
            .unwrap();
            let won = t.win_round().unwrap();
            assert!(won <= budget, "seed {seed} won {won} > {budget}");
        }
    }

    #[test]
    fn mc_channel_player_single_channel_equals_basic_player() {
        let k = 16;
        let config = ModelConfig::single_channel();
        let alg = decay_wakeup(k).unwrap();
        let tape = RandomTape::new(9);
        let mut basic = BasicPlayer::new(alg.clone(), k, config, &tape).unwrap();
        let mut mc = McChannelPlayer::new(alg, k, config, &tape).unwrap();
        for _ in 0..40 {
            assert_eq!(basic.next_proposal(), mc.next_proposal());
        }
    }

    #[test]
    fn mc_channel_player_charges_exactly_one_proposal_per_channel() {
        let k = 8;
        let channels = 3;
        let config = ModelConfig::multichannel(channels);
        let alg = multichannel_wakeup(k, channels).unwrap();
        let tape = RandomTape::new(4);
        let mut player = McChannelPlayer::new(alg, k, config, &tape).unwrap();
        for _ in 0..30 {
            player.next_proposal();
        }
        for (i, tag) in player.tags().iter().enumerate() {
            assert_eq!(tag.sim_round, i / channels + 1);
            assert_eq!(tag.channel, Some(i % channels + 1));
        }
    }

    #[test]
    fn mc_channel_player_wins_at_first_lone_broadcast_min_channel() {
        let k = 16;
        for channels in [2usize, 4] {
            let config = ModelConfig::multichannel(channels);
            let alg = multichannel_wakeup(k, channels).unwrap();
            for seed in 0..25 {
                let tape = RandomTape::new(seed);
                let target = set(&[(seed as usize % 15) + 1, 16]);
                let reference =
                    target_execution(alg.as_ref(), k, &target, &config, &tape, 4096).unwrap();
                let (round, channel) =
                    first_lone_target_broadcast(&reference, &target, channels).unwrap();
                let mut player = McChannelPlayer::new(alg.clone(), k, config, &tape).unwrap();
                let t = play(
                    &mut player,
                    &mut FixedReferee::new(target.clone()),
                    k,
                    true,
                    1 << 15,
                )
                .unwrap();
                let won = t.win_round().unwrap();
                assert_eq!(
                    player.tags()[won - 1],
                    ProposalTag {
                        sim_round: round,
                        channel: Some(channel)
                    },
                    "C={channels} seed={seed}"
                );
                assert_eq!(won, (round - 1) * channels + channel);
            }
        }
    }

    #[test]
    fn mc_two_proposal_player_wins_at_first_meaningful_round() {
        let k = 16;
        for channels in [2usize, 4] {
            let config = ModelConfig::multichannel(channels);
            let alg = multichannel_wakeup(k, channels).unwrap();
            for seed in 0..25 {
                let tape = RandomTape::new(seed);
                let target = set(&[(seed as usize % 15) + 1, 16]);
                let reference =
                    target_execution(alg.as_ref(), k, &target, &config, &tape, 4096).unwrap();
                let meaningful = first_meaningful_round(&reference, &target).unwrap();
                let mut player = McTwoProposalPlayer::new(alg.clone(), k, config, &tape).unwrap();
                let t = play(
                    &mut player,
                    &mut FixedReferee::new(target.clone()),
                    k,
                    true,
                    1 << 15,
                )
                .unwrap();
                let won = t.win_round().unwrap();
                assert_eq!(
                    player.tags()[won - 1].sim_round,
                    meaningful,
                    "C={channels} seed={seed}"
                );
            }
        }
    }

    #[test]
    fn mc_two_proposal_player_hand_cases() {
        // Scripted channel choices make the proof's case split concrete.
        // Node 3 uses channel 1 and node 7 channel 2 from round 2 on; both
        // are silent in round 1; nodes outside the target chatter on
        // channel 2 throughout.
        struct Script;
        impl Algorithm for Script {
            fn decide(
                &self,
                ctx: &NodeCtx,
                _h: &[RoundObservation],
                _t: &mut TapeStream,
            ) -> NodeAction {
                let transmit = |channel: usize| NodeAction::Transmit {
                    channel,
                    payload: vec![],
                };
                match (ctx.id, ctx.local_round) {
                    (3, 1) | (7, 1) => NodeAction::listen_default(),
                    (3, _) => transmit(1),
                    (7, _) => transmit(2),
                    (_, _) => transmit(2),
                }
            }
        }
        let k = 8;
        let config = ModelConfig::multichannel(2);
        let target = set(&[3, 7]);
        let tape = RandomTape::new(0);
        let alg: AlgorithmRef = Arc::new(Script);
        let reference = target_execution(alg.as_ref(), k, &target, &config, &tape, 8).unwrap();
        // Round 1 is not meaningful (both silent); round 2 satisfies both
        // conditions at once: node 3 is the lone target node on channel 1.
        assert_eq!(first_meaningful_round(&reference, &target), Some(2));
        let mut player = McTwoProposalPlayer::new(alg, k, config, &tape).unwrap();
        let t = play(
            &mut player,
            &mut FixedReferee::new(target.clone()),
            k,
            true,
            64,
        )
        .unwrap();
        let won = t.win_round().unwrap();
        assert_eq!(player.tags()[won - 1].sim_round, 2);
        // The winning proposal is the second of its round: the full
        // broadcaster set contains both target nodes, the channel-1 subset
        // only node 3.
        assert_eq!(player.tags()[won - 1].channel, Some(DEFAULT_CHANNEL));
        assert!(t.proposals[won - 1].contains(&3) && !t.proposals[won - 1].contains(&7));

        // Both target nodes on channel 1 at once: every proposal holds both,
        // so nothing wins and the simulation stays consistent.
        struct BothLoud;
        impl Algorithm for BothLoud {
            fn decide(
                &self,
                ctx: &NodeCtx,
                _h: &[RoundObservation],
                _t: &mut TapeStream,
            ) -> NodeAction {
                if ctx.id == 3 || ctx.id == 7 {
                    NodeAction::Transmit {
                        channel: DEFAULT_CHANNEL,
                        payload: vec![],
                    }
                } else {
                    NodeAction::listen_default()
                }
            }
        }
        let alg: AlgorithmRef = Arc::new(BothLoud);
        let reference = target_execution(alg.as_ref(), k, &target, &config, &tape, 8).unwrap();
        assert_eq!(first_meaningful_round(&reference, &target), None);
        let mut player = McTwoProposalPlayer::new(alg, k, config, &tape).unwrap();
        let t = play(
            &mut player,
            &mut FixedReferee::new(target.clone()),
            k,
            true,
            16,
        )
        .unwrap();
        assert_eq!(t.win_round(), None);
        assert_eq!(
            check_consistency(&player.simulation_trace(), &reference, &target),
            None
        );
    }

    #[test]
    fn broadcast_player_tracks_collision_reactive_multichannel_chatter() {
        // A broadcast algorithm that hops to channel 2 every third round and
        // falls silent for a while after hearing a collision. Cross-cut
        // chatter on channel 2 delivers nothing (inactive nodes listen on
        // channel 1), and intra-layer collision reactions are simulated
        // exactly, so the player still tracks the reference run.
        struct Chatter;
        impl Algorithm for Chatter {
            fn decide(
                &self,
                ctx: &NodeCtx,
                history: &[RoundObservation],
                tape: &mut TapeStream,
            ) -> NodeAction {
                let cooling = history.iter().rev().take(2).any(|o| {
                    matches!(
                        o,
                        RoundObservation::CollisionDetected
                            | RoundObservation::TransmitFeedback { alone: false }
                    )
                });
                // One coin per round regardless of the branch taken.
                let heads = tape.coin(0.4);
                if cooling || !heads {
                    return NodeAction::listen_default();
                }
                let channel = if ctx.local_round.is_multiple_of(3) {
                    2
                } else {
                    1
                };
                NodeAction::Transmit {
                    channel,
                    payload: crate::model::BROADCAST_MESSAGE.to_vec(),
                }
            }
        }
        let n = 16;
        let depth = 4;
        let config = ModelConfig {
            channels: 2,
            receiver_cd: true,
            transmitter_cd: false,
        };
        let alg: AlgorithmRef = Arc::new(Chatter);
        for seed in 0..25u64 {
            let tape = RandomTape::new(seed);
            let mut pick = tape.domain_stream(crate::model::KeyDomain::Harness, 3);
            let layout = LayeredLayout::new(n, depth).unwrap();
            let targets: Vec<ElemSet> = (0..depth)
                .map(|_| set(&[1 + pick.pick(layout.layer_size as u64) as usize]))
                .collect();
            let net = layered_broadcast_network(n, depth, &targets).unwrap();
            let reference =
                run_broadcast(alg.clone(), &net.topology, 1, &config, &tape, 1 << 13).unwrap();
            assert!(reference.solved_round().is_some(), "seed {seed}");
            let mut player =
                BroadcastMultihitPlayer::new(alg.clone(), n, depth, config, &tape).unwrap();
            let mut referees: Vec<Box<dyn Referee>> = targets
                .iter()
                .map(|t| Box::new(FixedReferee::new(t.clone())) as Box<dyn Referee>)
                .collect();
            let game = play_multi(
                &mut player,
                &mut referees,
                MultiHittingConfig::new(n, depth).unwrap(),
                1 << 14,
            )
            .unwrap();
            assert!(game.complete, "seed {seed}");
            assert_eq!(
                player.simulated_activations(),
                &reference.activations,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn basic_player_identity_across_registry_algorithms() {
        // The winning-round identity holds for every tape algorithm in the
        // registry that runs in this setting, not just decay.
        let k = 8;
        let config = ModelConfig::single_channel();
        let algorithms: Vec<AlgorithmRef> = vec![
            decay_wakeup(k).unwrap(),
            crate::algorithms::uniform_wakeup(
                crate::algorithms::ProbabilitySchedule::new(vec![0.5, 0.25]).unwrap(),
            ),
            multichannel_wakeup(k, 1).unwrap(),
        ];
        for algorithm in &algorithms {
            for target in all_pairs(k) {
                for seed in 0..100u64 {
                    let tape = RandomTape::new(seed);
                    let reference =
                        target_execution(algorithm.as_ref(), k, &target, &config, &tape, 4096)
                            .unwrap();
                    let mut player = BasicPlayer::new(algorithm.clone(), k, config, &tape).unwrap();
                    let t = play(
                        &mut player,
                        &mut FixedReferee::new(target.clone()),
                        k,
                        true,
                        8192,
                    )
                    .unwrap();
                    assert_eq!(t.win_round(), reference.solved_round(), "{target:?} {seed}");
                }
            }
        }
    }

    #[test]
    fn broadcast_player_tracks_the_real_network() {
        let n = 16;
        for depth in [1usize, 4] {
            let config = ModelConfig {
                channels: 1,
                receiver_cd: true,
                transmitter_cd: false,
            };
            for seed in 0..15u64 {
                let mut pick =
                    RandomTape::new(seed).domain_stream(crate::model::KeyDomain::Harness, 1);
                let layout = LayeredLayout::new(n, depth).unwrap();
                let targets: Vec<ElemSet> = (0..depth)
                    .map(|_| set(&[1 + pick.pick(layout.layer_size as u64) as usize]))
                    .collect();
                let net = layered_broadcast_network(n, depth, &targets).unwrap();
                let alg = decay_broadcast(net.layout.total).unwrap();
                let tape = RandomTape::new(seed);
                let reference =
                    run_broadcast(alg.clone(), &net.topology, 1, &config, &tape, 4096).unwrap();
                let solve = reference.solved_round().expect("decay broadcast finishes");

                let mut player =
                    BroadcastMultihitPlayer::new(alg, n, depth, config, &tape).unwrap();
                let mut referees: Vec<Box<dyn Referee>> = targets
                    .iter()
                    .map(|t| Box::new(FixedReferee::new(t.clone())) as Box<dyn Referee>)
                    .collect();
                let game = play_multi(
                    &mut player,
                    &mut referees,
                    MultiHittingConfig::new(n, depth).unwrap(),
                    1 << 14,
                )
                .unwrap();
                assert!(game.complete, "seed {seed}");
                // Instance i's win round is the round layer i+1 got the message.
                for (i, instance) in game.instances.iter().enumerate() {
                    let first_next = net.layout.layer_nodes(i + 2).next().unwrap();
                    assert_eq!(
                        instance.win_round,
                        reference.activations.get(&first_next).copied(),
                        "seed {seed} instance {i}"
                    );
                }
                assert_eq!(game.rounds_to_win(), Some(solve));
                // The simulation's activation history matches the real run.
                assert_eq!(player.simulated_activations(), &reference.activations);
            }
        }
    }

    #[test]
    fn broadcast_player_skip_empty_charging_still_tracks_rounds() {
        let n = 12;
        let depth = 3;
        let config = ModelConfig {
            channels: 1,
            receiver_cd: true,
            transmitter_cd: false,
        };
        let layout = LayeredLayout::new(n, depth).unwrap();
        let targets: Vec<ElemSet> = vec![set(&[2]), set(&[1, 3]), set(&[4])];
        let net = layered_broadcast_network(n, depth, &targets).unwrap();
        let _ = layout;
        let alg = decay_broadcast(net.layout.total).unwrap();
        let tape = RandomTape::new(11);
        let reference = run_broadcast(alg.clone(), &net.topology, 1, &config, &tape, 4096).unwrap();
        let mut player =
            BroadcastMultihitPlayer::with_charging(alg, n, depth, config, &tape, false).unwrap();
        let mut referees: Vec<Box<dyn Referee>> = targets
            .iter()
            .map(|t| Box::new(FixedReferee::new(t.clone())) as Box<dyn Referee>)
            .collect();
        let game = play_multi(
            &mut player,
            &mut referees,
            MultiHittingConfig::new(n, depth).unwrap(),
            1 << 14,
        )
        .unwrap();
        assert!(game.complete);
        // Game rounds are compressed, but the winning proposals' simulated
        // rounds still equal the real delivery rounds.
        let mut wins = game.instances.iter().map(|i| i.win_round.unwrap());
        let mut delivered = (2..=depth + 1)
            .map(|layer| reference.activations[&net.layout.layer_nodes(layer).next().unwrap()]);
        for _ in 0..depth {
            let tag = player.tags()[wins.next().unwrap() - 1];
            assert_eq!(tag.sim_round, delivered.next().unwrap());
        }
    }

    #[test]
    fn broadcast_player_stalls_with_the_network_when_nothing_is_sent() {
        let n = 8;
        let depth = 2;
        let config = ModelConfig {
            channels: 1,
            receiver_cd: true,
            transmitter_cd: false,
        };
        let targets: Vec<ElemSet> = vec![set(&[1]), set(&[2])];
        let net = layered_broadcast_network(n, depth, &targets).unwrap();
        let alg: AlgorithmRef = Arc::new(NeverTransmit);
        let tape = RandomTape::new(0);
        let reference = run_broadcast(alg.clone(), &net.topology, 1, &config, &tape, 32).unwrap();
        assert_eq!(reference.solved_round(), None);
        assert_eq!(reference.activations.len(), 1);
        let mut player = BroadcastMultihitPlayer::new(alg, n, depth, config, &tape).unwrap();
        let mut referees: Vec<Box<dyn Referee>> = targets
            .iter()
            .map(|t| Box::new(FixedReferee::new(t.clone())) as Box<dyn Referee>)
            .collect();
        let game = play_multi(
            &mut player,
            &mut referees,
            MultiHittingConfig::new(n, depth).unwrap(),
            32,
        )
        .unwrap();
        assert!(!game.complete);
        assert_eq!(game.instances[0].win_round, None);
        assert_eq!(player.simulated_activations().len(), 1);
    }
}
