//! The two multichannel players: one proposal per channel per simulated
//! round (winning at the first lone target broadcast on the smallest such
//! channel), and the two-proposal variant for pair targets (all
//! broadcasters, then the default-channel broadcasters).
//!
//! ```bash
//! cargo run --example multichannel_reduction
//! ```

use radiohit::algorithms::multichannel_wakeup;
use radiohit::hitting::{all_pairs_referee, play, FixedReferee, Referee};
use radiohit::model::{ModelConfig, RandomTape};
use radiohit::reductions::{
    first_lone_target_broadcast, first_meaningful_round, target_execution, McChannelPlayer,
    McTwoProposalPlayer,
};

fn main() {
    let k = 16;
    let channels = 4;
    let config = ModelConfig::multichannel(channels);
    let algorithm = multichannel_wakeup(k, channels).unwrap();

    println!("k = {k}, C = {channels}\n");
    for seed in 0..6u64 {
        let tape = RandomTape::new(seed);
        let target = all_pairs_referee(k, &tape).unwrap().draw_target(k);
        let reference =
            target_execution(algorithm.as_ref(), k, &target, &config, &tape, 4096).unwrap();

        let (round, channel) = first_lone_target_broadcast(&reference, &target, channels).unwrap();
        let mut per_channel = McChannelPlayer::new(algorithm.clone(), k, config, &tape).unwrap();
        let t1 = play(
            &mut per_channel,
            &mut FixedReferee::new(target.clone()),
            k,
            true,
            1 << 15,
        )
        .unwrap();
        let won = t1.win_round().unwrap();
        let tag = per_channel.tags()[won - 1];

        let meaningful = first_meaningful_round(&reference, &target).unwrap();
        let mut two = McTwoProposalPlayer::new(algorithm.clone(), k, config, &tape).unwrap();
        let t2 = play(
            &mut two,
            &mut FixedReferee::new(target.clone()),
            k,
            true,
            1 << 15,
        )
        .unwrap();
        let tag2 = two.tags()[t2.win_round().unwrap() - 1];

        println!(
            "seed {seed}: target {target:?}\n  per-channel player: lone broadcast at (round {round}, channel {channel}); \
             win tag (round {}, channel {:?})\n  two-proposal player: first meaningful round {meaningful}; win tag round {}",
            tag.sim_round,
            tag.channel,
            tag2.sim_round
        );
    }
}
