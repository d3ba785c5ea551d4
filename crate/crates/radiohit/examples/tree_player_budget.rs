//! The simulation-tree player: one fresh fixed-length simulation per guess,
//! forcing silence/collision per tree path. If the real execution solves in
//! round r, the matching depth-(r-1) path is reached within 2^r - 1
//! breadth-first guesses — turning a t-round algorithm into a 2^t-guess
//! player.
//!
//! ```bash
//! cargo run --example tree_player_budget
//! ```

use radiohit::algorithms::cd_binary_search_wakeup;
use radiohit::hitting::{all_pairs_referee, play, FixedReferee, Referee};
use radiohit::model::{ModelConfig, RandomTape};
use radiohit::reductions::{breadth_first_paths, target_execution, TreePlayer};

fn main() {
    println!("breadth-first tree paths at depth 2:");
    let paths: Vec<String> = breadth_first_paths(2).map(|n| n.path_string()).collect();
    println!("  {paths:?}\n");

    let k = 16;
    let depth = 8;
    let config = ModelConfig::single_channel_cd();
    let algorithm = cd_binary_search_wakeup(k).unwrap();
    println!(
        "k = {k}, tree depth {depth}, capacity {} guesses",
        (1u32 << (depth + 1)) - 1
    );

    for seed in 0..10u64 {
        let tape = RandomTape::new(seed);
        let target = all_pairs_referee(k, &tape).unwrap().draw_target(k);
        let reference =
            target_execution(algorithm.as_ref(), k, &target, &config, &tape, 64).unwrap();
        let solve = reference.solved_round().unwrap();
        let mut player = TreePlayer::new(algorithm.clone(), k, config, depth, &tape).unwrap();
        let transcript = play(
            &mut player,
            &mut FixedReferee::new(target.clone()),
            k,
            true,
            1024,
        )
        .unwrap();
        let won = transcript.win_round().unwrap();
        println!(
            "  seed {seed}: target {target:?} solves in round {solve}, \
             player wins at guess {won:3} <= 2^{solve} - 1 = {}",
            (1 << solve) - 1
        );
    }
}
