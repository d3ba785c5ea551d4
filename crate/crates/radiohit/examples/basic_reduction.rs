//! The wake-up simulation strategy: a hitting-game player simulates a
//! wake-up algorithm on all k nodes, proposes each round's broadcaster ids,
//! and pretends everyone heard nothing. Its winning round lands exactly on
//! the round where the algorithm — run for real with just the target set
//! active, on the same tape — solves wake-up.
//!
//! ```bash
//! cargo run --example basic_reduction
//! ```

use radiohit::algorithms::decay_wakeup;
use radiohit::hitting::{play, FixedReferee};
use radiohit::model::{ModelConfig, RandomTape};
use radiohit::reductions::{check_consistency, target_execution, BasicPlayer};

fn main() {
    let k = 16;
    let config = ModelConfig::single_channel();
    let algorithm = decay_wakeup(k).unwrap();
    let target: std::collections::BTreeSet<usize> = [4, 11].into_iter().collect();

    println!("k = {k}, hidden target {target:?}, algorithm: decay\n");
    for seed in 0..10u64 {
        let tape = RandomTape::new(seed);
        let reference =
            target_execution(algorithm.as_ref(), k, &target, &config, &tape, 4096).unwrap();
        let mut player = BasicPlayer::new(algorithm.clone(), k, config, &tape).unwrap();
        let transcript = play(
            &mut player,
            &mut FixedReferee::new(target.clone()),
            k,
            true,
            8192,
        )
        .unwrap();
        let divergence = check_consistency(&player.simulation_trace(), &reference, &target);
        println!(
            "seed {seed}: target execution solves in round {:2}, player wins in round {:2}, \
             divergence before win: {:?}",
            reference.solved_round().unwrap(),
            transcript.win_round().unwrap(),
            divergence
        );
        assert_eq!(reference.solved_round(), transcript.win_round());
        assert_eq!(divergence, None);
    }
    println!("\nthe identity is exact: a fast wake-up algorithm is a fast hitting-game player");
}
