//! The decay strategy solving wake-up: cycling transmit probabilities
//! 1/2, 1/4, ..., 1/n until someone broadcasts alone.
//!
//! ```bash
//! cargo run --example wakeup_decay
//! ```

use std::collections::BTreeSet;

use radiohit::algorithms::decay_wakeup;
use radiohit::model::{run_wakeup, wakeup_winner, ModelConfig, RandomTape};

fn main() {
    let n = 64;
    let algorithm = decay_wakeup(n).unwrap();
    let config = ModelConfig::single_channel();
    let active: BTreeSet<usize> = (1..=16).map(|i| i * 4).collect();
    println!(
        "n = {n}, {} active nodes, single channel, no collision detection",
        active.len()
    );

    let mut rounds = Vec::new();
    for seed in 0..20 {
        let tape = RandomTape::new(seed);
        let trace = run_wakeup(algorithm.as_ref(), n, &active, &config, &tape, 4096).unwrap();
        let solved = trace.solved_round().expect("decay solves");
        rounds.push(solved);
        if seed < 5 {
            println!(
                "  seed {seed}: solved in round {solved}, winner {}",
                wakeup_winner(&trace).unwrap()
            );
        }
    }
    rounds.sort_unstable();
    println!(
        "median over {} seeds: {} rounds",
        rounds.len(),
        rounds[rounds.len() / 2]
    );
}
