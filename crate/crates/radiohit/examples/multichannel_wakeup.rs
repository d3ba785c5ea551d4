//! Multichannel decay: each round every active node picks a channel and
//! runs a striped decay level there. More channels thin out the default
//! channel and reach the winning density sooner.
//!
//! ```bash
//! cargo run --example multichannel_wakeup
//! ```

use std::collections::BTreeSet;

use radiohit::algorithms::multichannel_wakeup;
use radiohit::model::{run_wakeup, ModelConfig, RandomTape};

fn main() {
    let n = 1024;
    let active: BTreeSet<usize> = (1..=32).map(|i| i * 31).collect();
    println!(
        "n = {n}, {} active nodes, 500 seeds per channel count",
        active.len()
    );
    for channels in [1usize, 2, 4, 8] {
        let algorithm = multichannel_wakeup(n, channels).unwrap();
        let config = ModelConfig::multichannel(channels);
        let mut rounds: Vec<usize> = (0..500)
            .map(|seed| {
                run_wakeup(
                    algorithm.as_ref(),
                    n,
                    &active,
                    &config,
                    &RandomTape::new(seed),
                    8192,
                )
                .unwrap()
                .solved_round()
                .unwrap()
            })
            .collect();
        rounds.sort_unstable();
        println!(
            "  C = {channels}: median solve round {}",
            rounds[rounds.len() / 2]
        );
    }
}
