//! Deterministic wake-up with collision detection: the active nodes walk a
//! binary search over the id space, narrowing on collisions and silences
//! until one of them transmits alone. No randomness at all.
//!
//! ```bash
//! cargo run --example cd_binary_search
//! ```

use std::collections::BTreeSet;

use radiohit::algorithms::{cd_binary_search_wakeup, ceil_log2, willard_wakeup};
use radiohit::model::{run_wakeup, wakeup_winner, ModelConfig, RandomTape};

fn main() {
    let n = 32;
    let config = ModelConfig::single_channel_cd();
    let tape = RandomTape::new(0);

    let binary_search = cd_binary_search_wakeup(n).unwrap();
    for active in [
        BTreeSet::from([3usize, 5]),
        BTreeSet::from([17, 18, 19, 20]),
        (1..=n).collect::<BTreeSet<_>>(),
    ] {
        let trace = run_wakeup(binary_search.as_ref(), n, &active, &config, &tape, 64).unwrap();
        println!(
            "binary search, {} actives: solved round {} (bound {}), winner {}",
            active.len(),
            trace.solved_round().unwrap(),
            2 * ceil_log2(n),
            wakeup_winner(&trace).unwrap()
        );
    }

    // The randomized exponent search trades determinism for expected
    // O(log log n) rounds.
    let exponent_search = willard_wakeup(n).unwrap();
    let active: BTreeSet<usize> = (1..=8).map(|i| i * 4).collect();
    let mut rounds: Vec<usize> = (0..200)
        .map(|seed| {
            run_wakeup(
                exponent_search.as_ref(),
                n,
                &active,
                &config,
                &RandomTape::new(seed),
                4096,
            )
            .unwrap()
            .solved_round()
            .unwrap()
        })
        .collect();
    rounds.sort_unstable();
    println!(
        "exponent search, {} actives: median {} rounds over 200 seeds",
        active.len(),
        rounds[rounds.len() / 2]
    );
}
