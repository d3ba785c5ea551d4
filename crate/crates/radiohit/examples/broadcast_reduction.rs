//! The broadcast reduction: a multi-instance hitting player simulates a
//! broadcast algorithm on a layered network whose inter-layer cuts it does
//! not know. Each winning proposal is exactly a message crossing the
//! deepest cut, the referee reveals the cut, and the simulation continues
//! in lockstep with the real network.
//!
//! ```bash
//! cargo run --example broadcast_reduction
//! ```

use radiohit::algorithms::decay_broadcast;
use radiohit::hitting::{play_multi, ElemSet, FixedReferee, MultiHittingConfig, Referee};
use radiohit::model::{run_broadcast, KeyDomain, ModelConfig, RandomTape};
use radiohit::reductions::{layered_broadcast_network, BroadcastMultihitPlayer};

fn main() {
    let n = 32;
    let depth = 4;
    let seed = 9;
    let config = ModelConfig {
        channels: 1,
        receiver_cd: true,
        transmitter_cd: false,
    };

    let tape = RandomTape::new(seed);
    let mut draw = tape.domain_stream(KeyDomain::Harness, 0);
    let layer_size = n / depth;
    let targets: Vec<ElemSet> = (0..depth)
        .map(|_| loop {
            let t: ElemSet = (1..=layer_size).filter(|_| draw.coin(0.3)).collect();
            if !t.is_empty() {
                break t;
            }
        })
        .collect();
    let network = layered_broadcast_network(n, depth, &targets).unwrap();
    println!(
        "layered network: {} layers of {layer_size} + terminal layer, {} nodes, diameter {}",
        depth,
        network.layout.total,
        network.topology.diameter()
    );
    for (i, target) in targets.iter().enumerate() {
        println!("  cut {}: labels {target:?}", i + 1);
    }

    // The reference: the algorithm run on the full topology.
    let algorithm = decay_broadcast(network.layout.total).unwrap();
    let reference = run_broadcast(
        algorithm.clone(),
        &network.topology,
        1,
        &config,
        &tape,
        4096,
    )
    .unwrap();
    println!(
        "\nreference broadcast finishes in round {:?}",
        reference.solved_round()
    );

    // The player: same algorithm, same tape, cuts hidden behind referees.
    let mut player = BroadcastMultihitPlayer::new(algorithm, n, depth, config, &tape).unwrap();
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
    for (i, instance) in game.instances.iter().enumerate() {
        let layer_entry = network.layout.layer_nodes(i + 2).next().unwrap();
        println!(
            "instance {}: won in round {:?}; real delivery to layer {} in round {:?}",
            i + 1,
            instance.win_round,
            i + 2,
            reference.activations.get(&layer_entry)
        );
    }
    assert_eq!(player.simulated_activations(), &reference.activations);
    println!("\nsimulated and real activation histories agree node-for-node");
}
