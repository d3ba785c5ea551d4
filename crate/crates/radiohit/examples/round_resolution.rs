//! Round resolution semantics on small topologies: lone delivery, collision,
//! collision detection, per-channel independence, and transmitter feedback.
//!
//! ```bash
//! cargo run --example round_resolution
//! ```

use std::collections::BTreeMap;

use radiohit::model::{resolve_round, ModelConfig, NodeAction, NodeId, Topology};

fn show(
    label: &str,
    topology: &Topology,
    config: &ModelConfig,
    actions: &BTreeMap<NodeId, NodeAction>,
) {
    println!("{label}");
    let observations = resolve_round(topology, config, actions).expect("valid round");
    for (node, action) in actions {
        println!("  node {node}: {action:?} -> {:?}", observations[node]);
    }
    println!();
}

fn main() {
    let transmit = |channel: usize, tag: u8| NodeAction::Transmit {
        channel,
        payload: vec![tag],
    };
    let listen = |channel: usize| NodeAction::Listen { channel };

    let pair = Topology::clique(2).unwrap();
    show(
        "two nodes, one transmitter: the listener receives",
        &pair,
        &ModelConfig::single_channel(),
        &[(1, transmit(1, 42)), (2, listen(1))].into_iter().collect(),
    );

    let triangle = Topology::clique(3).unwrap();
    show(
        "two transmitters, no collision detection: the listener hears silence",
        &triangle,
        &ModelConfig::single_channel(),
        &[(1, transmit(1, 1)), (2, transmit(1, 2)), (3, listen(1))]
            .into_iter()
            .collect(),
    );
    show(
        "same round with receiver collision detection",
        &triangle,
        &ModelConfig {
            channels: 1,
            receiver_cd: true,
            transmitter_cd: false,
        },
        &[(1, transmit(1, 1)), (2, transmit(1, 2)), (3, listen(1))]
            .into_iter()
            .collect(),
    );
    show(
        "two channels: the channel-2 transmitter cannot disturb channel 1",
        &triangle,
        &ModelConfig::multichannel(2),
        &[(1, transmit(1, 1)), (2, transmit(2, 2)), (3, listen(1))]
            .into_iter()
            .collect(),
    );
    show(
        "single-hop transmitter feedback: alone vs not alone",
        &triangle,
        &ModelConfig::single_channel_cd(),
        &[(1, transmit(1, 1)), (2, transmit(1, 2)), (3, listen(1))]
            .into_iter()
            .collect(),
    );

    let path = Topology::path(3).unwrap();
    show(
        "multihop: the far node is out of range",
        &path,
        &ModelConfig::single_channel(),
        &[(1, transmit(1, 9)), (2, listen(1)), (3, listen(1))]
            .into_iter()
            .collect(),
    );
}
