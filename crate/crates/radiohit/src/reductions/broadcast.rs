//! Layered broadcast networks and the multi-instance hitting player built
//! on them.
//!
//! The network has `D` layers of `⌊n/D⌋` nodes plus a terminal layer holding
//! the leftovers (or one extra node when `D` divides `n`). Every layer is a
//! clique; layer `i` connects to layer `i+1` through exactly the nodes whose
//! in-layer labels lie in the `i`-th target set. A player simulating a
//! broadcast algorithm on this network does not need to know the targets:
//! everything it cannot simulate is communication across the deepest cut,
//! and the first time that cut would carry a message — exactly one
//! target-labeled node transmitting on the default channel — is precisely a
//! winning proposal in the hitting game, which reveals the target and lets
//! the simulation continue exactly.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hitting::{ElemSet, MultiPlayer, Player};
use crate::model::{
    AlgorithmRef, BroadcastEngine, ModelConfig, NodeId, RandomTape, Topology, DEFAULT_CHANNEL,
};
use crate::reductions::ProposalTag;

/// Structural facts about a layered network that do not depend on the
/// targets: layer count, layer size, and the id blocks per layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayeredLayout {
    /// Nominal network size the construction was asked for.
    pub n: usize,
    /// Number of relay layers (the network has `depth + 1` layers).
    pub depth: usize,
    /// Nodes per relay layer, `⌊n / depth⌋`.
    pub layer_size: usize,
    /// Total nodes including the terminal layer.
    pub total: usize,
}

impl LayeredLayout {
    pub fn new(n: usize, depth: usize) -> Result<Self> {
        if depth < 1 {
            return Err(Error::InvalidInput("need at least one relay layer".into()));
        }
        if n < depth {
            return Err(Error::InvalidInput(format!(
                "need n >= D for non-empty layers, got n={n}, D={depth}"
            )));
        }
        let layer_size = n / depth;
        let remainder = n - depth * layer_size;
        // An evenly divided n gets one extra node so the terminal layer is
        // never empty.
        let total = if remainder == 0 { n + 1 } else { n };
        Ok(LayeredLayout {
            n,
            depth,
            layer_size,
            total,
        })
    }

    /// 1-based layer of a node id; the terminal layer is `depth + 1`.
    pub fn layer_of(&self, node: NodeId) -> usize {
        debug_assert!((1..=self.total).contains(&node));
        ((node - 1) / self.layer_size + 1).min(self.depth + 1)
    }

    /// Node ids of one layer.
    pub fn layer_nodes(&self, layer: usize) -> std::ops::RangeInclusive<NodeId> {
        debug_assert!((1..=self.depth + 1).contains(&layer));
        if layer <= self.depth {
            ((layer - 1) * self.layer_size + 1)..=(layer * self.layer_size)
        } else {
            (self.depth * self.layer_size + 1)..=self.total
        }
    }

    /// Global id of the node with `label` in a relay `layer`.
    pub fn node_for_label(&self, layer: usize, label: usize) -> NodeId {
        debug_assert!((1..=self.depth).contains(&layer));
        debug_assert!((1..=self.layer_size).contains(&label));
        (layer - 1) * self.layer_size + label
    }

    /// In-layer label of a relay-layer node.
    pub fn label_of(&self, node: NodeId) -> usize {
        (node - 1) % self.layer_size + 1
    }

    /// Intra-layer clique adjacency with no cross-layer edges, 1-indexed.
    fn clique_adjacency(&self) -> Vec<BTreeSet<NodeId>> {
        let mut adjacency = vec![BTreeSet::new(); self.total + 1];
        for layer in 1..=self.depth + 1 {
            let nodes: Vec<NodeId> = self.layer_nodes(layer).collect();
            for &a in &nodes {
                for &b in &nodes {
                    if a != b {
                        adjacency[a].insert(b);
                    }
                }
            }
        }
        adjacency
    }
}

/// A layered network together with its layout and targets.
#[derive(Clone, Debug)]
pub struct LayeredNetwork {
    pub layout: LayeredLayout,
    pub targets: Vec<ElemSet>,
    pub topology: Topology,
}

/// Build the layered broadcast network for the given per-cut target sets
/// (one per relay layer, labels within `[⌊n/D⌋]`).
pub fn layered_broadcast_network(
    n: usize,
    depth: usize,
    targets: &[ElemSet],
) -> Result<LayeredNetwork> {
    let layout = LayeredLayout::new(n, depth)?;
    if targets.len() != depth {
        return Err(Error::InvalidInput(format!(
            "need one target per relay layer: {} != {depth}",
            targets.len()
        )));
    }
    let mut edges = Vec::new();
    for layer in 1..=depth + 1 {
        let nodes: Vec<NodeId> = layout.layer_nodes(layer).collect();
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    for (i, target) in targets.iter().enumerate() {
        let layer = i + 1;
        if target.is_empty() {
            return Err(Error::InvalidInput(format!(
                "target for layer {layer} is empty; the network would be disconnected"
            )));
        }
        if let Some(&bad) = target.iter().find(|&&l| l < 1 || l > layout.layer_size) {
            return Err(Error::InvalidInput(format!(
                "label {bad} outside [1,{}] in target for layer {layer}",
                layout.layer_size
            )));
        }
        for &label in target {
            let from = layout.node_for_label(layer, label);
            for to in layout.layer_nodes(layer + 1) {
                edges.push((from, to));
            }
        }
    }
    let topology = Topology::new(layout.total, edges)?;
    Ok(LayeredNetwork {
        layout,
        targets: targets.to_vec(),
        topology,
    })
}

/// Multi-instance hitting player simulating a broadcast algorithm on a
/// layered network whose cuts it does not know. Instance `i`'s universe is
/// the label set of layer `i`; each simulated round proposes the labels of
/// the deepest informed layer's default-channel broadcasters. Winning
/// instance `i` reveals its target, wires the cut, and activates the next
/// layer in the same round — exactly what the real network would have done.
pub struct BroadcastMultihitPlayer {
    layout: LayeredLayout,
    engine: BroadcastEngine,
    frontier: usize,
    /// Charge a game round even when no frontier node broadcasts (the
    /// default, keeping game rounds aligned with simulated rounds). When
    /// false, empty proposals are skipped.
    charge_empty: bool,
    tags: Vec<ProposalTag>,
}

impl BroadcastMultihitPlayer {
    pub fn new(
        algorithm: AlgorithmRef,
        n: usize,
        depth: usize,
        config: ModelConfig,
        tape: &RandomTape,
    ) -> Result<Self> {
        Self::with_charging(algorithm, n, depth, config, tape, true)
    }

    pub fn with_charging(
        algorithm: AlgorithmRef,
        n: usize,
        depth: usize,
        config: ModelConfig,
        tape: &RandomTape,
        charge_empty: bool,
    ) -> Result<Self> {
        config.validate()?;
        let layout = LayeredLayout::new(n, depth)?;
        // The player knows every intra-layer clique up front; cuts are wired
        // in as targets are revealed. The source is the label-1 node of the
        // first layer.
        let engine = BroadcastEngine::new(
            layout.total,
            layout.clique_adjacency(),
            algorithm,
            config,
            tape,
            layout.node_for_label(1, 1),
            false,
        );
        Ok(BroadcastMultihitPlayer {
            layout,
            engine,
            frontier: 1,
            charge_empty,
            tags: Vec::new(),
        })
    }

    pub fn layout(&self) -> &LayeredLayout {
        &self.layout
    }

    /// Round each simulated node became informed, matching the reference
    /// execution through every instance won so far.
    pub fn simulated_activations(&self) -> &std::collections::BTreeMap<NodeId, usize> {
        self.engine.activations()
    }

    pub fn simulated_rounds(&self) -> usize {
        self.engine.round()
    }

    pub fn tags(&self) -> &[ProposalTag] {
        &self.tags
    }
}

impl Player for BroadcastMultihitPlayer {
    fn next_proposal(&mut self) -> ElemSet {
        loop {
            let record = self.engine.step().expect("simulation step cannot fail");
            let frontier_nodes = self.layout.layer_nodes(self.frontier);
            let proposal: ElemSet = record
                .actions
                .iter()
                .filter(|(id, action)| {
                    frontier_nodes.contains(id) && action.transmits_on(DEFAULT_CHANNEL)
                })
                .map(|(&id, _)| self.layout.label_of(id))
                .collect();
            if !proposal.is_empty() || self.charge_empty {
                self.tags.push(ProposalTag {
                    sim_round: record.round,
                    channel: None,
                });
                return proposal;
            }
        }
    }
}

impl MultiPlayer for BroadcastMultihitPlayer {
    fn instance_won(&mut self, revealed_target: &ElemSet) {
        let won_round = self.engine.round();
        let next_layer = self.frontier + 1;
        for &label in revealed_target {
            let from = self.layout.node_for_label(self.frontier, label);
            for to in self.layout.layer_nodes(next_layer) {
                self.engine.add_edge(from, to);
            }
        }
        // The winning round had exactly one target-labeled transmitter on
        // the default channel, and the next layer's only informed neighbors
        // are across this cut: every node there received the message.
        for node in self.layout.layer_nodes(next_layer) {
            self.engine.activate(node, won_round);
        }
        if next_layer <= self.layout.depth {
            self.frontier = next_layer;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(elems: &[usize]) -> ElemSet {
        elems.iter().copied().collect()
    }

    #[test]
    fn layer_sizes_for_uneven_split() {
        let net = layered_broadcast_network(9, 4, &vec![set(&[1]); 4]).unwrap();
        assert_eq!(net.layout.layer_size, 2);
        assert_eq!(net.layout.total, 9);
        assert_eq!(net.layout.layer_nodes(5).count(), 1);
    }

    #[test]
    fn even_split_gets_extra_terminal_node() {
        let net = layered_broadcast_network(4, 1, &[set(&[1])]).unwrap();
        assert_eq!(net.layout.layer_size, 4);
        assert_eq!(net.layout.total, 5);
        assert_eq!(net.topology.diameter(), 2);
        // Terminal node attaches to the label-1 node only.
        assert_eq!(net.topology.neighbors(5).unwrap().len(), 1);
        assert!(net.topology.neighbors(5).unwrap().contains(&1));
    }

    #[test]
    fn cut_endpoints_carry_exactly_the_target_labels() {
        let targets = vec![set(&[1, 3]), set(&[2]), set(&[2, 4])];
        let net = layered_broadcast_network(12, 3, &targets).unwrap();
        let layout = net.layout;
        for (i, target) in targets.iter().enumerate() {
            let layer = i + 1;
            let next: Vec<NodeId> = layout.layer_nodes(layer + 1).collect();
            for node in layout.layer_nodes(layer) {
                let connected = net
                    .topology
                    .neighbors(node)
                    .unwrap()
                    .iter()
                    .any(|v| next.contains(v));
                assert_eq!(
                    connected,
                    target.contains(&layout.label_of(node)),
                    "node {node}"
                );
            }
        }
    }

    #[test]
    fn rejects_empty_target() {
        assert!(layered_broadcast_network(8, 2, &[set(&[1]), set(&[])]).is_err());
    }

    #[test]
    fn singleton_layers_make_a_path() {
        let net = layered_broadcast_network(3, 3, &vec![set(&[1]); 3]).unwrap();
        assert_eq!(net.layout.layer_size, 1);
        assert_eq!(net.layout.total, 4);
        assert_eq!(net.topology.diameter(), 3);
    }
}
