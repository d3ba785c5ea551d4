//! The simulation-tree player.
//!
//! Instead of one rolling simulation, this player runs a fresh fixed-length
//! simulation per guess, one guess per node of the full binary tree of the
//! given depth, enumerated breadth first. The path to a tree node spells out
//! a forced outcome per simulated round — left for universal silence, right
//! for universal collision — so some node at depth `r - 1` reproduces any
//! real collision-detector execution that solves in round `r`, and its guess
//! arrives within the first `2^r - 1` proposals. Node tape streams are keyed
//! by id alone and every re-simulation starts them at position zero, so each
//! node consumes the same bits in every simulation it appears in.

use crate::error::{Error, Result};
use crate::hitting::{ElemSet, Player};
use crate::model::{AlgorithmRef, ModelConfig, RandomTape};
use crate::reductions::sim::{ReceiveRule, WakeupSimulation};
use crate::reductions::ProposalTag;

/// One node of the simulation tree: its depth and root path, `false` for a
/// forced-silence round and `true` for a forced-collision round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimTreeNode {
    pub path: Vec<bool>,
}

impl SimTreeNode {
    pub fn depth(&self) -> usize {
        self.path.len()
    }

    /// The path as a bit string, most significant round first.
    pub fn path_string(&self) -> String {
        self.path
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

/// Breadth-first enumeration of all `2^(depth+1) - 1` tree nodes; paths
/// within a depth are visited in binary counting order.
pub fn breadth_first_paths(depth: usize) -> impl Iterator<Item = SimTreeNode> {
    (0..=depth).flat_map(|d| {
        (0..(1u64 << d)).map(move |i| SimTreeNode {
            path: (0..d).map(|b| (i >> (d - 1 - b)) & 1 == 1).collect(),
        })
    })
}

pub struct TreePlayer {
    algorithm: AlgorithmRef,
    k: usize,
    config: ModelConfig,
    depth: usize,
    tape: RandomTape,
    /// Index into the breadth-first order, wrapping after the whole tree
    /// has been tried.
    cursor: u64,
    tags: Vec<ProposalTag>,
}

impl TreePlayer {
    pub fn new(
        algorithm: AlgorithmRef,
        k: usize,
        config: ModelConfig,
        depth: usize,
        tape: &RandomTape,
    ) -> Result<Self> {
        config.validate()?;
        if k < 2 {
            return Err(Error::InvalidInput(format!("player needs k >= 2, got {k}")));
        }
        if !config.receiver_cd {
            return Err(Error::InvalidInput(
                "tree simulations branch on silence vs collision and need collision detection"
                    .into(),
            ));
        }
        if depth > 20 {
            return Err(Error::InvalidInput(format!(
                "tree depth {depth} would enumerate more than 2^21 guesses"
            )));
        }
        Ok(TreePlayer {
            algorithm,
            k,
            config,
            depth,
            tape: *tape,
            cursor: 0,
            tags: Vec::new(),
        })
    }

    /// Proposal budget of one full enumeration.
    pub fn capacity(&self) -> u64 {
        (1u64 << (self.depth + 1)) - 1
    }

    pub fn tags(&self) -> &[ProposalTag] {
        &self.tags
    }

    fn node_at(&self, index: u64) -> SimTreeNode {
        // index i at depth d covers positions [2^d - 1, 2^(d+1) - 1).
        let mut d = 0usize;
        let mut offset = index;
        while offset >= (1u64 << d) {
            offset -= 1u64 << d;
            d += 1;
        }
        SimTreeNode {
            path: (0..d).map(|b| (offset >> (d - 1 - b)) & 1 == 1).collect(),
        }
    }
}

impl Player for TreePlayer {
    fn next_proposal(&mut self) -> ElemSet {
        let node = self.node_at(self.cursor);
        self.cursor = (self.cursor + 1) % self.capacity();
        let mut sim =
            WakeupSimulation::new(self.algorithm.clone(), self.k, self.config, &self.tape);
        for &collision in &node.path {
            sim.next_decisions();
            sim.apply(ReceiveRule::Forced { collision });
        }
        sim.next_decisions();
        self.tags.push(ProposalTag {
            sim_round: node.depth() + 1,
            channel: None,
        });
        sim.broadcasters()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn breadth_first_order_is_depth_then_binary() {
        let paths: Vec<String> = breadth_first_paths(2).map(|n| n.path_string()).collect();
        assert_eq!(paths, ["", "0", "1", "00", "01", "10", "11"]);
    }

    #[test]
    fn node_at_matches_enumeration_and_wraps() {
        let tape = RandomTape::new(0);
        let alg = crate::algorithms::cd_binary_search_wakeup(4).unwrap();
        let player = TreePlayer::new(alg, 4, ModelConfig::single_channel_cd(), 3, &tape).unwrap();
        let expected: Vec<SimTreeNode> = breadth_first_paths(3).collect();
        assert_eq!(player.capacity() as usize, expected.len());
        for (i, node) in expected.iter().enumerate() {
            assert_eq!(&player.node_at(i as u64), node);
        }
    }
}
