//! Connected undirected graphs over node ids `1..=n`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::NodeId;

/// A validated connected undirected graph. The diameter is computed at
/// construction and kept consistent with the edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    n: usize,
    edges: BTreeSet<(NodeId, NodeId)>,
    adjacency: Vec<BTreeSet<NodeId>>,
    diameter: usize,
}

/// On-disk form: `{"n": int, "edges": [[u, v], ...]}`.
#[derive(Serialize, Deserialize)]
struct TopologyFile {
    n: usize,
    edges: Vec<(NodeId, NodeId)>,
}

impl Topology {
    /// Build and validate a topology. Edges are unordered pairs over `[n]`;
    /// self-loops, out-of-range ids, and disconnected graphs are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTopology(
                "graph must have at least one node".into(),
            ));
        }
        let mut set = BTreeSet::new();
        let mut adjacency = vec![BTreeSet::new(); n + 1];
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidTopology(format!("self loop at node {a}")));
            }
            if a < 1 || a > n || b < 1 || b > n {
                return Err(Error::InvalidTopology(format!(
                    "edge ({a},{b}) references a node outside [1,{n}]"
                )));
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            set.insert((lo, hi));
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        let diameter = compute_diameter(n, &adjacency)
            .ok_or_else(|| Error::InvalidTopology("graph is not connected".into()))?;
        Ok(Topology {
            n,
            edges: set,
            adjacency,
            diameter,
        })
    }

    /// Complete graph on `n` nodes.
    pub fn clique(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in (a + 1)..=n {
                edges.push((a, b));
            }
        }
        Topology::new(n, edges)
    }

    /// Path 1 - 2 - ... - n.
    pub fn path(n: usize) -> Result<Self> {
        Topology::new(n, (1..n).map(|a| (a, a + 1)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        1..=self.n
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn edges(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.edges
    }

    pub fn neighbors(&self, u: NodeId) -> Result<&BTreeSet<NodeId>> {
        self.adjacency
            .get(u)
            .filter(|_| u >= 1)
            .ok_or_else(|| Error::InvalidNode(format!("node {u} outside [1,{}]", self.n)))
    }

    pub fn contains(&self, u: NodeId) -> bool {
        (1..=self.n).contains(&u)
    }

    /// Single-hop check: every pair of distinct nodes is adjacent.
    pub fn is_clique(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    pub fn to_json(&self) -> String {
        let file = TopologyFile {
            n: self.n,
            edges: self.edges.iter().copied().collect(),
        };
        serde_json::to_string(&file).expect("topology serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: TopologyFile = serde_json::from_str(s)?;
        Topology::new(file.n, file.edges)
    }
}

impl Serialize for Topology {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        TopologyFile {
            n: self.n,
            edges: self.edges.iter().copied().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Topology {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let file = TopologyFile::deserialize(deserializer)?;
        Topology::new(file.n, file.edges).map_err(serde::de::Error::custom)
    }
}

/// BFS eccentricity maximum; `None` when the graph is disconnected.
fn compute_diameter(n: usize, adjacency: &[BTreeSet<NodeId>]) -> Option<usize> {
    if n == 1 {
        return Some(0);
    }
    let mut diameter = 0;
    let mut dist = vec![usize::MAX; n + 1];
    let mut queue = VecDeque::new();
    for start in 1..=n {
        dist[1..=n].fill(usize::MAX);
        dist[start] = 0;
        queue.clear();
        queue.push_back(start);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    diameter = diameter.max(dist[v]);
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        if reached < n {
            return None;
        }
    }
    Some(diameter)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_diameter() {
        let t = Topology::path(5).unwrap();
        assert_eq!(t.diameter(), 4);
        assert!(!t.is_clique());
    }

    #[test]
    fn clique_diameter_and_shape() {
        let t = Topology::clique(4).unwrap();
        assert_eq!(t.diameter(), 1);
        assert!(t.is_clique());
        assert_eq!(t.neighbors(2).unwrap().len(), 3);
    }

    #[test]
    fn rejects_disconnected() {
        assert!(matches!(
            Topology::new(4, [(1, 2), (3, 4)]),
            Err(Error::InvalidTopology(_))
        ));
    }

    #[test]
    fn rejects_self_loop_and_bad_ids() {
        assert!(Topology::new(3, [(1, 1), (2, 3)]).is_err());
        assert!(Topology::new(3, [(1, 2), (2, 4)]).is_err());
    }

    #[test]
    fn json_round_trip_revalidates() {
        let t = Topology::new(3, [(1, 2), (2, 3)]).unwrap();
        let s = t.to_json();
        let back = Topology::from_json(&s).unwrap();
        assert_eq!(t, back);
        assert_eq!(back.diameter(), 2);
        assert!(Topology::from_json(r#"{"n":3,"edges":[[1,2]]}"#).is_err());
    }
}
