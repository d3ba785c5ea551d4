//! Keyed, replayable randomness.
//!
//! Every random choice in the simulator is served by a [`TapeStream`]: a
//! counter-based generator whose i-th draw is a pure function of
//! `(global seed, key domain, index, i)`. Streams for distinct node ids are
//! distinct keyed substreams of the same tape, and resetting a stream to
//! position zero replays the exact same draws. Simulations that re-run an
//! algorithm from round one therefore consume identical bits on behalf of
//! each node, with no state to snapshot.

use crate::model::NodeId;

/// Key domains keeping node, referee, and sampler randomness disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeyDomain {
    /// Per-node algorithm coins.
    Node,
    /// Referee target selection.
    Referee,
    /// Set-family sampling.
    Sampler,
    /// Harness-internal choices (active sets, derived seeds).
    Harness,
}

impl KeyDomain {
    fn salt(self) -> u64 {
        match self {
            KeyDomain::Node => 0x01,
            KeyDomain::Referee => 0x02,
            KeyDomain::Sampler => 0x03,
            KeyDomain::Harness => 0x04,
        }
    }
}

/// A shared source of per-node random bits, identified by a global seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomTape {
    global_seed: u64,
}

impl RandomTape {
    pub fn new(global_seed: u64) -> Self {
        RandomTape { global_seed }
    }

    pub fn seed(&self) -> u64 {
        self.global_seed
    }

    /// The bit stream belonging to one node. Keyed by `(seed, id)` only, so
    /// every simulation that asks for node `id`'s stream gets the same bits.
    pub fn node_stream(&self, id: NodeId) -> TapeStream {
        TapeStream::keyed(self.global_seed, KeyDomain::Node, id as u64)
    }

    /// A stream in a non-node key domain (referee, sampler, ...).
    pub fn domain_stream(&self, domain: KeyDomain, index: u64) -> TapeStream {
        TapeStream::keyed(self.global_seed, domain, index)
    }
}

/// One keyed substream with an explicit position counter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapeStream {
    key: u64,
    pos: u64,
}

impl TapeStream {
    pub fn keyed(seed: u64, domain: KeyDomain, index: u64) -> Self {
        let key = mix(mix(seed ^ domain.salt().wrapping_mul(0xA24BAED4963EE407)) ^ mix(index));
        TapeStream { key, pos: 0 }
    }

    /// Number of draws consumed so far.
    pub fn position(&self) -> u64 {
        self.pos
    }

    /// Rewind to position zero; subsequent draws repeat the stream exactly.
    pub fn reset(&mut self) {
        self.pos = 0;
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = draw(self.key, self.pos);
        self.pos += 1;
        v
    }

    /// Biased coin: true with probability `p`, consuming one draw.
    pub fn coin(&mut self, p: f64) -> bool {
        debug_assert!((0.0..=1.0).contains(&p));
        let threshold = (p * (u64::MAX as f64 + 1.0)) as u128;
        (self.next_u64() as u128) < threshold
    }

    /// Uniform value in `[0, bound)`, consuming one draw.
    pub fn pick(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}

fn draw(key: u64, pos: u64) -> u64 {
    mix(key.wrapping_add(mix(pos.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1))))
}

// splitmix64 finalizer
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}
