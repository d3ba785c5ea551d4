//! Reference wake-up and broadcast algorithms.
//!
//! These are the concrete algorithms fed into the reduction players and used
//! for upper-bound trend measurements. Until a node first receives a
//! message, each of these is a function only of `(id, n, channels, round,
//! tape)` — the uniform algorithm class — except for the collision-detector
//! searches, which react to what they hear.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{
    Algorithm, AlgorithmRef, ModelConfig, NodeAction, NodeCtx, RoundObservation, TapeStream,
    BROADCAST_MESSAGE, DEFAULT_CHANNEL,
};

/// `⌈log₂ n⌉`, with `ceil_log2(1) = 0`.
pub fn ceil_log2(n: usize) -> usize {
    debug_assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// Number of decay levels for an `n`-node network: at least one.
fn decay_levels(n: usize) -> usize {
    ceil_log2(n).max(1)
}

/// A cyclic sequence of broadcast probabilities in `(0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilitySchedule {
    probabilities: Vec<f64>,
}

impl ProbabilitySchedule {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::InvalidInput("schedule must be non-empty".into()));
        }
        if probabilities.iter().any(|p| !(*p > 0.0 && *p <= 1.0)) {
            return Err(Error::InvalidInput(
                "schedule probabilities must lie in (0,1]".into(),
            ));
        }
        Ok(ProbabilitySchedule { probabilities })
    }

    /// Halving schedule `1/2, 1/4, ..., 2^-levels`.
    pub fn decay(levels: usize) -> Self {
        ProbabilitySchedule {
            probabilities: (1..=levels.max(1)).map(|d| 0.5f64.powi(d as i32)).collect(),
        }
    }

    pub fn cycle_len(&self) -> usize {
        self.probabilities.len()
    }

    /// Probability for 1-based round `r`.
    pub fn at_round(&self, r: usize) -> f64 {
        self.probabilities[(r - 1) % self.probabilities.len()]
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }
}

/// Transmit on the default channel with the scheduled probability for the
/// node's own round counter. Doubles as a flooding broadcast algorithm when
/// the schedule is `(1.0)`: informed nodes relay the broadcast message.
pub struct UniformWakeup {
    schedule: ProbabilitySchedule,
}

impl UniformWakeup {
    pub fn new(schedule: ProbabilitySchedule) -> Self {
        UniformWakeup { schedule }
    }

    pub fn schedule(&self) -> &ProbabilitySchedule {
        &self.schedule
    }
}

impl Algorithm for UniformWakeup {
    fn decide(
        &self,
        ctx: &NodeCtx,
        _history: &[RoundObservation],
        tape: &mut TapeStream,
    ) -> NodeAction {
        if tape.coin(self.schedule.at_round(ctx.local_round)) {
            NodeAction::Transmit {
                channel: DEFAULT_CHANNEL,
                payload: BROADCAST_MESSAGE.to_vec(),
            }
        } else {
            NodeAction::listen_default()
        }
    }
}

/// Uniform algorithm over an explicit schedule.
pub fn uniform_wakeup(schedule: ProbabilitySchedule) -> AlgorithmRef {
    Arc::new(UniformWakeup::new(schedule))
}

/// The decay strategy: cycle probabilities `2^-1, ..., 2^-⌈log₂ n⌉`.
pub fn decay_wakeup(n: usize) -> Result<AlgorithmRef> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("decay needs n >= 2, got {n}")));
    }
    Ok(Arc::new(UniformWakeup::new(ProbabilitySchedule::decay(
        decay_levels(n),
    ))))
}

/// Decay run by informed nodes of a broadcast execution, each starting its
/// own schedule the round after it receives the message.
pub fn decay_broadcast(n: usize) -> Result<AlgorithmRef> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("decay needs n >= 2, got {n}")));
    }
    // Identical step function: local_round counts from activation.
    Ok(Arc::new(UniformWakeup::new(ProbabilitySchedule::decay(
        decay_levels(n),
    ))))
}

/// Flooding: transmit the message every round once informed.
pub fn flood_broadcast() -> AlgorithmRef {
    Arc::new(UniformWakeup::new(
        ProbabilitySchedule::new(vec![1.0]).unwrap(),
    ))
}

/// Shared outcome classification for the collision-detector searches. Every
/// active node can classify a finished round the same way: transmitters from
/// their alone/not-alone feedback, listeners from silence vs collision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CdOutcome {
    /// No active node transmitted.
    AllSilent,
    /// Two or more transmitted.
    Collision,
    /// A lone transmission (or a received message): the run is over.
    Solved,
}

fn classify_cd(obs: &RoundObservation) -> CdOutcome {
    match obs {
        RoundObservation::Silence => CdOutcome::AllSilent,
        RoundObservation::CollisionDetected => CdOutcome::Collision,
        RoundObservation::TransmitFeedback { alone: false } => CdOutcome::Collision,
        RoundObservation::TransmitFeedback { alone: true } => CdOutcome::Solved,
        RoundObservation::Received { .. } => CdOutcome::Solved,
        RoundObservation::NoFeedback => CdOutcome::AllSilent,
    }
}

/// Deterministic wake-up with full collision detection: binary search over
/// the id space. Every round, the active ids in the lower half of the
/// candidate interval transmit. A collision means the lower half holds two
/// or more active nodes (recurse into it); silence means it holds none
/// (recurse into the upper half); a lone transmitter wins. Consumes no tape
/// bits and finishes within `⌈log₂ n⌉ + 1` rounds.
pub struct CdBinarySearchWakeup {
    n: usize,
}

impl Algorithm for CdBinarySearchWakeup {
    fn decide(
        &self,
        ctx: &NodeCtx,
        history: &[RoundObservation],
        _tape: &mut TapeStream,
    ) -> NodeAction {
        let mut lo = 1usize;
        let mut hi = self.n;
        for obs in history {
            match classify_cd(obs) {
                CdOutcome::Solved => return NodeAction::listen_default(),
                CdOutcome::Collision => hi = midpoint(lo, hi),
                CdOutcome::AllSilent => {
                    let mid = midpoint(lo, hi);
                    if mid >= hi {
                        // Forced histories can drain the interval; go quiet.
                        return NodeAction::listen_default();
                    }
                    lo = mid + 1;
                }
            }
        }
        if (lo..=midpoint(lo, hi)).contains(&ctx.id) {
            NodeAction::Transmit {
                channel: DEFAULT_CHANNEL,
                payload: BROADCAST_MESSAGE.to_vec(),
            }
        } else {
            NodeAction::listen_default()
        }
    }
}

fn midpoint(lo: usize, hi: usize) -> usize {
    lo + (hi - lo) / 2
}

pub fn cd_binary_search_wakeup(n: usize) -> Result<AlgorithmRef> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "binary search needs n >= 2, got {n}"
        )));
    }
    Ok(Arc::new(CdBinarySearchWakeup { n }))
}

/// Randomized wake-up with full collision detection: binary search over the
/// probability exponent scale `2^-1, ..., 2^-⌈log₂ n⌉`. Each round all
/// actives transmit with the probed probability; a collision means the
/// active density exceeds the probe (move to sparser probabilities), silence
/// means it falls short (move to denser ones). The probe is the midpoint of
/// the remaining exponent range, ties rounding toward denser probabilities,
/// and an emptied range restarts the search.
pub struct WillardWakeup {
    n: usize,
}

impl Algorithm for WillardWakeup {
    fn decide(
        &self,
        _ctx: &NodeCtx,
        history: &[RoundObservation],
        tape: &mut TapeStream,
    ) -> NodeAction {
        // The search range is a pure fold over the observations; the tape is
        // only touched for this round's own coin.
        let levels = decay_levels(self.n);
        let mut lo = 1usize;
        let mut hi = levels;
        for obs in history {
            let exponent = midpoint(lo, hi);
            match classify_cd(obs) {
                CdOutcome::Solved => return NodeAction::listen_default(),
                CdOutcome::Collision => {
                    if exponent + 1 > hi {
                        lo = 1;
                        hi = levels;
                    } else {
                        lo = exponent + 1;
                    }
                }
                CdOutcome::AllSilent => {
                    if exponent == lo {
                        lo = 1;
                        hi = levels;
                    } else {
                        hi = exponent - 1;
                    }
                }
            }
        }
        let exponent = midpoint(lo, hi);
        if tape.coin(0.5f64.powi(exponent as i32)) {
            NodeAction::Transmit {
                channel: DEFAULT_CHANNEL,
                payload: BROADCAST_MESSAGE.to_vec(),
            }
        } else {
            NodeAction::listen_default()
        }
    }
}

pub fn willard_wakeup(n: usize) -> Result<AlgorithmRef> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "exponent search needs n >= 2, got {n}"
        )));
    }
    Ok(Arc::new(WillardWakeup { n }))
}

/// Multichannel decay. Each round an active node picks a channel uniformly
/// from the first `min(C, ⌈log₂ n⌉)` channels and transmits there with the
/// decay probability for that `(round, channel)` pair. Channel 1 follows the
/// plain decay schedule and the remaining channels stripe the other levels
/// across the cycle, so each round carries up to `min(C, L)` distinct decay
/// levels. With one channel this is bit-for-bit the decay strategy.
pub struct MultichannelWakeup {
    n: usize,
    channels: usize,
}

impl MultichannelWakeup {
    fn used_channels(&self) -> usize {
        self.channels.min(decay_levels(self.n)).max(1)
    }

    /// Decay level probed on `channel` in (1-based) `round`.
    pub fn level(&self, round: usize, channel: usize) -> usize {
        let levels = decay_levels(self.n);
        let stride = levels.div_ceil(self.used_channels());
        ((round - 1) + (channel - 1) * stride) % levels + 1
    }
}

impl Algorithm for MultichannelWakeup {
    fn decide(
        &self,
        ctx: &NodeCtx,
        _history: &[RoundObservation],
        tape: &mut TapeStream,
    ) -> NodeAction {
        let used = self.used_channels();
        // A single usable channel consumes no channel draw, which keeps the
        // stream identical to plain decay.
        let channel = if used == 1 {
            1
        } else {
            1 + tape.pick(used as u64) as usize
        };
        let level = self.level(ctx.local_round, channel);
        if tape.coin(0.5f64.powi(level as i32)) {
            NodeAction::Transmit {
                channel,
                payload: BROADCAST_MESSAGE.to_vec(),
            }
        } else {
            NodeAction::Listen { channel }
        }
    }
}

pub fn multichannel_wakeup(n: usize, channels: usize) -> Result<AlgorithmRef> {
    if n < 2 || channels < 1 {
        return Err(Error::InvalidInput(format!(
            "multichannel decay needs n >= 2 and channels >= 1, got n={n} channels={channels}"
        )));
    }
    Ok(Arc::new(MultichannelWakeup { n, channels }))
}

/// Resolve a registry spec string for a wake-up algorithm.
///
/// Known specs: `decay`, `uniform:<p1,p2,...>`, `cd-binsearch`, `willard`,
/// `mc-decay` (uses the configured channel count).
pub fn parse_wakeup_algorithm(spec: &str, n: usize, config: &ModelConfig) -> Result<AlgorithmRef> {
    match spec {
        "decay" => decay_wakeup(n),
        "cd-binsearch" => {
            require_cd(spec, config)?;
            cd_binary_search_wakeup(n)
        }
        "willard" => {
            require_cd(spec, config)?;
            willard_wakeup(n)
        }
        "mc-decay" => multichannel_wakeup(n, config.channels),
        _ => {
            if let Some(list) = spec.strip_prefix("uniform:") {
                let probabilities: Vec<f64> = list
                    .split(',')
                    .map(|tok| {
                        tok.trim().parse::<f64>().map_err(|_| {
                            Error::Config(format!("bad probability {tok:?} in {spec:?}"))
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok(uniform_wakeup(ProbabilitySchedule::new(probabilities)?))
            } else {
                Err(Error::Config(format!("unknown algorithm spec {spec:?}")))
            }
        }
    }
}

/// Resolve a registry spec string for a broadcast algorithm (`decay` or
/// `flood`).
pub fn parse_broadcast_algorithm(spec: &str, n: usize) -> Result<AlgorithmRef> {
    match spec {
        "decay" => decay_broadcast(n),
        "flood" => Ok(flood_broadcast()),
        _ => Err(Error::Config(format!(
            "unknown broadcast algorithm spec {spec:?}"
        ))),
    }
}

fn require_cd(spec: &str, config: &ModelConfig) -> Result<()> {
    if !(config.receiver_cd && config.transmitter_cd) {
        return Err(Error::Config(format!(
            "algorithm {spec:?} requires receiver and transmitter collision detection"
        )));
    }
    Ok(())
}
