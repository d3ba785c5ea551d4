//! Seeded experiment batches over the simulator, games, and players.
//!
//! A JSON [`ExperimentConfig`] names a scenario, a parameter sweep, and the
//! algorithm/player/referee registry specs; the runner executes every
//! `(point, trial)` cell with a seed derived by a stable hash, so reruns are
//! byte-identical and sweeps are order-independent. Results go to a fixed
//! CSV schema (`scenario,point,seed,rounds,proposals,timeout`) and
//! [`summarize`] reduces them to mean / median / p95 and the empirical
//! high-probability round (the smallest round reached by a `1 - 1/n`
//! fraction of trials).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algorithms::{ceil_log2, parse_broadcast_algorithm, parse_wakeup_algorithm};
use crate::error::{Error, Result};
use crate::families::SetFamily;
use crate::hitting::{
    play, play_multi, AllPairsReferee, ElemSet, FamilyReferee, MultiHittingConfig, Player, Referee,
    SingletonsReferee,
};
use crate::model::{run_broadcast, run_wakeup, KeyDomain, ModelConfig, RandomTape, TapeStream};
use crate::reductions::{
    cdmc_tree_player, check_consistency, layered_broadcast_network, target_execution, BasicPlayer,
    BroadcastMultihitPlayer, CdPlayer, LayeredLayout, McChannelPlayer, McTwoProposalPlayer,
    TreePlayer,
};

pub const CSV_HEADER: &str = "scenario,point,seed,rounds,proposals,timeout";

/// One experiment: a scenario swept over parameter points.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// `wakeup`, `broadcast`, `hitting`, or `broadcast-reduction`.
    pub scenario: String,
    /// The n (or k) sweep.
    pub points: Vec<usize>,
    #[serde(default = "default_channels")]
    pub channels: usize,
    /// Relay layer count for broadcast scenarios.
    #[serde(default = "default_depth")]
    pub depth: usize,
    #[serde(default)]
    pub receiver_cd: bool,
    #[serde(default)]
    pub transmitter_cd: bool,
    /// Algorithm registry spec for model scenarios.
    #[serde(default = "default_algorithm")]
    pub algorithm: String,
    /// Player registry spec for game scenarios.
    #[serde(default)]
    pub player: Option<String>,
    /// Referee / set-sampler registry spec.
    #[serde(default = "default_referee")]
    pub referee: String,
    pub trials: usize,
    #[serde(default)]
    pub base_seed: u64,
    /// Per-trial round cap; scenario-dependent default when omitted.
    #[serde(default)]
    pub max_rounds: Option<usize>,
    /// CSV output path used by the command-line runner.
    #[serde(default)]
    pub output: Option<String>,
}

fn default_channels() -> usize {
    1
}

fn default_depth() -> usize {
    1
}

fn default_algorithm() -> String {
    "decay".into()
}

fn default_referee() -> String {
    "pairs".into()
}

impl ExperimentConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(s)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::Config("sweep list must be non-empty".into()));
        }
        if self.trials < 1 {
            return Err(Error::Config("need at least one trial per point".into()));
        }
        Ok(())
    }

    fn model_config(&self) -> ModelConfig {
        ModelConfig {
            channels: self.channels,
            receiver_cd: self.receiver_cd || self.transmitter_cd,
            transmitter_cd: self.transmitter_cd,
        }
    }

    fn max_rounds_for(&self, point: usize) -> usize {
        if let Some(cap) = self.max_rounds {
            return cap;
        }
        let log2 = ceil_log2(point.max(2));
        match self.scenario.as_str() {
            "wakeup" => 64 * log2 * log2,
            "broadcast" | "broadcast-reduction" => 64 * self.depth * log2 * log2,
            _ => 4 * point,
        }
    }
}

/// One `(point, trial)` outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRow {
    pub scenario: String,
    pub point: usize,
    pub seed: u64,
    /// Solve/win round, or the round cap on timeout.
    pub rounds: usize,
    /// Game proposals charged; zero for plain model scenarios.
    pub proposals: usize,
    pub timeout: bool,
}

/// Stable per-trial seed: `base ⊕ hash(point, trial)`. Point sweeps and
/// trial ranges can be split or reordered without seed reuse.
pub fn derive_seed(base_seed: u64, point: usize, trial: usize) -> u64 {
    base_seed ^ stable_hash(point as u64, trial as u64)
}

fn stable_hash(a: u64, b: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
    mix(mix(a.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(0x7F4A7C15)) ^ b.wrapping_add(1))
}

/// Draws target sets / active sets for a given universe.
enum SetSampler {
    Pairs,
    Singletons,
    Family(SetFamily),
    /// Every element independently with probability one half, redrawn while
    /// empty.
    Uniform,
    /// Each draw picks a random density level `d` and includes each element
    /// with probability `2^-d`.
    Density,
}

impl SetSampler {
    fn parse(spec: &str) -> Result<Self> {
        match spec {
            "pairs" => Ok(SetSampler::Pairs),
            "singletons" => Ok(SetSampler::Singletons),
            "uniform" => Ok(SetSampler::Uniform),
            "density" => Ok(SetSampler::Density),
            _ => {
                if let Some(path) = spec.strip_prefix("family:") {
                    let family = SetFamily::from_json(&fs::read_to_string(Path::new(path))?)?;
                    Ok(SetSampler::Family(family))
                } else {
                    Err(Error::Config(format!("unknown referee spec {spec:?}")))
                }
            }
        }
    }

    fn referee(&self, universe: usize, tape: &RandomTape, index: u64) -> Result<Box<dyn Referee>> {
        if universe < 1 || (universe < 2 && matches!(self, SetSampler::Pairs)) {
            return Err(Error::Config(format!(
                "referee universe {universe} is too small for this sampler"
            )));
        }
        let stream = tape.domain_stream(KeyDomain::Referee, index);
        match self {
            SetSampler::Pairs => Ok(Box::new(AllPairsReferee::new(stream))),
            SetSampler::Singletons => Ok(Box::new(SingletonsReferee::new(stream))),
            SetSampler::Family(family) => {
                if family.universe() != universe {
                    return Err(Error::Config(format!(
                        "referee family universe {} does not match point {universe}",
                        family.universe()
                    )));
                }
                Ok(Box::new(FamilyReferee::new(family.clone(), stream)?))
            }
            SetSampler::Uniform => Ok(Box::new(UniformSubsetReferee { stream })),
            SetSampler::Density => Ok(Box::new(DensityReferee { stream })),
        }
    }

    fn draw(&self, universe: usize, tape: &RandomTape, index: u64) -> Result<ElemSet> {
        Ok(self.referee(universe, tape, index)?.draw_target(universe))
    }
}

struct UniformSubsetReferee {
    stream: TapeStream,
}

impl Referee for UniformSubsetReferee {
    fn draw_target(&mut self, k: usize) -> ElemSet {
        loop {
            let set: ElemSet = (1..=k).filter(|_| self.stream.coin(0.5)).collect();
            if !set.is_empty() {
                return set;
            }
        }
    }
}

struct DensityReferee {
    stream: TapeStream,
}

impl Referee for DensityReferee {
    fn draw_target(&mut self, k: usize) -> ElemSet {
        let levels = ceil_log2(k.max(2)).max(1) as u64;
        let level = 1 + self.stream.pick(levels) as i32;
        let p = 0.5f64.powi(level);
        loop {
            let set: ElemSet = (1..=k).filter(|_| self.stream.coin(p)).collect();
            if !set.is_empty() {
                return set;
            }
        }
    }
}

/// Parsed player registry spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlayerSpec {
    Basic(String),
    Cd(String),
    Tree(String, usize),
    Mc(String, usize),
    Mc2(String, usize),
    CdmcTree(String, usize, usize),
    Bcast(String, usize),
}

impl PlayerSpec {
    /// Parse specs of the shapes `basic:<alg>`, `cd:<alg>`,
    /// `tree:<alg>:<depth>`, `mc:<alg>:<C>`, `mc2:<alg>:<C>`,
    /// `cdmc-tree:<alg>:<C>:<depth>`, `bcast:<alg>:<D>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let num = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::Config(format!("bad number {s:?} in player spec {spec:?}")))
        };
        match parts.as_slice() {
            ["basic", alg] => Ok(PlayerSpec::Basic(alg.to_string())),
            ["cd", alg] => Ok(PlayerSpec::Cd(alg.to_string())),
            ["tree", alg, depth] => Ok(PlayerSpec::Tree(alg.to_string(), num(depth)?)),
            ["mc", alg, channels] => Ok(PlayerSpec::Mc(alg.to_string(), num(channels)?)),
            ["mc2", alg, channels] => Ok(PlayerSpec::Mc2(alg.to_string(), num(channels)?)),
            ["cdmc-tree", alg, channels, depth] => Ok(PlayerSpec::CdmcTree(
                alg.to_string(),
                num(channels)?,
                num(depth)?,
            )),
            ["bcast", alg, depth] => Ok(PlayerSpec::Bcast(alg.to_string(), num(depth)?)),
            _ => Err(Error::Config(format!("unknown player spec {spec:?}"))),
        }
    }

    /// The model configuration this player simulates under.
    pub fn model_config(&self) -> ModelConfig {
        match self {
            PlayerSpec::Basic(_) => ModelConfig::single_channel(),
            PlayerSpec::Cd(_) | PlayerSpec::Tree(..) => ModelConfig::single_channel_cd(),
            PlayerSpec::Mc(_, c) | PlayerSpec::Mc2(_, c) => ModelConfig::multichannel(*c),
            PlayerSpec::CdmcTree(_, c, _) => ModelConfig::multichannel_cd(*c),
            PlayerSpec::Bcast(..) => ModelConfig {
                channels: 1,
                receiver_cd: true,
                transmitter_cd: false,
            },
        }
    }

    /// Build the player for one game over universe `k`.
    pub fn build(&self, k: usize, tape: &RandomTape) -> Result<Box<dyn Player>> {
        let config = self.model_config();
        match self {
            PlayerSpec::Basic(alg) => {
                let algorithm = parse_wakeup_algorithm(alg, k, &config)?;
                Ok(Box::new(BasicPlayer::new(algorithm, k, config, tape)?))
            }
            PlayerSpec::Cd(alg) => {
                let algorithm = parse_wakeup_algorithm(alg, k, &config)?;
                Ok(Box::new(CdPlayer::new(algorithm, k, config, tape)?))
            }
            PlayerSpec::Tree(alg, depth) => {
                let algorithm = parse_wakeup_algorithm(alg, k, &config)?;
                Ok(Box::new(TreePlayer::new(
                    algorithm, k, config, *depth, tape,
                )?))
            }
            PlayerSpec::Mc(alg, _) => {
                let algorithm = parse_wakeup_algorithm(alg, k, &config)?;
                Ok(Box::new(McChannelPlayer::new(algorithm, k, config, tape)?))
            }
            PlayerSpec::Mc2(alg, _) => {
                let algorithm = parse_wakeup_algorithm(alg, k, &config)?;
                Ok(Box::new(McTwoProposalPlayer::new(
                    algorithm, k, config, tape,
                )?))
            }
            PlayerSpec::CdmcTree(alg, channels, depth) => {
                let inner_config = ModelConfig::multichannel_cd(*channels);
                let algorithm = parse_wakeup_algorithm(alg, k, &inner_config)?;
                Ok(Box::new(cdmc_tree_player(
                    algorithm, k, *channels, *depth, tape,
                )?))
            }
            PlayerSpec::Bcast(..) => Err(Error::Config(
                "broadcast players only run in the broadcast-reduction scenario".into(),
            )),
        }
    }
}

/// Run every `(point, trial)` cell of the experiment. Deterministic in the
/// config; rows come out sorted by `(point, trial)`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    config.validate()?;
    let sampler = SetSampler::parse(&config.referee)?;
    // Resolve specs once up front so bad configs fail before any trial.
    let player_spec = match config.player.as_deref() {
        Some(spec) => Some(PlayerSpec::parse(spec)?),
        None => None,
    };
    if !matches!(
        config.scenario.as_str(),
        "wakeup" | "broadcast" | "hitting" | "broadcast-reduction"
    ) {
        return Err(Error::Config(format!(
            "unknown scenario {:?}",
            config.scenario
        )));
    }
    let mut rows = Vec::with_capacity(config.points.len() * config.trials);
    for &point in &config.points {
        for trial in 0..config.trials {
            let seed = derive_seed(config.base_seed, point, trial);
            let row = run_trial(config, &sampler, player_spec.as_ref(), point, seed)?;
            rows.push(row);
        }
    }
    Ok(rows)
}

fn run_trial(
    config: &ExperimentConfig,
    sampler: &SetSampler,
    player_spec: Option<&PlayerSpec>,
    point: usize,
    seed: u64,
) -> Result<ResultRow> {
    let tape = RandomTape::new(seed);
    let max_rounds = config.max_rounds_for(point);
    let (rounds, proposals, timeout) = match config.scenario.as_str() {
        "wakeup" => {
            let model = config.model_config();
            let algorithm = parse_wakeup_algorithm(&config.algorithm, point, &model)?;
            let active = sampler.draw(point, &tape, 0)?;
            let trace = run_wakeup(
                algorithm.as_ref(),
                point,
                &active,
                &model,
                &tape,
                max_rounds,
            )?;
            match trace.solved_round() {
                Some(r) => (r, 0, false),
                None => (max_rounds, 0, true),
            }
        }
        "broadcast" => {
            let model = config.model_config();
            let layout = LayeredLayout::new(point, config.depth)?;
            let targets: Vec<ElemSet> = (0..config.depth)
                .map(|i| sampler.draw(layout.layer_size, &tape, i as u64))
                .collect::<Result<_>>()?;
            let network = layered_broadcast_network(point, config.depth, &targets)?;
            let algorithm = parse_broadcast_algorithm(&config.algorithm, network.layout.total)?;
            let trace = run_broadcast(algorithm, &network.topology, 1, &model, &tape, max_rounds)?;
            match trace.solved_round() {
                Some(r) => (r, 0, false),
                None => (max_rounds, 0, true),
            }
        }
        "hitting" => {
            let spec = player_spec
                .ok_or_else(|| Error::Config("hitting scenario needs a player spec".into()))?;
            let mut player = spec.build(point, &tape)?;
            let mut referee = sampler.referee(point, &tape, 0)?;
            let restricted = matches!(sampler, SetSampler::Pairs);
            let transcript = play(
                player.as_mut(),
                referee.as_mut(),
                point,
                restricted,
                max_rounds,
            )?;
            match transcript.win_round() {
                Some(r) => (r, r, false),
                None => (max_rounds, transcript.proposals.len(), true),
            }
        }
        "broadcast-reduction" => {
            let spec = player_spec
                .ok_or_else(|| Error::Config("broadcast-reduction needs a player spec".into()))?;
            let PlayerSpec::Bcast(alg, depth) = spec else {
                return Err(Error::Config(format!(
                    "broadcast-reduction needs a bcast:<alg>:<D> player, got {spec:?}"
                )));
            };
            let game = MultiHittingConfig::new(point, *depth)?;
            let layout = LayeredLayout::new(point, *depth)?;
            let algorithm = parse_broadcast_algorithm(alg, layout.total)?;
            let model = spec.model_config();
            let mut player = BroadcastMultihitPlayer::new(algorithm, point, *depth, model, &tape)?;
            let mut referees: Vec<Box<dyn Referee>> = (0..*depth)
                .map(|i| sampler.referee(game.instance_universe(), &tape, i as u64))
                .collect::<Result<_>>()?;
            // The default cap scales with the player's layer count, not the
            // config's broadcast depth field.
            let max_rounds = match config.max_rounds {
                Some(cap) => cap,
                None => {
                    let log2 = ceil_log2(point.max(2));
                    64 * depth * log2 * log2
                }
            };
            let transcript = play_multi(&mut player, &mut referees, game, max_rounds)?;
            match transcript.rounds_to_win() {
                Some(total) => (total, player.tags().len(), false),
                None => (max_rounds, player.tags().len(), true),
            }
        }
        other => return Err(Error::Config(format!("unknown scenario {other:?}"))),
    };
    Ok(ResultRow {
        scenario: config.scenario.clone(),
        point,
        seed,
        rounds,
        proposals,
        timeout,
    })
}

/// Per-point aggregate statistics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub scenario: String,
    pub point: usize,
    pub trials: usize,
    pub timeouts: usize,
    /// Mean over solved trials only.
    pub mean_rounds: Option<f64>,
    /// Median and 95th percentile over all trials, timeouts counted as
    /// unbounded; absent when the order statistic lands among timeouts.
    pub median_rounds: Option<usize>,
    pub p95_rounds: Option<usize>,
    /// Smallest round reached by a `1 - 1/n` fraction of all trials.
    pub high_prob_round: Option<usize>,
}

/// Aggregate rows by `(scenario, point)`.
pub fn summarize(rows: &[ResultRow]) -> Result<Vec<SummaryRow>> {
    if rows.is_empty() {
        return Err(Error::InvalidInput(
            "cannot summarize an empty result table".into(),
        ));
    }
    let mut groups: BTreeMap<(String, usize), Vec<&ResultRow>> = BTreeMap::new();
    for row in rows {
        groups
            .entry((row.scenario.clone(), row.point))
            .or_default()
            .push(row);
    }
    let mut out = Vec::with_capacity(groups.len());
    for ((scenario, point), group) in groups {
        let total = group.len();
        let mut solved: Vec<usize> = group
            .iter()
            .filter(|r| !r.timeout)
            .map(|r| r.rounds)
            .collect();
        solved.sort_unstable();
        let timeouts = total - solved.len();
        let mean_rounds = if solved.is_empty() {
            None
        } else {
            Some(solved.iter().sum::<usize>() as f64 / solved.len() as f64)
        };
        let order_stat = |index: usize| -> Option<usize> { solved.get(index).copied() };
        let median_rounds = order_stat(total / 2);
        let p95_index = (total * 95).div_ceil(100).saturating_sub(1);
        let p95_rounds = order_stat(p95_index);
        let need = 1.0 - 1.0 / point.max(2) as f64;
        let high_prob_round = solved
            .iter()
            .enumerate()
            .find(|(i, _)| (i + 1) as f64 / total as f64 >= need)
            .map(|(_, &r)| r);
        out.push(SummaryRow {
            scenario,
            point,
            trials: total,
            timeouts,
            mean_rounds,
            median_rounds,
            p95_rounds,
            high_prob_round,
        });
    }
    Ok(out)
}

/// Serialize rows under the fixed header.
pub fn rows_to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.scenario, r.point, r.seed, r.rounds, r.proposals, r.timeout
        );
    }
    out
}

pub fn rows_from_csv(text: &str) -> Result<Vec<ResultRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header.trim() == CSV_HEADER => {}
        other => {
            return Err(Error::InvalidInput(format!(
                "expected header {CSV_HEADER:?}, found {other:?}"
            )))
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::InvalidInput(format!(
                "bad CSV row {}: {line:?}",
                i + 2
            )));
        }
        let parse_err = |what: &str| Error::InvalidInput(format!("bad {what} in row {}", i + 2));
        rows.push(ResultRow {
            scenario: fields[0].to_string(),
            point: fields[1].parse().map_err(|_| parse_err("point"))?,
            seed: fields[2].parse().map_err(|_| parse_err("seed"))?,
            rounds: fields[3].parse().map_err(|_| parse_err("rounds"))?,
            proposals: fields[4].parse().map_err(|_| parse_err("proposals"))?,
            timeout: fields[5].trim().parse().map_err(|_| parse_err("timeout"))?,
        });
    }
    Ok(rows)
}

/// One verified game in a consistency check run.
#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyOutcome {
    pub point: usize,
    pub seed: u64,
    pub target: ElemSet,
    pub win_round: Option<usize>,
    pub target_solve_round: Option<usize>,
    /// First divergence between the player's simulation and the reference
    /// execution before the win; any value here is a violation.
    pub divergence_round: Option<usize>,
}

impl ConsistencyOutcome {
    pub fn is_violation(&self) -> bool {
        self.divergence_round.is_some()
            || self.win_round.is_none()
            || self.win_round != self.target_solve_round
    }
}

/// Re-run a player spec against sampled targets and mechanically verify the
/// simulation tracks each target execution through the winning round.
/// Supports the single-simulation players (`basic:<alg>`, `cd:<alg>`).
pub fn run_consistency_check(config: &ExperimentConfig) -> Result<Vec<ConsistencyOutcome>> {
    config.validate()?;
    let sampler = SetSampler::parse(&config.referee)?;
    let spec = PlayerSpec::parse(
        config
            .player
            .as_deref()
            .ok_or_else(|| Error::Config("consistency check needs a player spec".into()))?,
    )?;
    let (algorithm_spec, model) = match &spec {
        PlayerSpec::Basic(alg) | PlayerSpec::Cd(alg) => (alg.clone(), spec.model_config()),
        other => {
            return Err(Error::Config(format!(
                "consistency checking needs a basic:<alg> or cd:<alg> player, got {other:?}"
            )))
        }
    };
    let mut outcomes = Vec::new();
    for &point in &config.points {
        let algorithm = parse_wakeup_algorithm(&algorithm_spec, point, &model)?;
        for trial in 0..config.trials {
            let seed = derive_seed(config.base_seed, point, trial);
            let tape = RandomTape::new(seed);
            let max_rounds = config.max_rounds.unwrap_or(16 * point.max(4));
            let target = sampler.draw(point, &tape, 0)?;
            let reference = target_execution(
                algorithm.as_ref(),
                point,
                &target,
                &model,
                &tape,
                max_rounds,
            )?;
            let (transcript, simulation) = match &spec {
                PlayerSpec::Basic(_) => {
                    let mut p = BasicPlayer::new(algorithm.clone(), point, model, &tape)?;
                    let t = play(
                        &mut p,
                        &mut crate::hitting::FixedReferee::new(target.clone()),
                        point,
                        false,
                        max_rounds,
                    )?;
                    (t, p.simulation_trace())
                }
                PlayerSpec::Cd(_) => {
                    let mut p = CdPlayer::new(algorithm.clone(), point, model, &tape)?;
                    let t = play(
                        &mut p,
                        &mut crate::hitting::FixedReferee::new(target.clone()),
                        point,
                        false,
                        max_rounds,
                    )?;
                    (t, p.simulation_trace())
                }
                _ => unreachable!(),
            };
            outcomes.push(ConsistencyOutcome {
                point,
                seed,
                target: target.clone(),
                win_round: transcript.win_round(),
                target_solve_round: reference.solved_round(),
                divergence_round: check_consistency(&simulation, &reference, &target),
            });
        }
    }
    Ok(outcomes)
}
