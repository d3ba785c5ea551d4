//! The adversarial hitting game.
//!
//! A referee secretly fixes a target set `T ⊆ [k]` before round one. Each
//! round the player proposes a set `P ⊆ [k]` and wins as soon as
//! `|P ∩ T| = 1`. A failed proposal yields no information beyond the fact
//! that it failed: the play loop hands the player nothing at all between
//! proposals, so feedback opacity is structural rather than promised.
//!
//! The restricted variant fixes `|T| = 2`. The multi-instance variant runs
//! `k'` consecutive games over the universe `[⌊k/k'⌋]`, all targets drawn up
//! front, each revealed to the player when its instance is won.

use std::collections::BTreeSet;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::SetFamily;
use crate::model::{KeyDomain, RandomTape, TapeStream};

/// Elements of the game universe `[k]`, 1-based.
pub type Element = usize;

pub type ElemSet = BTreeSet<Element>;

/// `A` hits `B` iff they intersect in exactly one element.
pub fn hits(a: &ElemSet, b: &ElemSet) -> bool {
    a.intersection(b).take(2).count() == 1
}

/// One game's parameters: universe size, hidden target, restricted flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingInstance {
    pub k: usize,
    pub target: ElemSet,
    pub restricted: bool,
}

impl HittingInstance {
    pub fn new(k: usize, target: ElemSet, restricted: bool) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidInput(format!(
                "universe size must be at least 2, got {k}"
            )));
        }
        if target.is_empty() {
            return Err(Error::InvalidInput("target set must be non-empty".into()));
        }
        if let Some(&bad) = target.iter().find(|&&e| e < 1 || e > k) {
            return Err(Error::InvalidInput(format!(
                "target element {bad} outside [1,{k}]"
            )));
        }
        if restricted && target.len() != 2 {
            return Err(Error::InvalidInput(format!(
                "restricted games need a target of size 2, got {}",
                target.len()
            )));
        }
        Ok(HittingInstance {
            k,
            target,
            restricted,
        })
    }
}

/// A hitting-game player: a source of proposals. The absence of any other
/// callback is deliberate — being asked again *is* the failure signal.
pub trait Player {
    fn next_proposal(&mut self) -> ElemSet;
}

/// A player for the multi-instance game additionally learns each target as
/// its instance is won.
pub trait MultiPlayer: Player {
    fn instance_won(&mut self, revealed_target: &ElemSet);
}

/// A referee fixes targets; it never sees the player at all.
pub trait Referee {
    fn draw_target(&mut self, k: usize) -> ElemSet;
}

/// Referee with a constant target.
pub struct FixedReferee {
    target: ElemSet,
}

impl FixedReferee {
    pub fn new(target: ElemSet) -> Self {
        FixedReferee { target }
    }
}

impl Referee for FixedReferee {
    fn draw_target(&mut self, _k: usize) -> ElemSet {
        self.target.clone()
    }
}

/// Referee drawing uniformly from a set family using its own private
/// stream, independent of any player randomness.
pub struct FamilyReferee {
    family: SetFamily,
    stream: TapeStream,
}

impl FamilyReferee {
    pub fn new(family: SetFamily, stream: TapeStream) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::InvalidInput(
                "referee family must be non-empty".into(),
            ));
        }
        Ok(FamilyReferee { family, stream })
    }
}

impl Referee for FamilyReferee {
    fn draw_target(&mut self, _k: usize) -> ElemSet {
        let idx = self.stream.pick(self.family.len() as u64) as usize;
        self.family.sets()[idx].clone()
    }
}

/// Referee drawing T uniformly from a family using referee-domain
/// randomness of `tape`.
pub fn uniform_family_referee(family: SetFamily, tape: &RandomTape) -> Result<FamilyReferee> {
    FamilyReferee::new(family, tape.domain_stream(KeyDomain::Referee, 0))
}

/// Referee drawing a uniform 2-subset of `[k]` — the all-pairs family
/// without materializing it.
pub struct AllPairsReferee {
    stream: TapeStream,
}

impl AllPairsReferee {
    pub fn new(stream: TapeStream) -> Self {
        AllPairsReferee { stream }
    }
}

impl Referee for AllPairsReferee {
    fn draw_target(&mut self, k: usize) -> ElemSet {
        assert!(k >= 2, "pair targets need a universe of at least 2");
        loop {
            let a = 1 + self.stream.pick(k as u64) as Element;
            let b = 1 + self.stream.pick(k as u64) as Element;
            if a != b {
                return [a, b].into_iter().collect();
            }
        }
    }
}

pub fn all_pairs_referee(k: usize, tape: &RandomTape) -> Result<AllPairsReferee> {
    if k < 2 {
        return Err(Error::InvalidInput(format!(
            "pair referee needs k >= 2, got {k}"
        )));
    }
    Ok(AllPairsReferee::new(
        tape.domain_stream(KeyDomain::Referee, 0),
    ))
}

/// Referee drawing a uniform singleton.
pub struct SingletonsReferee {
    stream: TapeStream,
}

impl SingletonsReferee {
    pub fn new(stream: TapeStream) -> Self {
        SingletonsReferee { stream }
    }
}

impl Referee for SingletonsReferee {
    fn draw_target(&mut self, k: usize) -> ElemSet {
        [1 + self.stream.pick(k as u64) as Element]
            .into_iter()
            .collect()
    }
}

/// Player sweeping the singletons `{1}, {2}, ..., {k}` cyclically; restarts
/// from `{1}` at each new multi-game instance.
pub struct SingletonSweepPlayer {
    k: usize,
    next: Element,
}

impl SingletonSweepPlayer {
    pub fn new(k: usize) -> Self {
        SingletonSweepPlayer { k, next: 1 }
    }
}

impl Player for SingletonSweepPlayer {
    fn next_proposal(&mut self) -> ElemSet {
        let e = self.next;
        self.next = if self.next >= self.k {
            1
        } else {
            self.next + 1
        };
        [e].into_iter().collect()
    }
}

impl MultiPlayer for SingletonSweepPlayer {
    fn instance_won(&mut self, _revealed_target: &ElemSet) {
        self.next = 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GameOutcome {
    WonAt(usize),
    Exhausted,
}

impl GameOutcome {
    pub fn win_round(&self) -> Option<usize> {
        match self {
            GameOutcome::WonAt(r) => Some(*r),
            GameOutcome::Exhausted => None,
        }
    }
}

/// Record of one single-target game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameTranscript {
    pub k: usize,
    /// The target, revealed here only after the game is over.
    pub target: ElemSet,
    pub proposals: Vec<ElemSet>,
    pub outcome: GameOutcome,
}

impl GameTranscript {
    pub fn win_round(&self) -> Option<usize> {
        self.outcome.win_round()
    }

    /// One `{round, proposal, result}` JSON object per line.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        #[derive(Serialize)]
        struct Line<'a> {
            round: usize,
            proposal: &'a ElemSet,
            result: &'a str,
        }
        for (i, proposal) in self.proposals.iter().enumerate() {
            let round = i + 1;
            let result = if self.outcome == GameOutcome::WonAt(round) {
                "won"
            } else {
                "failed"
            };
            serde_json::to_writer(
                &mut out,
                &Line {
                    round,
                    proposal,
                    result,
                },
            )?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

fn check_proposal(proposal: &ElemSet, k: usize) -> Result<()> {
    if let Some(&bad) = proposal.iter().find(|&&e| e < 1 || e > k) {
        return Err(Error::InvalidProposal(format!(
            "element {bad} outside [1,{k}]"
        )));
    }
    Ok(())
}

/// Play one game. The referee commits to the target before round one; the
/// player sees nothing until it wins or `max_rounds` proposals fail.
pub fn play(
    player: &mut dyn Player,
    referee: &mut dyn Referee,
    k: usize,
    restricted: bool,
    max_rounds: usize,
) -> Result<GameTranscript> {
    let target = referee.draw_target(k);
    let instance = HittingInstance::new(k, target, restricted)?;
    let mut proposals = Vec::new();
    let mut outcome = GameOutcome::Exhausted;
    for round in 1..=max_rounds {
        let proposal = player.next_proposal();
        check_proposal(&proposal, k)?;
        let won = hits(&proposal, &instance.target);
        proposals.push(proposal);
        if won {
            outcome = GameOutcome::WonAt(round);
            break;
        }
    }
    Ok(GameTranscript {
        k,
        target: instance.target,
        proposals,
        outcome,
    })
}

/// Parameters of the multi-instance game: `k'` consecutive instances over
/// the universe `[⌊k/k'⌋]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiHittingConfig {
    pub k: usize,
    pub sub_games: usize,
}

impl MultiHittingConfig {
    pub fn new(k: usize, sub_games: usize) -> Result<Self> {
        if sub_games < 1 || sub_games > k {
            return Err(Error::InvalidInput(format!(
                "need 1 <= k' <= k, got k'={sub_games}, k={k}"
            )));
        }
        if k / sub_games < 2 {
            return Err(Error::InvalidInput(format!(
                "per-instance universe floor({k}/{sub_games}) must be at least 2"
            )));
        }
        Ok(MultiHittingConfig { k, sub_games })
    }

    pub fn instance_universe(&self) -> usize {
        self.k / self.sub_games
    }
}

/// Per-instance record inside a multi-game transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceRecord {
    pub target: ElemSet,
    /// First global round of this instance.
    pub first_round: usize,
    /// Global round in which the instance was won.
    pub win_round: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGameTranscript {
    pub config: MultiHittingConfig,
    pub instances: Vec<InstanceRecord>,
    pub total_rounds: usize,
    /// True when all instances were won within the round budget.
    pub complete: bool,
}

impl MultiGameTranscript {
    /// Total rounds spent, valid when complete.
    pub fn rounds_to_win(&self) -> Option<usize> {
        self.complete.then_some(self.total_rounds)
    }
}

/// Play the multi-instance game. All targets are drawn before round one,
/// one referee per instance with independent randomness; instance `i + 1`
/// starts the round after instance `i` is won, and each won target is
/// revealed to the player at the end of its winning round.
pub fn play_multi(
    player: &mut dyn MultiPlayer,
    referees: &mut [Box<dyn Referee>],
    config: MultiHittingConfig,
    max_rounds: usize,
) -> Result<MultiGameTranscript> {
    if referees.len() != config.sub_games {
        return Err(Error::InvalidInput(format!(
            "need one referee per instance: {} != {}",
            referees.len(),
            config.sub_games
        )));
    }
    let universe = config.instance_universe();
    let targets: Vec<ElemSet> = referees
        .iter_mut()
        .map(|r| {
            let t = r.draw_target(universe);
            HittingInstance::new(universe, t, false).map(|i| i.target)
        })
        .collect::<Result<_>>()?;
    let mut instances: Vec<InstanceRecord> = Vec::with_capacity(config.sub_games);
    let mut current = 0usize;
    let mut total_rounds = 0usize;
    instances.push(InstanceRecord {
        target: targets[0].clone(),
        first_round: 1,
        win_round: None,
    });
    for round in 1..=max_rounds {
        total_rounds = round;
        let proposal = player.next_proposal();
        check_proposal(&proposal, universe)?;
        if hits(&proposal, &targets[current]) {
            instances[current].win_round = Some(round);
            player.instance_won(&targets[current]);
            current += 1;
            if current == config.sub_games {
                return Ok(MultiGameTranscript {
                    config,
                    instances,
                    total_rounds,
                    complete: true,
                });
            }
            instances.push(InstanceRecord {
                target: targets[current].clone(),
                first_round: round + 1,
                win_round: None,
            });
        }
    }
    Ok(MultiGameTranscript {
        config,
        instances,
        total_rounds,
        complete: false,
    })
}
