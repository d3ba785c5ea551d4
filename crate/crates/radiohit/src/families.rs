//! Set families over `[ℓ]` and brute-force certificates about them.
//!
//! Everything here is desk scale by design: hit fractions are certified by
//! enumerating all `2^ℓ − 1` candidate subsets (ℓ ≤ 16), and minimum hitting
//! family sizes by exact set-cover search (ℓ ≤ 10). Larger universes get
//! sampled, explicitly non-exhaustive certificates.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hitting::{hits, ElemSet};
use crate::model::{KeyDomain, RandomTape, TapeStream};

/// Universe limit for exhaustive hit-fraction certificates.
pub const EXHAUSTIVE_FRACTION_LIMIT: usize = 16;
/// Universe limit for exact minimum-hitting-family search.
pub const EXHAUSTIVE_HITTING_LIMIT: usize = 10;

/// A family of non-empty subsets of `[ℓ]`. Duplicate members are permitted
/// (sampling can repeat) and count separately in fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    universe: usize,
    sets: Vec<ElemSet>,
}

/// On-disk form: `{"l": int, "sets": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
struct FamilyFile {
    l: usize,
    sets: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn new(universe: usize, sets: Vec<ElemSet>) -> Result<Self> {
        for s in &sets {
            if s.is_empty() {
                return Err(Error::InvalidInput(
                    "family members must be non-empty".into(),
                ));
            }
            if let Some(&bad) = s.iter().find(|&&e| e < 1 || e > universe) {
                return Err(Error::InvalidInput(format!(
                    "element {bad} outside [1,{universe}]"
                )));
            }
        }
        Ok(SetFamily { universe, sets })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[ElemSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn push(&mut self, set: ElemSet) -> Result<()> {
        let mut sets = std::mem::take(&mut self.sets);
        sets.push(set);
        *self = SetFamily::new(self.universe, sets)?;
        Ok(())
    }

    /// Duplicates are legal but worth knowing about.
    pub fn has_duplicates(&self) -> bool {
        let unique: BTreeSet<&ElemSet> = self.sets.iter().collect();
        unique.len() != self.sets.len()
    }

    /// Members as bitmasks; only for universes that fit in a word.
    fn masks(&self) -> Option<Vec<u64>> {
        (self.universe <= 64).then(|| self.sets.iter().map(set_to_mask).collect())
    }

    pub fn to_json(&self) -> String {
        let file = FamilyFile {
            l: self.universe,
            sets: self
                .sets
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
        };
        serde_json::to_string(&file).expect("family serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: FamilyFile = serde_json::from_str(s)?;
        SetFamily::new(
            file.l,
            file.sets
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        )
    }
}

fn set_to_mask(s: &ElemSet) -> u64 {
    s.iter().fold(0u64, |m, &e| m | 1 << (e - 1))
}

fn mask_to_set(mask: u64) -> ElemSet {
    (0..64)
        .filter(|b| mask & (1 << b) != 0)
        .map(|b| b + 1)
        .collect()
}

/// Does every member of `targets` get hit by some member of `hitters`?
pub fn family_hits(hitters: &SetFamily, targets: &SetFamily) -> Result<bool> {
    if hitters.universe() != targets.universe() {
        return Err(Error::UniverseMismatch(format!(
            "{} vs {}",
            hitters.universe(),
            targets.universe()
        )));
    }
    Ok(targets
        .sets()
        .iter()
        .all(|b| hitters.sets().iter().any(|a| hits(a, b))))
}

/// The family of all 2-subsets of `[k]`, in lexicographic order.
pub fn all_pairs_family(k: usize) -> Result<SetFamily> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("pairs need k >= 2, got {k}")));
    }
    let mut sets = Vec::with_capacity(k * (k - 1) / 2);
    for a in 1..=k {
        for b in (a + 1)..=k {
            sets.push([a, b].into_iter().collect());
        }
    }
    SetFamily::new(k, sets)
}

/// Membership signature of element `i` across the family's sets, in set
/// order: bit `r` (as a character) is `1` iff `i` is in the `r`-th set.
pub fn signature(family: &SetFamily, element: usize) -> String {
    family
        .sets()
        .iter()
        .map(|s| if s.contains(&element) { '1' } else { '0' })
        .collect()
}

/// Find two elements of `[k]` with equal signatures — a pair no member of
/// the family hits. Guaranteed to exist when the family has fewer than
/// `log₂ k` sets; returns the lexicographically smallest colliding pair, or
/// `None` when all signatures are distinct.
pub fn find_unhit_pair(family: &SetFamily, k: usize) -> Option<(usize, usize)> {
    let signatures: Vec<String> = (1..=k).map(|i| signature(family, i)).collect();
    for i in 1..=k {
        for j in (i + 1)..=k {
            if signatures[i - 1] == signatures[j - 1] {
                return Some((i, j));
            }
        }
    }
    None
}

/// Sample a candidate family: each member includes each element of `[ℓ]`
/// independently with probability `2^-d`, with `d` cycling through
/// `density_levels` (default `1..=⌈log₂ ℓ⌉`); empty draws are redrawn at the
/// same level. Deterministic in the seed.
pub fn sample_candidate_family(
    universe: usize,
    size: usize,
    density_levels: Option<&[u32]>,
    seed: u64,
) -> Result<SetFamily> {
    if universe < 2 {
        return Err(Error::InvalidInput(format!(
            "universe must be at least 2, got {universe}"
        )));
    }
    let default_levels: Vec<u32> =
        (1..=crate::algorithms::ceil_log2(universe).max(1) as u32).collect();
    let levels = match density_levels {
        Some(levels) if !levels.is_empty() => levels,
        Some(_) => {
            return Err(Error::InvalidInput(
                "density levels must be non-empty".into(),
            ))
        }
        None => &default_levels,
    };
    let mut stream = RandomTape::new(seed).domain_stream(KeyDomain::Sampler, 0);
    let mut sets = Vec::with_capacity(size);
    for m in 0..size {
        let d = levels[m % levels.len()];
        sets.push(draw_member(universe, d, &mut stream));
    }
    SetFamily::new(universe, sets)
}

fn draw_member(universe: usize, level: u32, stream: &mut TapeStream) -> ElemSet {
    let p = 0.5f64.powi(level as i32);
    loop {
        let member: ElemSet = (1..=universe).filter(|_| stream.coin(p)).collect();
        if !member.is_empty() {
            return member;
        }
    }
}

/// A fact about a family, with how it was established.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyCertificate {
    pub kind: CertificateKind,
    /// True only when produced by full enumeration.
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CertificateKind {
    /// Exact (or lower-bounded) minimum size of a family hitting this one.
    MinHittingSize { size: SearchBound },
    /// The largest fraction of members any single subset hits.
    MaxHitFraction {
        hit_count: usize,
        family_size: usize,
        max_hit_fraction: f64,
        /// The subset attaining the maximum.
        witness: ElemSet,
        /// Empirical constant from `fraction = 1 / (beta · log₂ ℓ)`.
        beta: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchBound {
    Exact(usize),
    /// The search budget ran out; every family up to this size fails.
    AtLeast(usize),
}

impl FamilyCertificate {
    pub fn max_hit_fraction(&self) -> Option<f64> {
        match &self.kind {
            CertificateKind::MaxHitFraction {
                max_hit_fraction, ..
            } => Some(*max_hit_fraction),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&ElemSet> {
        match &self.kind {
            CertificateKind::MaxHitFraction { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

fn fraction_certificate(
    family: &SetFamily,
    best_count: usize,
    witness: u64,
    exhaustive: bool,
) -> FamilyCertificate {
    let fraction = best_count as f64 / family.len() as f64;
    let log_l = (family.universe() as f64).log2();
    let beta = if fraction > 0.0 && log_l > 0.0 {
        1.0 / (fraction * log_l)
    } else {
        0.0
    };
    FamilyCertificate {
        kind: CertificateKind::MaxHitFraction {
            hit_count: best_count,
            family_size: family.len(),
            max_hit_fraction: fraction,
            witness: mask_to_set(witness),
            beta,
        },
        exhaustive,
    }
}

/// Enumerate every non-empty `H ⊆ [ℓ]` and report the one hitting the
/// largest fraction of the family. Refuses universes above
/// [`EXHAUSTIVE_FRACTION_LIMIT`]; use [`verify_hit_fraction_sampled`] there.
pub fn verify_hit_fraction(family: &SetFamily) -> Result<FamilyCertificate> {
    let l = family.universe();
    if l > EXHAUSTIVE_FRACTION_LIMIT {
        return Err(Error::UniverseTooLarge(l, EXHAUSTIVE_FRACTION_LIMIT));
    }
    if family.is_empty() {
        return Err(Error::InvalidInput("cannot certify an empty family".into()));
    }
    let masks = family.masks().expect("universe fits in a word");
    let mut best_count = 0usize;
    let mut best_mask = 0u64;
    for h in 1..(1u64 << l) {
        let count = masks.iter().filter(|&&s| (h & s).count_ones() == 1).count();
        if count > best_count {
            best_count = count;
            best_mask = h;
        }
    }
    Ok(fraction_certificate(family, best_count, best_mask, true))
}

/// Sampled variant for universes beyond the exhaustive limit: tries
/// `samples` random subsets plus all singletons. The certificate is marked
/// non-exhaustive.
pub fn verify_hit_fraction_sampled(
    family: &SetFamily,
    samples: usize,
    seed: u64,
) -> Result<FamilyCertificate> {
    if family.is_empty() {
        return Err(Error::InvalidInput("cannot certify an empty family".into()));
    }
    let l = family.universe();
    if l > 64 {
        return Err(Error::UniverseTooLarge(l, 64));
    }
    let masks = family.masks().expect("universe fits in a word");
    let mut stream = RandomTape::new(seed).domain_stream(KeyDomain::Sampler, 1);
    let mut best_count = 0usize;
    let mut best_mask = 0u64;
    let mut consider = |h: u64| {
        if h != 0 {
            let count = masks.iter().filter(|&&s| (h & s).count_ones() == 1).count();
            if count > best_count {
                best_count = count;
                best_mask = h;
            }
        }
    };
    for e in 0..l {
        consider(1u64 << e);
    }
    let full = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
    for _ in 0..samples {
        consider(stream.next_u64() & full);
    }
    Ok(fraction_certificate(family, best_count, best_mask, false))
}

/// Recount how many members of `family` the given subset hits. Independent
/// re-count used to cross-check certificate witnesses.
pub fn count_hit_members(family: &SetFamily, h: &ElemSet) -> usize {
    family.sets().iter().filter(|s| hits(h, s)).count()
}

/// Exact minimum size of a family that hits every member of `family`,
/// found by branch-and-bound set cover over all non-empty subsets of the
/// universe. If `budget` is given and exhausted, returns
/// `SearchBound::AtLeast(budget + 1)` after proving all families up to
/// `budget` fail.
pub fn min_hitting_family_size(
    family: &SetFamily,
    budget: Option<usize>,
) -> Result<FamilyCertificate> {
    let l = family.universe();
    if l > EXHAUSTIVE_HITTING_LIMIT {
        return Err(Error::UniverseTooLarge(l, EXHAUSTIVE_HITTING_LIMIT));
    }
    if family.is_empty() {
        return Ok(FamilyCertificate {
            kind: CertificateKind::MinHittingSize {
                size: SearchBound::Exact(0),
            },
            exhaustive: true,
        });
    }
    if family.len() > 64 {
        return Err(Error::InvalidInput(
            "exact search supports families of at most 64 members".into(),
        ));
    }
    let member_masks = family.masks().expect("universe fits in a word");
    // coverage[c] = members hit by candidate subset c, as a member bitmask.
    let candidates: Vec<u64> = (1..(1u64 << l))
        .map(|h| {
            member_masks
                .iter()
                .enumerate()
                .filter(|(_, &s)| (h & s).count_ones() == 1)
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let all_members = if family.len() == 64 {
        u64::MAX
    } else {
        (1u64 << family.len()) - 1
    };
    // Any member hit by no candidate at all makes the instance infeasible —
    // cannot happen: a singleton {e} for e in the member hits it.
    let max_depth = budget.unwrap_or(family.len().max(1));
    for depth in 0..=max_depth {
        if cover_exists(&candidates, all_members, depth) {
            return Ok(FamilyCertificate {
                kind: CertificateKind::MinHittingSize {
                    size: SearchBound::Exact(depth),
                },
                exhaustive: true,
            });
        }
    }
    Ok(FamilyCertificate {
        kind: CertificateKind::MinHittingSize {
            size: SearchBound::AtLeast(max_depth + 1),
        },
        exhaustive: true,
    })
}

/// Depth-limited exact cover search: can `depth` candidates jointly cover
/// `uncovered`?
fn cover_exists(candidates: &[u64], uncovered: u64, depth: usize) -> bool {
    if uncovered == 0 {
        return true;
    }
    if depth == 0 {
        return false;
    }
    // Branch on the lowest uncovered member: some chosen candidate must
    // cover it.
    let pivot = uncovered.trailing_zeros();
    let pivot_bit = 1u64 << pivot;
    let best_single = candidates
        .iter()
        .map(|c| (c & uncovered).count_ones())
        .max()
        .unwrap_or(0);
    if (best_single as usize) * depth < uncovered.count_ones() as usize {
        return false;
    }
    for c in candidates {
        if c & pivot_bit != 0 && cover_exists(candidates, uncovered & !c, depth - 1) {
            return true;
        }
    }
    false
}

impl Serialize for SetFamily {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        FamilyFile {
            l: self.universe,
            sets: self
                .sets
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetFamily {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let file = FamilyFile::deserialize(deserializer)?;
        SetFamily::new(
            file.l,
            file.sets
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(elems: &[usize]) -> ElemSet {
        elems.iter().copied().collect()
    }

    fn singletons(l: usize) -> SetFamily {
        SetFamily::new(l, (1..=l).map(|e| set(&[e])).collect()).unwrap()
    }

    #[test]
    fn family_hits_examples() {
        let b = SetFamily::new(3, vec![set(&[1, 2]), set(&[2, 3]), set(&[1, 2, 3])]).unwrap();
        assert!(family_hits(&singletons(3), &b).unwrap());
        let a = SetFamily::new(3, vec![set(&[1, 2])]).unwrap();
        let b = SetFamily::new(3, vec![set(&[1, 2])]).unwrap();
        assert!(!family_hits(&a, &b).unwrap());
        let other = SetFamily::new(4, vec![set(&[1])]).unwrap();
        assert!(matches!(
            family_hits(&a, &other),
            Err(Error::UniverseMismatch(_))
        ));
    }

    #[test]
    fn family_hits_agrees_with_plain_double_loop() {
        // Independent re-statement of the definition.
        fn oracle(a: &SetFamily, b: &SetFamily) -> bool {
            for target in b.sets() {
                let mut hit = false;
                for hitter in a.sets() {
                    let common = hitter.intersection(target).count();
                    if common == 1 {
                        hit = true;
                    }
                }
                if !hit {
                    return false;
                }
            }
            true
        }
        for seed in 0..200u64 {
            let a = sample_candidate_family(6, 4, None, seed).unwrap();
            let b = sample_candidate_family(6, 5, None, seed + 1000).unwrap();
            assert_eq!(family_hits(&a, &b).unwrap(), oracle(&a, &b), "seed {seed}");
        }
    }

    #[test]
    fn all_pairs_small_cases() {
        let f = all_pairs_family(3).unwrap();
        assert_eq!(f.sets(), &[set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
        assert_eq!(all_pairs_family(2).unwrap().len(), 1);
        assert_eq!(all_pairs_family(10).unwrap().len(), 45);
    }

    #[test]
    fn signature_examples() {
        let f = SetFamily::new(3, vec![set(&[1, 2]), set(&[2, 3])]).unwrap();
        assert_eq!(signature(&f, 2), "11");
        assert_eq!(signature(&f, 1), "10");
        let empty = SetFamily::new(3, vec![]).unwrap();
        assert_eq!(signature(&empty, 1), "");
    }

    #[test]
    fn find_unhit_pair_examples() {
        let f = SetFamily::new(8, vec![set(&[1, 2, 3, 4]), set(&[1, 2, 5, 6])]).unwrap();
        assert_eq!(find_unhit_pair(&f, 8), Some((1, 2)));
        let f = SetFamily::new(4, vec![set(&[1]), set(&[2])]).unwrap();
        assert_eq!(find_unhit_pair(&f, 4), Some((3, 4)));
        let empty = SetFamily::new(2, vec![]).unwrap();
        assert_eq!(find_unhit_pair(&empty, 2), Some((1, 2)));
        // Separating family: all signatures distinct.
        let f = SetFamily::new(4, vec![set(&[1, 2]), set(&[1, 3])]).unwrap();
        assert_eq!(find_unhit_pair(&f, 4), None);
    }

    #[test]
    fn unhit_pair_is_hit_by_no_member() {
        for seed in 0..300u64 {
            for k in [4usize, 8, 16] {
                let size = crate::algorithms::ceil_log2(k) - 1;
                let family = sample_candidate_family(k, size, None, seed).unwrap();
                let (i, j) = find_unhit_pair(&family, k)
                    .unwrap_or_else(|| panic!("pigeonhole failed k={k} seed={seed}"));
                let pair = set(&[i, j]);
                assert!(family.sets().iter().all(|h| !hits(h, &pair)));
            }
        }
    }

    #[test]
    fn sampler_respects_support_and_seed() {
        let f = sample_candidate_family(2, 32, Some(&[1]), 5).unwrap();
        for s in f.sets() {
            assert!(s.is_subset(&set(&[1, 2])) && !s.is_empty());
        }
        let again = sample_candidate_family(2, 32, Some(&[1]), 5).unwrap();
        assert_eq!(f, again);
        let different = sample_candidate_family(2, 32, Some(&[1]), 6).unwrap();
        assert_ne!(f, different);
    }

    #[test]
    fn fraction_certificate_for_singletons_is_one() {
        let cert = verify_hit_fraction(&singletons(3)).unwrap();
        assert_eq!(cert.max_hit_fraction(), Some(1.0));
        assert!(cert.exhaustive);
        // The full universe hits every singleton.
        assert_eq!(count_hit_members(&singletons(3), &set(&[1, 2, 3])), 3);
    }

    #[test]
    fn fraction_certificate_trivial_pair_family() {
        let f = SetFamily::new(2, vec![set(&[1, 2])]).unwrap();
        let cert = verify_hit_fraction(&f).unwrap();
        assert_eq!(cert.max_hit_fraction(), Some(1.0));
    }

    #[test]
    fn certificate_witness_matches_independent_recount() {
        let f = sample_candidate_family(10, 150, None, 9).unwrap();
        let cert = verify_hit_fraction(&f).unwrap();
        let witness = cert.witness().unwrap().clone();
        let recount = count_hit_members(&f, &witness) as f64 / f.len() as f64;
        assert_eq!(cert.max_hit_fraction(), Some(recount));
    }

    #[test]
    fn fraction_refuses_oversized_universe_but_samples() {
        let f = sample_candidate_family(20, 30, None, 4).unwrap();
        assert!(matches!(
            verify_hit_fraction(&f),
            Err(Error::UniverseTooLarge(20, _))
        ));
        let cert = verify_hit_fraction_sampled(&f, 500, 1).unwrap();
        assert!(!cert.exhaustive);
        let witness = cert.witness().unwrap().clone();
        assert_eq!(
            cert.max_hit_fraction().unwrap(),
            count_hit_members(&f, &witness) as f64 / f.len() as f64
        );
    }

    #[test]
    fn adding_members_keeps_certificates_recount_consistent() {
        let mut f = sample_candidate_family(8, 40, None, 11).unwrap();
        let before = verify_hit_fraction(&f).unwrap();
        check_cert(&f, &before);
        for extra in 0..4u64 {
            let more = sample_candidate_family(8, 1, None, 100 + extra).unwrap();
            f.push(more.sets()[0].clone()).unwrap();
        }
        let after = verify_hit_fraction(&f).unwrap();
        check_cert(&f, &after);

        fn check_cert(f: &SetFamily, cert: &FamilyCertificate) {
            let witness = cert.witness().unwrap().clone();
            assert_eq!(
                cert.max_hit_fraction().unwrap(),
                count_hit_members(f, &witness) as f64 / f.len() as f64
            );
        }
    }

    #[test]
    fn min_hitting_size_examples() {
        let cert = min_hitting_family_size(&singletons(4), None).unwrap();
        assert_eq!(
            cert.kind,
            CertificateKind::MinHittingSize {
                size: SearchBound::Exact(1)
            }
        );
        let single = SetFamily::new(2, vec![set(&[1, 2])]).unwrap();
        let cert = min_hitting_family_size(&single, None).unwrap();
        assert_eq!(
            cert.kind,
            CertificateKind::MinHittingSize {
                size: SearchBound::Exact(1)
            }
        );
    }

    #[test]
    fn min_hitting_size_of_all_pairs_is_log_k() {
        for k in [4usize, 8] {
            let pairs = all_pairs_family(k).unwrap();
            let cert = min_hitting_family_size(&pairs, None).unwrap();
            let expected = crate::algorithms::ceil_log2(k);
            assert_eq!(
                cert.kind,
                CertificateKind::MinHittingSize {
                    size: SearchBound::Exact(expected)
                },
                "k={k}"
            );
        }
    }

    #[test]
    fn min_hitting_budget_returns_lower_bound() {
        let pairs = all_pairs_family(8).unwrap();
        let cert = min_hitting_family_size(&pairs, Some(2)).unwrap();
        assert_eq!(
            cert.kind,
            CertificateKind::MinHittingSize {
                size: SearchBound::AtLeast(3)
            }
        );
    }

    #[test]
    fn json_round_trip() {
        let f = SetFamily::new(5, vec![set(&[1, 3]), set(&[2, 4, 5])]).unwrap();
        let s = f.to_json();
        assert_eq!(SetFamily::from_json(&s).unwrap(), f);
        assert!(SetFamily::from_json(r#"{"l":3,"sets":[[7]]}"#).is_err());
        assert!(SetFamily::from_json(r#"{"l":3,"sets":[[]]}"#).is_err());
    }

    #[test]
    fn family_hits_equivalence_on_tiny_universes() {
        // Exhaustive equivalence with the definitional double loop on all
        // families over [5] with up to 3 members drawn from a fixed pool.
        let pool: Vec<ElemSet> = vec![
            set(&[1]),
            set(&[2, 3]),
            set(&[1, 4, 5]),
            set(&[3, 4]),
            set(&[2, 5]),
        ];
        let families: Vec<SetFamily> = {
            let mut out = Vec::new();
            for a in 0..pool.len() {
                for b in a..pool.len() {
                    for c in b..pool.len() {
                        out.push(
                            SetFamily::new(
                                5,
                                vec![pool[a].clone(), pool[b].clone(), pool[c].clone()],
                            )
                            .unwrap(),
                        );
                    }
                }
            }
            out
        };
        for fa in &families {
            for fb in &families {
                let expected = fb
                    .sets()
                    .iter()
                    .all(|b| fa.sets().iter().any(|a| a.intersection(b).count() == 1));
                assert_eq!(family_hits(fa, fb).unwrap(), expected);
            }
        }
    }
}
