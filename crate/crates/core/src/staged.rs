//! Finite-universe surrogates for coanalytic and analytic sets.
//!
//! A [`StagedSet`] logs, per element, the ordinal stage at which the element
//! is enumerated (or never); its stage-`s` approximation grows with `s`. A
//! [`CoStagedSet`] logs removal stages instead, so its approximation shrinks.
//! Monotone ordinal-length families are stored per element as membership
//! segments plus stage schedules, which is lossless for monotone families and
//! keeps transfinite lengths executable.

use serde::{Deserialize, Serialize};

use crate::ordinals::Ordinal;

/// Elements are `0..size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Universe {
    size: u32,
}

impl Universe {
    pub fn new(size: u32) -> Self {
        assert!(size >= 1, "universe must be nonempty");
        Universe { size }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size
    }
}

/// Enumeration log of a coanalytic-set surrogate. `None` means the element
/// is never enumerated (its witness order type exceeds every stage).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StagedSet {
    pub universe: Universe,
    pub entry: Vec<Option<Ordinal>>,
}

/// Co-enumeration log of an analytic-set surrogate. `None` means the element
/// survives forever, i.e. belongs to the final set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoStagedSet {
    pub universe: Universe,
    pub removal: Vec<Option<Ordinal>>,
}

impl StagedSet {
    pub fn new(universe: Universe, entry: Vec<Option<Ordinal>>) -> Self {
        assert_eq!(entry.len(), universe.size() as usize);
        StagedSet { universe, entry }
    }

    pub fn empty(universe: Universe) -> Self {
        let n = universe.size() as usize;
        StagedSet { universe, entry: vec![None; n] }
    }

    /// `{ n : entry(n) < stage }`
    pub fn approx(&self, stage: &Ordinal) -> Vec<u32> {
        self.universe
            .elements()
            .filter(|&n| matches!(&self.entry[n as usize], Some(e) if e < stage))
            .collect()
    }

    pub fn final_set(&self) -> Vec<u32> {
        self.universe
            .elements()
            .filter(|&n| self.entry[n as usize].is_some())
            .collect()
    }

    pub fn contains_final(&self, n: u32) -> bool {
        self.entry[n as usize].is_some()
    }

    /// Distinct entry stages, sorted; the points where the approximation can change.
    pub fn event_stages(&self) -> Vec<Ordinal> {
        let mut stages: Vec<Ordinal> = self.entry.iter().flatten().cloned().collect();
        stages.sort();
        stages.dedup();
        stages
    }

    /// Reassigns colliding stages by interleaving, preserving relative order,
    /// so that at most one element enters per stage.
    pub fn interleave_distinct(&mut self) {
        let mut order: Vec<usize> = (0..self.entry.len())
            .filter(|&i| self.entry[i].is_some())
            .collect();
        order.sort_by(|&a, &b| self.entry[a].cmp(&self.entry[b]).then(a.cmp(&b)));
        let mut last: Option<Ordinal> = None;
        for i in order {
            let s = self.entry[i].clone().unwrap();
            let s = match &last {
                Some(prev) if s <= *prev => prev.succ(),
                _ => s,
            };
            last = Some(s.clone());
            self.entry[i] = Some(s);
        }
    }
}

impl CoStagedSet {
    pub fn new(universe: Universe, removal: Vec<Option<Ordinal>>) -> Self {
        assert_eq!(removal.len(), universe.size() as usize);
        CoStagedSet { universe, removal }
    }

    pub fn full(universe: Universe) -> Self {
        let n = universe.size() as usize;
        CoStagedSet { universe, removal: vec![None; n] }
    }

    /// `{ n : removal(n) >= stage or never }`
    pub fn approx(&self, stage: &Ordinal) -> Vec<u32> {
        self.universe
            .elements()
            .filter(|&n| match &self.removal[n as usize] {
                None => true,
                Some(r) => r >= stage,
            })
            .collect()
    }

    pub fn final_set(&self) -> Vec<u32> {
        self.universe
            .elements()
            .filter(|&n| self.removal[n as usize].is_none())
            .collect()
    }

    pub fn contains_final(&self, n: u32) -> bool {
        self.removal[n as usize].is_none()
    }

    pub fn event_stages(&self) -> Vec<Ordinal> {
        let mut stages: Vec<Ordinal> = self.removal.iter().flatten().cloned().collect();
        stages.sort();
        stages.dedup();
        stages
    }

    pub fn interleave_distinct(&mut self) {
        let mut order: Vec<usize> = (0..self.removal.len())
            .filter(|&i| self.removal[i].is_some())
            .collect();
        order.sort_by(|&a, &b| self.removal[a].cmp(&self.removal[b]).then(a.cmp(&b)));
        let mut last: Option<Ordinal> = None;
        for i in order {
            let s = self.removal[i].clone().unwrap();
            let s = match &last {
                Some(prev) if s <= *prev => prev.succ(),
                _ => s,
            };
            last = Some(s.clone());
            self.removal[i] = Some(s);
        }
    }
}

/// Finite description of the stages at which successive membership facts
/// about one element are enumerated. A `Ramp` puts the `n`-th fact at
/// `base + step*n`; its symbolic supremum is `base + step*w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Schedule {
    Constant(Ordinal),
    Ramp { base: Ordinal, step: Ordinal },
}

impl Schedule {
    pub fn ramp(base: Ordinal, step: Ordinal) -> Self {
        Schedule::Ramp { base, step }
    }

    pub fn unit_ramp(base: Ordinal) -> Self {
        Schedule::Ramp { base, step: Ordinal::nat(1) }
    }

    /// Stage of the fact at segment position `pos`.
    pub fn stage(&self, pos: &Ordinal) -> Ordinal {
        match self {
            Schedule::Constant(t) => t.clone(),
            Schedule::Ramp { base, step } => base.add(&step.mul(pos)),
        }
    }

    /// Supremum of all ramp stages; the accumulation point of an infinite run.
    pub fn sup(&self) -> Ordinal {
        match self {
            Schedule::Constant(t) => t.succ(),
            Schedule::Ramp { base, step } => base.add(&step.mul(&Ordinal::omega())),
        }
    }
}

/// One element's membership in a decreasing family: a downward-closed index
/// segment `[0, bound)` or `[0, bound]` with a stage schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecMember {
    pub bound: Ordinal,
    pub attained: bool,
    pub schedule: Schedule,
}

impl DecMember {
    pub fn empty() -> Self {
        DecMember { bound: Ordinal::zero(), attained: false, schedule: Schedule::Constant(Ordinal::zero()) }
    }

    pub fn contains(&self, idx: &Ordinal) -> bool {
        idx < &self.bound || (self.attained && *idx == self.bound)
    }

    pub fn is_empty(&self) -> bool {
        self.bound.is_zero() && !self.attained
    }

    /// Greatest member index, when it exists: the segment's max.
    pub fn max_index(&self) -> Option<Ordinal> {
        if self.attained {
            Some(self.bound.clone())
        } else if self.bound.is_zero() {
            None
        } else {
            self.bound.pred() // None exactly when the bound is a limit
        }
    }

    pub fn stage_of(&self, idx: &Ordinal) -> Ordinal {
        self.schedule.stage(idx)
    }
}

/// Decreasing ordinal-length family of staged sets, one segment per element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecSeq {
    pub universe: Universe,
    pub length: Ordinal,
    pub members: Vec<DecMember>,
}

/// One element's membership in an increasing family: the final segment
/// `[start, length)`, revealed through a finite chain of strictly smaller
/// indices at strictly later stages. An empty chain means the element never
/// appears. The chain's last index is the segment start.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct IncMember {
    pub chain: Vec<(Ordinal, Ordinal)>,
}

impl IncMember {
    pub fn never() -> Self {
        IncMember { chain: Vec::new() }
    }

    pub fn start(&self) -> Option<&Ordinal> {
        self.chain.last().map(|(i, _)| i)
    }

    pub fn contains(&self, idx: &Ordinal) -> bool {
        self.start().is_some_and(|s| idx >= s)
    }

    /// Stage at which membership at `idx` is first revealed.
    pub fn reveal_stage(&self, idx: &Ordinal) -> Option<Ordinal> {
        self.chain.iter().find(|(i, _)| i <= idx).map(|(_, s)| s.clone())
    }
}

/// Increasing ordinal-length family of staged sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncSeq {
    pub universe: Universe,
    pub length: Ordinal,
    pub members: Vec<IncMember>,
}

/// Structured outcome of monotonicity validation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonotoneViolation {
    #[error("element {elem}: segment bound {bound} exceeds family length {length}")]
    BoundExceedsLength { elem: u32, bound: Ordinal, length: Ordinal },
    #[error("element {elem}: attained bound equals the family length")]
    AttainedAtLength { elem: u32 },
    #[error("element {elem}: stages are not strictly increasing along successive facts")]
    NonIncreasingStages { elem: u32 },
    #[error("element {elem}: chain indices are not strictly decreasing")]
    ChainNotDecreasing { elem: u32 },
    #[error("element {elem}: chain index out of range")]
    ChainIndexOutOfRange { elem: u32 },
}

impl DecSeq {
    pub fn all_empty(universe: Universe, length: Ordinal) -> Self {
        let members = vec![DecMember::empty(); universe.size() as usize];
        DecSeq { universe, length, members }
    }

    pub fn contains(&self, elem: u32, idx: &Ordinal) -> bool {
        self.members[elem as usize].contains(idx)
    }

    /// Materializes the `idx`-th set with its stage labels.
    pub fn slice(&self, idx: &Ordinal) -> Result<StagedSet, SliceError> {
        if idx >= &self.length {
            return Err(SliceError::IndexOutOfRange { index: idx.clone(), length: self.length.clone() });
        }
        let entry = self
            .members
            .iter()
            .map(|m| m.contains(idx).then(|| m.stage_of(idx)))
            .collect();
        Ok(StagedSet::new(self.universe, entry))
    }

    /// Checks the representation invariants and that earlier facts carry
    /// earlier stages. Returns a structured violation instead of aborting.
    pub fn validate(&self) -> Result<(), MonotoneViolation> {
        for (i, m) in self.members.iter().enumerate() {
            let elem = i as u32;
            if m.bound > self.length {
                return Err(MonotoneViolation::BoundExceedsLength {
                    elem,
                    bound: m.bound.clone(),
                    length: self.length.clone(),
                });
            }
            if m.attained && m.bound == self.length {
                return Err(MonotoneViolation::AttainedAtLength { elem });
            }
            // more than one fact forces strictly increasing ramp stages
            let fact_count_exceeds_one = match m.max_index() {
                Some(maxi) => !maxi.is_zero(),
                None => !m.bound.is_zero(), // limit bound: infinitely many facts
            };
            if fact_count_exceeds_one {
                match &m.schedule {
                    Schedule::Constant(_) => {
                        return Err(MonotoneViolation::NonIncreasingStages { elem })
                    }
                    Schedule::Ramp { step, .. } => {
                        if step.is_zero() {
                            return Err(MonotoneViolation::NonIncreasingStages { elem });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl IncSeq {
    pub fn all_never(universe: Universe, length: Ordinal) -> Self {
        let members = vec![IncMember::never(); universe.size() as usize];
        IncSeq { universe, length, members }
    }

    pub fn contains(&self, elem: u32, idx: &Ordinal) -> bool {
        self.members[elem as usize].contains(idx)
    }

    pub fn slice(&self, idx: &Ordinal) -> Result<StagedSet, SliceError> {
        if idx >= &self.length {
            return Err(SliceError::IndexOutOfRange { index: idx.clone(), length: self.length.clone() });
        }
        let entry = self.members.iter().map(|m| m.reveal_stage(idx)).collect();
        Ok(StagedSet::new(self.universe, entry))
    }

    pub fn validate(&self) -> Result<(), MonotoneViolation> {
        for (i, m) in self.members.iter().enumerate() {
            let elem = i as u32;
            for w in m.chain.windows(2) {
                if w[1].0 >= w[0].0 {
                    return Err(MonotoneViolation::ChainNotDecreasing { elem });
                }
                if w[1].1 <= w[0].1 {
                    return Err(MonotoneViolation::NonIncreasingStages { elem });
                }
            }
            if let Some((first, _)) = m.chain.first() {
                if first >= &self.length {
                    return Err(MonotoneViolation::ChainIndexOutOfRange { elem });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SliceError {
    #[error("slice index {index} out of range for length {length}")]
    IndexOutOfRange { index: Ordinal, length: Ordinal },
}

/// A code for a relation that is either a genuine well-order, revealed to be
/// one at a definite stage, or not a well-order at all. Serializes as a rank
/// array with a reveal stage, or the literal string `"nonwo"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WoCode {
    WellOrder { rank: Vec<u32>, revealed_at: Ordinal },
    NonWo,
}

impl Serialize for WoCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            WoCode::NonWo => serializer.serialize_str("nonwo"),
            WoCode::WellOrder { rank, revealed_at } => {
                use serde::ser::SerializeStruct;
                let mut s = serializer.serialize_struct("WoCode", 2)?;
                s.serialize_field("rank", rank)?;
                s.serialize_field("revealed_at", revealed_at)?;
                s.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for WoCode {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Tag(String),
            Code { rank: Vec<u32>, revealed_at: Ordinal },
        }
        match Raw::deserialize(deserializer)? {
            Raw::Tag(t) if t == "nonwo" => Ok(WoCode::NonWo),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!("unknown well-order tag {t:?}"))),
            Raw::Code { rank, revealed_at } => Ok(WoCode::WellOrder { rank, revealed_at }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WoError {
    #[error("the code is not a well-order")]
    NonWoCode,
    #[error("minimum of an empty set")]
    EmptySet,
}

impl WoCode {
    pub fn well_order(rank: Vec<u32>, revealed_at: Ordinal) -> Self {
        let n = rank.len();
        let mut seen = vec![false; n];
        for &r in &rank {
            assert!((r as usize) < n && !seen[r as usize], "rank must be a bijection");
            seen[r as usize] = true;
        }
        WoCode::WellOrder { rank, revealed_at }
    }

    /// Identity ranks on `0..n`.
    pub fn identity(n: u32, revealed_at: Ordinal) -> Self {
        WoCode::well_order((0..n).collect(), revealed_at)
    }

    pub fn is_well_order(&self) -> bool {
        matches!(self, WoCode::WellOrder { .. })
    }

    pub fn rank_of(&self, n: u32) -> Option<u32> {
        match self {
            WoCode::WellOrder { rank, .. } => rank.get(n as usize).copied(),
            WoCode::NonWo => None,
        }
    }

    /// Parity of the rank of `n`.
    pub fn par(&self, n: u32) -> Option<u8> {
        self.rank_of(n).map(|r| (r % 2) as u8)
    }
}

/// The rank-least element of a nonempty set under a well-order code.
pub fn wo_min(y: &WoCode, set: &[u32]) -> Result<u32, WoError> {
    let WoCode::WellOrder { rank, .. } = y else {
        return Err(WoError::NonWoCode);
    };
    set.iter()
        .copied()
        .min_by_key(|&n| rank[n as usize])
        .ok_or(WoError::EmptySet)
}
