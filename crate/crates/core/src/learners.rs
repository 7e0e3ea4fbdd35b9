//! Guess histories over the ordinal stage clock, countdown validation, and
//! the translations between hybrid difference specs and mind-change learners.
//!
//! A [`Trace`] is a piecewise-constant ordinal-indexed value function with
//! finitely many segments. Omega-alternation blocks are the only infinite-
//! change citizens: a block flips between two values along the canonical
//! fundamental sequence of its accumulation point, each flip taking effect at
//! the successor of a ladder stage, so the trace stays reset-semicontinuous
//! inside the block and its value at the accumulation is the reset constant.

use serde::{Deserialize, Serialize};

use crate::diff::{eval_hybrid_dec, DecHybrid, IncHybrid, IndexValues};
use crate::ordinals::Ordinal;
use crate::Val;

/// Piecewise-constant value history along the ordinal stage axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace<V> {
    /// Value taken at accumulation points of unresolved alternation, and
    /// after a block until the next segment starts.
    pub reset: V,
    pub segments: Vec<Segment<V>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Segment<V> {
    /// Constant `value` from `from` until the next segment.
    Plateau { from: Ordinal, value: V },
    /// Alternation between `first` and `second` on `[from, limit)`, flipping
    /// just after each fundamental-sequence stage of `limit` at or past `from`.
    OmegaBlock { from: Ordinal, limit: Ordinal, first: V, second: V },
}

impl<V> Segment<V> {
    pub fn from(&self) -> &Ordinal {
        match self {
            Segment::Plateau { from, .. } | Segment::OmegaBlock { from, .. } => from,
        }
    }

    fn entry_value(&self) -> &V {
        match self {
            Segment::Plateau { value, .. } => value,
            Segment::OmegaBlock { first, .. } => first,
        }
    }
}

/// An antitone ordinal-valued companion trace; must strictly descend across
/// every mind-change of the trace it validates.
pub type Countdown = Trace<Ordinal>;

/// Number of canonical ladder stages of `limit` that lie in `[from, s)`.
fn ladder_points_below(limit: &Ordinal, from: &Ordinal, s: &Ordinal) -> u64 {
    let mut count = 0;
    for k in 0.. {
        let p = limit.fundamental_seq(k).expect("block limit is a limit ordinal");
        if &p >= s {
            break;
        }
        if &p >= from {
            count += 1;
        }
        assert!(k < 100_000, "ladder scan exceeded the desk-scale bound");
    }
    count
}

impl<V: Clone + Eq> Trace<V> {
    /// The everywhere-constant trace.
    pub fn constant(reset: V, value: V) -> Self {
        Trace { reset, segments: vec![Segment::Plateau { from: Ordinal::zero(), value }] }
    }

    /// Value of the piecewise description at stage `s`.
    pub fn value_at(&self, s: &Ordinal) -> V {
        let mut active: Option<&Segment<V>> = None;
        for seg in &self.segments {
            if seg.from() <= s {
                active = Some(seg);
            } else {
                break;
            }
        }
        match active {
            None => self.reset.clone(),
            Some(Segment::Plateau { value, .. }) => value.clone(),
            Some(Segment::OmegaBlock { from, limit, first, second }) => {
                if s < limit {
                    // each flip takes effect just past a ladder stage, so the
                    // points strictly below s decide the parity
                    if ladder_points_below(limit, from, s) % 2 == 0 {
                        first.clone()
                    } else {
                        second.clone()
                    }
                } else {
                    // alternation never settles: the value past the block is the reset
                    self.reset.clone()
                }
            }
        }
    }

    /// Value past every segment; traces are eventually constant by representation.
    pub fn final_value(&self) -> V {
        match self.segments.last() {
            None => self.reset.clone(),
            Some(Segment::Plateau { value, .. }) => value.clone(),
            Some(Segment::OmegaBlock { .. }) => self.reset.clone(),
        }
    }

    /// Order type of the set of change stages: one per effective plateau
    /// boundary, omega per alternation block, summed in stage order.
    pub fn mind_change_otype(&self) -> Ordinal {
        let mut total = Ordinal::zero();
        let mut current: Option<V> = None;
        for seg in &self.segments {
            match seg {
                Segment::Plateau { value, .. } => {
                    if current.as_ref().is_some_and(|c| c != value) {
                        total = total.add(&Ordinal::nat(1));
                    }
                    current = Some(value.clone());
                }
                Segment::OmegaBlock { .. } => {
                    // the entry change is absorbed: 1 + w = w
                    total = total.add(&Ordinal::omega());
                    current = Some(self.reset.clone());
                }
            }
        }
        total
    }

    /// Number of changes when the trace has no alternation block.
    pub fn finite_change_count(&self) -> Option<u64> {
        let mut count = 0;
        let mut current: Option<V> = None;
        for seg in &self.segments {
            match seg {
                Segment::Plateau { value, .. } => {
                    if current.as_ref().is_some_and(|c| c != value) {
                        count += 1;
                    }
                    current = Some(value.clone());
                }
                Segment::OmegaBlock { .. } => return None,
            }
        }
        Some(count)
    }

    pub fn has_block(&self) -> bool {
        self.segments.iter().any(|s| matches!(s, Segment::OmegaBlock { .. }))
    }

    /// Structural well-formedness; every other validator builds on this.
    pub fn validate_shape(&self) -> Result<(), TraceFlaw> {
        let Some(first) = self.segments.first() else {
            return Err(TraceFlaw::Empty);
        };
        if !first.from().is_zero() {
            return Err(TraceFlaw::StartsAfterZero);
        }
        for w in self.segments.windows(2) {
            if w[1].from() <= w[0].from() {
                return Err(TraceFlaw::Unsorted { at: w[1].from().clone() });
            }
            if let Segment::OmegaBlock { limit, .. } = &w[0] {
                if w[1].from() < limit {
                    return Err(TraceFlaw::OverlapsBlock { at: w[1].from().clone() });
                }
            }
        }
        for seg in &self.segments {
            if let Segment::OmegaBlock { from, limit, first, second } = seg {
                if !limit.is_limit() {
                    return Err(TraceFlaw::BlockLimitNotLimit { at: limit.clone() });
                }
                if from >= limit {
                    return Err(TraceFlaw::BlockEmpty { at: from.clone() });
                }
                if first == second {
                    return Err(TraceFlaw::BlockDegenerate { at: from.clone() });
                }
            }
        }
        Ok(())
    }

    /// Checks the reset-semicontinuity discipline: at every limit-stage
    /// segment boundary the entering value must equal the reset-limit of the
    /// values below (the preceding plateau value, or the reset after a block).
    pub fn validate_semicontinuity(&self) -> Result<(), TraceFlaw> {
        self.validate_shape()?;
        for i in 1..self.segments.len() {
            let f = self.segments[i].from();
            if !f.is_limit() {
                continue;
            }
            let left = match &self.segments[i - 1] {
                Segment::Plateau { value, .. } => value.clone(),
                Segment::OmegaBlock { .. } => self.reset.clone(),
            };
            if self.segments[i].entry_value() != &left {
                return Err(TraceFlaw::JumpAtLimit { at: f.clone() });
            }
        }
        Ok(())
    }

    /// Plain continuity: semicontinuity with no alternation blocks at all.
    pub fn validate_continuity(&self) -> Result<(), TraceFlaw> {
        self.validate_semicontinuity()?;
        if let Some(Segment::OmegaBlock { from, .. }) =
            self.segments.iter().find(|s| matches!(s, Segment::OmegaBlock { .. }))
        {
            return Err(TraceFlaw::BlockBreaksContinuity { at: from.clone() });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TraceFlaw {
    #[error("trace has no segments")]
    Empty,
    #[error("first segment does not start at stage 0")]
    StartsAfterZero,
    #[error("segments not strictly increasing at {at}")]
    Unsorted { at: Ordinal },
    #[error("segment at {at} starts inside the preceding block")]
    OverlapsBlock { at: Ordinal },
    #[error("block accumulation {at} is not a limit ordinal")]
    BlockLimitNotLimit { at: Ordinal },
    #[error("block at {at} covers no stage")]
    BlockEmpty { at: Ordinal },
    #[error("block at {at} does not alternate two distinct values")]
    BlockDegenerate { at: Ordinal },
    #[error("value jumps at limit stage {at}")]
    JumpAtLimit { at: Ordinal },
    #[error("alternation block at {at} breaks plain continuity")]
    BlockBreaksContinuity { at: Ordinal },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountdownViolation {
    #[error("trace malformed: {0}")]
    TraceMalformed(TraceFlaw),
    #[error("countdown malformed: {0}")]
    CountdownMalformed(TraceFlaw),
    #[error("countdown not antitone at {at}")]
    NotAntitone { at: Ordinal },
    #[error("alternation block at {at}: no ordinal countdown can descend infinitely")]
    InfiniteChanges { at: Ordinal },
    #[error("trace changes at limit stage {at}")]
    ChangeAtLimit { at: Ordinal },
    #[error("countdown fails to drop across the change at stage {at}")]
    NoDrop { at: Ordinal },
}

/// Checks that `cd` is antitone and strictly decreases across every change
/// stage of `tr`. A trace containing an alternation block can never validate.
pub fn validate_countdown<V: Clone + Eq>(
    tr: &Trace<V>,
    cd: &Countdown,
) -> Result<(), CountdownViolation> {
    tr.validate_shape().map_err(CountdownViolation::TraceMalformed)?;
    cd.validate_shape().map_err(CountdownViolation::CountdownMalformed)?;
    let mut prev: Option<&Ordinal> = None;
    for seg in &cd.segments {
        match seg {
            Segment::OmegaBlock { from, .. } => {
                return Err(CountdownViolation::CountdownMalformed(TraceFlaw::BlockDegenerate {
                    at: from.clone(),
                }))
            }
            Segment::Plateau { from, value } => {
                if prev.is_some_and(|p| value > p) {
                    return Err(CountdownViolation::NotAntitone { at: from.clone() });
                }
                prev = Some(value);
            }
        }
    }
    if let Some(seg) = tr.segments.iter().find(|s| matches!(s, Segment::OmegaBlock { .. })) {
        return Err(CountdownViolation::InfiniteChanges { at: seg.from().clone() });
    }
    let mut current: Option<&V> = None;
    for seg in &tr.segments {
        let Segment::Plateau { from, value } = seg else { unreachable!() };
        if current.is_some_and(|c| c != value) {
            match from.pred() {
                None => return Err(CountdownViolation::ChangeAtLimit { at: from.clone() }),
                Some(s) => {
                    if cd.value_at(&s) <= cd.value_at(from) {
                        return Err(CountdownViolation::NoDrop { at: s });
                    }
                }
            }
        }
        current = Some(value);
    }
    Ok(())
}

/// `(eta+1)*t + xi + 1`: the injective stage reindexing that makes every
/// enumeration stage a successor, strictly increasing in `xi` for fixed `t`.
pub fn reindex_stage(xi: &Ordinal, t: &Ordinal, eta: &Ordinal) -> Ordinal {
    debug_assert!(xi < eta);
    eta.succ().mul(t).add(xi).add(&Ordinal::nat(1))
}

/// Learner translation of an increasing hybrid spec at one element: the value
/// trace follows the least revealed index and the countdown reports it,
/// starting from `eta`.
pub fn diff_to_countdown(spec: &IncHybrid, x: u32) -> (Trace<Option<Val>>, Countdown) {
    let eta = &spec.seq.length;
    let vals = &spec.values[x as usize];
    let mut tr = Trace {
        reset: spec.c,
        segments: vec![Segment::Plateau { from: Ordinal::zero(), value: spec.c }],
    };
    let mut cd = Countdown {
        reset: eta.clone(),
        segments: vec![Segment::Plateau { from: Ordinal::zero(), value: eta.clone() }],
    };
    for (idx, stage) in &spec.seq.members[x as usize].chain {
        let from = stage.succ();
        let value = Some(vals.at(idx));
        if tr.final_value() != value {
            tr.segments.push(Segment::Plateau { from: from.clone(), value });
        }
        cd.segments.push(Segment::Plateau { from, value: idx.clone() });
    }
    (tr, cd)
}

/// Per-element slice of a dom-increasing family recovered from a validated
/// trace/countdown pair: `pieces` lists `(threshold, value)` in the order the
/// countdown reached each threshold, so the value is defined for indices at
/// or above a threshold, taking the value recorded at the first stage the
/// countdown dipped that low.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncFamilySlice {
    pub pieces: Vec<(Ordinal, Option<Val>)>,
}

impl IncFamilySlice {
    /// The increasing hybrid difference of the family at this element.
    pub fn eval(&self, c: Option<Val>) -> Option<Val> {
        match self.pieces.last() {
            Some((_, v)) => *v,
            None => c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslationError {
    #[error("countdown does not validate: {0}")]
    InvalidCountdown(CountdownViolation),
    #[error("countdown value exceeds the family length")]
    CountdownAboveLength,
    #[error("trace has more changes than the family length allows")]
    TooManyChanges,
    #[error("trace is not reset-semicontinuous: {0}")]
    NotSemicontinuous(TraceFlaw),
}

/// Inverse of [`diff_to_countdown`] at the value level: reads the family
/// slice off the stages at which the countdown drops.
pub fn countdown_to_diff(
    tr: &Trace<Option<Val>>,
    cd: &Countdown,
    eta: &Ordinal,
) -> Result<IncFamilySlice, TranslationError> {
    validate_countdown(tr, cd).map_err(TranslationError::InvalidCountdown)?;
    let mut pieces = Vec::new();
    for seg in &cd.segments {
        let Segment::Plateau { from, value } = seg else { unreachable!() };
        if value > eta {
            return Err(TranslationError::CountdownAboveLength);
        }
        if value < eta {
            let phi = tr.value_at(from);
            if pieces.last().map(|(t, _)| t) != Some(value) {
                pieces.push((value.clone(), phi));
            }
        }
    }
    Ok(IncFamilySlice { pieces })
}

/// Exclusive upper bound of a decreasing member's index segment.
fn exclusive_bound(bound: &Ordinal, attained: bool) -> Ordinal {
    if attained {
        bound.succ()
    } else {
        bound.clone()
    }
}

/// Splits an ordinal below `w^2` into `(q, r)` with value `w*q + r`.
fn omega_decompose(o: &Ordinal) -> (u64, u64) {
    let mut q = 0;
    let mut r = 0;
    for (e, c) in o.terms() {
        match e.to_nat() {
            Some(0) => r = *c,
            Some(1) => q = *c,
            _ => panic!("index bound {o} is not below w^2"),
        }
    }
    (q, r)
}

/// Tail description of a value assignment along an infinite index run.
pub(crate) enum TailKind {
    Constant(Val),
    Alternating { at_even: Val, at_odd: Val },
}

/// How far explicit overrides reach into the run starting at `run_base`,
/// and the eventual pattern beyond them.
pub(crate) fn tail_behavior(vals: &IndexValues, run_base: &Ordinal) -> (u64, TailKind) {
    match vals {
        IndexValues::Constant(v) => (0, TailKind::Constant(*v)),
        IndexValues::Parity { even, odd } => {
            if even == odd {
                (0, TailKind::Constant(*even))
            } else {
                (0, TailKind::Alternating { at_even: *even, at_odd: *odd })
            }
        }
        IndexValues::IndexNat => {
            panic!("index-valued assignments have no finite tail description")
        }
        IndexValues::Overrides { at, fallback } => {
            let (inner_k, kind) = tail_behavior(fallback, run_base);
            let k = at
                .iter()
                .filter(|(i, _)| i.limit_part() == *run_base)
                .map(|(i, _)| i.finite_part() + 1)
                .max()
                .unwrap_or(0);
            (inner_k.max(k), kind)
        }
    }
}

/// Learner translation of a decreasing hybrid spec at one element.
///
/// Enumeration stages are first passed through [`reindex_stage`] so that
/// every fact lands on a successor stage and facts about distinct indices
/// land on distinct stages. The guess follows the value at the greatest
/// revealed index; exhausting an infinite run of indices resets the guess to
/// `c` at the run's accumulation point. Requires index bounds below `w^2`.
pub fn dec_to_mindchange(spec: &DecHybrid, x: u32) -> Trace<Option<Val>> {
    let eta = &spec.seq.length;
    let m = &spec.seq.members[x as usize];
    let vals = &spec.values[x as usize];
    let c = spec.c;
    let mut tr = Trace {
        reset: c,
        segments: vec![Segment::Plateau { from: Ordinal::zero(), value: c }],
    };
    let eb = exclusive_bound(&m.bound, m.attained);
    if eb.is_zero() {
        return tr;
    }
    let (full_runs, partial) = omega_decompose(&eb);
    let reindexed = |idx: &Ordinal| reindex_stage(idx, &m.schedule.stage(idx), eta);
    let push_plateau = |tr: &mut Trace<Option<Val>>, from: Ordinal, value: Option<Val>| {
        if tr.final_value() != value {
            tr.segments.push(Segment::Plateau { from, value });
        }
    };
    for run in 0..full_runs {
        let run_base = Ordinal::omega().mul(&Ordinal::nat(run));
        let (head, tail) = tail_behavior(vals, &run_base);
        for k in 0..head {
            let idx = run_base.add(&Ordinal::nat(k));
            push_plateau(&mut tr, reindexed(&idx).succ(), Some(vals.at(&idx)));
        }
        let next_run = Ordinal::omega().mul(&Ordinal::nat(run + 1));
        let run_sup = eta.succ().mul(&m.schedule.stage(&next_run));
        match tail {
            TailKind::Constant(v) => {
                let first_tail = run_base.add(&Ordinal::nat(head));
                push_plateau(&mut tr, reindexed(&first_tail).succ(), Some(v));
                // the least unrevealed index is now a limit: the guess resets
                push_plateau(&mut tr, run_sup.succ(), c);
            }
            TailKind::Alternating { at_even, at_odd } => {
                let first_tail = run_base.add(&Ordinal::nat(head));
                let (first, second) = if head % 2 == 0 {
                    (Some(at_even), Some(at_odd))
                } else {
                    (Some(at_odd), Some(at_even))
                };
                // merge with a preceding equal plateau by starting the block
                // at the first tail fact regardless
                tr.segments.push(Segment::OmegaBlock {
                    from: reindexed(&first_tail).succ(),
                    limit: run_sup,
                    first,
                    second,
                });
            }
        }
    }
    let partial_base = Ordinal::omega().mul(&Ordinal::nat(full_runs));
    for k in 0..partial {
        let idx = partial_base.add(&Ordinal::nat(k));
        push_plateau(&mut tr, reindexed(&idx).succ(), Some(vals.at(&idx)));
    }
    tr
}

/// One alternation phase of a recovered dom-decreasing family: finitely many
/// explicit values, then optionally an omega-run alternating a value pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecPhase {
    pub finite: Vec<Option<Val>>,
    pub block: Option<(Option<Val>, Option<Val>)>,
}

/// Per-element slice of a dom-decreasing family read off a trace: the value
/// after the `xi`-th change, phase by phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecFamilySlice {
    pub phases: Vec<DecPhase>,
}

impl DecFamilySlice {
    /// Order type of the family's index domain at this element.
    pub fn otype(&self) -> Ordinal {
        let mut total = Ordinal::zero();
        for p in &self.phases {
            total = total.add(&Ordinal::nat(p.finite.len() as u64));
            if p.block.is_some() {
                total = total.add(&Ordinal::omega());
            }
        }
        total
    }

    /// The decreasing hybrid difference of the family at this element: the
    /// value at the greatest index when one exists, else `c`.
    pub fn eval(&self, c: Option<Val>) -> Option<Val> {
        match self.phases.last() {
            None => c,
            Some(p) => {
                if p.block.is_some() {
                    c
                } else {
                    *p.finite.last().expect("trailing phase is nonempty")
                }
            }
        }
    }
}

/// Inverse of [`dec_to_mindchange`] at the value level: the `xi`-th family
/// member takes the value the trace shows right after its `xi`-th change.
pub fn mindchange_to_dec(
    tr: &Trace<Option<Val>>,
    eta: &Ordinal,
) -> Result<DecFamilySlice, TranslationError> {
    tr.validate_semicontinuity().map_err(TranslationError::NotSemicontinuous)?;
    let mut phases: Vec<DecPhase> = Vec::new();
    let mut finite: Vec<Option<Val>> = Vec::new();
    let mut current: Option<Option<Val>> = None;
    for seg in &tr.segments {
        match seg {
            Segment::Plateau { value, .. } => {
                if current.as_ref().is_some_and(|c| c != value) {
                    finite.push(*value);
                }
                current = Some(*value);
            }
            Segment::OmegaBlock { first, second, .. } => {
                // after-values alternate; whether the entry itself changes the
                // value decides which of the pair leads
                let start = if current.as_ref().is_some_and(|c| c != first) {
                    (*first, *second)
                } else {
                    (*second, *first)
                };
                phases.push(DecPhase { finite: std::mem::take(&mut finite), block: Some(start) });
                current = Some(tr.reset);
            }
        }
    }
    if !finite.is_empty() {
        phases.push(DecPhase { finite, block: None });
    }
    let slice = DecFamilySlice { phases };
    if slice.otype() > *eta {
        return Err(TranslationError::TooManyChanges);
    }
    Ok(slice)
}

/// Merged learner for a complementary pair of increasing characteristic
/// specs: follows whichever side currently reports the smaller index, with a
/// countdown that stays strictly below the family length at every stage.
pub fn delta_merge_countdown(
    for_set: &IncHybrid,
    for_complement: &IncHybrid,
    x: u32,
) -> (Trace<Option<Val>>, Countdown) {
    let eta = &for_set.seq.length;
    assert_eq!(eta, &for_complement.seq.length);
    struct Side<'a> {
        chain: &'a [(Ordinal, Ordinal)],
        vals: &'a IndexValues,
        flip: bool,
        psi: Ordinal,
        phi: Option<Val>,
    }
    impl Side<'_> {
        fn absorb(&mut self, idx: &Ordinal) {
            self.psi = idx.clone();
            let v = self.vals.at(idx);
            self.phi = Some(if self.flip { 1 - v } else { v });
        }
    }
    let mut s0 = Side {
        chain: &for_set.seq.members[x as usize].chain,
        vals: &for_set.values[x as usize],
        flip: false,
        psi: eta.clone(),
        phi: for_set.c,
    };
    let mut s1 = Side {
        chain: &for_complement.seq.members[x as usize].chain,
        vals: &for_complement.values[x as usize],
        flip: true,
        psi: eta.clone(),
        phi: for_complement.c.map(|v| 1 - v),
    };
    // merge both event chains by stage
    let mut events: Vec<(Ordinal, u8, Ordinal)> = Vec::new();
    for (i, s) in [(0u8, &s0), (1u8, &s1)] {
        for (idx, stage) in s.chain {
            events.push((stage.clone(), i, idx.clone()));
        }
    }
    events.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut steps: Vec<(Ordinal, Ordinal, Option<Val>)> = Vec::new(); // (stage+1, min-psi, value)
    for (stage, side, idx) in events {
        if side == 0 {
            s0.absorb(&idx);
        } else {
            s1.absorb(&idx);
        }
        let (m, phi) = if s0.psi <= s1.psi { (s0.psi.clone(), s0.phi) } else { (s1.psi.clone(), s1.phi) };
        steps.push((stage.succ(), m, phi));
    }
    // the initial guess is free here (unlike the plain characterization), so
    // start at the first event's value and index; every event reports an
    // index below eta, and one side must report since the pair is
    // complementary on every element
    let (initial_cd, initial_phi) = steps
        .first()
        .map(|(_, m, phi)| (m.clone(), *phi))
        .expect("complementary pair reaches a definite side");
    let mut tr = Trace {
        reset: for_set.c,
        segments: vec![Segment::Plateau { from: Ordinal::zero(), value: initial_phi }],
    };
    let mut cd = Countdown {
        reset: initial_cd.clone(),
        segments: vec![Segment::Plateau { from: Ordinal::zero(), value: initial_cd }],
    };
    for (from, m, phi) in steps.into_iter().skip(1) {
        if tr.final_value() != phi {
            tr.segments.push(Segment::Plateau { from: from.clone(), value: phi });
        }
        if cd.final_value() != m {
            cd.segments.push(Segment::Plateau { from, value: m });
        }
    }
    (tr, cd)
}

/// Convenience: the trace-and-countdown round trip value for one element.
pub fn dec_hybrid_value(spec: &DecHybrid, x: u32) -> Option<Val> {
    eval_hybrid_dec(spec)[x as usize]
}
