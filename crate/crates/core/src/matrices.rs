//! Omega-plus-one guessing processes and their merge, omega-change matrices
//! with the stacked difference operator, the freezing normalization, and the
//! well-order-indexed coproduct of complementary decreasing pairs.
//!
//! Rows of a matrix are stacked length-omega decreasing sequences; row 0 is
//! the top. The staging condition makes lower-indexed rows finish before a
//! lower row starts on any element, so the single merged learner reads the
//! rows in order.
//!
//! For a single default-table row, the stacked operator returns `par(max
//! index)` while the plain decreasing difference returns `1` exactly when
//! that parity is `0`; both conventions are kept side by side.

use serde::{Deserialize, Serialize};

use crate::diff::{eval_diff_dec, join_schedules, IndexValues};
use crate::learners::{tail_behavior, Segment, TailKind, Trace};
use crate::ordinals::Ordinal;
use crate::staged::{DecMember, DecSeq, Schedule, StagedSet, Universe, WoCode};
use crate::Val;

/// A decreasing length-omega family together with a disjoint two-way split
/// of its survivors: the elements in every finite level are decided by
/// membership in `p_omega` (value 1) or `p_check` (value 0).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaOmegaPlusOneSeq {
    pub p: DecSeq,
    pub p_omega: StagedSet,
    pub p_check: StagedSet,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    #[error("element {elem}: survivor split does not partition the intersection")]
    BadSplit { elem: u32 },
}

/// Whether one element's member segment covers the whole of omega.
fn survives(m: &DecMember) -> bool {
    !m.attained && m.bound == Ordinal::omega()
}

impl DeltaOmegaPlusOneSeq {
    pub fn validate(&self) -> Result<(), DeltaError> {
        for x in self.p.universe.elements() {
            let surv = survives(&self.p.members[x as usize]);
            let in_omega = self.p_omega.contains_final(x);
            let in_check = self.p_check.contains_final(x);
            let ok = if surv { in_omega != in_check } else { !in_omega && !in_check };
            if !ok {
                return Err(DeltaError::BadSplit { elem: x });
            }
        }
        Ok(())
    }
}

/// Output convention of a split sequence: the decreasing difference at a
/// greatest finite index, and the declared side on survivors.
pub fn eval_type_delta(seq: &DeltaOmegaPlusOneSeq, x: u32) -> Val {
    let m = &seq.p.members[x as usize];
    if survives(m) {
        return seq.p_omega.contains_final(x) as Val;
    }
    match m.max_index() {
        Some(g) => (g.parity() == 0) as Val,
        None => 0,
    }
}

/// One omega-plus-one guessing process: finite levels, an omega-declaration
/// set, and the value it defaults to when the levels run out undeclared.
/// A process with `limit_default` 0 declares value 1 on its omega set; its
/// complementary twin defaults to 1 and declares 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaPlusOneProc {
    pub levels: DecSeq,
    pub omega: StagedSet,
    pub limit_default: Val,
}

impl OmegaPlusOneProc {
    pub fn value(&self, x: u32) -> Val {
        let m = &self.levels.members[x as usize];
        if survives(m) {
            if self.omega.contains_final(x) {
                1 - self.limit_default
            } else {
                self.limit_default
            }
        } else {
            match m.max_index() {
                Some(g) => (g.parity() == 0) as Val,
                None => 0,
            }
        }
    }

    /// Finite-level mind-change count: one per level entered, when finite.
    pub fn change_count(&self, x: u32) -> Option<u64> {
        let m = &self.levels.members[x as usize];
        if survives(m) {
            None
        } else {
            Some(m.max_index().map_or(0, |g| g.finite_part() + 1))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MergeError {
    #[error("the two processes disagree at element {elem}")]
    InputsDisagree { elem: u32 },
    #[error("the processes must carry complementary limit defaults")]
    SameDefaults,
}

/// Merges two processes guessing the same set with complementary limit
/// defaults into one split sequence: follow whichever process has changed
/// less, and on double survival wait for the omega declaration that fires.
pub fn merge_delta(
    p: &OmegaPlusOneProc,
    q: &OmegaPlusOneProc,
) -> Result<DeltaOmegaPlusOneSeq, MergeError> {
    if p.limit_default == q.limit_default {
        return Err(MergeError::SameDefaults);
    }
    let universe = p.levels.universe;
    assert_eq!(universe, q.levels.universe);
    let mut members = Vec::with_capacity(universe.size() as usize);
    let mut omega_entry = vec![None; universe.size() as usize];
    let mut check_entry = vec![None; universe.size() as usize];
    for x in universe.elements() {
        if p.value(x) != q.value(x) {
            return Err(MergeError::InputsDisagree { elem: x });
        }
        let mp = &p.levels.members[x as usize];
        let mq = &q.levels.members[x as usize];
        let joined = join_schedules(&mp.schedule, &mq.schedule);
        let member = match (p.change_count(x), q.change_count(x)) {
            (Some(0), _) | (_, Some(0)) => DecMember::empty(),
            (Some(a), Some(b)) => DecMember {
                bound: Ordinal::nat(a.min(b) - 1),
                attained: true,
                schedule: joined,
            },
            (Some(a), None) => {
                DecMember { bound: Ordinal::nat(a - 1), attained: true, schedule: joined }
            }
            (None, Some(b)) => {
                DecMember { bound: Ordinal::nat(b - 1), attained: true, schedule: joined }
            }
            (None, None) => {
                // both run forever: exactly one omega declaration fires
                let fires_one = p.omega.contains_final(x);
                if fires_one {
                    omega_entry[x as usize] = p.omega.entry[x as usize].clone();
                } else {
                    check_entry[x as usize] = q.omega.entry[x as usize].clone();
                }
                DecMember { bound: Ordinal::omega(), attained: false, schedule: joined }
            }
        };
        members.push(member);
    }
    let merged = DeltaOmegaPlusOneSeq {
        p: DecSeq { universe, length: Ordinal::omega(), members },
        p_omega: StagedSet::new(universe, omega_entry),
        p_check: StagedSet::new(universe, check_entry),
    };
    debug_assert!(merged.validate().is_ok());
    Ok(merged)
}

/// A stacked family of length-omega decreasing rows with a value table and
/// default; the table entry at `(j, n)` is `values[j]` read at index `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaChangeMatrix {
    pub rows: Vec<DecSeq>,
    pub values: Vec<IndexValues>,
    pub c: Val,
}

impl OmegaChangeMatrix {
    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    pub fn universe(&self) -> Universe {
        self.rows[0].universe
    }

    /// The default-table matrix over the given rows: `a(j, n) = par(n)`,
    /// reset 0.
    pub fn with_default_table(rows: Vec<DecSeq>) -> Self {
        let values = vec![IndexValues::Parity { even: 0, odd: 1 }; rows.len()];
        OmegaChangeMatrix { rows, values, c: 0 }
    }

    pub fn table(&self, row: usize, n: u64) -> Val {
        self.values[row].at(&Ordinal::nat(n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("row {upper} of element {elem} has a fact at {fact_stage} after row {lower} starts at {start_stage}")]
pub struct MatrixViolation {
    pub upper: usize,
    pub lower: usize,
    pub elem: u32,
    pub fact_stage: Ordinal,
    pub start_stage: Ordinal,
}

/// Latest fact stage of one element in one row, `None` for no facts, and
/// the symbolic supremum for a full row.
fn row_reach(m: &DecMember) -> Option<Ordinal> {
    if survives(m) {
        Some(m.schedule.sup())
    } else {
        m.max_index().map(|g| m.stage_of(&g))
    }
}

/// Checks the staging condition: once a lower row starts on an element, all
/// upper-row facts about it are already in (stage at most the start stage).
pub fn validate_matrix(m: &OmegaChangeMatrix) -> Result<(), MatrixViolation> {
    let universe = m.universe();
    for x in universe.elements() {
        for k in 1..m.depth() {
            let mk = &m.rows[k].members[x as usize];
            if mk.is_empty() {
                continue;
            }
            let start = mk.stage_of(&Ordinal::zero());
            for j in 0..k {
                let mj = &m.rows[j].members[x as usize];
                match row_reach(mj) {
                    Some(reach) if reach > start => {
                        return Err(MatrixViolation {
                            upper: j,
                            lower: k,
                            elem: x,
                            fact_stage: reach,
                            start_stage: start,
                        });
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

/// The stacked difference: thread the default through the rows, each row
/// with a greatest index replacing the running value by its table entry, and
/// stop at the first row the element fully inhabits.
pub fn eval_matrix_diff(m: &OmegaChangeMatrix, x: u32) -> Val {
    let mut v = m.c;
    for (j, row) in m.rows.iter().enumerate() {
        let member = &row.members[x as usize];
        if survives(member) {
            return v;
        }
        if let Some(g) = member.max_index() {
            v = m.table(j, g.finite_part());
        }
    }
    v
}

/// The single merged guess history: rows are consumed in order; a full row
/// freezes the guess at its accumulation point to the value the row
/// inherited. Change stages have order type at most omega plus one final
/// decision.
pub fn matrix_guess_trace(m: &OmegaChangeMatrix, x: u32) -> Trace<Val> {
    let mut tr = Trace {
        reset: m.c,
        segments: vec![Segment::Plateau { from: Ordinal::zero(), value: m.c }],
    };
    let push = |tr: &mut Trace<Val>, from: Ordinal, value: Val| {
        if tr.final_value() != value {
            tr.segments.push(Segment::Plateau { from, value });
        }
    };
    let mut inherited = m.c;
    for (j, row) in m.rows.iter().enumerate() {
        let member = &row.members[x as usize];
        if survives(member) {
            let (head, tail) = tail_behavior(&m.values[j], &Ordinal::zero());
            for n in 0..head {
                let idx = Ordinal::nat(n);
                push(&mut tr, member.stage_of(&idx).succ(), m.table(j, n));
            }
            let sup = member.schedule.sup();
            match tail {
                TailKind::Constant(v) => {
                    let first_tail = Ordinal::nat(head);
                    push(&mut tr, member.stage_of(&first_tail).succ(), v);
                }
                TailKind::Alternating { at_even, at_odd } => {
                    let first_tail = Ordinal::nat(head);
                    let (first, second) =
                        if head % 2 == 0 { (at_even, at_odd) } else { (at_odd, at_even) };
                    if first == second {
                        push(&mut tr, member.stage_of(&first_tail).succ(), first);
                    } else {
                        tr.segments.push(Segment::OmegaBlock {
                            from: member.stage_of(&first_tail).succ(),
                            limit: sup.clone(),
                            first,
                            second,
                        });
                    }
                }
            }
            // the first full row freezes the inherited value at its sup
            push(&mut tr, sup, inherited);
            return tr;
        }
        if let Some(g) = member.max_index() {
            for n in 0..=g.finite_part() {
                let idx = Ordinal::nat(n);
                push(&mut tr, member.stage_of(&idx).succ(), m.table(j, n));
            }
            inherited = m.table(j, g.finite_part());
        }
    }
    tr
}

/// Validity of a guess history for the omega-plus-one discipline: either
/// finitely many changes, or a single alternation block followed by at most
/// one further decision at or past its accumulation point.
pub fn delta_omega_plus_one_valid<V: Clone + Eq>(tr: &Trace<V>) -> bool {
    let blocks: Vec<usize> = tr
        .segments
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s, Segment::OmegaBlock { .. }))
        .map(|(i, _)| i)
        .collect();
    match blocks.as_slice() {
        [] => true,
        [b] => {
            // at most one value change after the block
            let mut current = tr.reset.clone();
            let mut changes = 0;
            for seg in &tr.segments[b + 1..] {
                let Segment::Plateau { value, .. } = seg else { return false };
                if *value != current {
                    changes += 1;
                    current = value.clone();
                }
            }
            changes <= 1
        }
        _ => false,
    }
}

/// Rebuilds raw event data into a matrix satisfying the staging condition:
/// an upper-row fact arriving strictly after some lower row has started is
/// dropped, so once a lower row starts, the rows above it are frozen.
/// Already-valid matrices come back unchanged.
pub fn matrix_normalize(m: &OmegaChangeMatrix) -> OmegaChangeMatrix {
    let universe = m.universe();
    let depth = m.depth();
    let mut rows: Vec<Vec<DecMember>> = vec![Vec::new(); depth];
    for x in universe.elements() {
        // surviving start stages, bottom row upward
        let mut surv_start: Vec<Option<Ordinal>> = vec![None; depth];
        let mut freeze: Vec<Option<Ordinal>> = vec![None; depth];
        for j in (0..depth).rev() {
            let mut fz: Option<Ordinal> = None;
            for start in surv_start[j + 1..].iter().flatten() {
                if fz.as_ref().is_none_or(|f| start < f) {
                    fz = Some(start.clone());
                }
            }
            freeze[j] = fz;
            let member = &m.rows[j].members[x as usize];
            if !member.is_empty() {
                let start = member.stage_of(&Ordinal::zero());
                let dropped = freeze[j].as_ref().is_some_and(|f| *f < start);
                if !dropped {
                    surv_start[j] = Some(start);
                }
            }
        }
        for j in 0..depth {
            let member = &m.rows[j].members[x as usize];
            let new_member = if surv_start[j].is_none() {
                DecMember::empty()
            } else {
                match &freeze[j] {
                    None => member.clone(),
                    Some(fz) => {
                        let intact = row_reach(member).is_none_or(|r| r <= *fz);
                        if intact {
                            member.clone()
                        } else {
                            // keep the longest prefix of facts at stages <= freeze
                            let mut keep = 0u64;
                            while member.contains(&Ordinal::nat(keep + 1))
                                && member.stage_of(&Ordinal::nat(keep + 1)) <= *fz
                            {
                                keep += 1;
                            }
                            DecMember {
                                bound: Ordinal::nat(keep),
                                attained: true,
                                schedule: member.schedule.clone(),
                            }
                        }
                    }
                }
            };
            rows[j].push(new_member);
        }
    }
    OmegaChangeMatrix {
        rows: rows
            .into_iter()
            .map(|members| DecSeq { universe, length: Ordinal::omega(), members })
            .collect(),
        values: m.values.clone(),
        c: m.c,
    }
}

/// Precomposition with an element relabeling: the matrix whose behavior at
/// `x` is the original's at `pi[x]`.
pub fn precompose(m: &OmegaChangeMatrix, pi: &[u32]) -> OmegaChangeMatrix {
    let universe = Universe::new(pi.len() as u32);
    OmegaChangeMatrix {
        rows: m
            .rows
            .iter()
            .map(|row| DecSeq {
                universe,
                length: Ordinal::omega(),
                members: pi.iter().map(|&y| row.members[y as usize].clone()).collect(),
            })
            .collect(),
        values: m.values.clone(),
        c: m.c,
    }
}

/// The diagonal of a corpus of same-depth default-table matrices: element
/// `i` behaves as corpus matrix `i` does at its own probe element `i mod
/// universe`.
pub fn diagonal_matrix(corpus: &[OmegaChangeMatrix]) -> OmegaChangeMatrix {
    let depth = corpus[0].depth();
    let universe = Universe::new(corpus.len() as u32);
    let rows = (0..depth)
        .map(|j| DecSeq {
            universe,
            length: Ordinal::omega(),
            members: corpus
                .iter()
                .map(|m| {
                    let probe = (m.universe().size() as usize).min(usize::MAX) as u32;
                    let probe = (corpus.iter().position(|c| std::ptr::eq(c, m)).unwrap() as u32)
                        % probe;
                    m.rows[j].members[probe as usize].clone()
                })
                .collect(),
        })
        .collect();
    OmegaChangeMatrix::with_default_table(rows)
}

/// The complement of a default-table matrix as a one-row-deeper matrix: a
/// constantly-guessing top row flips the start, the old rows shift down with
/// flipped tables, and all old stages move past the new top facts.
pub fn complement_shift(m: &OmegaChangeMatrix) -> OmegaChangeMatrix {
    let universe = m.universe();
    let shift = |s: &Schedule| match s {
        Schedule::Constant(t) => Schedule::Constant(Ordinal::nat(2).add(t)),
        Schedule::Ramp { base, step } => {
            Schedule::Ramp { base: Ordinal::nat(2).add(base), step: step.clone() }
        }
    };
    let top = DecSeq {
        universe,
        length: Ordinal::omega(),
        members: universe
            .elements()
            .map(|_| DecMember {
                bound: Ordinal::nat(1),
                attained: true,
                schedule: Schedule::unit_ramp(Ordinal::zero()),
            })
            .collect(),
    };
    let mut rows = vec![top];
    for row in &m.rows {
        rows.push(DecSeq {
            universe,
            length: Ordinal::omega(),
            members: row
                .members
                .iter()
                .map(|mem| DecMember {
                    bound: mem.bound.clone(),
                    attained: mem.attained,
                    schedule: shift(&mem.schedule),
                })
                .collect(),
        });
    }
    let mut values = vec![IndexValues::Parity { even: 0, odd: 1 }];
    for v in &m.values {
        values.push(flip_values(v));
    }
    OmegaChangeMatrix { rows, values, c: m.c }
}

fn flip_values(v: &IndexValues) -> IndexValues {
    match v {
        IndexValues::Constant(c) => IndexValues::Constant(1 - c),
        IndexValues::Parity { even, odd } => {
            IndexValues::Parity { even: 1 - even, odd: 1 - odd }
        }
        IndexValues::IndexNat => panic!("cannot flip an index-valued table"),
        IndexValues::Overrides { at, fallback } => IndexValues::Overrides {
            at: at.iter().map(|(i, v)| (i.clone(), 1 - v)).collect(),
            fallback: Box::new(flip_values(fallback)),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoproductError {
    #[error("index {index}: the pair is not complementary at element {elem}")]
    NotComplementary { index: usize, elem: u32 },
    #[error("family length {0} must be infinite")]
    FiniteLength(Ordinal),
}

/// One summand of a well-order-indexed coproduct: the index code and a
/// complementary pair of decreasing families.
pub struct CoproductSummand {
    pub code: WoCode,
    pub p: DecSeq,
    pub p_check: DecSeq,
}

/// Element id of `(index i, point x)` in the coproduct's product universe.
pub fn coproduct_elem(i: usize, x: u32, n: u32) -> u32 {
    i as u32 * n + x
}

/// Builds the coproduct pair over the product instance space: membership on
/// the direct side requires the index to be a genuine well-order and defers
/// to that summand; the dual side prepends two levels so that its difference
/// is the exact complement. Fact stages dominate both the reveal stage of
/// the index code and the underlying schedule.
pub fn pwo_coproduct_dec(
    family: &[CoproductSummand],
) -> Result<(DecSeq, DecSeq), CoproductError> {
    let eta = family[0].p.length.clone();
    if eta < Ordinal::omega() {
        return Err(CoproductError::FiniteLength(eta));
    }
    let n = family[0].p.universe.size();
    for (i, s) in family.iter().enumerate() {
        let direct = eval_diff_dec(&s.p);
        let dual = eval_diff_dec(&s.p_check);
        for x in s.p.universe.elements() {
            if direct[x as usize] == dual[x as usize] {
                return Err(CoproductError::NotComplementary { index: i, elem: x });
            }
        }
    }
    let universe = Universe::new(family.len() as u32 * n);
    let mut q_members = Vec::with_capacity(universe.size() as usize);
    let mut check_members = Vec::with_capacity(universe.size() as usize);
    for summand in family {
        let reveal = match &summand.code {
            WoCode::WellOrder { revealed_at, .. } => Some(revealed_at.clone()),
            WoCode::NonWo => None,
        };
        for x in summand.p.universe.elements() {
            let mp = &summand.p.members[x as usize];
            let mc = &summand.p_check.members[x as usize];
            match &reveal {
                None => {
                    q_members.push(DecMember::empty());
                    // only the base level holds a pair with a bad index
                    check_members.push(DecMember {
                        bound: Ordinal::zero(),
                        attained: true,
                        schedule: Schedule::Constant(Ordinal::zero()),
                    });
                }
                Some(r) => {
                    q_members.push(DecMember {
                        bound: mp.bound.clone(),
                        attained: mp.attained,
                        schedule: dominate(r, &mp.schedule),
                    });
                    let shifted = Ordinal::nat(2).add(&exclusive(mc));
                    check_members.push(DecMember {
                        bound: shifted,
                        attained: false,
                        schedule: dominate(r, &mc.schedule),
                    });
                }
            }
        }
    }
    let q = DecSeq { universe, length: eta.clone(), members: q_members };
    let check = DecSeq { universe, length: eta, members: check_members };
    Ok((q, check))
}

fn exclusive(m: &DecMember) -> Ordinal {
    if m.attained {
        m.bound.succ()
    } else {
        m.bound.clone()
    }
}

/// A ramp whose stages dominate both the reveal stage and the schedule.
fn dominate(reveal: &Ordinal, s: &Schedule) -> Schedule {
    match s {
        Schedule::Constant(t) => Schedule::Ramp {
            base: reveal.clone().max(t.clone()),
            step: Ordinal::nat(1),
        },
        Schedule::Ramp { base, step } => Schedule::Ramp {
            base: reveal.clone().max(base.clone()),
            step: step.clone().max(Ordinal::nat(1)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinals::parse_ordinal;

    fn ord(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    fn dec_member(bound: &str, attained: bool) -> DecMember {
        DecMember { bound: ord(bound), attained, schedule: Schedule::unit_ramp(Ordinal::zero()) }
    }

    fn dec_seq(universe: u32, segs: &[(&str, bool)]) -> DecSeq {
        DecSeq {
            universe: Universe::new(universe),
            length: Ordinal::omega(),
            members: segs.iter().map(|(b, a)| dec_member(b, *a)).collect(),
        }
    }

    #[test]
    fn eval_type_delta_examples() {
        let universe = Universe::new(3);
        let seq = DeltaOmegaPlusOneSeq {
            p: dec_seq(3, &[("0", false), ("2", true), ("w", false)]),
            p_omega: StagedSet::new(universe, vec![None, None, Some(Ordinal::nat(5))]),
            p_check: StagedSet::new(universe, vec![None, None, None]),
        };
        seq.validate().unwrap();
        assert_eq!(eval_type_delta(&seq, 0), 0); // outside the base level
        assert_eq!(eval_type_delta(&seq, 1), 1); // greatest index 2, even
        assert_eq!(eval_type_delta(&seq, 2), 1); // survivor declared
        // the finite cases agree with the plain decreasing difference
        let diff = eval_diff_dec(&seq.p);
        assert_eq!(diff[1], eval_type_delta(&seq, 1) == 1);
    }

    #[test]
    fn validate_split() {
        let universe = Universe::new(1);
        let bad = DeltaOmegaPlusOneSeq {
            p: dec_seq(1, &[("w", false)]),
            p_omega: StagedSet::empty(universe),
            p_check: StagedSet::empty(universe),
        };
        assert_eq!(bad.validate(), Err(DeltaError::BadSplit { elem: 0 }));
    }

    fn proc(segs: &[(&str, bool)], omega_at: &[Option<u64>], default: Val) -> OmegaPlusOneProc {
        let universe = Universe::new(segs.len() as u32);
        OmegaPlusOneProc {
            levels: dec_seq(segs.len() as u32, segs),
            omega: StagedSet::new(
                universe,
                omega_at.iter().map(|s| s.map(Ordinal::nat)).collect(),
            ),
            limit_default: default,
        }
    }

    #[test]
    fn merge_examples() {
        // element 0: neither process changes; element 1: p changes 3 times
        // and q changes 5; element 2: both run forever, p declares at 7
        let p = proc(&[("0", false), ("2", true), ("w", false)], &[None, None, Some(7)], 0);
        let q = proc(&[("0", false), ("4", true), ("w", false)], &[None, None, None], 1);
        let d = merge_delta(&p, &q).unwrap();
        d.validate().unwrap();
        assert_eq!(eval_type_delta(&d, 0), 0);
        assert!(d.p.members[0].is_empty());
        // follows p with at most min+1 changes
        assert_eq!(d.p.members[1].max_index(), Some(Ordinal::nat(2)));
        assert_eq!(eval_type_delta(&d, 1), 1);
        // the omega declaration fires at stage 7
        assert!(survives(&d.p.members[2]));
        assert_eq!(d.p_omega.entry[2], Some(Ordinal::nat(7)));
        assert_eq!(eval_type_delta(&d, 2), 1);
        for x in 0..3 {
            assert_eq!(eval_type_delta(&d, x), p.value(x), "x={x}");
        }
    }

    #[test]
    fn merge_rejects_disagreement() {
        let p = proc(&[("1", false)], &[None], 0); // value: max 0, even -> 1
        let q = proc(&[("2", false)], &[None], 1); // value: max 1, odd -> 0
        assert_eq!(merge_delta(&p, &q), Err(MergeError::InputsDisagree { elem: 0 }));
    }

    #[test]
    fn merge_change_bound() {
        // p changes a times, q changes b times; the merge changes at most
        // min(a, b) + 1 times on every finite element
        for a in 0u64..5 {
            for b in 0u64..5 {
                let pa = if a == 0 { ("0", false) } else { (Box::leak(a.to_string().into_boxed_str()) as &str, true) };
                let _ = pa;
                let pm = if a == 0 {
                    dec_member("0", false)
                } else {
                    DecMember { bound: Ordinal::nat(a - 1), attained: true, schedule: Schedule::unit_ramp(Ordinal::zero()) }
                };
                let qm = if b == 0 {
                    dec_member("0", false)
                } else {
                    DecMember { bound: Ordinal::nat(b - 1), attained: true, schedule: Schedule::unit_ramp(Ordinal::zero()) }
                };
                let vp = pm.max_index().is_some_and(|g| g.parity() == 0);
                let vq = qm.max_index().is_some_and(|g| g.parity() == 0);
                if vp != vq {
                    continue;
                }
                let universe = Universe::new(1);
                let p = OmegaPlusOneProc {
                    levels: DecSeq { universe, length: Ordinal::omega(), members: vec![pm] },
                    omega: StagedSet::empty(universe),
                    limit_default: 0,
                };
                let q = OmegaPlusOneProc {
                    levels: DecSeq { universe, length: Ordinal::omega(), members: vec![qm] },
                    omega: StagedSet::empty(universe),
                    limit_default: 1,
                };
                let d = merge_delta(&p, &q).unwrap();
                let changes = d.p.members[0].max_index().map_or(0, |g| g.finite_part() + 1);
                assert!(changes <= a.min(b) + 1, "a={a} b={b}");
                assert_eq!(eval_type_delta(&d, 0), p.value(0));
            }
        }
    }

    fn matrix(rows: Vec<Vec<DecMember>>) -> OmegaChangeMatrix {
        let universe = rows[0].len() as u32;
        OmegaChangeMatrix::with_default_table(
            rows.into_iter()
                .map(|members| DecSeq {
                    universe: Universe::new(universe),
                    length: Ordinal::omega(),
                    members,
                })
                .collect(),
        )
    }

    /// Rows with staggered stages: row j's facts land at j + depth*n.
    fn staggered(rows: &[&[(&str, bool)]]) -> OmegaChangeMatrix {
        let depth = rows.len() as u64;
        let built = rows
            .iter()
            .enumerate()
            .map(|(j, segs)| {
                segs.iter()
                    .map(|(b, a)| DecMember {
                        bound: ord(b),
                        attained: *a,
                        schedule: Schedule::ramp(
                            // rows start later the lower they sit, facts interleave
                            ord("w").mul(&Ordinal::nat(j as u64)).add(&Ordinal::nat(j as u64)),
                            Ordinal::nat(depth),
                        ),
                    })
                    .collect()
            })
            .collect();
        matrix(built)
    }

    #[test]
    fn validate_matrix_examples() {
        // a single row never violates the staging condition
        let m = staggered(&[&[("3", false), ("w", false)]]);
        assert!(validate_matrix(&m).is_ok());

        // row 1 starting before row 0 finishes
        let bad = matrix(vec![
            vec![DecMember { bound: ord("3"), attained: false, schedule: Schedule::unit_ramp(Ordinal::nat(5)) }],
            vec![DecMember { bound: ord("1"), attained: false, schedule: Schedule::unit_ramp(Ordinal::zero()) }],
        ]);
        let err = validate_matrix(&bad).unwrap_err();
        assert_eq!((err.upper, err.lower, err.elem), (0, 1, 0));
    }

    #[test]
    fn eval_matrix_examples() {
        // one row, greatest index 1: the default table gives par(1) = 1
        let m = staggered(&[&[("2", false)]]);
        assert_eq!(eval_matrix_diff(&m, 0), 1);

        // one full row: the least inhabited row returns the default
        let m = staggered(&[&[("w", false)]]);
        assert_eq!(eval_matrix_diff(&m, 0), 0);

        // two rows: row 0 max 0, row 1 full: value frozen at v_1 = a(0,0) = 0
        let m = staggered(&[&[("1", false)], &[("w", false)]]);
        assert_eq!(eval_matrix_diff(&m, 0), 0);
    }

    #[test]
    fn guess_trace_examples() {
        // never entering any row: constant default
        let m = staggered(&[&[("0", false)], &[("0", false)]]);
        let tr = matrix_guess_trace(&m, 0);
        assert_eq!(tr.final_value(), 0);
        assert_eq!(tr.finite_change_count(), Some(0));
        assert!(delta_omega_plus_one_valid(&tr));

        // finitely many events across two rows
        let m = staggered(&[&[("3", true)], &[("2", false)]]);
        assert!(validate_matrix(&m).is_ok());
        let tr = matrix_guess_trace(&m, 0);
        assert_eq!(tr.final_value(), eval_matrix_diff(&m, 0));
        assert!(delta_omega_plus_one_valid(&tr));
        assert!(tr.finite_change_count().is_some());

        // a full row freezes the inherited value at its accumulation
        let m = staggered(&[&[("2", true)], &[("w", false)]]);
        assert!(validate_matrix(&m).is_ok());
        let tr = matrix_guess_trace(&m, 0);
        assert!(tr.has_block());
        assert!(delta_omega_plus_one_valid(&tr));
        assert_eq!(tr.final_value(), eval_matrix_diff(&m, 0));
        assert_eq!(tr.final_value(), 0); // inherits par(2) from row 0
    }

    #[test]
    fn normalize_is_idempotent_and_fixes_violations() {
        let valid = staggered(&[&[("3", true), ("2", false)], &[("w", false), ("1", false)]]);
        assert!(validate_matrix(&valid).is_ok());
        assert_eq!(matrix_normalize(&valid), valid);

        // row 0 keeps producing facts after row 1 starts: the tail is dropped
        let bad = matrix(vec![
            vec![DecMember { bound: ord("w"), attained: false, schedule: Schedule::unit_ramp(Ordinal::zero()) }],
            vec![DecMember { bound: ord("1"), attained: false, schedule: Schedule::Constant(ord("4")) }],
        ]);
        assert!(validate_matrix(&bad).is_err());
        let fixed = matrix_normalize(&bad);
        assert!(validate_matrix(&fixed).is_ok());
        // facts at stages 0..=4 survive: prefix [0, 4] attained
        assert_eq!(fixed.rows[0].members[0].max_index(), Some(Ordinal::nat(4)));
        assert_eq!(matrix_normalize(&fixed), fixed);
    }

    #[test]
    fn substitution_closure() {
        let m = staggered(&[&[("1", false), ("3", true), ("w", false)], &[("0", false), ("2", false), ("1", true)]]);
        let pi = [2u32, 0, 1, 2, 0];
        let pm = precompose(&m, &pi);
        for (x, &y) in pi.iter().enumerate() {
            assert_eq!(eval_matrix_diff(&pm, x as u32), eval_matrix_diff(&m, y));
        }
    }

    #[test]
    fn complement_shift_flips_everywhere() {
        let m = staggered(&[&[("1", false), ("3", true), ("w", false), ("0", false)]]);
        let shifted = complement_shift(&m);
        assert_eq!(shifted.depth(), m.depth() + 1);
        assert!(validate_matrix(&shifted).is_ok());
        for x in m.universe().elements() {
            assert_eq!(eval_matrix_diff(&shifted, x), 1 - eval_matrix_diff(&m, x), "x={x}");
        }
    }

    #[test]
    fn corpus_diagonalization() {
        // a small corpus of one-row default matrices over universe 3
        let corpus: Vec<OmegaChangeMatrix> = [
            &[("0", false), ("1", false), ("2", false)][..],
            &[("2", true), ("w", false), ("0", false)][..],
            &[("1", true), ("3", false), ("w", false)][..],
        ]
        .iter()
        .map(|segs| staggered(&[segs]))
        .collect();
        let diag = diagonal_matrix(&corpus);
        for (i, m) in corpus.iter().enumerate() {
            let probe = i as u32 % m.universe().size();
            assert_eq!(eval_matrix_diff(&diag, i as u32), eval_matrix_diff(m, probe));
        }
        let anti = complement_shift(&diag);
        assert!(validate_matrix(&anti).is_ok());
        for (i, m) in corpus.iter().enumerate() {
            let probe = i as u32 % m.universe().size();
            assert_ne!(
                eval_matrix_diff(&anti, i as u32),
                eval_matrix_diff(m, probe),
                "diagonal must differ from corpus member {i} at its probe"
            );
        }
    }

    #[test]
    fn coproduct_examples() {
        // a complementary pair on universe 2 with length w
        let p = dec_seq(2, &[("1", false), ("w", false)]);
        let check = dec_seq(2, &[("2", false), ("0", true)]);
        let direct = eval_diff_dec(&p);
        let dual = eval_diff_dec(&check);
        for x in 0..2 {
            assert_ne!(direct[x], dual[x]);
        }
        let family = vec![
            CoproductSummand {
                code: WoCode::identity(2, Ordinal::nat(5)),
                p: p.clone(),
                p_check: check.clone(),
            },
            CoproductSummand { code: WoCode::NonWo, p, p_check: check },
        ];
        let (q, qc) = pwo_coproduct_dec(&family).unwrap();
        let vq = eval_diff_dec(&q);
        let vqc = eval_diff_dec(&qc);
        for i in 0..2usize {
            for x in 0..2u32 {
                let e = coproduct_elem(i, x, 2) as usize;
                let want = family[i].code.is_well_order() && direct[x as usize];
                assert_eq!(vq[e], want, "i={i} x={x}");
                assert_eq!(vqc[e], !want, "dual i={i} x={x}");
            }
        }
        // the well-order summand's stages sit past the reveal stage
        let m = &q.members[coproduct_elem(0, 0, 2) as usize];
        assert!(m.stage_of(&Ordinal::zero()) >= Ordinal::nat(5));
        assert!(q.validate().is_ok());
        assert!(qc.validate().is_ok());
    }

    #[test]
    fn coproduct_rejects_finite_length() {
        let mut p = dec_seq(1, &[("1", false)]);
        p.length = Ordinal::nat(3);
        let mut check = dec_seq(1, &[("0", false)]);
        check.length = Ordinal::nat(3);
        let family = vec![CoproductSummand { code: WoCode::NonWo, p, p_check: check }];
        assert!(matches!(pwo_coproduct_dec(&family), Err(CoproductError::FiniteLength(_))));
    }

    #[test]
    fn coproduct_rejects_non_complementary() {
        let p = dec_seq(1, &[("1", false)]);
        let family = vec![CoproductSummand {
            code: WoCode::NonWo,
            p: p.clone(),
            p_check: p,
        }];
        assert!(matches!(
            pwo_coproduct_dec(&family),
            Err(CoproductError::NotComplementary { .. })
        ));
    }

    #[test]
    fn coproduct_pointwise_exhaustive_triples() {
        // every (code, segment pair) combination with length w and w+2
        let codes = [
            WoCode::NonWo,
            WoCode::identity(1, Ordinal::zero()),
            WoCode::identity(1, Ordinal::nat(5)),
            WoCode::identity(1, ord("w")),
        ];
        for eta in [ord("w"), ord("w+2")] {
            let bound_menu: Vec<(Ordinal, bool)> = vec![
                (ord("0"), false),
                (ord("1"), false),
                (ord("2"), false),
                (ord("3"), false),
                (ord("w"), false),
                (ord("w"), true),
                (ord("w+1"), false),
            ];
            let mk = |b: &(Ordinal, bool)| DecMember {
                bound: b.0.clone(),
                attained: b.1,
                schedule: Schedule::unit_ramp(Ordinal::nat(1)),
            };
            let value = |m: &DecMember| m.max_index().is_some_and(|g| g.parity() == 0);
            for code in &codes {
                for bp in &bound_menu {
                    if bp.0 > eta || (bp.1 && bp.0 >= eta) {
                        continue;
                    }
                    for bc in &bound_menu {
                        if bc.0 > eta || (bc.1 && bc.0 >= eta) {
                            continue;
                        }
                        let (mp, mc) = (mk(bp), mk(bc));
                        if value(&mp) == value(&mc) {
                            continue;
                        }
                        let p = DecSeq {
                            universe: Universe::new(1),
                            length: eta.clone(),
                            members: vec![mp.clone()],
                        };
                        let check = DecSeq {
                            universe: Universe::new(1),
                            length: eta.clone(),
                            members: vec![mc],
                        };
                        let family =
                            vec![CoproductSummand { code: code.clone(), p, p_check: check }];
                        let (q, qc) = pwo_coproduct_dec(&family).unwrap();
                        let want = code.is_well_order() && value(&mp);
                        assert_eq!(eval_diff_dec(&q)[0], want);
                        assert_eq!(eval_diff_dec(&qc)[0], !want);
                        assert!(q.validate().is_ok() && qc.validate().is_ok());
                    }
                }
            }
        }
    }
}
