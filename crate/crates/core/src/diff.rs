//! Difference operators over monotone families, their hybrid value-carrying
//! forms, and the empty-intersection normalization for length-omega pairs.
//!
//! Membership is computed from the per-element segment descriptors, never by
//! materializing transfinitely many slices. The nested set-difference
//! expressions survive only as finite-length oracles in [`oracle`].
//!
//! The two parity conventions are kept exactly as displayed: an increasing
//! difference holds at `x` when the least index `g` with `x` present satisfies
//! `par(g) != par(length)`; a decreasing difference holds when the greatest
//! such index exists and is even. They interact asymmetrically at limit
//! lengths and are deliberately not reconciled.

use serde::{Deserialize, Serialize};

use crate::ordinals::Ordinal;
use crate::staged::{DecMember, DecSeq, IncSeq, Schedule};
use crate::Val;

/// Value assignment `a_xi` for the hybrid operators, finitely described so
/// transfinite index families stay executable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexValues {
    Constant(Val),
    /// Value by index parity: limits and even successors take `even`.
    Parity { even: Val, odd: Val },
    /// The finite part of the index itself; the counting realizers use this.
    IndexNat,
    /// Explicit values at finitely many indices, falling back elsewhere.
    Overrides { at: Vec<(Ordinal, Val)>, fallback: Box<IndexValues> },
}

impl IndexValues {
    pub fn at(&self, idx: &Ordinal) -> Val {
        match self {
            IndexValues::Constant(v) => *v,
            IndexValues::Parity { even, odd } => {
                if idx.parity() == 0 {
                    *even
                } else {
                    *odd
                }
            }
            IndexValues::IndexNat => idx.finite_part() as Val,
            IndexValues::Overrides { at, fallback } => at
                .iter()
                .find(|(i, _)| i == idx)
                .map(|(_, v)| *v)
                .unwrap_or_else(|| fallback.at(idx)),
        }
    }

    /// The canonical set-characteristic assignment for decreasing families.
    pub fn dec_characteristic() -> Self {
        IndexValues::Parity { even: 1, odd: 0 }
    }

    /// The canonical set-characteristic assignment for an increasing family
    /// of the given length: value 1 exactly where `par(idx) != par(length)`.
    pub fn inc_characteristic(length: &Ordinal) -> Self {
        if length.parity() == 0 {
            IndexValues::Parity { even: 0, odd: 1 }
        } else {
            IndexValues::Parity { even: 1, odd: 0 }
        }
    }
}

/// Increasing hybrid spec: sets plus per-index values plus the default `c`;
/// `c = None` leaves the result undefined off the union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncHybrid {
    pub seq: IncSeq,
    /// One value assignment per element.
    pub values: Vec<IndexValues>,
    pub c: Option<Val>,
}

/// Decreasing hybrid spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecHybrid {
    pub seq: DecSeq,
    pub values: Vec<IndexValues>,
    pub c: Option<Val>,
}

/// Least member index of an increasing family at `elem`, when any.
pub fn inc_min_index(seq: &IncSeq, elem: u32) -> Option<Ordinal> {
    seq.members[elem as usize].start().cloned()
}

/// Greatest member index of a decreasing family at `elem`, when it exists.
pub fn dec_max_index(seq: &DecSeq, elem: u32) -> Option<Ordinal> {
    seq.members[elem as usize].max_index()
}

/// Membership function of the increasing difference of `seq`.
pub fn eval_diff_inc(seq: &IncSeq) -> Vec<bool> {
    let lp = seq.length.parity();
    seq.universe
        .elements()
        .map(|x| inc_min_index(seq, x).is_some_and(|g| g.parity() != lp))
        .collect()
}

/// Membership function of the decreasing difference of `seq`.
pub fn eval_diff_dec(seq: &DecSeq) -> Vec<bool> {
    seq.universe
        .elements()
        .map(|x| dec_max_index(seq, x).is_some_and(|g| g.parity() == 0))
        .collect()
}

/// Hybrid increasing difference: value at the least member index, else `c`.
pub fn eval_hybrid_inc(spec: &IncHybrid) -> Vec<Option<Val>> {
    spec.seq
        .universe
        .elements()
        .map(|x| match inc_min_index(&spec.seq, x) {
            Some(g) => Some(spec.values[x as usize].at(&g)),
            None => spec.c,
        })
        .collect()
}

/// Hybrid decreasing difference: value at the greatest member index, else `c`.
pub fn eval_hybrid_dec(spec: &DecHybrid) -> Vec<Option<Val>> {
    spec.seq
        .universe
        .elements()
        .map(|x| match dec_max_index(&spec.seq, x) {
            Some(g) => Some(spec.values[x as usize].at(&g)),
            None => spec.c,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizeError {
    #[error("inputs are not complementary at element {elem}")]
    NotComplementary { elem: u32 },
}

/// From a complementary pair of length-omega decreasing families, builds a
/// single length-omega family with empty intersection and the same decreasing
/// difference: `P_n = A_n /\ B_{n+1}` after renormalizing the B side so that
/// `B_0` is the whole universe (replacing `B_1` by `B_1 \/ ~B_0`, which keeps
/// the B-difference intact and makes the identity hold for elements outside
/// the original `B_0`).
pub fn delta_normalize(a: &DecSeq, b: &DecSeq) -> Result<DecSeq, NormalizeError> {
    assert_eq!(a.universe, b.universe);
    let va = eval_diff_dec(a);
    let vb = eval_diff_dec(b);
    for x in a.universe.elements() {
        if va[x as usize] == vb[x as usize] {
            return Err(NormalizeError::NotComplementary { elem: x });
        }
    }
    let omega = Ordinal::omega();
    let members = a
        .universe
        .elements()
        .map(|x| {
            let ma = &a.members[x as usize];
            let mb = &b.members[x as usize];
            if ma.is_empty() {
                return DecMember::empty();
            }
            // b-side segment max after renormalization; Full marks the whole of omega
            enum Shape {
                UpTo(Ordinal),
                Full,
            }
            let b_shape = if !mb.contains(&Ordinal::zero()) {
                // outside the original B_0: the renormalized segment is {0, 1}
                Shape::UpTo(Ordinal::nat(1))
            } else if mb.bound == omega && !mb.attained {
                Shape::Full
            } else {
                Shape::UpTo(mb.max_index().expect("nonempty bounded segment has a max"))
            };
            let a_full = ma.bound == omega && !ma.attained;
            // P-segment = { n in a : n+1 in b' }
            let p_max = match (a_full, b_shape) {
                (true, Shape::Full) => unreachable!("complementary pair cannot be jointly full"),
                (true, Shape::UpTo(t)) => t.pred(),
                (false, Shape::Full) => ma.max_index(),
                (false, Shape::UpTo(t)) => {
                    let am = ma.max_index().expect("nonempty segment");
                    t.pred().map(|bm| am.min(bm))
                }
            };
            match p_max {
                Some(m) => DecMember {
                    bound: m,
                    attained: true,
                    schedule: join_schedules(&ma.schedule, &mb.schedule),
                },
                None => DecMember::empty(),
            }
        })
        .collect();
    Ok(DecSeq { universe: a.universe, length: omega, members })
}

/// Canonical ramp dominating both schedules; constructions that intersect two
/// staged families re-derive their stage labels through this.
pub fn join_schedules(a: &Schedule, b: &Schedule) -> Schedule {
    let base = a.stage(&Ordinal::zero()).max(b.stage(&Ordinal::zero()));
    let step = schedule_step(a).add(&schedule_step(b));
    Schedule::Ramp { base, step }
}

fn schedule_step(s: &Schedule) -> Ordinal {
    match s {
        Schedule::Constant(_) => Ordinal::nat(1),
        Schedule::Ramp { step, .. } => {
            if step.is_zero() {
                Ordinal::nat(1)
            } else {
                step.clone()
            }
        }
    }
}

/// Brute-force reference evaluators. These are the independent route the
/// suites compare against; keep them free of the segment machinery above.
pub mod oracle {
    use super::*;
    use crate::staged::Universe;

    /// `A_{n-1} \ (A_{n-2} \ ( ... \ (A_1 \ A_0)))` over explicit finite sets.
    pub fn diff_inc_nested(universe: Universe, sets: &[Vec<u32>]) -> Vec<bool> {
        let mut acc: Vec<bool> = vec![false; universe.size() as usize];
        let mut first = true;
        for s in sets {
            let this: Vec<bool> = universe.elements().map(|x| s.contains(&x)).collect();
            if first {
                acc = this;
                first = false;
            } else {
                acc = universe
                    .elements()
                    .map(|x| this[x as usize] && !acc[x as usize])
                    .collect();
            }
        }
        acc
    }

    /// `B_0 \ (B_1 \ ( ... \ (B_{n-1} \ B_n)))` over explicit finite sets.
    pub fn diff_dec_nested(universe: Universe, sets: &[Vec<u32>]) -> Vec<bool> {
        let mut acc: Vec<bool> = vec![false; universe.size() as usize];
        for s in sets.iter().rev() {
            let this: Vec<bool> = universe.elements().map(|x| s.contains(&x)).collect();
            acc = universe
                .elements()
                .map(|x| this[x as usize] && !acc[x as usize])
                .collect();
        }
        acc
    }

    /// The transfinite union-of-differences form for an increasing family,
    /// evaluated directly over the first `probe` finite indices.
    pub fn diff_inc_union(seq: &IncSeq, probe: u64) -> Vec<bool> {
        let lp = seq.length.parity();
        seq.universe
            .elements()
            .map(|x| {
                for n in 0..probe {
                    let idx = Ordinal::nat(n);
                    if idx >= seq.length {
                        break;
                    }
                    if seq.contains(x, &idx) {
                        // least index containing x among the probed range
                        return idx.parity() != lp;
                    }
                }
                false
            })
            .collect()
    }

    /// The even-index union form for a decreasing family over finite indices:
    /// membership in some `B_n \ B_{n+1}` with `n` even (with the one-past-end
    /// set empty).
    pub fn diff_dec_union(seq: &DecSeq, probe: u64) -> Vec<bool> {
        seq.universe
            .elements()
            .map(|x| {
                for n in (0..probe).step_by(2) {
                    let idx = Ordinal::nat(n);
                    if idx >= seq.length {
                        break;
                    }
                    let succ = Ordinal::nat(n + 1);
                    let in_succ = succ < seq.length && seq.contains(x, &succ);
                    if seq.contains(x, &idx) && !in_succ {
                        return true;
                    }
                }
                false
            })
            .collect()
    }

    /// Direct min-index scan for finite-length increasing hybrids.
    pub fn hybrid_inc_scan(spec: &IncHybrid) -> Vec<Option<Val>> {
        let len = spec.seq.length.to_nat().expect("finite-length oracle");
        spec.seq
            .universe
            .elements()
            .map(|x| {
                for n in 0..len {
                    let idx = Ordinal::nat(n);
                    if spec.seq.contains(x, &idx) {
                        return Some(spec.values[x as usize].at(&idx));
                    }
                }
                spec.c
            })
            .collect()
    }

    /// Direct max-index scan for finite-length decreasing hybrids.
    pub fn hybrid_dec_scan(spec: &DecHybrid) -> Vec<Option<Val>> {
        let len = spec.seq.length.to_nat().expect("finite-length oracle");
        spec.seq
            .universe
            .elements()
            .map(|x| {
                for n in (0..len).rev() {
                    let idx = Ordinal::nat(n);
                    if spec.seq.contains(x, &idx) {
                        return Some(spec.values[x as usize].at(&idx));
                    }
                }
                spec.c
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staged::{IncMember, Universe};

    fn ord(s: &str) -> Ordinal {
        crate::ordinals::parse_ordinal(s).unwrap()
    }

    fn inc_seq(universe: u32, length: &str, starts: &[Option<u64>]) -> IncSeq {
        IncSeq {
            universe: Universe::new(universe),
            length: ord(length),
            members: starts
                .iter()
                .map(|s| match s {
                    Some(g) => IncMember { chain: vec![(Ordinal::nat(*g), Ordinal::nat(*g))] },
                    None => IncMember::never(),
                })
                .collect(),
        }
    }

    fn dec_seq(universe: u32, length: &str, segs: &[(&str, bool)]) -> DecSeq {
        DecSeq {
            universe: Universe::new(universe),
            length: ord(length),
            members: segs
                .iter()
                .map(|(b, attained)| DecMember {
                    bound: ord(b),
                    attained: *attained,
                    schedule: Schedule::unit_ramp(Ordinal::zero()),
                })
                .collect(),
        }
    }

    #[test]
    fn diff_inc_two_level_example() {
        // A_0 = {0}, A_1 = {0,1}: the difference is A_1 \ A_0 = {1}
        let seq = inc_seq(2, "2", &[Some(0), Some(1)]);
        assert_eq!(eval_diff_inc(&seq), vec![false, true]);
        let materialized = vec![vec![0], vec![0, 1]];
        assert_eq!(
            oracle::diff_inc_nested(Universe::new(2), &materialized),
            vec![false, true]
        );
    }

    #[test]
    fn diff_inc_empty_and_limit() {
        let seq = inc_seq(2, "2", &[None, None]);
        assert_eq!(eval_diff_inc(&seq), vec![false, false]);
        // length w, start 3: par(3)=1 differs from par(w)=0
        let seq = inc_seq(1, "w", &[Some(3)]);
        assert_eq!(eval_diff_inc(&seq), vec![true]);
        assert_eq!(oracle::diff_inc_union(&seq, 10), vec![true]);
    }

    #[test]
    fn diff_dec_two_level_example() {
        // B_0 = {0,1}, B_1 = {1}: difference is B_0 \ B_1 = {0}
        let seq = dec_seq(2, "2", &[("1", false), ("2", false)]);
        assert_eq!(eval_diff_dec(&seq), vec![true, false]);
        let materialized = vec![vec![0, 1], vec![1]];
        assert_eq!(
            oracle::diff_dec_nested(Universe::new(2), &materialized),
            vec![true, false]
        );
    }

    #[test]
    fn diff_dec_limit_cases() {
        // segment [0, w) unattained: no greatest index, not a member
        let seq = dec_seq(1, "w", &[("w", false)]);
        assert_eq!(eval_diff_dec(&seq), vec![false]);
        // length w+1, segment [0, w] attained: greatest index w, even parity
        let seq = dec_seq(1, "w+1", &[("w", true)]);
        assert_eq!(eval_diff_dec(&seq), vec![true]);
    }

    #[test]
    fn finite_exhaustive_matches_nested_oracle() {
        // every monotone family over universe 3, lengths 1..=4
        for len in 1u64..=4 {
            let starts: Vec<Option<u64>> = (0..=len).map(|s| (s < len).then_some(s)).collect();
            for a in 0..starts.len() {
                for b in 0..starts.len() {
                    for c in 0..starts.len() {
                        let picks = [starts[a], starts[b], starts[c]];
                        let seq = inc_seq(3, &len.to_string(), &picks);
                        let sets: Vec<Vec<u32>> = (0..len)
                            .map(|n| {
                                (0..3u32)
                                    .filter(|&x| seq.contains(x, &Ordinal::nat(n)))
                                    .collect()
                            })
                            .collect();
                        assert_eq!(
                            eval_diff_inc(&seq),
                            oracle::diff_inc_nested(Universe::new(3), &sets),
                            "inc len={len} starts={picks:?}"
                        );

                        // decreasing: bounds of [0, k)
                        let seq = DecSeq {
                            universe: Universe::new(3),
                            length: Ordinal::nat(len),
                            members: [a, b, c]
                                .iter()
                                .map(|&k| DecMember {
                                    bound: Ordinal::nat(k as u64),
                                    attained: false,
                                    schedule: Schedule::unit_ramp(Ordinal::zero()),
                                })
                                .collect(),
                        };
                        let sets: Vec<Vec<u32>> = (0..len)
                            .map(|n| {
                                (0..3u32)
                                    .filter(|&x| seq.contains(x, &Ordinal::nat(n)))
                                    .collect()
                            })
                            .collect();
                        assert_eq!(
                            eval_diff_dec(&seq),
                            oracle::diff_dec_nested(Universe::new(3), &sets),
                            "dec len={len} bounds={a},{b},{c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hybrid_examples() {
        // c = 0, x in A_0: value at the minimum index
        let seq = inc_seq(1, "3", &[Some(0)]);
        let spec = IncHybrid { seq, values: vec![IndexValues::IndexNat], c: Some(0) };
        assert_eq!(eval_hybrid_inc(&spec), vec![Some(0)]);

        // undefined c and no index containing x
        let seq = inc_seq(1, "3", &[None]);
        let spec = IncHybrid { seq, values: vec![IndexValues::IndexNat], c: None };
        assert_eq!(eval_hybrid_inc(&spec), vec![None]);
    }

    #[test]
    fn hybrid_dec_specializes_to_characteristic() {
        for bound in 0u64..=4 {
            for attained in [false, true] {
                if attained && bound == 4 {
                    continue;
                }
                let seq = dec_seq(1, "4", &[(&bound.to_string(), attained)]);
                let spec = DecHybrid {
                    seq: seq.clone(),
                    values: vec![IndexValues::dec_characteristic()],
                    c: Some(0),
                };
                let by_set = eval_diff_dec(&seq)[0] as Val;
                assert_eq!(eval_hybrid_dec(&spec)[0], Some(by_set));
            }
        }
    }

    #[test]
    fn hybrid_inc_specializes_to_characteristic() {
        for len in [ord("2"), ord("3"), ord("w")] {
            for start in [None, Some(0), Some(1), Some(2)] {
                let seq = inc_seq(1, &len.to_string(), &[start]);
                let spec = IncHybrid {
                    seq: seq.clone(),
                    values: vec![IndexValues::inc_characteristic(&len)],
                    c: Some(0),
                };
                let by_set = eval_diff_inc(&seq)[0] as Val;
                assert_eq!(eval_hybrid_inc(&spec)[0], Some(by_set), "len={len} start={start:?}");
            }
        }
    }

    #[test]
    fn delta_normalize_trivial_example() {
        // A all empty; B_0 = universe, B_n = empty for n >= 1
        let a = dec_seq(2, "w", &[("0", false), ("0", false)]);
        let b = dec_seq(2, "w", &[("1", false), ("1", false)]);
        let p = delta_normalize(&a, &b).unwrap();
        assert_eq!(eval_diff_dec(&p), vec![false, false]);
        assert_eq!(eval_diff_dec(&p), eval_diff_dec(&a));
    }

    #[test]
    fn delta_normalize_singleton_example() {
        // universe {0}: A segment [0,1), B segment empty
        let a = dec_seq(1, "w", &[("1", false)]);
        let b = dec_seq(1, "w", &[("0", false)]);
        let p = delta_normalize(&a, &b).unwrap();
        assert_eq!(eval_diff_dec(&p), eval_diff_dec(&a));
        assert_eq!(eval_diff_dec(&p), vec![true]);
    }

    #[test]
    fn delta_normalize_rejects_non_complementary() {
        let a = dec_seq(1, "w", &[("1", false)]);
        let b = dec_seq(1, "w", &[("1", false)]);
        assert_eq!(
            delta_normalize(&a, &b),
            Err(NormalizeError::NotComplementary { elem: 0 })
        );
    }

    #[test]
    fn delta_normalize_exhaustive_small() {
        // all complementary pairs of per-element segments over a menu
        let menu: Vec<DecMember> = {
            let mut v = vec![DecMember::empty()];
            for b in 1u64..=4 {
                v.push(DecMember {
                    bound: Ordinal::nat(b),
                    attained: false,
                    schedule: Schedule::unit_ramp(Ordinal::zero()),
                });
            }
            v.push(DecMember {
                bound: ord("w"),
                attained: false,
                schedule: Schedule::unit_ramp(Ordinal::zero()),
            });
            v
        };
        let val = |m: &DecMember| m.max_index().is_some_and(|g| g.parity() == 0);
        let mut cases = 0;
        for ma in &menu {
            for mb in &menu {
                if val(ma) == val(mb) {
                    continue;
                }
                let a = DecSeq { universe: Universe::new(1), length: ord("w"), members: vec![ma.clone()] };
                let b = DecSeq { universe: Universe::new(1), length: ord("w"), members: vec![mb.clone()] };
                let p = delta_normalize(&a, &b).unwrap();
                assert_eq!(eval_diff_dec(&p), eval_diff_dec(&a), "a={ma:?} b={mb:?}");
                // empty intersection: no element keeps a full segment
                let m = &p.members[0];
                assert!(!(m.bound == ord("w") && !m.attained));
                assert!(p.validate().is_ok());
                cases += 1;
            }
        }
        assert!(cases > 10);
    }
}
