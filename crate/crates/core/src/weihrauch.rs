//! Least-number and counting principles over staged instances, the
//! stage-faithful transforms between them, two-valued least-number principles
//! over well-order codes, and a generic reduction verifier.
//!
//! The starred complement is the inclusive variant `{ n : (all m <= n) m
//! not in A }`, which makes `min A = #A*` hold exactly; the strict-bound
//! variant `{ n : (all m < n) m not in A }` counts one element more.

use std::fmt::Write as _;

use crate::diff::{DecHybrid, IncHybrid, IndexValues};
use crate::learners::{Segment, Trace};
use crate::ordinals::Ordinal;
use crate::staged::{wo_min, CoStagedSet, DecMember, DecSeq, IncMember, IncSeq, Schedule, StagedSet, Universe, WoCode};
use crate::Val;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LnpError {
    #[error("least number of an empty instance")]
    EmptyInstance,
}

/// Least element of a nonempty enumerated set.
pub fn lnp_pi11(p: &StagedSet) -> Result<u32, LnpError> {
    p.final_set().into_iter().min().ok_or(LnpError::EmptyInstance)
}

/// Cardinality of an enumerated set (always finite here).
pub fn count_pi11(p: &StagedSet) -> u32 {
    p.final_set().len() as u32
}

/// Least element of a nonempty co-enumerated set.
pub fn lnp_sigma11(s: &CoStagedSet) -> Result<u32, LnpError> {
    s.final_set().into_iter().min().ok_or(LnpError::EmptyInstance)
}

/// Cardinality of a co-enumerated set.
pub fn count_sigma11(s: &CoStagedSet) -> u32 {
    s.final_set().len() as u32
}

/// Inner map of "least number reduces to co-enumerated counting":
/// `A* = { n : (all m <= n) m not in A }`, so `#A* = min A` on nonempty
/// instances. Element `n` is co-enumerated out the moment a witness
/// `m <= n` appears, so the stage approximations match exactly.
pub fn star_transform(a: &StagedSet) -> CoStagedSet {
    let removal = a
        .universe
        .elements()
        .map(|n| (0..=n).filter_map(|m| a.entry[m as usize].clone()).min())
        .collect();
    CoStagedSet::new(a.universe, removal)
}

/// Dual inner map, from a co-enumerated instance to an enumerated one:
/// `n` enters once every `m <= n` has been removed, at the latest such stage.
pub fn co_star_transform(a: &CoStagedSet) -> StagedSet {
    let entry = a
        .universe
        .elements()
        .map(|n| {
            let mut worst = Ordinal::zero();
            for m in 0..=n {
                match &a.removal[m as usize] {
                    None => return None,
                    Some(r) => worst = worst.max(r.clone()),
                }
            }
            Some(worst)
        })
        .collect();
    StagedSet::new(a.universe, entry)
}

/// Inner map of "co-enumerated counting reduces to least number": enumerate
/// the running cardinality of the approximation, at stage zero and just past
/// every removal event; the least value enumerated is the final count. The
/// output universe has one extra point so every count fits.
pub fn count_to_lnp_transform(a: &CoStagedSet) -> StagedSet {
    let n = a.universe.size();
    let out = Universe::new(n + 1);
    let mut entry: Vec<Option<Ordinal>> = vec![None; n as usize + 1];
    let mut note = |count: u32, stage: Ordinal| {
        let slot = &mut entry[count as usize];
        if slot.as_ref().is_none_or(|s| *s > stage) {
            *slot = Some(stage);
        }
    };
    note(n, Ordinal::zero());
    for r in a.event_stages() {
        let after = r.succ();
        note(a.approx(&after).len() as u32, after);
    }
    StagedSet::new(out, entry)
}

/// Inner map of "enumerated counting reduces to co-enumerated least number":
/// when the `(j+1)`-th element shows up in `B`, remove `j` from the output,
/// so the least survivor is the count of `B`.
pub fn lnp_to_count_transform(b: &StagedSet) -> CoStagedSet {
    let n = b.universe.size();
    let out = Universe::new(n + 1);
    let mut entries: Vec<Ordinal> = b.entry.iter().flatten().cloned().collect();
    entries.sort();
    let mut removal: Vec<Option<Ordinal>> = vec![None; n as usize + 1];
    for (j, stage) in entries.into_iter().enumerate() {
        removal[j] = Some(stage);
    }
    CoStagedSet::new(out, removal)
}

/// `par_y(min_y P)` when `y` codes a well-order and the final set is
/// nonempty; `0` otherwise. Total by construction.
pub fn lnp_wo_two_valued(p: &StagedSet, y: &WoCode) -> u8 {
    if !y.is_well_order() {
        return 0;
    }
    match wo_min(y, &p.final_set()) {
        Ok(m) => y.par(m).expect("well-order ranks its universe"),
        Err(_) => 0,
    }
}

/// The co-enumerated twin of [`lnp_wo_two_valued`].
pub fn lnp_wo_two_valued_sigma(s: &CoStagedSet, y: &WoCode) -> u8 {
    if !y.is_well_order() {
        return 0;
    }
    match wo_min(y, &s.final_set()) {
        Ok(m) => y.par(m).expect("well-order ranks its universe"),
        Err(_) => 0,
    }
}

/// The guessed-parity evolution of one instance: the rank-least element of
/// each nonempty stage approximation, deduplicated into runs.
fn min_runs(p: &StagedSet, y: &WoCode) -> Vec<(Ordinal, u32)> {
    let mut runs: Vec<(Ordinal, u32)> = Vec::new();
    for e in p.event_stages() {
        let s = e.succ();
        let approx = p.approx(&s);
        if let Ok(m) = wo_min(y, &approx) {
            if runs.last().map(|(_, v)| *v) != Some(m) {
                runs.push((s, m));
            }
        }
    }
    runs
}

/// The decreasing family whose decreasing difference computes the two-valued
/// least-number principle pointwise over the instance family.
///
/// Index `n` of the result holds the instances whose guessed-parity history
/// admits `n + 1` alternations starting with parity one; feeding the
/// standard decreasing difference this shifted family reproduces the parity
/// of the longest such chain, which is the principle's value.
pub fn bn_sets(family: &[(StagedSet, WoCode)]) -> DecSeq {
    let members = family
        .iter()
        .map(|(p, y)| {
            if !y.is_well_order() {
                return DecMember::empty();
            }
            let mut flips: Vec<Ordinal> = Vec::new();
            let mut expect = 1u8;
            for (stage, m) in min_runs(p, y) {
                let parity = y.par(m).expect("ranked");
                if parity == expect {
                    flips.push(stage);
                    expect = 1 - expect;
                }
            }
            if flips.is_empty() {
                DecMember::empty()
            } else {
                DecMember {
                    bound: Ordinal::nat(flips.len() as u64),
                    attained: false,
                    schedule: Schedule::ramp(flips[0].clone(), Ordinal::nat(1)),
                }
            }
        })
        .collect();
    DecSeq {
        universe: Universe::new(family.len().max(1) as u32),
        length: Ordinal::omega(),
        members,
    }
}

/// A well-order surrogate whose finite ranks carry engineered parities, with
/// the ordinal each real slot stands for. Padding slots belong to no
/// instance and exist only to fix rank parities.
#[derive(Clone, Debug)]
pub struct IndexSurrogate {
    pub wo: WoCode,
    /// `slots[i]` is the ordinal represented by rank `i`, when any.
    pub slots: Vec<Option<Ordinal>>,
}

fn build_surrogate(needed: &[Ordinal], flip: bool) -> IndexSurrogate {
    let mut slots: Vec<Option<Ordinal>> = Vec::new();
    if flip {
        // a bottom dummy shifts every later rank parity by one
        slots.push(None);
    }
    for o in needed {
        let target = if flip { 1 - o.parity() } else { o.parity() };
        if (slots.len() % 2) as u8 != target {
            slots.push(None);
        }
        slots.push(Some(o.clone()));
    }
    if slots.is_empty() {
        slots.push(None);
    }
    let n = slots.len() as u32;
    IndexSurrogate { wo: WoCode::identity(n, Ordinal::zero()), slots }
}

/// Wadge-style embedding of an increasing difference into the two-valued
/// least-number principle: each element maps to the enumerated set of
/// surrogate indices whose ordinal it has reached, with reveal stages
/// inherited from the family. Odd lengths use the parity-flipped surrogate.
pub struct IncEmbedding {
    pub surrogate: IndexSurrogate,
    pub instances: Vec<StagedSet>,
}

pub fn embed_inc_diff(seq: &IncSeq) -> IncEmbedding {
    let mut needed: Vec<Ordinal> = seq.members.iter().filter_map(|m| m.start().cloned()).collect();
    needed.sort();
    needed.dedup();
    let flip = seq.length.parity() == 1;
    let surrogate = build_surrogate(&needed, flip);
    let universe = Universe::new(surrogate.slots.len() as u32);
    let instances = seq
        .members
        .iter()
        .map(|m| {
            let entry = surrogate
                .slots
                .iter()
                .map(|slot| slot.as_ref().and_then(|o| m.reveal_stage(o)))
                .collect();
            StagedSet::new(universe, entry)
        })
        .collect();
    IncEmbedding { surrogate, instances }
}

/// Embedding of a decreasing difference into the co-enumerated two-valued
/// principle: surrogate index `n` survives in `U_x` exactly when `x` misses
/// the family at `n`'s ordinal, removal happening at the membership fact's
/// stage. Padding slots are removed at stage zero everywhere.
pub struct DecEmbedding {
    pub surrogate: IndexSurrogate,
    pub instances: Vec<CoStagedSet>,
}

pub fn embed_dec_diff(seq: &DecSeq) -> DecEmbedding {
    let mut needed: Vec<Ordinal> = vec![Ordinal::zero()];
    for m in &seq.members {
        match m.max_index() {
            Some(g) => needed.push(g.succ()),
            None => {
                if !m.bound.is_zero() {
                    needed.push(m.bound.clone());
                }
            }
        }
    }
    needed.sort();
    needed.dedup();
    let surrogate = build_surrogate(&needed, false);
    let universe = Universe::new(surrogate.slots.len() as u32);
    let instances = seq
        .members
        .iter()
        .map(|m| {
            let removal = surrogate
                .slots
                .iter()
                .map(|slot| match slot {
                    None => Some(Ordinal::zero()),
                    Some(o) => m.contains(o).then(|| m.stage_of(o)),
                })
                .collect();
            CoStagedSet::new(universe, removal)
        })
        .collect();
    DecEmbedding { surrogate, instances }
}

/// Guess history of the co-enumerated least-number search: the reset value
/// until the order is revealed, then the rank-least survivor, falling back
/// to the reset when everything is gone.
pub fn sigma_lnp_guess_trace(s: &CoStagedSet, y: &WoCode, c: Val) -> Trace<Val> {
    let WoCode::WellOrder { revealed_at, .. } = y else {
        return Trace::constant(c, c);
    };
    let mut tr = Trace { reset: c, segments: vec![Segment::Plateau { from: Ordinal::zero(), value: c }] };
    let mut samples: Vec<Ordinal> = s.event_stages().into_iter().map(|e| e.succ()).collect();
    samples.push(revealed_at.succ());
    samples.sort();
    samples.dedup();
    for at in samples {
        if at <= *revealed_at {
            continue;
        }
        let value = match wo_min(y, &s.approx(&at)) {
            Ok(m) => m as Val,
            Err(_) => c,
        };
        if tr.final_value() != value {
            tr.segments.push(Segment::Plateau { from: at, value });
        }
    }
    tr
}

/// The totalized co-enumerated least-number value the trace converges to.
pub fn c_star_sigma_lnp(s: &CoStagedSet, y: &WoCode, c: Val) -> Val {
    if !y.is_well_order() {
        return c;
    }
    match wo_min(y, &s.final_set()) {
        Ok(m) => m as Val,
        Err(_) => c,
    }
}

/// A represented problem: a domain predicate and the canonical solution,
/// single-valued on these instance shapes.
pub struct Problem<I, A> {
    pub name: &'static str,
    pub domain: fn(&I) -> bool,
    pub solve: fn(&I) -> Option<A>,
}

impl<I, A: PartialEq> Problem<I, A> {
    pub fn solves(&self, instance: &I, answer: &A) -> bool {
        (self.solve)(instance).as_ref() == Some(answer)
    }
}

/// An inner/outer transformation pair between two problems.
pub struct Reduction<I, J, A> {
    pub name: &'static str,
    pub inner: Box<dyn Fn(&I) -> J + Sync>,
    pub outer: Box<dyn Fn(&I, &A) -> A + Sync>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct VerifyRecord {
    pub instance: usize,
    pub pass: bool,
    pub chain: String,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct VerifyReport {
    pub reduction: String,
    pub records: Vec<VerifyRecord>,
    pub failures: usize,
}

/// Runs the reduction across a corpus: for every instance, every target
/// solution of the transported instance must be carried back to a source
/// solution. Records one line per instance with the witness answer chain.
pub fn verify_reduction<I, J, A>(
    red: &Reduction<I, J, A>,
    src: &Problem<I, A>,
    tgt: &Problem<J, A>,
    corpus: &[I],
) -> VerifyReport
where
    A: PartialEq + std::fmt::Debug,
{
    let mut records = Vec::with_capacity(corpus.len());
    let mut failures = 0;
    for (i, x) in corpus.iter().enumerate() {
        let mut chain = String::new();
        let pass = if !(src.domain)(x) {
            let _ = write!(chain, "instance outside source domain");
            false
        } else {
            let hx = (red.inner)(x);
            if !(tgt.domain)(&hx) {
                let _ = write!(chain, "transported instance outside target domain");
                false
            } else {
                match (tgt.solve)(&hx) {
                    None => {
                        let _ = write!(chain, "target instance has no solution");
                        false
                    }
                    Some(y) => {
                        let back = (red.outer)(x, &y);
                        let want = (src.solve)(x);
                        let ok = want.as_ref() == Some(&back);
                        let _ = write!(chain, "h(x) solved as {y:?}; k(x,y)={back:?}; source wants {want:?}");
                        ok
                    }
                }
            }
        };
        if !pass {
            failures += 1;
        }
        records.push(VerifyRecord { instance: i, pass, chain });
    }
    VerifyReport { reduction: red.name.to_string(), records, failures }
}

pub fn problem_lnp_pi11() -> Problem<StagedSet, u32> {
    Problem {
        name: "pi11-lnp",
        domain: |p| !p.final_set().is_empty(),
        solve: |p| lnp_pi11(p).ok(),
    }
}

pub fn problem_count_pi11() -> Problem<StagedSet, u32> {
    Problem { name: "pi11-count", domain: |_| true, solve: |p| Some(count_pi11(p)) }
}

pub fn problem_lnp_sigma11() -> Problem<CoStagedSet, u32> {
    Problem {
        name: "sigma11-lnp",
        domain: |s| !s.final_set().is_empty(),
        solve: |s| lnp_sigma11(s).ok(),
    }
}

pub fn problem_count_sigma11() -> Problem<CoStagedSet, u32> {
    Problem { name: "sigma11-count", domain: |_| true, solve: |s| Some(count_sigma11(s)) }
}

/// `pi11-lnp <= sigma11-count`, inner [`star_transform`], identity outer.
pub fn reduction_lnp_to_costar() -> Reduction<StagedSet, CoStagedSet, u32> {
    Reduction {
        name: "pi11-lnp<=sigma11-count",
        inner: Box::new(star_transform),
        outer: Box::new(|_, y| *y),
    }
}

/// `sigma11-lnp <= pi11-count`, inner [`co_star_transform`], identity outer.
pub fn reduction_sigma_lnp_to_star() -> Reduction<CoStagedSet, StagedSet, u32> {
    Reduction {
        name: "sigma11-lnp<=pi11-count",
        inner: Box::new(co_star_transform),
        outer: Box::new(|_, y| *y),
    }
}

/// `sigma11-count <= pi11-lnp`, inner [`count_to_lnp_transform`].
pub fn reduction_count_to_lnp() -> Reduction<CoStagedSet, StagedSet, u32> {
    Reduction {
        name: "sigma11-count<=pi11-lnp",
        inner: Box::new(count_to_lnp_transform),
        outer: Box::new(|_, y| *y),
    }
}

/// `pi11-count <= sigma11-lnp`, inner [`lnp_to_count_transform`].
pub fn reduction_lnp_from_count() -> Reduction<StagedSet, CoStagedSet, u32> {
    Reduction {
        name: "pi11-count<=sigma11-lnp",
        inner: Box::new(lnp_to_count_transform),
        outer: Box::new(|_, y| *y),
    }
}

/// The completeness realizer for the enumerated least-number principle over
/// a corpus: index sets `A_n = { i : some k <= n already in P_i }`, value
/// `n` at index `n`, undefined off the union.
pub fn lnp_realizer_inc(corpus: &[StagedSet]) -> IncHybrid {
    let universe = Universe::new(corpus.len().max(1) as u32);
    let members = corpus
        .iter()
        .map(|p| {
            let mut events: Vec<(Ordinal, u32)> = p
                .universe
                .elements()
                .filter_map(|n| p.entry[n as usize].clone().map(|s| (s, n)))
                .collect();
            events.sort();
            let mut chain: Vec<(Ordinal, Ordinal)> = Vec::new();
            let mut best: Option<u32> = None;
            for (stage, n) in events {
                if best.is_none_or(|b| n < b) {
                    best = Some(n);
                    let idx = Ordinal::nat(n as u64);
                    match chain.last_mut() {
                        // a same-stage improvement supersedes the entry
                        Some((i, s)) if *s == stage => *i = idx,
                        _ => chain.push((idx, stage)),
                    }
                }
            }
            IncMember { chain }
        })
        .collect();
    IncHybrid {
        seq: IncSeq { universe, length: Ordinal::omega(), members },
        values: vec![IndexValues::IndexNat; corpus.len().max(1)],
        c: None,
    }
}

/// The realizer for the co-enumerated least-number principle: index sets
/// `B_n = { i : [0, n) already confirmed outside S_i }`, value `n` at `n`.
pub fn lnp_realizer_dec(corpus: &[CoStagedSet]) -> DecHybrid {
    let universe = Universe::new(corpus.len().max(1) as u32);
    let members = corpus
        .iter()
        .map(|s| {
            let mut maxn = 0u64;
            for n in s.universe.elements() {
                if s.removal[n as usize].is_some() {
                    maxn = n as u64 + 1;
                } else {
                    break;
                }
            }
            DecMember {
                bound: Ordinal::nat(maxn),
                attained: true,
                schedule: Schedule::unit_ramp(Ordinal::zero()),
            }
        })
        .collect();
    DecHybrid {
        seq: DecSeq { universe, length: Ordinal::omega(), members },
        values: vec![IndexValues::IndexNat; corpus.len().max(1)],
        c: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::{eval_diff_dec, eval_diff_inc, eval_hybrid_dec, eval_hybrid_inc};

    fn ord(s: &str) -> Ordinal {
        crate::ordinals::parse_ordinal(s).unwrap()
    }

    fn staged(entries: &[Option<u64>]) -> StagedSet {
        StagedSet::new(
            Universe::new(entries.len() as u32),
            entries.iter().map(|e| e.map(Ordinal::nat)).collect(),
        )
    }

    fn costaged(removals: &[Option<u64>]) -> CoStagedSet {
        CoStagedSet::new(
            Universe::new(removals.len() as u32),
            removals.iter().map(|e| e.map(Ordinal::nat)).collect(),
        )
    }

    #[test]
    fn lnp_and_count_basics() {
        let p = staged(&[None, None, None, Some(1), None, Some(0)]);
        assert_eq!(lnp_pi11(&p), Ok(3));
        assert_eq!(count_pi11(&p), 2);
        assert_eq!(lnp_pi11(&staged(&[None])), Err(LnpError::EmptyInstance));
        let s = costaged(&[Some(0), None, Some(2)]);
        assert_eq!(lnp_sigma11(&s), Ok(1));
        assert_eq!(count_sigma11(&s), 1);
    }

    #[test]
    fn star_transform_examples() {
        // A = {2, 4}: A* = {0, 1}, so the count is 2 = min A
        let a = staged(&[None, None, Some(1), None, Some(0)]);
        let starred = star_transform(&a);
        assert_eq!(starred.final_set(), vec![0, 1]);
        assert_eq!(count_sigma11(&starred), lnp_pi11(&a).unwrap());
        // A = {0}: A* is empty
        let a = staged(&[Some(0), None]);
        assert_eq!(count_sigma11(&star_transform(&a)), 0);
        // A = {1}: A* = {0}
        let a = staged(&[None, Some(3)]);
        assert_eq!(count_sigma11(&star_transform(&a)), 1);
    }

    #[test]
    fn star_transform_is_stage_faithful() {
        let a = staged(&[None, Some(4), Some(1), None]);
        let starred = star_transform(&a);
        for s in 0..6u64 {
            let s = Ordinal::nat(s);
            let direct: Vec<u32> = a
                .universe
                .elements()
                .filter(|&n| (0..=n).all(|m| !a.approx(&s).contains(&m)))
                .collect();
            assert_eq!(starred.approx(&s), direct, "stage {s}");
        }
    }

    #[test]
    fn count_to_lnp_examples() {
        // no removals, three survivors: B = {3}
        let a = costaged(&[None, None, None]);
        let b = count_to_lnp_transform(&a);
        assert_eq!(b.final_set(), vec![3]);
        assert_eq!(lnp_pi11(&b), Ok(3));
        // one removal at stage 1 from size 2: B = {1, 2}, min 1
        let a = costaged(&[Some(1), None]);
        let b = count_to_lnp_transform(&a);
        assert_eq!(b.final_set(), vec![1, 2]);
        assert_eq!(lnp_pi11(&b), Ok(1));
        assert_eq!(lnp_pi11(&b).unwrap(), count_sigma11(&a));
    }

    #[test]
    fn lnp_to_count_examples() {
        // B gains two elements: the output loses {0, 1}, min 2
        let b = staged(&[Some(3), None, Some(1)]);
        let a = lnp_to_count_transform(&b);
        assert_eq!(lnp_sigma11(&a), Ok(2));
        assert_eq!(lnp_sigma11(&a).unwrap(), count_pi11(&b));
        // singleton
        let b = staged(&[None, Some(0)]);
        assert_eq!(lnp_sigma11(&lnp_to_count_transform(&b)), Ok(1));
    }

    fn all_staged(universe: u32, stages: &[Option<u64>]) -> Vec<StagedSet> {
        let mut out = Vec::new();
        let k = stages.len();
        let total = k.pow(universe);
        for mut code in 0..total {
            let mut entries = Vec::with_capacity(universe as usize);
            for _ in 0..universe {
                entries.push(stages[code % k]);
                code /= k;
            }
            out.push(staged(&entries));
        }
        out
    }

    #[test]
    fn all_four_reductions_exhaustive_small() {
        let stages = [None, Some(0), Some(2)];
        let pis = all_staged(3, &stages);
        let sigmas: Vec<CoStagedSet> = pis
            .iter()
            .map(|p| CoStagedSet::new(p.universe, p.entry.clone()))
            .collect();

        let lnp_pi = problem_lnp_pi11();
        let count_pi = problem_count_pi11();
        let lnp_sigma = problem_lnp_sigma11();
        let count_sigma = problem_count_sigma11();

        let nonempty_pi: Vec<StagedSet> =
            pis.iter().filter(|p| (lnp_pi.domain)(p)).cloned().collect();
        let r = verify_reduction(&reduction_lnp_to_costar(), &lnp_pi, &count_sigma, &nonempty_pi);
        assert_eq!(r.failures, 0, "{:?}", r.records.iter().find(|x| !x.pass));

        let nonempty_sigma: Vec<CoStagedSet> =
            sigmas.iter().filter(|s| (lnp_sigma.domain)(s)).cloned().collect();
        let r = verify_reduction(&reduction_sigma_lnp_to_star(), &lnp_sigma, &count_pi, &nonempty_sigma);
        assert_eq!(r.failures, 0, "{:?}", r.records.iter().find(|x| !x.pass));

        let r = verify_reduction(&reduction_count_to_lnp(), &count_sigma, &lnp_pi, &sigmas);
        assert_eq!(r.failures, 0, "{:?}", r.records.iter().find(|x| !x.pass));

        let r = verify_reduction(&reduction_lnp_from_count(), &count_pi, &lnp_sigma, &nonempty_pi);
        assert_eq!(r.failures, 0, "{:?}", r.records.iter().find(|x| !x.pass));
    }

    #[test]
    fn corrupted_outer_is_reported() {
        let bad: Reduction<StagedSet, CoStagedSet, u32> = Reduction {
            name: "corrupted",
            inner: Box::new(star_transform),
            outer: Box::new(|_, y| y + 1),
        };
        let corpus = vec![staged(&[None, Some(0), None])];
        let r = verify_reduction(&bad, &problem_lnp_pi11(), &problem_count_sigma11(), &corpus);
        assert_eq!(r.failures, 1);
    }

    #[test]
    fn identity_reduction_passes() {
        let id: Reduction<StagedSet, StagedSet, u32> = Reduction {
            name: "identity",
            inner: Box::new(Clone::clone),
            outer: Box::new(|_, y| *y),
        };
        let corpus = vec![staged(&[Some(0), None]), staged(&[None, Some(2)])];
        let r = verify_reduction(&id, &problem_lnp_pi11(), &problem_lnp_pi11(), &corpus);
        assert_eq!(r.failures, 0);
    }

    #[test]
    fn two_valued_lnp_examples() {
        let p = staged(&[None, Some(0)]);
        assert_eq!(lnp_wo_two_valued(&p, &WoCode::NonWo), 0);
        let y = WoCode::identity(2, Ordinal::zero());
        assert_eq!(lnp_wo_two_valued(&p, &y), 1);
        // ranks reversing order on {0,1,2}: minimum rank among {0, 2} is 0
        let y = WoCode::well_order(vec![2, 1, 0], Ordinal::zero());
        let p = staged(&[Some(0), None, Some(1)]);
        assert_eq!(lnp_wo_two_valued(&p, &y), 0);
    }

    #[test]
    fn bn_sets_matches_two_valued_lnp() {
        // instance where 1 enters at stage 1, then 0 at stage 2
        let family = vec![
            (staged(&[Some(2), Some(1)]), WoCode::identity(2, Ordinal::zero())),
            (staged(&[None, None]), WoCode::identity(2, Ordinal::zero())),
            (staged(&[Some(0), Some(1)]), WoCode::NonWo),
        ];
        let seq = bn_sets(&family);
        // first instance: chains of length 1 and 2 exist, not 3
        assert!(seq.members[0].contains(&Ordinal::zero()));
        assert!(seq.members[0].contains(&Ordinal::nat(1)));
        assert!(!seq.members[0].contains(&Ordinal::nat(2)));
        let diff = eval_diff_dec(&seq);
        for (i, (p, y)) in family.iter().enumerate() {
            assert_eq!(diff[i], lnp_wo_two_valued(p, y) == 1, "instance {i}");
        }
    }

    #[test]
    fn bn_sets_exhaustive_small() {
        let stage_menu = [None, Some(0), Some(1), Some(3)];
        let orders = [
            WoCode::identity(3, Ordinal::zero()),
            WoCode::well_order(vec![2, 0, 1], Ordinal::zero()),
            WoCode::well_order(vec![1, 2, 0], Ordinal::nat(1)),
            WoCode::NonWo,
        ];
        let mut family = Vec::new();
        for p in all_staged(3, &stage_menu) {
            for y in &orders {
                family.push((p.clone(), y.clone()));
            }
        }
        let seq = bn_sets(&family);
        let diff = eval_diff_dec(&seq);
        for (i, (p, y)) in family.iter().enumerate() {
            assert_eq!(diff[i], lnp_wo_two_valued(p, y) == 1, "instance {i}");
        }
    }

    #[test]
    fn embed_inc_pointwise() {
        for len in ["2", "3", "4", "w", "w+1"] {
            let length = ord(len);
            let start_menu: Vec<Option<Ordinal>> = match len {
                "w" => vec![None, Some(ord("0")), Some(ord("1")), Some(ord("5"))],
                "w+1" => vec![None, Some(ord("0")), Some(ord("2")), Some(ord("w"))],
                _ => {
                    let n = length.to_nat().unwrap();
                    let mut v: Vec<Option<Ordinal>> = (0..n).map(|k| Some(Ordinal::nat(k))).collect();
                    v.push(None);
                    v
                }
            };
            // one element per start option
            let members: Vec<IncMember> = start_menu
                .iter()
                .map(|s| match s {
                    None => IncMember::never(),
                    Some(g) => IncMember { chain: vec![(g.clone(), g.succ())] },
                })
                .collect();
            let seq = IncSeq {
                universe: Universe::new(members.len() as u32),
                length: length.clone(),
                members,
            };
            let emb = embed_inc_diff(&seq);
            let diff = eval_diff_inc(&seq);
            for x in seq.universe.elements() {
                let got = lnp_wo_two_valued(&emb.instances[x as usize], &emb.surrogate.wo);
                assert_eq!(got == 1, diff[x as usize], "len={len} x={x}");
            }
        }
    }

    #[test]
    fn embed_dec_pointwise() {
        for len in ["2", "3", "4", "w", "w+1"] {
            let length = ord(len);
            let seg_menu: Vec<(Ordinal, bool)> = match len {
                "w" => vec![
                    (ord("0"), false),
                    (ord("1"), false),
                    (ord("2"), false),
                    (ord("5"), false),
                    (ord("w"), false),
                ],
                "w+1" => vec![
                    (ord("0"), false),
                    (ord("3"), false),
                    (ord("w"), false),
                    (ord("w"), true),
                ],
                _ => {
                    let n = length.to_nat().unwrap();
                    (0..=n).map(|k| (Ordinal::nat(k), false)).collect()
                }
            };
            let members: Vec<DecMember> = seg_menu
                .iter()
                .map(|(b, a)| DecMember {
                    bound: b.clone(),
                    attained: *a,
                    schedule: Schedule::unit_ramp(Ordinal::nat(1)),
                })
                .collect();
            let seq = DecSeq {
                universe: Universe::new(members.len() as u32),
                length: length.clone(),
                members,
            };
            let emb = embed_dec_diff(&seq);
            let diff = eval_diff_dec(&seq);
            for x in seq.universe.elements() {
                let got = lnp_wo_two_valued_sigma(&emb.instances[x as usize], &emb.surrogate.wo);
                assert_eq!(got == 1, diff[x as usize], "len={len} x={x}");
            }
        }
    }

    #[test]
    fn guess_trace_examples() {
        // a non-well-order stays at the reset value
        let s = costaged(&[Some(1), None]);
        let tr = sigma_lnp_guess_trace(&s, &WoCode::NonWo, 7);
        assert_eq!(tr.final_value(), 7);
        assert_eq!(tr.finite_change_count(), Some(0));

        // the minimum is removed twice after the reveal
        let s = costaged(&[Some(2), Some(4), None]);
        let y = WoCode::identity(3, Ordinal::zero());
        let tr = sigma_lnp_guess_trace(&s, &y, 9);
        assert_eq!(tr.final_value(), 2);
        assert_eq!(tr.finite_change_count(), Some(3)); // 9 -> 0 -> 1 -> 2
        assert_eq!(tr.final_value(), c_star_sigma_lnp(&s, &y, 9));

        // everything removed: back to the reset value
        let s = costaged(&[Some(1), Some(2)]);
        let y = WoCode::identity(2, Ordinal::zero());
        let tr = sigma_lnp_guess_trace(&s, &y, 9);
        assert_eq!(tr.final_value(), 9);
        assert_eq!(tr.final_value(), c_star_sigma_lnp(&s, &y, 9));
    }

    #[test]
    fn guess_trace_ladder_has_unbounded_changes() {
        // instance n: remove elements 0..n at successive stages; the guessed
        // minimum climbs through n values
        for n in 1..=8u32 {
            let removal: Vec<Option<Ordinal>> = (0..=n)
                .map(|k| (k < n).then(|| Ordinal::nat(k as u64 + 1)))
                .collect();
            let s = CoStagedSet::new(Universe::new(n + 1), removal);
            let y = WoCode::identity(n + 1, Ordinal::zero());
            let tr = sigma_lnp_guess_trace(&s, &y, 0);
            assert!(tr.finite_change_count().unwrap() >= n as u64, "n={n}");
            assert_eq!(tr.final_value(), n);
        }
    }

    #[test]
    fn realizer_inc_computes_lnp() {
        let corpus = all_staged(3, &[None, Some(0), Some(2), Some(5)]);
        let spec = lnp_realizer_inc(&corpus);
        assert!(spec.seq.validate().is_ok());
        let values = eval_hybrid_inc(&spec);
        for (i, p) in corpus.iter().enumerate() {
            assert_eq!(values[i], lnp_pi11(p).ok(), "instance {i}");
        }
    }

    #[test]
    fn realizer_dec_computes_lnp() {
        let corpus: Vec<CoStagedSet> = all_staged(3, &[None, Some(0), Some(2), Some(5)])
            .into_iter()
            .map(|p| CoStagedSet::new(p.universe, p.entry))
            .collect();
        let spec = lnp_realizer_dec(&corpus);
        let values = eval_hybrid_dec(&spec);
        for (i, s) in corpus.iter().enumerate() {
            if let Ok(m) = lnp_sigma11(s) {
                assert_eq!(values[i], Some(m), "instance {i}");
            }
        }
    }
}
