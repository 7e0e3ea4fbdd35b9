//! Seeded deterministic corpus generation for every instance shape, and the
//! tagged payload the instance files carry. Identical seeds and bounds give
//! byte-identical corpora.

use rand::prelude::*;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::diff::{DecHybrid, IncHybrid, IndexValues};
use crate::matrices::{CoproductSummand, OmegaChangeMatrix, OmegaPlusOneProc};
use crate::ordinals::Ordinal;
use crate::staged::{
    CoStagedSet, DecMember, DecSeq, IncMember, IncSeq, Schedule, StagedSet, Universe, WoCode,
};
use crate::trees::CellDecomposition;
use crate::Val;

/// Corpus bounds for generation and the checking suites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteBounds {
    pub universe_max: u32,
    pub samples: usize,
    pub tree_universe_max: u32,
    pub tree_depth_max: usize,
    pub matrix_depth_max: usize,
    pub relabelings: usize,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            universe_max: 6,
            samples: 300,
            tree_universe_max: 5,
            tree_depth_max: 4,
            matrix_depth_max: 3,
            relabelings: 50,
        }
    }
}

pub fn rng_for(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// A random ordinal below `w^w*3`: an optional `w^w`-headed lead term over a
/// short strictly descending finite-exponent tail.
pub fn gen_ordinal(rng: &mut ChaCha20Rng) -> Ordinal {
    let mut terms: Vec<(Ordinal, u64)> = Vec::new();
    if rng.gen_bool(0.2) {
        terms.push((Ordinal::omega(), rng.gen_range(1..=2)));
    }
    let mut exp = rng.gen_range(0..5u64);
    loop {
        if rng.gen_bool(0.6) {
            terms.push((Ordinal::nat(exp), rng.gen_range(1..=3)));
        }
        if exp == 0 || rng.gen_bool(0.4) {
            break;
        }
        exp = rng.gen_range(0..exp);
    }
    Ordinal::from_terms(terms)
}

/// The default stage menu: small naturals plus a pair of infinite stages.
pub fn stage_menu() -> Vec<Ordinal> {
    let mut v: Vec<Ordinal> = (0..5).map(Ordinal::nat).collect();
    v.push(Ordinal::omega());
    v.push(Ordinal::omega().succ());
    v
}

fn pick<'a, T>(rng: &mut ChaCha20Rng, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

pub fn gen_staged_set(rng: &mut ChaCha20Rng, universe: Universe) -> StagedSet {
    let menu = stage_menu();
    let entry = universe
        .elements()
        .map(|_| rng.gen_bool(0.6).then(|| pick(rng, &menu).clone()))
        .collect();
    let mut set = StagedSet::new(universe, entry);
    set.interleave_distinct();
    set
}

pub fn gen_costaged_set(rng: &mut ChaCha20Rng, universe: Universe) -> CoStagedSet {
    let menu = stage_menu();
    let removal = universe
        .elements()
        .map(|_| rng.gen_bool(0.5).then(|| pick(rng, &menu).clone()))
        .collect();
    let mut set = CoStagedSet::new(universe, removal);
    set.interleave_distinct();
    set
}

/// All indices below the length that generation samples from: the finite
/// part plus representatives in each infinite run.
pub fn index_menu(eta: &Ordinal) -> Vec<Ordinal> {
    let mut out = Vec::new();
    if let Some(n) = eta.to_nat() {
        out.extend((0..n).map(Ordinal::nat));
        return out;
    }
    for k in 0..6 {
        out.push(Ordinal::nat(k));
    }
    let mut base = Ordinal::omega();
    while base < *eta {
        out.push(base.clone());
        let next = base.succ();
        if next < *eta {
            out.push(next.clone());
        }
        base = base.add(&Ordinal::omega());
    }
    out.sort();
    out.dedup();
    out
}

/// Segment bounds usable by a decreasing member of the given length.
pub fn bound_menu(eta: &Ordinal) -> Vec<(Ordinal, bool)> {
    let mut out = vec![(Ordinal::zero(), false)];
    for idx in index_menu(eta) {
        out.push((idx.clone(), true));
        let b = idx.succ();
        if b <= *eta {
            out.push((b, false));
        }
    }
    // limit bounds: unattained runs up to each accumulation and the length
    let mut lim = Ordinal::omega();
    while lim <= *eta {
        out.push((lim.clone(), false));
        lim = lim.add(&Ordinal::omega());
    }
    out.retain(|(b, a)| b <= eta && !(*a && b >= eta));
    out.sort();
    out.dedup();
    out
}

fn gen_values(rng: &mut ChaCha20Rng, eta: &Ordinal, binary: bool) -> IndexValues {
    let hi: Val = if binary { 1 } else { 4 };
    let fallback = if rng.gen_bool(0.5) {
        IndexValues::Parity { even: rng.gen_range(0..=hi), odd: rng.gen_range(0..=hi) }
    } else {
        IndexValues::Constant(rng.gen_range(0..=hi))
    };
    if rng.gen_bool(0.5) {
        let menu = index_menu(eta);
        let mut at: Vec<(Ordinal, Val)> = Vec::new();
        for idx in menu.iter().take(4) {
            if rng.gen_bool(0.4) {
                at.push((idx.clone(), rng.gen_range(0..=hi)));
            }
        }
        if at.is_empty() {
            fallback
        } else {
            IndexValues::Overrides { at, fallback: Box::new(fallback) }
        }
    } else {
        fallback
    }
}

/// A random increasing hybrid spec: per element, a short strictly
/// descending reveal chain with strictly increasing stages.
pub fn gen_inc_hybrid(rng: &mut ChaCha20Rng, universe: Universe, eta: &Ordinal) -> IncHybrid {
    let menu = index_menu(eta);
    let members = universe
        .elements()
        .map(|_| {
            let k = rng.gen_range(0..=3usize.min(menu.len()));
            let mut picked: Vec<Ordinal> = Vec::new();
            while picked.len() < k {
                let idx = pick(rng, &menu).clone();
                if !picked.contains(&idx) {
                    picked.push(idx);
                }
            }
            picked.sort_by(|a, b| b.cmp(a));
            let mut stage = Ordinal::nat(rng.gen_range(0..3));
            let chain = picked
                .into_iter()
                .map(|idx| {
                    let here = stage.clone();
                    stage = stage.add(&Ordinal::nat(rng.gen_range(1..4)));
                    (idx, here)
                })
                .collect();
            IncMember { chain }
        })
        .collect();
    let values = universe.elements().map(|_| gen_values(rng, eta, false)).collect();
    let c = rng.gen_bool(0.7).then(|| rng.gen_range(0..3));
    IncHybrid {
        seq: IncSeq { universe, length: eta.clone(), members },
        values,
        c,
    }
}

/// A random decreasing hybrid spec with ramp schedules.
pub fn gen_dec_hybrid(rng: &mut ChaCha20Rng, universe: Universe, eta: &Ordinal) -> DecHybrid {
    let menu = bound_menu(eta);
    let members = universe
        .elements()
        .map(|_| {
            let (bound, attained) = pick(rng, &menu).clone();
            DecMember {
                bound,
                attained,
                schedule: Schedule::ramp(
                    Ordinal::nat(rng.gen_range(0..4)),
                    Ordinal::nat(rng.gen_range(1..3)),
                ),
            }
        })
        .collect();
    let values = universe.elements().map(|_| gen_values(rng, eta, false)).collect();
    let c = rng.gen_bool(0.7).then(|| rng.gen_range(0..3));
    DecHybrid {
        seq: DecSeq { universe, length: eta.clone(), members },
        values,
        c,
    }
}

pub fn gen_wocode(rng: &mut ChaCha20Rng, n: u32) -> WoCode {
    if rng.gen_bool(0.25) {
        WoCode::NonWo
    } else {
        let mut rank: Vec<u32> = (0..n).collect();
        rank.shuffle(rng);
        let menu = stage_menu();
        WoCode::well_order(rank, pick(rng, &menu).clone())
    }
}

/// A matrix whose rows are staged in strict stride order, so the staging
/// condition holds by construction and no two facts share a stage.
pub fn gen_matrix(rng: &mut ChaCha20Rng, universe: Universe, depth: usize) -> OmegaChangeMatrix {
    let stride = depth as u64;
    let omega = Ordinal::omega();
    let rows = (0..depth)
        .map(|j| {
            let menu = bound_menu(&omega);
            let members = universe
                .elements()
                .map(|_| {
                    let (bound, attained) = pick(rng, &menu).clone();
                    // row j lives in its own omega-stride band
                    let base = omega
                        .mul(&Ordinal::nat(stride * j as u64))
                        .add(&Ordinal::nat(j as u64 + stride * rng.gen_range(0..2)));
                    DecMember {
                        bound,
                        attained,
                        schedule: Schedule::ramp(base, Ordinal::nat(stride)),
                    }
                })
                .collect();
            DecSeq { universe, length: omega.clone(), members }
        })
        .collect();
    let values = (0..depth)
        .map(|_| {
            if rng.gen_bool(0.7) {
                IndexValues::Parity { even: 0, odd: 1 }
            } else {
                gen_values(rng, &omega, true)
            }
        })
        .collect();
    OmegaChangeMatrix { rows, values, c: 0 }
}

/// Raw event data that may violate the staging condition: plain small ramps.
pub fn gen_raw_matrix(rng: &mut ChaCha20Rng, universe: Universe, depth: usize) -> OmegaChangeMatrix {
    let omega = Ordinal::omega();
    let rows = (0..depth)
        .map(|_| {
            let menu = bound_menu(&omega);
            let members = universe
                .elements()
                .map(|_| {
                    let (bound, attained) = pick(rng, &menu).clone();
                    DecMember {
                        bound,
                        attained,
                        schedule: Schedule::ramp(
                            Ordinal::nat(rng.gen_range(0..6)),
                            Ordinal::nat(rng.gen_range(1..3)),
                        ),
                    }
                })
                .collect();
            DecSeq { universe, length: omega.clone(), members }
        })
        .collect();
    OmegaChangeMatrix::with_default_table(rows)
}

/// A decreasing member realizing the given difference value, drawn from the
/// even- or odd-max shapes (or the empty and full ones for value zero).
pub fn gen_dec_member_with_value(
    rng: &mut ChaCha20Rng,
    eta: &Ordinal,
    value: bool,
) -> DecMember {
    let menu = bound_menu(eta);
    let candidates: Vec<&(Ordinal, bool)> = menu
        .iter()
        .filter(|(b, a)| {
            let m = DecMember { bound: b.clone(), attained: *a, schedule: Schedule::unit_ramp(Ordinal::zero()) };
            m.max_index().is_some_and(|g| g.parity() == 0) == value
        })
        .collect();
    let (bound, attained) = (*pick(rng, &candidates)).clone();
    DecMember {
        bound,
        attained,
        schedule: Schedule::ramp(
            Ordinal::nat(rng.gen_range(0..3)),
            Ordinal::nat(rng.gen_range(1..3)),
        ),
    }
}

/// A complementary pair of decreasing families over one universe.
pub fn gen_complementary_pair(
    rng: &mut ChaCha20Rng,
    universe: Universe,
    eta: &Ordinal,
) -> (DecSeq, DecSeq) {
    let mut p = Vec::new();
    let mut check = Vec::new();
    for _ in universe.elements() {
        let value = rng.gen_bool(0.5);
        p.push(gen_dec_member_with_value(rng, eta, value));
        check.push(gen_dec_member_with_value(rng, eta, !value));
    }
    (
        DecSeq { universe, length: eta.clone(), members: p },
        DecSeq { universe, length: eta.clone(), members: check },
    )
}

pub fn gen_coproduct_family(
    rng: &mut ChaCha20Rng,
    indices: usize,
    universe: Universe,
    eta: &Ordinal,
) -> Vec<CoproductSummand> {
    (0..indices)
        .map(|_| {
            let (p, p_check) = gen_complementary_pair(rng, universe, eta);
            CoproductSummand { code: gen_wocode(rng, universe.size()), p, p_check }
        })
        .collect()
}

/// A pair of omega-plus-one processes guessing the same set with
/// complementary limit defaults.
pub fn gen_delta_proc_pair(
    rng: &mut ChaCha20Rng,
    universe: Universe,
) -> (OmegaPlusOneProc, OmegaPlusOneProc) {
    let omega = Ordinal::omega();
    let mut p_members = Vec::new();
    let mut q_members = Vec::new();
    let mut p_omega = vec![None; universe.size() as usize];
    let mut q_omega = vec![None; universe.size() as usize];
    for x in universe.elements() {
        let value = rng.gen_bool(0.5);
        // p side: finite shape, or a survivor declared on value 1
        let survivor_p = rng.gen_bool(0.3);
        if survivor_p {
            p_members.push(DecMember {
                bound: omega.clone(),
                attained: false,
                schedule: Schedule::ramp(Ordinal::nat(rng.gen_range(0..3)), Ordinal::nat(1)),
            });
            if value {
                p_omega[x as usize] = Some(omega.mul(&Ordinal::nat(2)).add(&Ordinal::nat(rng.gen_range(0..4))));
            }
        } else {
            p_members.push(gen_dec_member_with_value(rng, &omega, value));
        }
        let survivor_q = rng.gen_bool(0.3);
        if survivor_q {
            q_members.push(DecMember {
                bound: omega.clone(),
                attained: false,
                schedule: Schedule::ramp(Ordinal::nat(rng.gen_range(0..3)), Ordinal::nat(1)),
            });
            if !value {
                q_omega[x as usize] = Some(omega.mul(&Ordinal::nat(2)).add(&Ordinal::nat(rng.gen_range(0..4))));
            }
        } else {
            q_members.push(gen_dec_member_with_value(rng, &omega, value));
        }
    }
    let p = OmegaPlusOneProc {
        levels: DecSeq { universe, length: omega.clone(), members: p_members },
        omega: StagedSet::new(universe, p_omega),
        limit_default: 0,
    };
    let q = OmegaPlusOneProc {
        levels: DecSeq { universe, length: omega, members: q_members },
        omega: StagedSet::new(universe, q_omega),
        limit_default: 1,
    };
    (p, q)
}

pub fn gen_cell_decomposition(
    rng: &mut ChaCha20Rng,
    universe: Universe,
    depth: usize,
    cells: u32,
) -> CellDecomposition {
    let levels = (0..depth)
        .map(|_| Vec::with_capacity(universe.size() as usize))
        .collect::<Vec<_>>();
    let mut levels = levels;
    for _ in universe.elements() {
        let survive = rng.gen_range(0..=depth);
        for (n, level) in levels.iter_mut().enumerate() {
            level.push((n < survive).then(|| rng.gen_range(0..cells)));
        }
    }
    CellDecomposition::new(universe, levels).expect("generated histories are downward closed")
}

/// Tagged payload of an instance file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Instance {
    SeqDec { seq: DecSeq },
    SeqInc { seq: IncSeq },
    HybridInc { spec: IncHybrid },
    HybridDec { spec: DecHybrid },
    Matrix { matrix: OmegaChangeMatrix },
    LnpPi { set: StagedSet },
    LnpSigma { set: CoStagedSet },
    LnpWo { set: StagedSet, code: WoCode },
    Cells { cells: CellDecomposition },
}
