//! The invariant suites behind `check`: each suite pits an implementation
//! path against an independent route (a brute-force oracle, an exhaustive
//! enumeration, or an algebraic law) and records replayable witnesses for
//! any mismatch.

use std::sync::atomic::{AtomicUsize, Ordering};

use transfinia::diff::{
    self, delta_normalize, eval_diff_dec, eval_diff_inc, eval_hybrid_dec, eval_hybrid_inc,
    IndexValues,
};
use transfinia::gen::{self, SuiteBounds};
use transfinia::learners::{
    countdown_to_diff, dec_to_mindchange, delta_merge_countdown, diff_to_countdown,
    mindchange_to_dec, validate_countdown, Countdown, Segment,
};
use transfinia::matrices::{
    complement_shift, delta_omega_plus_one_valid, diagonal_matrix, eval_matrix_diff,
    eval_type_delta, matrix_guess_trace, matrix_normalize, merge_delta, pwo_coproduct_dec,
    validate_matrix, CoproductSummand, OmegaChangeMatrix,
};
use transfinia::ordinals::{parse_ordinal, Ordinal};
use transfinia::staged::{
    CoStagedSet, DecMember, DecSeq, IncMember, IncSeq, Schedule, StagedSet, Universe, WoCode,
};
use transfinia::trees::{build_tree, check_wellfounded, recover_membership, sigma_x, CellDecomposition};
use transfinia::weihrauch::{
    bn_sets, c_star_sigma_lnp, count_pi11, count_sigma11, embed_dec_diff, embed_inc_diff,
    lnp_pi11, lnp_realizer_dec, lnp_realizer_inc, lnp_wo_two_valued, lnp_wo_two_valued_sigma,
    problem_count_pi11, problem_count_sigma11, problem_lnp_pi11, problem_lnp_sigma11,
    reduction_count_to_lnp, reduction_lnp_from_count, reduction_lnp_to_costar,
    reduction_sigma_lnp_to_star, sigma_lnp_guess_trace, star_transform, verify_reduction,
    Reduction,
};

use crate::config::ScenarioConfig;
use crate::report::SuiteReport;

pub fn run_suite(name: &str, cfg: &ScenarioConfig) -> SuiteReport {
    let bounds = &cfg.bounds;
    match name {
        "ordinals" => suite_ordinals(cfg),
        "staged" => suite_staged(cfg),
        "diff" => suite_diff(cfg),
        "learners-inc" => suite_learners_inc(cfg),
        "learners-dec" => suite_learners_dec(cfg),
        "trees" => suite_trees(cfg, bounds),
        "weihrauch" => suite_weihrauch(cfg, bounds),
        "lnpwo" => suite_lnpwo(cfg, bounds),
        "delta" => suite_delta(cfg, bounds),
        "matrices" => suite_matrices(cfg, bounds),
        "coproduct" => suite_coproduct(cfg),
        "negative" => suite_negative(cfg),
        other => {
            let mut r = SuiteReport::new(other);
            r.check(format!("{other}/unknown"), false, "no such suite", "a known suite name", other);
            r
        }
    }
}

/// Runs the selected suites, possibly across workers; the report order is
/// the configured order regardless of scheduling.
pub fn run_all(cfg: &ScenarioConfig) -> Vec<SuiteReport> {
    let names: Vec<&str> = cfg.suites.iter().map(|s| s.as_str()).collect();
    if cfg.jobs <= 1 || names.len() <= 1 {
        return names.iter().map(|n| run_suite(n, cfg)).collect();
    }
    let slots: Vec<std::sync::Mutex<Option<SuiteReport>>> =
        names.iter().map(|_| std::sync::Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..cfg.jobs.min(names.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= names.len() {
                    break;
                }
                let r = run_suite(names[i], cfg);
                *slots[i].lock().unwrap() = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every slot filled"))
        .collect()
}

fn ord(s: &str) -> Ordinal {
    parse_ordinal(s).unwrap()
}

/// Algebraic laws of the ordinal substrate over seeded random triples.
fn suite_ordinals(cfg: &ScenarioConfig) -> SuiteReport {
    let mut r = SuiteReport::new("ordinals");
    let mut rng = gen::rng_for(cfg.seed ^ 0x0bd1);
    for i in 0..1000 {
        let a = gen::gen_ordinal(&mut rng);
        let b = gen::gen_ordinal(&mut rng);
        let c = gen::gen_ordinal(&mut rng);
        r.check_eq(
            format!("ordinals/assoc/{i}"),
            &format!("(a+b)+c = a+(b+c) for a={a} b={b} c={c}"),
            &a.add(&b).add(&c),
            &a.add(&b.add(&c)),
        );
        r.check_eq(
            format!("ordinals/distrib/{i}"),
            &format!("a*(b+c) = a*b + a*c for a={a} b={b} c={c}"),
            &a.mul(&b.add(&c)),
            &a.mul(&b).add(&a.mul(&c)),
        );
        let reversed = b.cmp(&a).reverse();
        r.check_eq(
            format!("ordinals/order/{i}"),
            &format!("compare is antisymmetric for a={a} b={b}"),
            &a.cmp(&b),
            &reversed,
        );
        let strict = if b.is_zero() { a.add(&b) == a } else { a.add(&b) > a };
        r.check(
            format!("ordinals/monotone/{i}"),
            strict,
            &format!("a+b exceeds a unless b=0, a={a} b={b}"),
            "strict growth",
            "not strict",
        );
        r.check_eq(
            format!("ordinals/parity-succ/{i}"),
            &format!("parity flips on successor of {a}"),
            &(1 - a.parity()),
            &a.succ().parity(),
        );
        let limit_even = !a.is_limit() || a.parity() == 0;
        r.check(
            format!("ordinals/parity-limit/{i}"),
            limit_even,
            &format!("limits are even: {a}"),
            "0",
            "1",
        );
    }
    r
}

/// Approximation monotonicity and the slice round trip of staged families.
fn suite_staged(cfg: &ScenarioConfig) -> SuiteReport {
    let mut r = SuiteReport::new("staged");
    let mut rng = gen::rng_for(cfg.seed ^ 0x57a6);
    let etas: Vec<Ordinal> = cfg.eta_menu().unwrap_or_else(|_| vec![ord("w")]);
    let probes = {
        let mut v = gen::stage_menu();
        v.push(ord("w*2"));
        v.push(Ordinal::zero());
        v.sort();
        v.dedup();
        v
    };
    for i in 0..200 {
        let u = Universe::new(1 + (i as u32 % cfg.universe));
        let p = gen::gen_staged_set(&mut rng, u);
        let s = gen::gen_costaged_set(&mut rng, u);
        let mut ok = true;
        for w in probes.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let plo = p.approx(lo);
            let phi = p.approx(hi);
            ok &= plo.iter().all(|x| phi.contains(x));
            let slo = s.approx(lo);
            let shi = s.approx(hi);
            ok &= shi.iter().all(|x| slo.contains(x));
        }
        r.check(
            format!("staged/monotone/{i}"),
            ok,
            "stage approximations are monotone",
            "monotone",
            "violated",
        );

        let eta = &etas[i % etas.len()];
        let spec = gen::gen_dec_hybrid(&mut rng, u, eta);
        let seq = &spec.seq;
        r.check(
            format!("staged/validate/{i}"),
            seq.validate().is_ok(),
            "constructed families validate",
            "ok",
            "violation",
        );
        // rebuild membership from materialized slices over the index menu
        let grid = gen::index_menu(eta);
        let mut agree = true;
        for idx in &grid {
            let slice = seq.slice(idx).expect("menu stays below the length");
            for x in u.elements() {
                agree &= slice.contains_final(x) == seq.contains(x, idx);
            }
        }
        r.check(
            format!("staged/slice-roundtrip/{i}"),
            agree,
            "slices reproduce the membership function over the probe grid",
            "agree",
            "disagree",
        );
    }
    // a hand-built schedule with non-increasing stages is flagged
    let bad = DecSeq {
        universe: Universe::new(1),
        length: ord("w"),
        members: vec![DecMember {
            bound: ord("3"),
            attained: false,
            schedule: Schedule::Ramp { base: Ordinal::zero(), step: Ordinal::zero() },
        }],
    };
    r.check(
        "staged/flag-bad-schedule",
        bad.validate().is_err(),
        "zero-step ramps with multiple facts are violations",
        "violation",
        "ok",
    );
    r
}

/// Exhaustive finite-length agreement with the nested-difference oracle.
fn suite_diff(cfg: &ScenarioConfig) -> SuiteReport {
    let mut r = SuiteReport::new("diff");
    for universe in 1..=cfg.universe.min(6) {
        let u = Universe::new(universe);
        for eta in 1..=4u64 {
            let options = eta + 1; // start/bound in 0..eta, or absent/empty
            let total = options.pow(universe);
            let mut inc_bad = 0usize;
            let mut dec_bad = 0usize;
            for code in 0..total {
                let mut digits = Vec::with_capacity(universe as usize);
                let mut c = code;
                for _ in 0..universe {
                    digits.push(c % options);
                    c /= options;
                }
                let inc = IncSeq {
                    universe: u,
                    length: Ordinal::nat(eta),
                    members: digits
                        .iter()
                        .map(|&d| {
                            if d == eta {
                                IncMember::never()
                            } else {
                                IncMember { chain: vec![(Ordinal::nat(d), Ordinal::nat(d))] }
                            }
                        })
                        .collect(),
                };
                let sets: Vec<Vec<u32>> = (0..eta)
                    .map(|n| {
                        u.elements().filter(|&x| inc.contains(x, &Ordinal::nat(n))).collect()
                    })
                    .collect();
                if eval_diff_inc(&inc) != diff::oracle::diff_inc_nested(u, &sets) {
                    inc_bad += 1;
                }

                let dec = DecSeq {
                    universe: u,
                    length: Ordinal::nat(eta),
                    members: digits
                        .iter()
                        .map(|&d| DecMember {
                            bound: Ordinal::nat(d),
                            attained: false,
                            schedule: Schedule::unit_ramp(Ordinal::zero()),
                        })
                        .collect(),
                };
                let sets: Vec<Vec<u32>> = (0..eta)
                    .map(|n| {
                        u.elements().filter(|&x| dec.contains(x, &Ordinal::nat(n))).collect()
                    })
                    .collect();
                if eval_diff_dec(&dec) != diff::oracle::diff_dec_nested(u, &sets) {
                    dec_bad += 1;
                }
            }
            r.check(
                format!("diff/inc-exhaustive/u{universe}-eta{eta}"),
                inc_bad == 0,
                "increasing difference equals the nested expression",
                "0 mismatches",
                &format!("{inc_bad} mismatches"),
            );
            r.check(
                format!("diff/dec-exhaustive/u{universe}-eta{eta}"),
                dec_bad == 0,
                "decreasing difference equals the nested expression",
                "0 mismatches",
                &format!("{dec_bad} mismatches"),
            );
        }
    }
    // hybrid specializations and the normalization, seeded
    let mut rng = gen::rng_for(cfg.seed ^ 0xd1ff);
    for i in 0..150 {
        let u = Universe::new(1 + (i as u32 % cfg.universe));
        let eta = Ordinal::nat(2 + (i as u64 % 3));
        let spec = gen::gen_inc_hybrid(&mut rng, u, &eta);
        r.check_eq(
            format!("diff/hybrid-inc-scan/{i}"),
            "hybrid evaluation equals the direct scan",
            &diff::oracle::hybrid_inc_scan(&spec),
            &eval_hybrid_inc(&spec),
        );
        let spec = gen::gen_dec_hybrid(&mut rng, u, &eta);
        r.check_eq(
            format!("diff/hybrid-dec-scan/{i}"),
            "hybrid evaluation equals the direct scan",
            &diff::oracle::hybrid_dec_scan(&spec),
            &eval_hybrid_dec(&spec),
        );

        let (a, b) = gen::gen_complementary_pair(&mut rng, u, &ord("w"));
        match delta_normalize(&a, &b) {
            Err(e) => r.check(
                format!("diff/normalize/{i}"),
                false,
                "complementary pairs normalize",
                "ok",
                &e.to_string(),
            ),
            Ok(p) => {
                let same = eval_diff_dec(&p) == eval_diff_dec(&a);
                let empty_intersection = p
                    .members
                    .iter()
                    .all(|m| !(m.bound == ord("w") && !m.attained));
                r.check(
                    format!("diff/normalize/{i}"),
                    same && empty_intersection && p.validate().is_ok(),
                    "normalization preserves the difference and empties the intersection",
                    "preserved, empty intersection",
                    &format!("preserved={same} empty={empty_intersection}"),
                );
            }
        }
    }
    r
}

const INC_ETAS: &[&str] = &["1", "2", "3", "w", "w+2", "w*2"];

/// Increasing-side round trip: trace limit, countdown validity, inversion.
fn suite_learners_inc(cfg: &ScenarioConfig) -> SuiteReport {
    let mut r = SuiteReport::new("learners-inc");
    let mut rng = gen::rng_for(cfg.seed ^ 0x1ea1);
    for i in 0..500 {
        let eta = ord(INC_ETAS[i % INC_ETAS.len()]);
        let u = Universe::new(1 + (i as u32 % cfg.universe.max(8).min(8)));
        let spec = gen::gen_inc_hybrid(&mut rng, u, &eta);
        let values = eval_hybrid_inc(&spec);
        for x in u.elements() {
            let (tr, cd) = diff_to_countdown(&spec, x);
            let id = format!("learners-inc/{i}/{x}");
            let limit_ok = tr.final_value() == values[x as usize];
            let cd_ok = validate_countdown(&tr, &cd).is_ok();
            let cont_ok = tr.validate_continuity().is_ok();
            let inverse_ok = countdown_to_diff(&tr, &cd, &eta)
                .map(|fam| fam.eval(spec.c) == values[x as usize])
                .unwrap_or(false);
            r.check(
                id,
                limit_ok && cd_ok && cont_ok && inverse_ok,
                "trace limit, countdown validity, continuity, inversion",
                "all hold",
                &format!("limit={limit_ok} countdown={cd_ok} continuous={cont_ok} inverse={inverse_ok}"),
            );
        }
    }
    // merged countdown for complementary characteristic pairs stays below
    // the family length
    for i in 0..60 {
        let eta = if i % 2 == 0 { ord("w") } else { ord("4") };
        let u = Universe::new(1 + (i as u32 % 6));
        let (spec, comp) = characteristic_pair(&mut rng, u, &eta);
        for x in u.elements() {
            let (tr, cd) = delta_merge_countdown(&spec, &comp, x);
            let valid = validate_countdown(&tr, &cd).is_ok();
            let below = cd.segments.iter().all(|s| match s {
                Segment::Plateau { value, .. } => value < &eta,
                _ => false,
            });
            let correct = tr.final_value() == eval_hybrid_inc(&spec)[x as usize];
            r.check(
                format!("learners-inc/merged/{i}/{x}"),
                valid && below && correct,
                "merged countdown validates strictly below the length",
                "valid, below, correct",
                &format!("valid={valid} below={below} correct={correct}"),
            );
        }
    }
    r
}

/// A characteristic spec of a random set and one of its complement, both of
/// the given even-or-limit length.
fn characteristic_pair(
    rng: &mut rand_chacha::ChaCha20Rng,
    u: Universe,
    eta: &Ordinal,
) -> (diff::IncHybrid, diff::IncHybrid) {
    use rand::Rng;
    let menu = gen::index_menu(eta);
    let mut members = Vec::new();
    let mut comp_members = Vec::new();
    for _ in u.elements() {
        // a start of flipped parity lands the element on the other side
        let start = if rng.gen_bool(0.3) { None } else { Some(menu[rng.gen_range(0..menu.len())].clone()) };
        match start {
            None => {
                members.push(IncMember::never());
                // absent means non-member; the complement needs odd parity
                let odd = menu.iter().find(|o| o.parity() == 1).cloned().unwrap_or(ord("1"));
                comp_members.push(IncMember { chain: vec![(odd.clone(), odd.succ())] });
            }
            Some(g) => {
                members.push(IncMember { chain: vec![(g.clone(), g.succ())] });
                let flipped = if g.parity() == 0 { g.succ() } else { g.pred().unwrap_or_else(Ordinal::zero) };
                let flipped = if flipped.parity() == g.parity() { g.succ() } else { flipped };
                comp_members.push(IncMember {
                    chain: vec![(flipped.clone(), flipped.add(&Ordinal::nat(2)))],
                });
            }
        }
    }
    let mk = |members: Vec<IncMember>| diff::IncHybrid {
        seq: IncSeq { universe: u, length: eta.clone(), members },
        values: vec![IndexValues::inc_characteristic(eta); u.size() as usize],
        c: Some(0),
    };
    (mk(members), mk(comp_members))
}

const DEC_ETAS: &[&str] = &["1", "2", "3", "w", "w+2", "w*2"];

/// Decreasing-side round trip, plus the finite-change theorem: a trace with
/// an alternation block never validates a countdown.
fn suite_learners_dec(cfg: &ScenarioConfig) -> SuiteReport {
    let mut r = SuiteReport::new("learners-dec");
    let mut rng = gen::rng_for(cfg.seed ^ 0x1ea2);
    for i in 0..500 {
        let eta = ord(DEC_ETAS[i % DEC_ETAS.len()]);
        let u = Universe::new(1 + (i as u32 % cfg.universe.max(8).min(8)));
        let spec = gen::gen_dec_hybrid(&mut rng, u, &eta);
        let values = eval_hybrid_dec(&spec);
        for x in u.elements() {
            let tr = dec_to_mindchange(&spec, x);
            let id = format!("learners-dec/{i}/{x}");
            let otype_ok = tr.mind_change_otype() <= eta;
            let limit_ok = tr.final_value() == values[x as usize];
            let semi_ok = tr.validate_semicontinuity().is_ok();
            let inverse_ok = mindchange_to_dec(&tr, &eta)
                .map(|fam| fam.eval(spec.c) == values[x as usize] && fam.otype() <= eta)
                .unwrap_or(false);
            let mut all = otype_ok && limit_ok && semi_ok && inverse_ok;
            let mut detail = format!(
                "otype={otype_ok} limit={limit_ok} semicontinuous={semi_ok} inverse={inverse_ok}"
            );
            if tr.has_block() {
                // the finite-change theorem: no countdown covers a block
                let steep = Countdown {
                    reset: ord("w^2"),
                    segments: vec![Segment::Plateau { from: Ordinal::zero(), value: ord("w^2") }],
                };
                let refused = validate_countdown(&tr, &steep).is_err();
                all &= refused;
                detail.push_str(&format!(" block-refuses-countdown={refused}"));
            }
            r.check(id, all, "mind-change round trip", "all hold", &detail);
        }
    }
    r
}

/// Steps a nondecreasing tuple over `0..max` to the next multiset; false
/// once exhausted.
fn advance_multiset(pick: &mut [usize], max: usize) -> bool {
    for at in (0..pick.len()).rev() {
        if pick[at] + 1 < max {
            let v = pick[at] + 1;
            for p in &mut pick[at..] {
                *p = v;
            }
            return true;
        }
    }
    false
}

/// Exhaustive tree checks over signature multisets, plus random cell maps.
fn suite_trees(cfg: &ScenarioConfig, bounds: &SuiteBounds) -> SuiteReport {
    let mut r = SuiteReport::new("trees");
    for universe in 1..=bounds.tree_universe_max {
        for depth in 1..=bounds.tree_depth_max {
            // signatures: a cells-prefix of some length, two cells per level
            let signatures: Vec<Vec<u32>> = {
                let mut out: Vec<Vec<u32>> = vec![];
                for len in 0..=depth {
                    for bits in 0..(1u32 << len) {
                        out.push((0..len).map(|i| (bits >> i) & 1).collect());
                    }
                }
                out
            };
            let mut bad = 0usize;
            let mut cases = 0usize;
            // nondecreasing index tuples enumerate multisets; the checked
            // properties are invariant under element permutation
            let mut pick = vec![0usize; universe as usize];
            loop {
                let u = Universe::new(universe);
                let levels: Vec<Vec<Option<u32>>> = (0..depth)
                    .map(|lvl| {
                        pick.iter()
                            .map(|&si| signatures[si].get(lvl).copied())
                            .collect()
                    })
                    .collect();
                let cd = CellDecomposition::new(u, levels).expect("prefixes are downward closed");
                let tree = build_tree(&cd);
                let diff = eval_diff_dec(&cd.to_dec_seq());
                let mut survives = false;
                for x in u.elements() {
                    let sig = sigma_x(&cd, x);
                    survives |= sig.len() == depth;
                    let label = (sig.len() % 2) as u8;
                    let rec = recover_membership(&cd, &tree, x);
                    if rec != label || diff[x as usize] != (label == 1) {
                        bad += 1;
                    }
                }
                if check_wellfounded(&tree, &cd) != !survives {
                    bad += 1;
                }
                cases += 1;
                if !advance_multiset(&mut pick, signatures.len()) {
                    break;
                }
            }
            r.check(
                format!("trees/exhaustive/u{universe}-d{depth}"),
                bad == 0,
                &format!("{cases} decompositions: recovery equals the node label equals the difference"),
                "0 mismatches",
                &format!("{bad} mismatches"),
            );
        }
    }
    // random cell maps with a wider alphabet
    let mut rng = gen::rng_for(cfg.seed ^ 0x7ee5);
    for i in 0..200 {
        let u = Universe::new(1 + (i as u32 % bounds.tree_universe_max));
        let cd = gen::gen_cell_decomposition(&mut rng, u, 1 + i % bounds.tree_depth_max, 3);
        let tree = build_tree(&cd);
        let diff = eval_diff_dec(&cd.to_dec_seq());
        let mut ok = true;
        for x in u.elements() {
            let label = (sigma_x(&cd, x).len() % 2) as u8;
            ok &= recover_membership(&cd, &tree, x) == label;
            ok &= diff[x as usize] == (label == 1);
        }
        for (idx, n) in tree.nodes.iter().enumerate() {
            if !n.path.is_empty() {
                ok &= tree.find(&n.path[..n.path.len() - 1]).is_some();
            }
            for &x in &n.elements {
                ok &= cd.signature(x).starts_with(&n.path);
            }
            let _ = idx;
        }
        r.check(
            format!("trees/random/{i}"),
            ok,
            "random cell maps: recovery, labels, prefix closure, node identity",
            "all hold",
            "mismatch",
        );
    }
    r
}

/// All four least-number/counting reductions, exhaustively.
fn suite_weihrauch(cfg: &ScenarioConfig, bounds: &SuiteBounds) -> SuiteReport {
    let mut r = SuiteReport::new("weihrauch");
    let universe = bounds.universe_max.min(5);
    let stage_menu: Vec<Option<Ordinal>> = {
        let mut v: Vec<Option<Ordinal>> = (0..5).map(|k| Some(Ordinal::nat(k))).collect();
        v.push(Some(ord("w")));
        v.push(None);
        v
    };
    let mut pis: Vec<StagedSet> = Vec::new();
    let u = Universe::new(universe);
    let total = stage_menu.len().pow(universe);
    for mut code in 0..total {
        let mut entry = Vec::with_capacity(universe as usize);
        for _ in 0..universe {
            entry.push(stage_menu[code % stage_menu.len()].clone());
            code /= stage_menu.len();
        }
        pis.push(StagedSet::new(u, entry));
    }
    let sigmas: Vec<CoStagedSet> =
        pis.iter().map(|p| CoStagedSet::new(p.universe, p.entry.clone())).collect();

    let lnp_pi = problem_lnp_pi11();
    let count_pi = problem_count_pi11();
    let lnp_sigma = problem_lnp_sigma11();
    let count_sigma = problem_count_sigma11();
    let nonempty_pi: Vec<StagedSet> = pis.iter().filter(|p| (lnp_pi.domain)(p)).cloned().collect();
    let nonempty_sigma: Vec<CoStagedSet> =
        sigmas.iter().filter(|s| (lnp_sigma.domain)(s)).cloned().collect();

    let v = verify_reduction(&reduction_lnp_to_costar(), &lnp_pi, &count_sigma, &nonempty_pi);
    r.check(
        "weihrauch/lnp<=count-sigma",
        v.failures == 0,
        "least number reduces to co-enumerated counting, exhaustively",
        "0 failures",
        &format!("{} failures", v.failures),
    );
    let v = verify_reduction(&reduction_sigma_lnp_to_star(), &lnp_sigma, &count_pi, &nonempty_sigma);
    r.check(
        "weihrauch/sigma-lnp<=count-pi",
        v.failures == 0,
        "co-enumerated least number reduces to counting, exhaustively",
        "0 failures",
        &format!("{} failures", v.failures),
    );
    let v = verify_reduction(&reduction_count_to_lnp(), &count_sigma, &lnp_pi, &sigmas);
    r.check(
        "weihrauch/count-sigma<=lnp",
        v.failures == 0,
        "co-enumerated counting reduces to least number, exhaustively",
        "0 failures",
        &format!("{} failures", v.failures),
    );
    let v = verify_reduction(&reduction_lnp_from_count(), &count_pi, &lnp_sigma, &nonempty_pi);
    r.check(
        "weihrauch/count-pi<=sigma-lnp",
        v.failures == 0,
        "enumerated counting reduces to co-enumerated least number, exhaustively",
        "0 failures",
        &format!("{} failures", v.failures),
    );

    // the inclusive starred complement satisfies min A = #A* on every
    // nonempty instance
    let mut starred_bad = 0usize;
    for p in &nonempty_pi {
        if count_sigma11(&star_transform(p)) != lnp_pi11(p).unwrap() {
            starred_bad += 1;
        }
    }
    r.check(
        "weihrauch/star-identity",
        starred_bad == 0,
        "min A equals the count of the starred complement",
        "0 mismatches",
        &format!("{starred_bad} mismatches"),
    );

    // the hybrid realizers compute the principles pointwise
    let realizer = lnp_realizer_inc(&pis);
    let values = eval_hybrid_inc(&realizer);
    let mut bad = 0usize;
    for (i, p) in pis.iter().enumerate() {
        if values[i] != lnp_pi11(p).ok() {
            bad += 1;
        }
    }
    r.check(
        "weihrauch/realizer-inc",
        bad == 0,
        "the increasing hybrid realizer computes the least number",
        "0 mismatches",
        &format!("{bad} mismatches"),
    );
    let realizer = lnp_realizer_dec(&sigmas);
    let values = eval_hybrid_dec(&realizer);
    let mut bad = 0usize;
    for (i, s) in sigmas.iter().enumerate() {
        if let Ok(m) = lnp_sigma11(s) {
            if values[i] != Some(m) {
                bad += 1;
            }
        }
    }
    r.check(
        "weihrauch/realizer-dec",
        bad == 0,
        "the decreasing hybrid realizer computes the co-enumerated least number",
        "0 mismatches",
        &format!("{bad} mismatches"),
    );
    r
}

const LNPWO_ETAS: &[&str] = &["2", "3", "4", "w", "w+1"];

/// Two-valued least-number principle: the decreasing family computes it, the
/// embeddings agree pointwise, and the instance ladder keeps changing.
fn suite_lnpwo(cfg: &ScenarioConfig, bounds: &SuiteBounds) -> SuiteReport {
    let mut r = SuiteReport::new("lnpwo");
    let mut rng = gen::rng_for(cfg.seed ^ 0x10f0);
    // seeded family for the decreasing-family characterization
    let mut family: Vec<(StagedSet, WoCode)> = Vec::new();
    for i in 0..bounds.samples.max(300) {
        let u = Universe::new(1 + (i as u32 % bounds.universe_max.min(5)));
        family.push((gen::gen_staged_set(&mut rng, u), gen::gen_wocode(&mut rng, u.size())));
    }
    let seq = bn_sets(&family);
    let diff = eval_diff_dec(&seq);
    let mut bad = 0usize;
    for (i, (p, y)) in family.iter().enumerate() {
        if diff[i] != (lnp_wo_two_valued(p, y) == 1) {
            bad += 1;
        }
    }
    r.check(
        "lnpwo/bn-family",
        bad == 0,
        "the alternation-count family computes the principle pointwise",
        "0 mismatches",
        &format!("{bad} mismatches"),
    );

    for (ei, eta_s) in LNPWO_ETAS.iter().enumerate() {
        let eta = ord(eta_s);
        for i in 0..60 {
            let u = Universe::new(1 + ((i + ei) as u32 % bounds.universe_max.min(5)));
            let inc = gen::gen_inc_hybrid(&mut rng, u, &eta).seq;
            let emb = embed_inc_diff(&inc);
            let diff = eval_diff_inc(&inc);
            let mut bad = 0;
            for x in u.elements() {
                let got = lnp_wo_two_valued(&emb.instances[x as usize], &emb.surrogate.wo);
                if (got == 1) != diff[x as usize] {
                    bad += 1;
                }
            }
            r.check(
                format!("lnpwo/embed-inc/{eta_s}/{i}"),
                bad == 0,
                "increasing embedding is pointwise faithful",
                "0 mismatches",
                &format!("{bad} mismatches"),
            );

            let dec = gen::gen_dec_hybrid(&mut rng, u, &eta).seq;
            let emb = embed_dec_diff(&dec);
            let diff = eval_diff_dec(&dec);
            let mut bad = 0;
            for x in u.elements() {
                let got = lnp_wo_two_valued_sigma(&emb.instances[x as usize], &emb.surrogate.wo);
                if (got == 1) != diff[x as usize] {
                    bad += 1;
                }
            }
            r.check(
                format!("lnpwo/embed-dec/{eta_s}/{i}"),
                bad == 0,
                "decreasing embedding is pointwise faithful",
                "0 mismatches",
                &format!("{bad} mismatches"),
            );
        }
    }

    // the guessing process and its designed unbounded-change ladder
    for n in 1..=8u32 {
        let removal: Vec<Option<Ordinal>> =
            (0..=n).map(|k| (k < n).then(|| Ordinal::nat(k as u64 + 1))).collect();
        let s = CoStagedSet::new(Universe::new(n + 1), removal);
        let y = WoCode::identity(n + 1, Ordinal::zero());
        let tr = sigma_lnp_guess_trace(&s, &y, 0);
        let changes = tr.finite_change_count().unwrap_or(0);
        let settled = tr.final_value() == c_star_sigma_lnp(&s, &y, 0);
        r.check(
            format!("lnpwo/ladder/{n}"),
            changes >= n as u64 && settled,
            "ladder instance with n removals changes at least n times",
            &format!(">= {n} changes, settled"),
            &format!("{changes} changes, settled={settled}"),
        );
    }
    for i in 0..120 {
        let u = Universe::new(1 + (i as u32 % bounds.universe_max.min(5)));
        let s = gen::gen_costaged_set(&mut rng, u);
        let y = gen::gen_wocode(&mut rng, u.size());
        let c = (i % 3) as u32;
        let tr = sigma_lnp_guess_trace(&s, &y, c);
        r.check_eq(
            format!("lnpwo/guess/{i}"),
            "the guess history settles on the totalized value",
            &c_star_sigma_lnp(&s, &y, c),
            &tr.final_value(),
        );
    }
    r
}

/// Merge of omega-plus-one processes and the split-sequence evaluation.
fn suite_delta(cfg: &ScenarioConfig, bounds: &SuiteBounds) -> SuiteReport {
    let mut r = SuiteReport::new("delta");
    let mut rng = gen::rng_for(cfg.seed ^ 0xde17);
    for i in 0..bounds.samples.min(300) {
        let u = Universe::new(1 + (i as u32 % bounds.universe_max));
        let (p, q) = gen::gen_delta_proc_pair(&mut rng, u);
        match merge_delta(&p, &q) {
            Err(e) => r.check(
                format!("delta/merge/{i}"),
                false,
                "same-set process pairs merge",
                "ok",
                &e.to_string(),
            ),
            Ok(d) => {
                let mut ok = d.validate().is_ok();
                for x in u.elements() {
                    ok &= eval_type_delta(&d, x) == p.value(x);
                    if let (Some(a), Some(b)) = (p.change_count(x), q.change_count(x)) {
                        let merged =
                            d.p.members[x as usize].max_index().map_or(0, |g| g.finite_part() + 1);
                        ok &= merged <= a.min(b) + 1;
                    }
                }
                r.check(
                    format!("delta/merge/{i}"),
                    ok,
                    "merge validates, evaluates to the common set, and bounds changes",
                    "all hold",
                    "mismatch",
                );
            }
        }
    }
    r
}

/// Matrix suite: validation, guess traces, substitution closure, and the
/// corpus diagonalization.
fn suite_matrices(cfg: &ScenarioConfig, bounds: &SuiteBounds) -> SuiteReport {
    use rand::Rng;
    let mut r = SuiteReport::new("matrices");
    let mut rng = gen::rng_for(cfg.seed ^ 0x3a7e);
    let samples = bounds.samples.max(300);
    let mut pool: Vec<OmegaChangeMatrix> = Vec::new();
    for i in 0..samples {
        let u = Universe::new(1 + (i as u32 % bounds.universe_max));
        let depth = 1 + i % bounds.matrix_depth_max;
        let m = if i % 3 == 0 {
            matrix_normalize(&gen::gen_raw_matrix(&mut rng, u, depth))
        } else {
            gen::gen_matrix(&mut rng, u, depth)
        };
        let valid = validate_matrix(&m).is_ok();
        let mut ok = valid;
        let mut detail = format!("valid={valid}");
        if valid {
            for x in u.elements() {
                let tr = matrix_guess_trace(&m, x);
                let shape = delta_omega_plus_one_valid(&tr);
                let value = tr.final_value() == eval_matrix_diff(&m, x);
                ok &= shape && value;
                if !(shape && value) {
                    detail = format!("x={x} shape={shape} value={value}");
                    break;
                }
            }
            ok &= matrix_normalize(&m) == m;
        }
        r.check(
            format!("matrices/trace/{i}"),
            ok,
            "normalized matrices validate; traces are shape-valid and settle on the difference",
            "all hold",
            &detail,
        );
        if i % 3 != 0 {
            pool.push(m);
        }
    }
    for i in 0..bounds.relabelings {
        let m = &pool[i % pool.len()];
        let n = m.universe().size();
        let pi: Vec<u32> = (0..n + 2).map(|_| rng.gen_range(0..n)).collect();
        let pm = transfinia::matrices::precompose(m, &pi);
        let mut ok = true;
        for (x, &y) in pi.iter().enumerate() {
            ok &= eval_matrix_diff(&pm, x as u32) == eval_matrix_diff(m, y);
        }
        r.check(
            format!("matrices/substitution/{i}"),
            ok,
            "precomposition with a relabeling commutes with evaluation",
            "commutes",
            "differs",
        );
    }
    for depth in 1..=bounds.matrix_depth_max.max(4).min(4) {
        let corpus_size = 6u32;
        let u = Universe::new(corpus_size);
        let corpus: Vec<OmegaChangeMatrix> = (0..corpus_size)
            .map(|_| {
                let m = gen::gen_matrix(&mut rng, u, depth);
                OmegaChangeMatrix::with_default_table(m.rows)
            })
            .collect();
        let diag = diagonal_matrix(&corpus);
        let anti = complement_shift(&diag);
        let mut ok = validate_matrix(&anti).is_ok() && anti.depth() == depth + 1;
        for (i, m) in corpus.iter().enumerate() {
            let probe = i as u32 % m.universe().size();
            ok &= eval_matrix_diff(&anti, i as u32) != eval_matrix_diff(m, probe);
        }
        r.check(
            format!("matrices/diagonal/depth{depth}"),
            ok,
            "the flipped diagonal is one row deeper and differs from every corpus member at its probe",
            "differs everywhere",
            "agreement found",
        );
    }
    r
}

/// Coproduct suite: exhaustive pointwise triples and assembled families.
fn suite_coproduct(cfg: &ScenarioConfig) -> SuiteReport {
    let mut r = SuiteReport::new("coproduct");
    let codes = [
        WoCode::NonWo,
        WoCode::identity(1, Ordinal::zero()),
        WoCode::identity(1, Ordinal::nat(5)),
        WoCode::identity(1, ord("w")),
    ];
    for eta_s in ["w", "w+2"] {
        let eta = ord(eta_s);
        let mut menu: Vec<DecMember> = Vec::new();
        for b in ["0", "1", "2", "3", "w", "w+1"] {
            let bound = ord(b);
            if bound <= eta {
                menu.push(DecMember {
                    bound: bound.clone(),
                    attained: false,
                    schedule: Schedule::unit_ramp(Ordinal::nat(1)),
                });
            }
            if bound < eta {
                menu.push(DecMember {
                    bound,
                    attained: true,
                    schedule: Schedule::unit_ramp(Ordinal::nat(1)),
                });
            }
        }
        let value = |m: &DecMember| m.max_index().is_some_and(|g| g.parity() == 0);
        let mut bad = 0usize;
        let mut cases = 0usize;
        for code in &codes {
            for mp in &menu {
                for mc in &menu {
                    if value(mp) == value(mc) {
                        continue;
                    }
                    let p = DecSeq { universe: Universe::new(1), length: eta.clone(), members: vec![mp.clone()] };
                    let check = DecSeq { universe: Universe::new(1), length: eta.clone(), members: vec![mc.clone()] };
                    let family = vec![CoproductSummand { code: code.clone(), p, p_check: check }];
                    cases += 1;
                    match pwo_coproduct_dec(&family) {
                        Err(_) => bad += 1,
                        Ok((q, qc)) => {
                            let want = code.is_well_order() && value(mp);
                            if eval_diff_dec(&q)[0] != want
                                || eval_diff_dec(&qc)[0] != !want
                                || q.validate().is_err()
                                || qc.validate().is_err()
                            {
                                bad += 1;
                            }
                        }
                    }
                }
            }
        }
        r.check(
            format!("coproduct/triples/{eta_s}"),
            bad == 0,
            &format!("{cases} (code, pair) combinations evaluated pointwise"),
            "0 mismatches",
            &format!("{bad} mismatches"),
        );
    }
    // assembled multi-index families over a seeded grid
    let mut rng = gen::rng_for(cfg.seed ^ 0xc0b0);
    for indices in 1..=3usize {
        for i in 0..40 {
            let u = Universe::new(1 + (i as u32 % 4));
            let eta = if i % 2 == 0 { ord("w") } else { ord("w+2") };
            let family = gen::gen_coproduct_family(&mut rng, indices, u, &eta);
            match pwo_coproduct_dec(&family) {
                Err(e) => r.check(
                    format!("coproduct/family/{indices}/{i}"),
                    false,
                    "complementary families assemble",
                    "ok",
                    &e.to_string(),
                ),
                Ok((q, qc)) => {
                    let vq = eval_diff_dec(&q);
                    let vqc = eval_diff_dec(&qc);
                    let mut ok = true;
                    for (ix, summand) in family.iter().enumerate() {
                        let direct = eval_diff_dec(&summand.p);
                        for x in u.elements() {
                            let e = transfinia::matrices::coproduct_elem(ix, x, u.size()) as usize;
                            let want = summand.code.is_well_order() && direct[x as usize];
                            ok &= vq[e] == want && vqc[e] == !want;
                        }
                    }
                    r.check(
                        format!("coproduct/family/{indices}/{i}"),
                        ok,
                        "assembled coproduct matches pointwise membership with complementary dual",
                        "matches",
                        "differs",
                    );
                }
            }
        }
    }
    r
}

/// Negative control: a corrupted outer reduction must produce failures.
fn suite_negative(cfg: &ScenarioConfig) -> SuiteReport {
    let mut r = SuiteReport::new("negative");
    let mut rng = gen::rng_for(cfg.seed ^ 0xbad);
    let corpus: Vec<StagedSet> = (0..20)
        .map(|_| gen::gen_staged_set(&mut rng, Universe::new(4)))
        .filter(|p| !p.final_set().is_empty())
        .collect();
    let corrupted: Reduction<StagedSet, CoStagedSet, u32> = Reduction {
        name: "corrupted",
        inner: Box::new(star_transform),
        outer: Box::new(|_, y| y + 1),
    };
    let v = verify_reduction(&corrupted, &problem_lnp_pi11(), &problem_count_sigma11(), &corpus);
    for rec in v.records {
        r.check(
            format!("negative/corrupted/{}", rec.instance),
            rec.pass,
            "deliberately corrupted outer map",
            "a correct answer",
            &rec.chain,
        );
    }
    r
}
