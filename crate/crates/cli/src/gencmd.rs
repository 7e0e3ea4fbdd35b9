//! Seeded instance-file generation: one JSON file per instance, identical
//! bytes for identical configurations.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use transfinia::gen::{self, Instance};
use transfinia::ordinals::Ordinal;
use transfinia::staged::{DecMember, DecSeq, Schedule, Universe};

use crate::config::ScenarioConfig;

/// Writes the corpus and returns the created paths in creation order.
pub fn run_gen(cfg: &ScenarioConfig, out: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let etas = cfg.eta_menu().map_err(anyhow::Error::msg)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let mut rng = gen::rng_for(cfg.seed);
    let mut written = Vec::new();
    let mut write = |name: String, inst: &Instance| -> anyhow::Result<()> {
        let path = out.join(name);
        let mut payload = serde_json::to_string_pretty(inst)?;
        payload.push('\n');
        fs::write(&path, payload).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
        Ok(())
    };

    // the two-level worked example: B_0 = {0, 1} over B_1 = {1}
    let two_level = DecSeq {
        universe: Universe::new(2),
        length: Ordinal::nat(2),
        members: vec![
            DecMember { bound: Ordinal::nat(1), attained: false, schedule: Schedule::unit_ramp(Ordinal::zero()) },
            DecMember { bound: Ordinal::nat(2), attained: false, schedule: Schedule::unit_ramp(Ordinal::zero()) },
        ],
    };
    write("two_level.json".into(), &Instance::SeqDec { seq: two_level })?;

    let u = Universe::new(cfg.universe.max(1));
    for (ei, eta) in etas.iter().enumerate() {
        for i in 0..3 {
            let spec = gen::gen_inc_hybrid(&mut rng, u, eta);
            write(format!("hybrid_inc_e{ei}_{i}.json"), &Instance::HybridInc { spec })?;
            let spec = gen::gen_dec_hybrid(&mut rng, u, eta);
            write(format!("hybrid_dec_e{ei}_{i}.json"), &Instance::HybridDec { spec })?;
        }
    }
    for depth in 1..=cfg.bounds.matrix_depth_max {
        for i in 0..2 {
            let matrix = gen::gen_matrix(&mut rng, u, depth);
            write(format!("matrix_d{depth}_{i}.json"), &Instance::Matrix { matrix })?;
        }
    }
    for i in 0..4 {
        let set = gen::gen_staged_set(&mut rng, u);
        write(format!("lnp_pi_{i}.json"), &Instance::LnpPi { set })?;
        let set = gen::gen_costaged_set(&mut rng, u);
        write(format!("lnp_sigma_{i}.json"), &Instance::LnpSigma { set })?;
        let set = gen::gen_staged_set(&mut rng, u);
        let code = gen::gen_wocode(&mut rng, u.size());
        write(format!("lnp_wo_{i}.json"), &Instance::LnpWo { set, code })?;
    }
    for i in 0..2 {
        let cells = gen::gen_cell_decomposition(
            &mut rng,
            Universe::new(cfg.universe.min(cfg.bounds.tree_universe_max).max(1)),
            cfg.bounds.tree_depth_max.max(1),
            2,
        );
        write(format!("cells_{i}.json"), &Instance::Cells { cells })?;
    }
    Ok(written)
}
