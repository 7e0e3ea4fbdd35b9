//! Scenario configuration: the seed, universe bound, length menu, suite
//! selection, and worker count. Identical configurations produce
//! byte-identical reports.

use serde::{Deserialize, Serialize};
use transfinia::gen::SuiteBounds;
use transfinia::ordinals::{parse_ordinal, Ordinal};

pub const ALL_SUITES: &[&str] = &[
    "ordinals",
    "staged",
    "diff",
    "learners-inc",
    "learners-dec",
    "trees",
    "weihrauch",
    "lnpwo",
    "delta",
    "matrices",
    "coproduct",
];

/// Suites outside the default selection; they expect failures by design.
pub const NEGATIVE_SUITES: &[&str] = &["negative"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub seed: u64,
    pub universe: u32,
    /// Length menu as ordinal expressions.
    pub etas: Vec<String>,
    pub suites: Vec<String>,
    pub jobs: usize,
    pub bounds: SuiteBounds,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            seed: 1,
            universe: 6,
            etas: vec!["w".into(), "w+2".into()],
            suites: ALL_SUITES.iter().map(|s| s.to_string()).collect(),
            jobs: 1,
            bounds: bounds_from_env(),
        }
    }
}

impl ScenarioConfig {
    pub fn eta_menu(&self) -> Result<Vec<Ordinal>, String> {
        self.etas
            .iter()
            .map(|s| parse_ordinal(s).map_err(|e| format!("invalid length {s:?}: {e}")))
            .collect()
    }
}

/// Reads `TRANSFINIA_SUITE_BOUNDS` as comma-separated `key=value` overrides
/// of the default corpus bounds.
pub fn bounds_from_env() -> SuiteBounds {
    let mut bounds = SuiteBounds::default();
    let Ok(raw) = std::env::var("TRANSFINIA_SUITE_BOUNDS") else {
        return bounds;
    };
    for piece in raw.split(',').filter(|p| !p.trim().is_empty()) {
        let Some((key, value)) = piece.split_once('=') else {
            eprintln!("ignoring malformed bound override {piece:?}");
            continue;
        };
        let ok = match key.trim() {
            "universe_max" => value.trim().parse().map(|v| bounds.universe_max = v).is_ok(),
            "samples" => value.trim().parse().map(|v| bounds.samples = v).is_ok(),
            "tree_universe_max" => {
                value.trim().parse().map(|v| bounds.tree_universe_max = v).is_ok()
            }
            "tree_depth_max" => value.trim().parse().map(|v| bounds.tree_depth_max = v).is_ok(),
            "matrix_depth_max" => {
                value.trim().parse().map(|v| bounds.matrix_depth_max = v).is_ok()
            }
            "relabelings" => value.trim().parse().map(|v| bounds.relabelings = v).is_ok(),
            other => {
                eprintln!("ignoring unknown bound key {other:?}");
                true
            }
        };
        if !ok {
            eprintln!("ignoring unparsable bound override {piece:?}");
        }
    }
    bounds
}
