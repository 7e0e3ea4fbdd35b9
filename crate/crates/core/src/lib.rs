//! Ordinal-stage enumeration semantics on finite universes: exact ordinal
//! arithmetic, staged set surrogates, transfinite difference operators,
//! mind-change learners with countdowns, well-founded tree systems,
//! least-number-principle reductions, and omega-change matrices — each
//! paired with brute-force oracles in the test suites.

pub mod diff;
pub mod gen;
pub mod learners;
pub mod matrices;
pub mod ordinals;
pub mod staged;
pub mod trees;
pub mod weihrauch;

pub use ordinals::{Kind, Ordinal};
pub use staged::{CoStagedSet, DecSeq, IncSeq, Schedule, StagedSet, Universe, WoCode};

/// Value type carried by learner guesses, hybrid operators, and answer maps.
pub type Val = u32;
