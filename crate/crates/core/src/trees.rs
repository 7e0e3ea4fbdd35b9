//! Labeled branching well-founded trees over finite cell decompositions, and
//! membership recovery through the recursive node-value assignment.

use serde::{Deserialize, Serialize};

use crate::ordinals::Ordinal;
use crate::staged::{DecMember, DecSeq, Schedule, Universe};

/// A finite truncation of a decreasing sequence together with per-level cell
/// maps: `levels[n][x]` names the cell of `x` at level `n`, with `None`
/// meaning `x` has dropped out at that level. Cells partition each level and
/// membership is downward closed, so an element's non-`None` prefix is its
/// whole history.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDecomposition {
    pub universe: Universe,
    pub levels: Vec<Vec<Option<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CellError {
    #[error("level {level} has {got} entries for a universe of {want}")]
    WrongWidth { level: usize, got: usize, want: usize },
    #[error("element {elem} re-enters at level {level} after dropping out")]
    NotDownwardClosed { elem: u32, level: usize },
}

impl CellDecomposition {
    pub fn new(universe: Universe, levels: Vec<Vec<Option<u32>>>) -> Result<Self, CellError> {
        let want = universe.size() as usize;
        for (level, row) in levels.iter().enumerate() {
            if row.len() != want {
                return Err(CellError::WrongWidth { level, got: row.len(), want });
            }
        }
        for x in universe.elements() {
            let mut dropped = false;
            for (level, row) in levels.iter().enumerate() {
                match row[x as usize] {
                    None => dropped = true,
                    Some(_) if dropped => {
                        return Err(CellError::NotDownwardClosed { elem: x, level })
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(CellDecomposition { universe, levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// The maximal all-cells prefix of `x`'s level history.
    pub fn signature(&self, x: u32) -> Vec<u32> {
        self.levels
            .iter()
            .map_while(|row| row[x as usize])
            .collect()
    }

    /// The underlying finite decreasing sequence, with unit-ramp stages.
    pub fn to_dec_seq(&self) -> DecSeq {
        DecSeq {
            universe: self.universe,
            length: Ordinal::nat(self.depth() as u64),
            members: self
                .universe
                .elements()
                .map(|x| DecMember {
                    bound: Ordinal::nat(self.signature(x).len() as u64),
                    attained: false,
                    schedule: Schedule::unit_ramp(Ordinal::zero()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub path: Vec<u32>,
    /// 0 at even depth, 1 at odd depth.
    pub label: u8,
    /// Elements whose signature extends this node's path.
    pub elements: Vec<u32>,
    pub children: Vec<usize>,
}

/// The prefix tree of nonempty cell intersections; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledTree {
    pub nodes: Vec<TreeNode>,
}

impl LabeledTree {
    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn is_leaf(&self, idx: usize) -> bool {
        self.nodes[idx].children.is_empty()
    }

    pub fn max_depth(&self) -> usize {
        self.nodes.iter().map(|n| n.path.len()).max().unwrap_or(0)
    }

    pub fn find(&self, path: &[u32]) -> Option<usize> {
        let mut at = 0;
        for &cell in path {
            at = *self.nodes[at]
                .children
                .iter()
                .find(|&&c| self.nodes[c].path.last() == Some(&cell))?;
        }
        Some(at)
    }

    /// One line per node, for report output.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for n in &self.nodes {
            let _ = writeln!(out, "{:?} label={} elements={:?}", n.path, n.label, n.elements);
        }
        out
    }
}

/// Builds the tree of all nonempty intersections: a node for every cell
/// string realized by some element, labeled by depth parity.
pub fn build_tree(cd: &CellDecomposition) -> LabeledTree {
    let mut nodes = vec![TreeNode {
        path: Vec::new(),
        label: 0,
        elements: cd.universe.elements().collect(),
        children: Vec::new(),
    }];
    let signatures: Vec<Vec<u32>> = cd.universe.elements().map(|x| cd.signature(x)).collect();
    for depth in 1..=cd.depth() {
        for x in cd.universe.elements() {
            let sig = &signatures[x as usize];
            if sig.len() < depth {
                continue;
            }
            let path = &sig[..depth];
            let parent = find_mut(&nodes, &path[..depth - 1]);
            let exists = nodes[parent]
                .children
                .iter()
                .any(|&c| nodes[c].path.last() == path.last());
            if !exists {
                let idx = nodes.len();
                nodes.push(TreeNode {
                    path: path.to_vec(),
                    label: (depth % 2) as u8,
                    elements: Vec::new(),
                    children: Vec::new(),
                });
                nodes[parent].children.push(idx);
            }
            let child = nodes[parent]
                .children
                .iter()
                .copied()
                .find(|&c| nodes[c].path.last() == path.last())
                .expect("just ensured");
            nodes[child].elements.push(x);
        }
    }
    LabeledTree { nodes }
}

fn find_mut(nodes: &[TreeNode], path: &[u32]) -> usize {
    let mut at = 0;
    for &cell in path {
        at = nodes[at]
            .children
            .iter()
            .copied()
            .find(|&c| nodes[c].path.last() == Some(&cell))
            .expect("prefix closure");
    }
    at
}

/// True exactly when no element survives every truncation level, which is
/// the finite reading of the empty-intersection hypothesis; equivalently the
/// tree is strictly shallower than the decomposition.
pub fn check_wellfounded(tree: &LabeledTree, cd: &CellDecomposition) -> bool {
    tree.max_depth() < cd.depth()
}

/// The node whose intersection set holds `x`: the longest all-cells prefix.
pub fn sigma_x(cd: &CellDecomposition, x: u32) -> Vec<u32> {
    cd.signature(x)
}

/// Evaluates the recursive node-value assignment along `x`'s cell history:
/// a leaf returns its label; an inner node labeled `i` defers to the child
/// named by the next cell, or returns `i` when the next level shows `None`.
pub fn recover_membership(cd: &CellDecomposition, tree: &LabeledTree, x: u32) -> u8 {
    let mut at = 0;
    for depth in 0..cd.depth() {
        if tree.is_leaf(at) {
            return tree.nodes[at].label;
        }
        match cd.levels[depth][x as usize] {
            None => return tree.nodes[at].label,
            Some(cell) => {
                at = tree.nodes[at]
                    .children
                    .iter()
                    .copied()
                    .find(|&c| tree.nodes[c].path.last() == Some(&cell))
                    .expect("x witnesses the child's intersection");
            }
        }
    }
    tree.nodes[at].label
}
