//! Clique minor models: ordered, vertex-disjoint, connected branch sets that
//! are pairwise joined by at least one edge.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{ModelError, Result};
use crate::graph::Graph;
use crate::mask::VertexMask;

const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    branches: Vec<VertexMask>,
    branch_of: Vec<u32>,
}

impl MinorModel {
    pub fn empty(n: usize) -> Self {
        MinorModel {
            branches: Vec::new(),
            branch_of: alloc::vec![UNSET; n],
        }
    }

    /// Model with the single branch `{x}`.
    pub fn new(n: usize, x: usize) -> Self {
        let mut m = MinorModel::empty(n);
        m.push(VertexMask::from_vertices(n, [x]));
        m
    }

    /// Wraps branch sets without checking any invariant. Meant for loading
    /// certificates that are about to be validated.
    pub fn from_branches_unchecked(n: usize, branches: Vec<VertexMask>) -> Self {
        let mut m = MinorModel::empty(n);
        for b in branches {
            m.push(b);
        }
        m
    }

    fn push(&mut self, branch: VertexMask) {
        let idx = self.branches.len() as u32;
        for v in &branch {
            self.branch_of[v] = idx;
        }
        self.branches.push(branch);
    }

    fn reindex(&mut self) {
        for b in self.branch_of.iter_mut() {
            *b = UNSET;
        }
        for (i, b) in self.branches.iter().enumerate() {
            for v in b {
                self.branch_of[v] = i as u32;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.branch_of.len()
    }

    pub fn branches(&self) -> &[VertexMask] {
        &self.branches
    }

    pub fn branch(&self, idx: usize) -> &VertexMask {
        &self.branches[idx]
    }

    pub fn branch_of(&self, v: usize) -> Option<usize> {
        match self.branch_of[v] {
            UNSET => None,
            b => Some(b as usize),
        }
    }

    /// Union of all branch sets.
    pub fn vertices(&self) -> VertexMask {
        let mut all = VertexMask::empty(self.universe());
        for b in &self.branches {
            all.union_with(b);
        }
        all
    }

    /// Neighbors of branch `idx` inside `live`.
    pub fn neighbors_in(&self, g: &Graph, idx: usize, live: &VertexMask) -> VertexMask {
        g.neighborhood(&self.branches[idx], live)
    }

    /// Appends `cand` as the newest branch after checking it is nonempty,
    /// connected, disjoint from every branch and adjacent to every branch.
    pub fn add_branch(&mut self, g: &Graph, cand: VertexMask) -> Result<()> {
        if cand.is_empty() {
            return Err(ModelError::EmptyBranch.into());
        }
        if let Some(b) = cand.iter().find_map(|v| self.branch_of(v)) {
            return Err(ModelError::Overlap { branch: b }.into());
        }
        if !g.is_connected_set(&cand) {
            return Err(ModelError::Disconnected { branch: None }.into());
        }
        let mut touched = alloc::vec![false; self.branches.len()];
        for v in &cand {
            for u in g.neighbors(v) {
                if let Some(b) = self.branch_of(u) {
                    touched[b] = true;
                }
            }
        }
        if let Some(b) = touched.iter().position(|t| !t) {
            return Err(ModelError::NotAdjacent { branch: b }.into());
        }
        self.push(cand);
        Ok(())
    }

    /// Replaces branch `idx` with `branch ∪ z`. `z` must avoid every branch
    /// and the union must stay connected.
    pub fn grow_branch(&mut self, g: &Graph, idx: usize, z: &VertexMask) -> Result<()> {
        if idx >= self.branches.len() {
            return Err(ModelError::BranchOutOfRange(idx).into());
        }
        if z.is_empty() {
            return Ok(());
        }
        if let Some(b) = z.iter().find_map(|v| self.branch_of(v)) {
            return Err(ModelError::Overlap { branch: b }.into());
        }
        let grown = self.branches[idx].union(z);
        if !g.is_connected_set(&grown) {
            return Err(ModelError::Disconnected { branch: Some(idx) }.into());
        }
        for v in z {
            self.branch_of[v] = idx as u32;
        }
        self.branches[idx] = grown;
        Ok(())
    }

    /// Drops every branch without a neighbor in `live`, keeping creation order
    /// among survivors. Returns the dropped branches.
    pub fn trim(&mut self, g: &Graph, live: &VertexMask) -> Vec<VertexMask> {
        let (keep, drop): (Vec<_>, Vec<_>) = core::mem::take(&mut self.branches).into_iter().partition(|b| {
            b.iter()
                .any(|v| g.neighbors(v).any(|u| live.contains(u) && !b.contains(u)))
        });
        self.branches = keep;
        if !drop.is_empty() {
            self.reindex();
        }
        drop
    }

    /// Union over branches of the smaller of the branch itself and its
    /// neighborhood in `live`; equal sizes pick the neighborhood.
    pub fn f_selector(&self, g: &Graph, live: &VertexMask) -> VertexMask {
        let mut out = VertexMask::empty(self.universe());
        for i in 0..self.branches.len() {
            let nb = self.neighbors_in(g, i, live);
            if self.branches[i].len() < nb.len() {
                out.union_with(&self.branches[i]);
            } else {
                out.union_with(&nb);
            }
        }
        out
    }

    /// Checks the model against the definition of a `K_h` minor model.
    pub fn validate_clique_minor(&self, g: &Graph, h: usize) -> ValidationReport {
        ValidationReport::check(g, &self.branches, h)
    }
}

/// Outcome of checking branch sets against the clique-minor definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub branch_count: usize,
    pub required: usize,
    /// Pairs of branches sharing a vertex.
    pub overlapping: Vec<(usize, usize)>,
    /// Branches that are empty or induce a disconnected subgraph.
    pub disconnected: Vec<usize>,
    /// Pairs of branches with no edge between them.
    pub missing_edges: Vec<(usize, usize)>,
}

impl ValidationReport {
    /// Re-derives everything from the raw branch sets and the graph.
    pub fn check(g: &Graph, branches: &[VertexMask], h: usize) -> Self {
        let k = branches.len();
        let mut overlapping = Vec::new();
        let mut missing_edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if branches[i].intersects(&branches[j]) {
                    overlapping.push((i, j));
                }
                if !g.sets_adjacent(&branches[i], &branches[j]) {
                    missing_edges.push((i, j));
                }
            }
        }
        let disconnected = (0..k).filter(|&i| !g.is_connected_set(&branches[i])).collect();
        ValidationReport {
            branch_count: k,
            required: h,
            overlapping,
            disconnected,
            missing_edges,
        }
    }

    pub fn enough_branches(&self) -> bool {
        self.branch_count >= self.required
    }

    /// Disjoint, connected and pairwise adjacent, whatever the branch count.
    pub fn structure_ok(&self) -> bool {
        self.overlapping.is_empty() && self.disconnected.is_empty() && self.missing_edges.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.enough_branches() && self.structure_ok()
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{} of {} branches", self.branch_count, self.required);
        if !self.overlapping.is_empty() {
            let _ = write!(s, "; overlapping {:?}", self.overlapping);
        }
        if !self.disconnected.is_empty() {
            let _ = write!(s, "; disconnected {:?}", self.disconnected);
        }
        if !self.missing_edges.is_empty() {
            let _ = write!(s, "; non-adjacent {:?}", self.missing_edges);
        }
        s
    }
}
