//! Independent checkers for separators, witnesses and driver invariants.
//!
//! Nothing here reuses the driver's traversal code: connectivity is
//! recomputed with a union-find over the edge list, so a bug in the BFS or
//! component routines cannot certify its own output. Every check is
//! read-only.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::mask::VertexMask;
use crate::minor::MinorModel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub checks: Vec<Check>,
    /// Largest component of `G - S` for separator checks; 0 otherwise.
    pub worst_component: usize,
    pub separator_size: usize,
}

impl VerificationReport {
    fn from_checks(checks: Vec<Check>) -> Self {
        VerificationReport {
            ok: checks.iter().all(|c| c.passed),
            checks,
            worst_component: 0,
            separator_size: 0,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

struct Dsu {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n as u32).collect(),
            size: alloc::vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
    }
}

/// Sizes of the components induced by `keep`, by union-find over all edges.
fn component_sizes(g: &Graph, keep: &VertexMask) -> Vec<usize> {
    let mut dsu = Dsu::new(g.n());
    for (u, v) in g.edges() {
        if keep.contains(u) && keep.contains(v) {
            dsu.union(u, v);
        }
    }
    let mut sizes = Vec::new();
    for v in keep {
        if dsu.find(v) == v {
            sizes.push(dsu.size[v] as usize);
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

fn induces_connected(g: &Graph, set: &VertexMask) -> bool {
    set.is_empty() || component_sizes(g, set).len() == 1
}

/// Checks that every component of `G - separator` has at most `2n/3` vertices.
pub fn verify_balanced(g: &Graph, separator: &VertexMask) -> VerificationReport {
    let n = g.n();
    let mut checks = Vec::new();
    let in_range = separator.universe() == n;
    checks.push(check(
        "in_range",
        in_range,
        format!("separator universe {} for n = {}", separator.universe(), n),
    ));
    if !in_range {
        let mut r = VerificationReport::from_checks(checks);
        r.separator_size = separator.len();
        return r;
    }
    let rest = g.all_vertices().difference(separator);
    let sizes = component_sizes(g, &rest);
    let worst = sizes.first().copied().unwrap_or(0);
    checks.push(check(
        "balanced",
        3 * worst <= 2 * n,
        format!("largest component {worst} of n = {n} (limit 2n/3)"),
    ));
    let mut r = VerificationReport::from_checks(checks);
    r.worst_component = worst;
    r.separator_size = separator.len();
    r
}

/// Checks that `model` has at least `h` nonempty, disjoint, connected and
/// pairwise adjacent branch sets.
pub fn verify_witness(g: &Graph, model: &MinorModel, h: usize) -> VerificationReport {
    verify_branches(g, model.branches(), h)
}

/// [`verify_witness`] on raw branch sets, which need not form a valid model.
pub fn verify_branches(g: &Graph, branches: &[VertexMask], h: usize) -> VerificationReport {
    let n = g.n();
    let k = branches.len();
    let mut checks = Vec::new();
    checks.push(check("branch_count", k >= h, format!("{k} branches, need {h}")));

    let bad_range: Vec<usize> = (0..k).filter(|&i| branches[i].universe() != n).collect();
    checks.push(check(
        "in_range",
        bad_range.is_empty(),
        format!("branches over the wrong universe: {bad_range:?}"),
    ));
    if !bad_range.is_empty() {
        return VerificationReport::from_checks(checks);
    }

    let empty: Vec<usize> = (0..k).filter(|&i| branches[i].is_empty()).collect();
    checks.push(check(
        "nonempty",
        empty.is_empty(),
        format!("empty branches: {empty:?}"),
    ));

    let mut owners: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for (i, b) in branches.iter().enumerate() {
        for v in b {
            owners[v].push(i);
        }
    }
    let shared: Vec<usize> = (0..n).filter(|&v| owners[v].len() > 1).collect();
    checks.push(check(
        "disjoint",
        shared.is_empty(),
        format!("vertices in several branches: {shared:?}"),
    ));

    let disconnected: Vec<usize> = (0..k).filter(|&i| !induces_connected(g, &branches[i])).collect();
    checks.push(check(
        "connected",
        disconnected.is_empty(),
        format!("disconnected branches: {disconnected:?}"),
    ));

    let mut adj = alloc::vec![false; k * k];
    for (u, v) in g.edges() {
        for &a in &owners[u] {
            for &b in &owners[v] {
                adj[a * k + b] = true;
                adj[b * k + a] = true;
            }
        }
    }
    let missing: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .filter(|&(a, b)| !adj[a * k + b])
        .collect();
    checks.push(check(
        "pairwise_adjacent",
        missing.is_empty(),
        format!("non-adjacent pairs: {missing:?}"),
    ));
    VerificationReport::from_checks(checks)
}

/// Driver state handed to [`check_invariants`].
#[derive(Clone, Copy, Debug)]
pub struct InvariantSnapshot<'a> {
    pub g: &'a Graph,
    pub n: usize,
    pub h: usize,
    pub ell: usize,
    /// Size a branch may reach before its live neighborhood has to be small.
    pub branch_size_bound: usize,
    pub branches: &'a [VertexMask],
    pub x_set: &'a VertexMask,
    pub live: &'a VertexMask,
}

/// Evaluates the loop invariants on a snapshot:
///
/// - `model`: fewer than `h` branches forming a clique minor model;
/// - `live_disjoint`: no branch vertex is live;
/// - `live_neighbor`: every branch has a live neighbor;
/// - `branch_bound`: every branch is small or has a small live neighborhood
///   (`h * ell * |N| <= n`);
/// - `boundary_covered`: every neighbor of `H` outside `H` is in `X` or a branch;
/// - `live_connected` and `x_disjoint` (`X` avoids `H` and the branches).
pub fn check_invariants(s: &InvariantSnapshot<'_>) -> VerificationReport {
    let g = s.g;
    let k = s.branches.len();
    let mut checks = Vec::new();

    let structure = verify_branches(g, s.branches, 0);
    let failed: Vec<&str> = structure.failures().map(|c| c.name).collect();
    checks.push(check(
        "model",
        k < s.h && structure.ok,
        format!("{k} branches (limit {}), failed: {failed:?}", s.h - 1),
    ));

    let in_live: Vec<usize> = (0..k).filter(|&i| s.branches[i].intersects(s.live)).collect();
    checks.push(check(
        "live_disjoint",
        in_live.is_empty(),
        format!("branches meeting H: {in_live:?}"),
    ));

    let live_nb: Vec<usize> = s
        .branches
        .iter()
        .map(|b| {
            let mut cnt = VertexMask::empty(g.n());
            for v in b {
                for u in g.neighbors(v) {
                    if s.live.contains(u) {
                        cnt.insert(u);
                    }
                }
            }
            cnt.len()
        })
        .collect();
    let isolated: Vec<usize> = (0..k).filter(|&i| live_nb[i] == 0).collect();
    checks.push(check(
        "live_neighbor",
        isolated.is_empty(),
        format!("branches without live neighbors: {isolated:?}"),
    ));

    let oversized: Vec<(usize, usize, usize)> = (0..k)
        .filter(|&i| s.branches[i].len() > s.branch_size_bound && s.h * s.ell * live_nb[i] > s.n)
        .map(|i| (i, s.branches[i].len(), live_nb[i]))
        .collect();
    checks.push(check(
        "branch_bound",
        oversized.is_empty(),
        format!("(branch, size, |N|) over bound {}: {oversized:?}", s.branch_size_bound),
    ));

    let mut uncovered = Vec::new();
    for v in s.live {
        for u in g.neighbors(v) {
            if !s.live.contains(u) && !s.x_set.contains(u) && !s.branches.iter().any(|b| b.contains(u)) {
                uncovered.push(u);
            }
        }
    }
    uncovered.sort_unstable();
    uncovered.dedup();
    checks.push(check(
        "boundary_covered",
        uncovered.is_empty(),
        format!("outside neighbors of H in neither X nor a branch: {uncovered:?}"),
    ));

    checks.push(check(
        "live_connected",
        induces_connected(g, s.live),
        format!("|H| = {}", s.live.len()),
    ));

    let x_clash = s.x_set.intersects(s.live) || s.branches.iter().any(|b| b.intersects(s.x_set));
    checks.push(check(
        "x_disjoint",
        !x_clash,
        String::from("X must avoid H and every branch"),
    ));

    VerificationReport::from_checks(checks)
}
