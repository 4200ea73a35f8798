//! Immutable simple graphs and the traversals every other module builds on.
//!
//! Sub-problems are `(Graph, VertexMask)` pairs: the mask selects the live
//! vertices and all distances are measured in the subgraph it induces. All
//! traversals scan neighbors in ascending id order, so results are fully
//! determined by their inputs.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{InputError, Result};
use crate::mask::VertexMask;

const UNSET: u32 = u32::MAX;

/// Undirected simple graph on `0..n` in compressed sparse row form.
/// Each neighbor list is sorted and free of duplicates and self-loops.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Graph {
    /// Builds the simple graph on `n` vertices spanned by `edges`.
    /// Self-loops and repeated pairs (in either orientation) are dropped.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        assert!(n < UNSET as usize, "graph too large for 32-bit ids");
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(InputError::VertexOutOfRange { vertex: x, n }.into());
                }
            }
            if u != v {
                pairs.push((u as u32, v as u32));
                pairs.push((v as u32, u as u32));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut offsets = alloc::vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Graph { offsets, targets })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.targets[self.offsets[v]..self.offsets[v + 1]]
            .iter()
            .map(|&u| u as usize)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n()
            && v < self.n()
            && self.targets[self.offsets[u]..self.offsets[u + 1]]
                .binary_search(&(v as u32))
                .is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn all_vertices(&self) -> VertexMask {
        VertexMask::full(self.n())
    }

    /// Vertices of `live` outside `set` that have a neighbor in `set`.
    pub fn neighborhood(&self, set: &VertexMask, live: &VertexMask) -> VertexMask {
        let mut out = VertexMask::empty(self.n());
        for v in set {
            for u in self.neighbors(v) {
                if live.contains(u) && !set.contains(u) {
                    out.insert(u);
                }
            }
        }
        out
    }

    /// True if some edge joins `a` and `b`.
    pub fn sets_adjacent(&self, a: &VertexMask, b: &VertexMask) -> bool {
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        small.iter().any(|v| self.neighbors(v).any(|u| large.contains(u)))
    }

    /// True if `set` is nonempty and induces a connected subgraph.
    pub fn is_connected_set(&self, set: &VertexMask) -> bool {
        match set.first() {
            None => false,
            Some(root) => self.reach(set, core::iter::once(root)).len() == set.len(),
        }
    }

    /// Vertices of `live` reachable from `sources` (those in `live`) inside `live`.
    pub fn reach<I: IntoIterator<Item = usize>>(&self, live: &VertexMask, sources: I) -> VertexMask {
        let mut seen = VertexMask::empty(self.n());
        let mut queue = VecDeque::new();
        for s in sources {
            if live.contains(s) && seen.insert(s) {
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if live.contains(u) && seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen
    }
}

/// Component labelling of a live mask.
///
/// Components are numbered by decreasing size, ties broken by smallest
/// contained vertex id, so label 0 is always the canonical largest component.
#[derive(Clone, Debug)]
pub struct ComponentLabels {
    label: Vec<u32>,
    sizes: Vec<usize>,
}

impl ComponentLabels {
    pub fn new(g: &Graph, live: &VertexMask) -> Self {
        let n = g.n();
        let mut raw = alloc::vec![UNSET; n];
        let mut raw_sizes = Vec::new();
        let mut queue = VecDeque::new();
        for s in live {
            if raw[s] != UNSET {
                continue;
            }
            let id = raw_sizes.len() as u32;
            raw[s] = id;
            queue.push_back(s);
            let mut size = 0;
            while let Some(v) = queue.pop_front() {
                size += 1;
                for u in g.neighbors(v) {
                    if live.contains(u) && raw[u] == UNSET {
                        raw[u] = id;
                        queue.push_back(u);
                    }
                }
            }
            raw_sizes.push(size);
        }
        // Raw ids follow smallest-vertex order; a stable sort by size keeps that as tie-break.
        let mut order: Vec<usize> = (0..raw_sizes.len()).collect();
        order.sort_by(|&a, &b| raw_sizes[b].cmp(&raw_sizes[a]));
        let mut rank = alloc::vec![0u32; raw_sizes.len()];
        for (r, &old) in order.iter().enumerate() {
            rank[old] = r as u32;
        }
        for l in raw.iter_mut() {
            if *l != UNSET {
                *l = rank[*l as usize];
            }
        }
        let sizes = order.iter().map(|&old| raw_sizes[old]).collect();
        ComponentLabels { label: raw, sizes }
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn label(&self, v: usize) -> Option<usize> {
        match self.label[v] {
            UNSET => None,
            l => Some(l as usize),
        }
    }

    pub fn largest_size(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn mask(&self, component: usize) -> VertexMask {
        let mut m = VertexMask::empty(self.label.len());
        for (v, &l) in self.label.iter().enumerate() {
            if l as usize == component {
                m.insert(v);
            }
        }
        m
    }

    pub fn into_masks(self) -> Vec<VertexMask> {
        let n = self.label.len();
        let mut masks: Vec<VertexMask> = (0..self.sizes.len()).map(|_| VertexMask::empty(n)).collect();
        for (v, &l) in self.label.iter().enumerate() {
            if l != UNSET {
                masks[l as usize].insert(v);
            }
        }
        masks
    }
}

/// Maximal connected subsets of `live`, ordered by decreasing size then by
/// smallest vertex id.
pub fn connected_components(g: &Graph, live: &VertexMask) -> Vec<VertexMask> {
    ComponentLabels::new(g, live).into_masks()
}

/// The first component in [`connected_components`] order; empty if `live` is.
pub fn largest_component(g: &Graph, live: &VertexMask) -> VertexMask {
    let labels = ComponentLabels::new(g, live);
    if labels.count() == 0 {
        VertexMask::empty(g.n())
    } else {
        labels.mask(0)
    }
}

/// A BFS tree rooted inside a live mask, with layers and parent links.
#[derive(Clone, Debug)]
pub struct BfsLayers {
    root: usize,
    layer: Vec<u32>,
    parent: Vec<u32>,
    layer_lists: Vec<Vec<usize>>,
}

impl BfsLayers {
    pub fn root(&self) -> usize {
        self.root
    }

    /// Hop distance from the root inside the mask, `None` if unreached.
    #[inline]
    pub fn layer(&self, v: usize) -> Option<usize> {
        match self.layer[v] {
            UNSET => None,
            l => Some(l as usize),
        }
    }

    #[inline]
    pub fn parent(&self, v: usize) -> Option<usize> {
        match self.parent[v] {
            UNSET => None,
            p => Some(p as usize),
        }
    }

    /// Vertices grouped by layer, each group in ascending id order.
    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layer_lists
    }

    /// Number of nonempty layers (eccentricity of the root plus one).
    pub fn depth(&self) -> usize {
        self.layer_lists.len()
    }

    pub fn layer_size(&self, i: usize) -> usize {
        self.layer_lists.get(i).map_or(0, Vec::len)
    }

    pub fn reached_count(&self) -> usize {
        self.layer_lists.iter().map(Vec::len).sum()
    }

    /// Vertices whose layer lies in `lo..=hi`.
    pub fn band(&self, lo: usize, hi: usize) -> VertexMask {
        let mut m = VertexMask::empty(self.layer.len());
        for l in self.layer_lists.iter().take(hi.saturating_add(1)).skip(lo) {
            for &v in l {
                m.insert(v);
            }
        }
        m
    }
}

/// Exact BFS layers from `root` inside `live`. Each reached vertex other than
/// the root gets the smallest-id neighbor in the previous layer as parent.
pub fn bfs_layers(g: &Graph, live: &VertexMask, root: usize) -> Result<BfsLayers> {
    let n = g.n();
    if root >= n {
        return Err(InputError::VertexOutOfRange { vertex: root, n }.into());
    }
    if !live.contains(root) {
        return Err(InputError::RootNotLive(root).into());
    }
    let mut layer = alloc::vec![UNSET; n];
    let mut parent = alloc::vec![UNSET; n];
    let mut layer_lists: Vec<Vec<usize>> = alloc::vec![alloc::vec![root]];
    layer[root] = 0;
    let mut frontier = alloc::vec![root];
    let mut depth = 0u32;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &v in &frontier {
            for u in g.neighbors(v) {
                if live.contains(u) && layer[u] == UNSET {
                    layer[u] = depth + 1;
                    next.push(u);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        for &u in &next {
            // Neighbor lists are sorted, so the first hit is the smallest id.
            let p = g
                .neighbors(u)
                .find(|&w| layer[w] == depth)
                .expect("BFS vertex without predecessor");
            parent[u] = p as u32;
        }
        depth += 1;
        layer_lists.push(next.clone());
        frontier = next;
    }
    Ok(BfsLayers {
        root,
        layer,
        parent,
        layer_lists,
    })
}

/// `{u in live : dist(v, u) <= radius}` with distances inside `live`.
pub fn ball(g: &Graph, live: &VertexMask, v: usize, radius: usize) -> Result<VertexMask> {
    if v >= g.n() {
        return Err(InputError::VertexOutOfRange { vertex: v, n: g.n() }.into());
    }
    if !live.contains(v) {
        return Err(InputError::RootNotLive(v).into());
    }
    let mut seen = VertexMask::empty(g.n());
    seen.insert(v);
    let mut frontier = alloc::vec![v];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &x in &frontier {
            for u in g.neighbors(x) {
                if live.contains(u) && seen.insert(u) {
                    next.push(u);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(seen)
}

/// Root-to-`x` path in the BFS tree, root first.
pub fn tree_path(layers: &BfsLayers, x: usize) -> Result<Vec<usize>> {
    if x >= layers.layer.len() {
        return Err(InputError::VertexOutOfRange {
            vertex: x,
            n: layers.layer.len(),
        }
        .into());
    }
    if layers.layer(x).is_none() {
        return Err(InputError::Unreached(x).into());
    }
    let mut path = alloc::vec![x];
    let mut cur = x;
    while let Some(p) = layers.parent(cur) {
        path.push(p);
        cur = p;
    }
    path.reverse();
    Ok(path)
}
