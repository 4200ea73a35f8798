//! Diameter-bounded partitions and the low-diameter decomposition built on them.
//!
//! [`padded_partition`] samples a partition of the live vertices whose parts
//! have weak diameter at most `delta` (distances in the live subgraph). It is
//! random-order ball carving: draw one integer radius `R` uniformly from
//! `[max(1, ceil(delta/4)), floor(delta/2)]`, shuffle the live vertices, and
//! let each vertex join the first center in that order within distance `R`.
//! Every carved piece lies inside a ball of radius `R`, so its weak diameter is
//! at most `2R <= delta` regardless of the random draws. Carved pieces are then
//! split into their connected components, which leaves the boundary of the
//! partition unchanged (distinct pieces of one carve are never adjacent).
//!
//! [`ldd`] removes every vertex whose closed unit ball leaves its part. Each
//! component of what remains sits inside one part, so it inherits the weak
//! diameter bound.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{InputError, Result};
use crate::graph::Graph;
use crate::mask::VertexMask;
use crate::rng::Rng;

const UNSET: u32 = u32::MAX;

/// A partition of a live mask into connected parts of bounded weak diameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    part_of: Vec<u32>,
    parts: Vec<Vec<usize>>,
    delta: usize,
    radius: usize,
}

impl Partition {
    pub fn part_of(&self, v: usize) -> Option<usize> {
        match self.part_of[v] {
            UNSET => None,
            p => Some(p as usize),
        }
    }

    /// Parts as ascending vertex lists, ordered by smallest member.
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_mask(&self, i: usize) -> VertexMask {
        VertexMask::from_vertices(self.part_of.len(), self.parts[i].iter().copied())
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// The carving radius drawn for this sample.
    pub fn radius(&self) -> usize {
        self.radius
    }
}

/// Output of [`ldd`]: the removed set `S` and the partition it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LddResult {
    pub boundary: VertexMask,
    pub partition: Partition,
}

/// Radius range `[lo, hi]` used for a diameter bound.
pub fn radius_range(delta: usize) -> (usize, usize) {
    let hi = delta / 2;
    if hi == 0 {
        (0, 0)
    } else {
        (delta.div_ceil(4).max(1), hi)
    }
}

/// Samples a `delta`-bounded partition of `live`; deterministic given `seed`.
pub fn padded_partition(g: &Graph, live: &VertexMask, delta: usize, seed: u64) -> Result<Partition> {
    if delta < 1 {
        return Err(InputError::InvalidDelta(delta).into());
    }
    let n = g.n();
    let mut rng = Rng::new(seed);
    let (lo, hi) = radius_range(delta);
    let radius = lo + rng.below(hi - lo + 1);

    let mut order = live.to_vec();
    rng.shuffle(&mut order);

    // owner[v] = position in `order` of the center that claimed v
    let mut owner = alloc::vec![UNSET; n];
    let mut remaining = live.len();
    let mut stamp = alloc::vec![0u32; n];
    let mut dist = alloc::vec![0u32; n];
    let mut queue = VecDeque::new();
    for (rank, &c) in order.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        let epoch = rank as u32 + 1;
        stamp[c] = epoch;
        dist[c] = 0;
        queue.push_back(c);
        while let Some(v) = queue.pop_front() {
            if owner[v] == UNSET {
                owner[v] = rank as u32;
                remaining -= 1;
            }
            if dist[v] as usize == radius {
                continue;
            }
            for u in g.neighbors(v) {
                if live.contains(u) && stamp[u] != epoch {
                    stamp[u] = epoch;
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
    }

    // Split carved pieces into connected parts, numbered by smallest vertex.
    let mut part_of = alloc::vec![UNSET; n];
    let mut parts = Vec::new();
    for s in live {
        if part_of[s] != UNSET {
            continue;
        }
        let id = parts.len() as u32;
        let mut members = alloc::vec![s];
        part_of[s] = id;
        let mut head = 0;
        while head < members.len() {
            let v = members[head];
            head += 1;
            for u in g.neighbors(v) {
                if live.contains(u) && part_of[u] == UNSET && owner[u] == owner[s] {
                    part_of[u] = id;
                    members.push(u);
                }
            }
        }
        members.sort_unstable();
        parts.push(members);
    }
    Ok(Partition {
        part_of,
        parts,
        delta,
        radius,
    })
}

/// Low-diameter decomposition: the live vertices with a live neighbor in a
/// different part of a sampled partition.
pub fn ldd(g: &Graph, live: &VertexMask, delta: usize, seed: u64) -> Result<LddResult> {
    let partition = padded_partition(g, live, delta, seed)?;
    let boundary = boundary_of(g, live, &partition);
    Ok(LddResult { boundary, partition })
}

fn boundary_of(g: &Graph, live: &VertexMask, partition: &Partition) -> VertexMask {
    let mut boundary = VertexMask::empty(g.n());
    for v in live {
        let p = partition.part_of[v];
        if g.neighbors(v).any(|u| live.contains(u) && partition.part_of[u] != p) {
            boundary.insert(v);
        }
    }
    boundary
}
