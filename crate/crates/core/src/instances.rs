//! Deterministic instance generators.
//!
//! Vertex numbering is fixed per family so instances are reproducible across
//! implementations: grids and tori are row-major, paths, cycles and stars use
//! `0..n` in order (star center 0), and random families draw from their own
//! sub-stream of the seed.

use alloc::vec::Vec;

use crate::error::{InputError, Result};
use crate::graph::Graph;
use crate::rng::{Rng, Stream};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    Grid {
        rows: usize,
        cols: usize,
    },
    /// Needs at least 3 rows and 3 columns so the wrap-around edges are simple.
    Torus {
        rows: usize,
        cols: usize,
    },
    /// Each pair `u < v`, in lexicographic order, is an edge when a unit draw is below `p`.
    Gnp {
        n: usize,
        p: f64,
    },
    /// Vertex `v >= 1` attaches to a parent drawn uniformly from `0..v`.
    Tree {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// `K_h` with each edge replaced by a path through `t` new vertices.
    /// Original vertices are `0..h`; the chains follow pairs in lexicographic order.
    SubdividedClique {
        h: usize,
        t: usize,
    },
    Path {
        n: usize,
    },
    /// Needs `n >= 3`.
    Cycle {
        n: usize,
    },
    Star {
        leaves: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InstanceSpec {
    pub family: Family,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        InstanceSpec { family, seed }
    }
}

pub fn generate(spec: &InstanceSpec) -> Result<Graph> {
    let mut edges = Vec::new();
    let n = match spec.family {
        Family::Grid { rows, cols } => {
            for i in 0..rows {
                for j in 0..cols {
                    let v = i * cols + j;
                    if j + 1 < cols {
                        edges.push((v, v + 1));
                    }
                    if i + 1 < rows {
                        edges.push((v, v + cols));
                    }
                }
            }
            rows * cols
        }
        Family::Torus { rows, cols } => {
            if rows < 3 || cols < 3 {
                return Err(InputError::InvalidParams("torus needs at least 3 rows and 3 columns").into());
            }
            for i in 0..rows {
                for j in 0..cols {
                    let v = i * cols + j;
                    edges.push((v, i * cols + (j + 1) % cols));
                    edges.push((v, ((i + 1) % rows) * cols + j));
                }
            }
            rows * cols
        }
        Family::Gnp { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(InputError::InvalidParams("edge probability must lie in [0, 1]").into());
            }
            let mut rng = Rng::substream(spec.seed, Stream::Gnp, 0);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.unit_f64() < p {
                        edges.push((u, v));
                    }
                }
            }
            n
        }
        Family::Tree { n } => {
            let mut rng = Rng::substream(spec.seed, Stream::Tree, 0);
            for v in 1..n {
                edges.push((rng.below(v), v));
            }
            n
        }
        Family::Complete { n } => {
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            n
        }
        Family::SubdividedClique { h, t } => {
            let mut next = h;
            for u in 0..h {
                for v in u + 1..h {
                    let mut prev = u;
                    for _ in 0..t {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                    edges.push((prev, v));
                }
            }
            next
        }
        Family::Path { n } => {
            edges.extend((1..n).map(|v| (v - 1, v)));
            n
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(InputError::InvalidParams("cycle needs at least 3 vertices").into());
            }
            edges.extend((0..n).map(|v| (v, (v + 1) % n)));
            n
        }
        Family::Star { leaves } => {
            edges.extend((1..=leaves).map(|v| (0, v)));
            leaves + 1
        }
    };
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::connected_components;

    fn make(family: Family) -> Graph {
        generate(&InstanceSpec::new(family, 7)).unwrap()
    }

    #[test]
    fn vertex_and_edge_counts() {
        let cases = [
            (Family::Grid { rows: 3, cols: 4 }, 12, 17),
            (Family::Torus { rows: 3, cols: 4 }, 12, 24),
            (Family::Tree { n: 30 }, 30, 29),
            (Family::Complete { n: 6 }, 6, 15),
            (Family::SubdividedClique { h: 4, t: 2 }, 16, 18),
            (Family::SubdividedClique { h: 5, t: 0 }, 5, 10),
            (Family::Path { n: 5 }, 5, 4),
            (Family::Cycle { n: 5 }, 5, 5),
            (Family::Star { leaves: 4 }, 5, 4),
            (Family::Gnp { n: 10, p: 1.0 }, 10, 45),
            (Family::Gnp { n: 10, p: 0.0 }, 10, 0),
        ];
        for (f, n, m) in cases {
            let g = make(f);
            assert_eq!((g.n(), g.m()), (n, m), "{f:?}");
        }
    }

    #[test]
    fn numbering_conventions() {
        let g = make(Family::Grid { rows: 2, cols: 3 });
        assert!(g.has_edge(0, 1) && g.has_edge(0, 3) && !g.has_edge(2, 3));
        let g = make(Family::Torus { rows: 3, cols: 3 });
        assert!(g.has_edge(0, 2) && g.has_edge(0, 6));
        let g = make(Family::Star { leaves: 3 });
        assert_eq!(g.degree(0), 3);
        // first chain of K4 subdivided twice: 0 - 4 - 5 - 1
        let g = make(Family::SubdividedClique { h: 4, t: 2 });
        assert!(g.has_edge(0, 4) && g.has_edge(4, 5) && g.has_edge(5, 1));
        assert!((0..4).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn random_families_are_seeded() {
        let a = generate(&InstanceSpec::new(Family::Gnp { n: 40, p: 0.1 }, 1)).unwrap();
        let b = generate(&InstanceSpec::new(Family::Gnp { n: 40, p: 0.1 }, 1)).unwrap();
        let c = generate(&InstanceSpec::new(Family::Gnp { n: 40, p: 0.1 }, 2)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        for seed in 0..10 {
            let t = generate(&InstanceSpec::new(Family::Tree { n: 50 }, seed)).unwrap();
            assert_eq!(connected_components(&t, &t.all_vertices()).len(), 1);
        }
    }

    #[test]
    fn degenerate_parameters() {
        assert!(generate(&InstanceSpec::new(Family::Cycle { n: 2 }, 0)).is_err());
        assert!(generate(&InstanceSpec::new(Family::Torus { rows: 2, cols: 5 }, 0)).is_err());
        assert!(generate(&InstanceSpec::new(Family::Gnp { n: 3, p: 1.5 }, 0)).is_err());
        assert_eq!(make(Family::Path { n: 0 }).n(), 0);
        assert_eq!(make(Family::Star { leaves: 0 }).n(), 1);
    }
}
