//! Balanced vertex separators for `K_h`-minor-free graphs.
//!
//! The driver in [`separator`] grows a clique minor model while shrinking a
//! live subgraph, using a low-diameter decomposition ([`decomp`]) and BFS
//! layering ([`graph`]) to decide each step. Every run ends in one of two
//! certified outcomes: a balanced separator (every component of `G - X` has at
//! most `2n/3` vertices) or a clique minor model with `h` branch sets, proving
//! the input was not `K_h`-minor-free. Both are re-checked by [`verify`], which
//! shares nothing with the driver beyond the traversal primitives.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, JSON reports and
//! the command-line tool live in the `minorsep` companion crate.
//!
//! ```
//! use minorsep_core::instances::{generate, Family, InstanceSpec};
//! use minorsep_core::separator::{balanced_separator, Config, SeparatorOutcome};
//!
//! let g = generate(&InstanceSpec::new(Family::Grid { rows: 12, cols: 12 }, 0)).unwrap();
//! let run = balanced_separator(&g, &Config::new(5)).unwrap();
//! match run.outcome {
//!     SeparatorOutcome::BalancedSeparator(sep) => {
//!         assert!(3 * sep.largest_component() <= 2 * g.n());
//!     }
//!     SeparatorOutcome::MinorWitness(_) => unreachable!("grids are planar"),
//! }
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod decomp;
pub mod error;
pub mod graph;
pub mod instances;
pub mod mask;
pub mod minor;
pub mod rng;
pub mod separator;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{BfsLayers, Graph};
pub use mask::VertexMask;
pub use minor::MinorModel;
pub use separator::{balanced_separator, Config, RunResult, SeparatorOutcome};
