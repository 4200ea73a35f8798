//! Family names and parameter lists as typed on the command line.

use minorsep_core::instances::Family;

use crate::error::{CliError, Result};

pub const FAMILIES: &[&str] = &[
    "grid",
    "torus",
    "gnp",
    "tree",
    "complete",
    "subdivided_clique",
    "path",
    "cycle",
    "star",
];

/// `name` plus comma- or whitespace-separated parameters, e.g. `grid` with
/// `"10,10"`, `gnp` with `"500,0.006"`, `subdivided_clique` with `"5,2"`.
pub fn parse_family(name: &str, params: &str) -> Result<Family> {
    let parts: Vec<&str> = params
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    let want = |k: usize| -> Result<()> {
        if parts.len() == k {
            Ok(())
        } else {
            Err(CliError::Usage(format!(
                "family {name} takes {k} parameter(s), got {}",
                parts.len()
            )))
        }
    };
    let int = |i: usize| -> Result<usize> {
        parts[i]
            .parse()
            .map_err(|_| CliError::Usage(format!("{name}: bad integer {:?}", parts[i])))
    };
    let family = match name {
        "grid" | "torus" => {
            want(2)?;
            let (rows, cols) = (int(0)?, int(1)?);
            if name == "grid" {
                Family::Grid { rows, cols }
            } else {
                Family::Torus { rows, cols }
            }
        }
        "gnp" => {
            want(2)?;
            let p: f64 = parts[1]
                .parse()
                .map_err(|_| CliError::Usage(format!("gnp: bad probability {:?}", parts[1])))?;
            Family::Gnp { n: int(0)?, p }
        }
        "subdivided_clique" => {
            want(2)?;
            Family::SubdividedClique { h: int(0)?, t: int(1)? }
        }
        "tree" | "complete" | "path" | "cycle" | "star" => {
            want(1)?;
            let n = int(0)?;
            match name {
                "tree" => Family::Tree { n },
                "complete" => Family::Complete { n },
                "path" => Family::Path { n },
                "cycle" => Family::Cycle { n },
                _ => Family::Star { leaves: n },
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown family {other:?}; expected one of {}",
                FAMILIES.join(", ")
            )))
        }
    };
    Ok(family)
}

/// `name:params`, as accepted by `separate --gen`.
pub fn parse_gen(desc: &str) -> Result<Family> {
    let (name, params) = desc.split_once(':').unwrap_or((desc, ""));
    parse_family(name.trim(), params)
}

/// A member of `name` with about `n` vertices, for the benchmark: square
/// grids and tori, `G(n, 3/n)`, and the one-parameter families.
pub fn family_of_size(name: &str, n: usize) -> Result<Family> {
    let side = || -> Result<usize> {
        let s = (n as f64).sqrt().round() as usize;
        if s * s == n {
            Ok(s)
        } else {
            Err(CliError::Usage(format!(
                "{name} sizes must be perfect squares, got {n}"
            )))
        }
    };
    Ok(match name {
        "grid" => Family::Grid {
            rows: side()?,
            cols: side()?,
        },
        "torus" => Family::Torus {
            rows: side()?,
            cols: side()?,
        },
        "gnp" => Family::Gnp {
            n,
            p: (3.0 / n as f64).min(1.0),
        },
        "tree" => Family::Tree { n },
        "path" => Family::Path { n },
        "cycle" => Family::Cycle { n },
        "star" => Family::Star {
            leaves: n.saturating_sub(1),
        },
        "complete" => Family::Complete { n },
        other => return Err(CliError::Usage(format!("family {other:?} has no size-indexed form"))),
    })
}
