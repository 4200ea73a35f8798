//! Scaling benchmark: separator size against `sqrt(n)` over seeded trials.

use std::fmt::Write as _;
use std::time::Instant;

use minorsep_core::instances::{generate, InstanceSpec};
use minorsep_core::rng::{substream_seed, Stream};
use minorsep_core::{balanced_separator, Config};
use rayon::prelude::*;

use crate::error::Result;
use crate::family::family_of_size;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub family: String,
    pub sizes: Vec<usize>,
    pub h: usize,
    pub ell: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub fast_center: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub trial: usize,
    /// Seed of this trial, derived from `(seed, trial)`.
    pub seed: u64,
    /// `None` when the trial found a witness instead.
    pub separator_size: Option<usize>,
    pub iterations: usize,
    pub ms: f64,
}

impl BenchRow {
    pub fn ratio(&self) -> Option<f64> {
        self.separator_size.map(|s| s as f64 / (self.n as f64).sqrt())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub min: f64,
    pub median: f64,
    pub max: f64,
    pub witnesses: usize,
}

pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    substream_seed(seed, Stream::Trial, trial as u64)
}

/// Runs every `(size, trial)` pair, in parallel; rows come back in
/// `(size, trial)` order and each trial depends only on its own seed.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let jobs: Vec<(usize, usize)> = cfg
        .sizes
        .iter()
        .flat_map(|&n| (0..cfg.trials).map(move |t| (n, t)))
        .collect();
    jobs.par_iter()
        .map(|&(n, trial)| {
            let seed = trial_seed(cfg.seed, trial);
            let g = generate(&InstanceSpec::new(family_of_size(&cfg.family, n)?, seed))?;
            let mut config = Config::new(cfg.h).with_seed(seed).with_fast_center(cfg.fast_center);
            config.ell = cfg.ell;
            let start = Instant::now();
            let run = balanced_separator(&g, &config)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            Ok(BenchRow {
                n: g.n(),
                trial,
                seed,
                separator_size: run.separator_size(),
                iterations: run.stats.iterations,
                ms,
            })
        })
        .collect()
}

pub const CSV_HEADER: &str = "n,trial,seed,separator_size,ratio,iterations,ms";

pub fn write_csv(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let size = r.separator_size.map(|s| s.to_string()).unwrap_or_default();
        let ratio = r.ratio().map(|x| format!("{x:.3}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.3}",
            r.n, r.trial, r.seed, size, ratio, r.iterations, r.ms
        );
    }
    out
}

fn median(sorted: &[f64]) -> f64 {
    let k = sorted.len();
    if k % 2 == 1 {
        sorted[k / 2]
    } else {
        (sorted[k / 2 - 1] + sorted[k / 2]) / 2.0
    }
}

/// Min, median and max of `size / sqrt(n)` per `n`, in first-seen order.
pub fn summarize(rows: &[BenchRow]) -> Vec<Summary> {
    let mut order: Vec<usize> = Vec::new();
    for r in rows {
        if !order.contains(&r.n) {
            order.push(r.n);
        }
    }
    order
        .into_iter()
        .filter_map(|n| {
            let mine: Vec<&BenchRow> = rows.iter().filter(|r| r.n == n).collect();
            let mut ratios: Vec<f64> = mine.iter().filter_map(|r| r.ratio()).collect();
            let witnesses = mine.len() - ratios.len();
            if ratios.is_empty() {
                return None;
            }
            ratios.sort_by(f64::total_cmp);
            Some(Summary {
                n,
                min: ratios[0],
                median: median(&ratios),
                max: *ratios.last().unwrap(),
                witnesses,
            })
        })
        .collect()
}

pub fn write_summary(summary: &[Summary]) -> String {
    let mut out = String::from("n,min_ratio,median_ratio,max_ratio,witnesses\n");
    for s in summary {
        let _ = writeln!(out, "{},{:.3},{:.3},{:.3},{}", s.n, s.min, s.median, s.max, s.witnesses);
    }
    out
}

/// Largest over smallest median ratio; 1 for fewer than two sizes.
pub fn median_spread(summary: &[Summary]) -> f64 {
    let meds = summary.iter().map(|s| s.median);
    let hi = meds.clone().fold(f64::MIN, f64::max);
    let lo = meds.fold(f64::MAX, f64::min);
    if summary.len() < 2 {
        1.0
    } else {
        hi / lo
    }
}
