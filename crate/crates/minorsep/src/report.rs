//! JSON documents: certificates, witnesses and the versioned run report.

use minorsep_core::separator::{Params, RunResult, SeparatorOutcome};
use minorsep_core::verify::VerificationReport;
use minorsep_core::{Graph, MinorModel, VertexMask};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::edgelist::write_edge_list;
use crate::error::{CliError, Result};

pub const SCHEMA: &str = "v1";

/// What `separate` hands to `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum Certificate {
    Separator { vertices: Vec<usize> },
    Witness { h: usize, branches: Vec<Vec<usize>> },
}

impl Certificate {
    pub fn from_outcome(outcome: &SeparatorOutcome, h: usize) -> Self {
        match outcome {
            SeparatorOutcome::BalancedSeparator(s) => Certificate::Separator {
                vertices: s.separator.to_vec(),
            },
            SeparatorOutcome::MinorWitness(m) => {
                let w = WitnessJson::from_model(m, h);
                Certificate::Witness {
                    h: w.h,
                    branches: w.branches,
                }
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Certificate(e.to_string()))
    }
}

/// A clique minor model as `{"h": .., "branches": [[..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    pub h: usize,
    pub branches: Vec<Vec<usize>>,
}

impl WitnessJson {
    pub fn from_model(m: &MinorModel, h: usize) -> Self {
        WitnessJson {
            h,
            branches: m.branches().iter().map(VertexMask::to_vec).collect(),
        }
    }

    /// Branch sets over `0..n`, unchecked beyond the id range; run the
    /// verifier on the result.
    pub fn to_model(&self, n: usize) -> Result<MinorModel> {
        Ok(MinorModel::from_branches_unchecked(n, to_masks(n, &self.branches)?))
    }
}

pub fn to_mask(n: usize, vertices: &[usize]) -> Result<VertexMask> {
    if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
        return Err(CliError::Certificate(format!("vertex {v} out of range for n = {n}")));
    }
    Ok(VertexMask::from_vertices(n, vertices.iter().copied()))
}

pub fn to_masks(n: usize, branches: &[Vec<usize>]) -> Result<Vec<VertexMask>> {
    branches.iter().map(|b| to_mask(n, b)).collect()
}

/// `sha256:` digest of the canonical edge list, so a file and a generator
/// `--gen` string describing the same graph agree.
pub fn input_digest(g: &Graph) -> String {
    let hash = Sha256::digest(write_edge_list(g).as_bytes());
    format!("sha256:{}", hex::encode(hash))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    pub digest: String,
    pub n: usize,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsInfo {
    pub h: usize,
    pub ell: usize,
    pub delta: usize,
    pub seed: u64,
    pub fast_center: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Breakdown {
    pub x: usize,
    pub step1_s: usize,
    pub f_selector: usize,
    pub repair: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatorInfo {
    pub size: usize,
    pub breakdown: Breakdown,
    pub largest_component: usize,
    /// `size / (n/ell + ell * h^2 * ceil(log2 h))`.
    pub size_constant: f64,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepCounts {
    pub ldd_calls: usize,
    pub step2: usize,
    pub step3: usize,
    pub step4: usize,
    pub fast_accepts: usize,
    pub fast_rejects: usize,
    pub fast_fallbacks: usize,
    pub repair_flips: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChargeInfo {
    pub cuts: usize,
    pub x_size: usize,
    pub charged_vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckInfo {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationInfo {
    pub ok: bool,
    pub checks: Vec<CheckInfo>,
    pub worst_component: usize,
    pub separator_size: usize,
}

impl From<&VerificationReport> for VerificationInfo {
    fn from(r: &VerificationReport) -> Self {
        VerificationInfo {
            ok: r.ok,
            checks: r
                .checks
                .iter()
                .map(|c| CheckInfo {
                    name: c.name.to_string(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
            worst_component: r.worst_component,
            separator_size: r.separator_size,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub input: InputInfo,
    pub params: ParamsInfo,
    /// `"separator"` or `"witness"`.
    pub outcome: String,
    pub separator: Option<SeparatorInfo>,
    pub witness: Option<WitnessJson>,
    pub iterations: usize,
    pub steps: StepCounts,
    pub charge: ChargeInfo,
    /// Only filled in when timing was requested, so reports stay reproducible.
    pub wall_time_ms: Option<f64>,
    pub verification: VerificationInfo,
}

impl RunReport {
    /// `verification` is the CLI's own re-check of the outcome.
    pub fn new(g: &Graph, run: &RunResult, seed: u64, fast_center: bool, verification: &VerificationReport) -> Self {
        let p: &Params = &run.params;
        let s = &run.stats;
        let (outcome, separator, witness) = match &run.outcome {
            SeparatorOutcome::BalancedSeparator(sep) => (
                "separator",
                Some(SeparatorInfo {
                    size: sep.separator.len(),
                    breakdown: Breakdown {
                        x: sep.breakdown.x,
                        step1_s: sep.breakdown.step1_s,
                        f_selector: sep.breakdown.f_selector,
                        repair: sep.breakdown.repair,
                    },
                    largest_component: sep.largest_component(),
                    size_constant: round6(sep.separator.len() as f64 / p.size_bound_shape()),
                    vertices: sep.separator.to_vec(),
                }),
                None,
            ),
            SeparatorOutcome::MinorWitness(m) => ("witness", None, Some(WitnessJson::from_model(m, p.h))),
        };
        RunReport {
            schema: SCHEMA.to_string(),
            input: InputInfo {
                digest: input_digest(g),
                n: g.n(),
                m: g.m(),
            },
            params: ParamsInfo {
                h: p.h,
                ell: p.ell,
                delta: p.delta,
                seed,
                fast_center,
            },
            outcome: outcome.to_string(),
            separator,
            witness,
            iterations: s.iterations,
            steps: StepCounts {
                ldd_calls: s.ldd_calls,
                step2: s.step2,
                step3: s.step3,
                step4: s.step4,
                fast_accepts: s.fast_accepts,
                fast_rejects: s.fast_rejects,
                fast_fallbacks: s.fast_fallbacks,
                repair_flips: s.repair_flips,
            },
            charge: ChargeInfo {
                cuts: s.charge_events.len(),
                x_size: s.charge_events.iter().map(|e| e.cut).sum(),
                charged_vertices: s.charged_vertices,
            },
            wall_time_ms: None,
            verification: verification.into(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}
