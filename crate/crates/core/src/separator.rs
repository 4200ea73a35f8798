//! The iterative separator driver.
//!
//! The driver keeps a clique minor model `K`, an accumulated separator part
//! `X` and a connected live subgraph `H` (initially the largest component of
//! `G - x`). While `|H| >= 2n/3` each iteration runs:
//!
//! 1. a low-diameter decomposition of `H` with `delta = ell * ceil(log2 h)`.
//!    If it already splits `H` into pieces of at most `2n/3` vertices the run
//!    ends with `X ∪ S ∪ F(K, H)`. Otherwise some vertex `v` has `2n/3`
//!    vertices within distance `delta`, and the BFS layers from `v` are cut
//!    into the bands `U`, `M`, `B` and the window `M+`;
//! 2. if every branch set touches `U ∪ M+`, a new branch made of BFS tree
//!    paths from `v` is added to `K` (a witness once `|K| = h`);
//! 3. otherwise, if `B` is small, the branch hiding in `B` is grown down to a
//!    thin layer so that its neighborhood becomes small;
//! 4. otherwise a thin layer of `M` joins `X` and everything below it leaves
//!    `H`, charged to the vertices it cuts off.
//!
//! `F(K, H)` takes, for every branch, the smaller of the branch and its
//! neighborhood in `H`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::decomp::ldd;
use crate::error::{Error, InputError, LogicError, Result};
use crate::graph::{ball, bfs_layers, largest_component, tree_path, BfsLayers, ComponentLabels, Graph};
use crate::mask::VertexMask;
use crate::minor::MinorModel;
use crate::rng::{substream_seed, Rng, Stream};
use crate::verify::{self, InvariantSnapshot, VerificationReport};

/// Center samples tried per iteration in fast mode before falling back to a
/// full decomposition.
pub const FAST_CENTER_BUDGET: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub h: usize,
    /// Layer-width parameter; `None` uses [`default_ell`].
    pub ell: Option<usize>,
    pub seed: u64,
    /// Replace all but the first decomposition by random center sampling.
    pub fast_center: bool,
    /// Evaluate the per-iteration invariant suite and fail on any violation.
    pub check_invariants: bool,
}

impl Config {
    pub fn new(h: usize) -> Self {
        Config {
            h,
            ell: None,
            seed: 0,
            fast_center: false,
            check_invariants: cfg!(debug_assertions),
        }
    }

    pub fn with_ell(mut self, ell: usize) -> Self {
        self.ell = Some(ell);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_fast_center(mut self, on: bool) -> Self {
        self.fast_center = on;
        self
    }

    pub fn with_invariant_checks(mut self, on: bool) -> Self {
        self.check_invariants = on;
        self
    }
}

/// `ceil(log2 h)` for `h >= 1`.
pub fn ceil_log2(h: usize) -> usize {
    assert!(h >= 1);
    (usize::BITS - (h - 1).leading_zeros()) as usize
}

/// `max(1, round(sqrt(n) / (h * sqrt(ceil(log2 h)))))`, computed exactly in
/// integers: the result `k >= 1` is the largest with `(2k-1)^2 * h^2 * lg <= 4n`.
pub fn default_ell(n: usize, h: usize) -> Result<usize> {
    if h < 3 {
        return Err(InputError::InvalidH(h).into());
    }
    let scale = (h as u128) * (h as u128) * ceil_log2(h) as u128;
    let four_n = 4 * n as u128;
    let mut k: u128 = 1;
    while (2 * (k + 1) - 1) * (2 * (k + 1) - 1) * scale <= four_n {
        k += 1;
    }
    Ok(k as usize)
}

/// Derived numeric parameters of a run. `n` is the original vertex count and
/// stays fixed for every threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub n: usize,
    pub h: usize,
    pub ell: usize,
    pub log_h: usize,
    pub delta: usize,
    pub ell_star: usize,
}

impl Params {
    pub fn new(n: usize, h: usize, ell: usize) -> Result<Self> {
        if h < 3 {
            return Err(InputError::InvalidH(h).into());
        }
        if ell < 1 {
            return Err(InputError::InvalidEll(ell).into());
        }
        let log_h = ceil_log2(h);
        Ok(Params {
            n,
            h,
            ell,
            log_h,
            delta: ell * log_h,
            ell_star: (log_h + 1) * ell,
        })
    }

    /// Size bound for branch sets built from BFS paths of a view with the
    /// given upper radius: `(h-1) * (radius + ell* + ell) + 1`.
    pub fn branch_size_bound(&self, radius: usize) -> usize {
        (self.h - 1) * (radius + self.ell_star + self.ell) + 1
    }

    /// `|N| <= n / (h * ell)` in integers.
    pub fn neighborhood_small(&self, size: usize) -> bool {
        self.h * self.ell * size <= self.n
    }

    /// `3 * size <= 2n`.
    pub fn is_balanced_size(&self, size: usize) -> bool {
        3 * size <= 2 * self.n
    }

    /// `n / ell + ell * h^2 * ceil(log2 h)`, the shape of the separator size bound.
    pub fn size_bound_shape(&self) -> f64 {
        self.n as f64 / self.ell as f64 + (self.ell * self.h * self.h * self.log_h) as f64
    }
}

/// BFS layering of the live subgraph from a center, cut into bands.
#[derive(Clone, Debug)]
pub struct LayeredView {
    pub center: usize,
    /// Radius of the upper band: `delta`, or `2 * delta` for a sampled center.
    pub radius: usize,
    pub layers: BfsLayers,
    pub delta: usize,
    pub ell: usize,
    pub ell_star: usize,
    pub upper: VertexMask,
    pub middle: VertexMask,
    pub bottom: VertexMask,
    pub middle_plus: VertexMask,
}

impl LayeredView {
    pub fn new(g: &Graph, live: &VertexMask, center: usize, radius: usize, p: &Params) -> Result<Self> {
        let layers = bfs_layers(g, live, center)?;
        let mid_max = radius + p.ell_star;
        let plus_max = mid_max + p.ell;
        Ok(LayeredView {
            center,
            radius,
            upper: layers.band(0, radius),
            middle: layers.band(radius + 1, mid_max),
            bottom: layers.band(mid_max + 1, usize::MAX),
            middle_plus: layers.band(radius + 1, plus_max),
            layers,
            delta: p.delta,
            ell: p.ell,
            ell_star: p.ell_star,
        })
    }

    /// Last layer of `M`.
    pub fn middle_max(&self) -> usize {
        self.radius + self.ell_star
    }

    /// Last layer of `M+`.
    pub fn plus_max(&self) -> usize {
        self.radius + self.ell_star + self.ell
    }
}

pub enum Step1 {
    /// The decomposition already balanced the live subgraph; carries `S`.
    Finished {
        boundary: VertexMask,
    },
    Layered(Box<LayeredView>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step3Plan {
    pub branch: usize,
    pub z: VertexMask,
    pub y: usize,
}

/// Sizes of the pieces whose union forms the separator. The pieces may
/// overlap, so their sum can exceed the separator size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SizeBreakdown {
    pub x: usize,
    pub step1_s: usize,
    pub f_selector: usize,
    /// Vertices added by the balance repair pass.
    pub repair: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedSeparator {
    pub separator: VertexMask,
    /// Component sizes of `G - separator`, largest first.
    pub component_sizes: Vec<usize>,
    pub breakdown: SizeBreakdown,
}

impl BalancedSeparator {
    pub fn largest_component(&self) -> usize {
        self.component_sizes.first().copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparatorOutcome {
    BalancedSeparator(BalancedSeparator),
    MinorWitness(MinorModel),
}

impl SeparatorOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, SeparatorOutcome::MinorWitness(_))
    }
}

/// How the run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ending {
    /// Handled before the main loop (tiny or already balanced input).
    Trivial,
    /// The decomposition balanced the live subgraph.
    Step1,
    /// The live subgraph dropped below `2n/3`.
    LoopExit,
    Witness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChargeEvent {
    pub iteration: usize,
    pub layer: usize,
    /// `|L_{i*}|`, the vertices added to `X`.
    pub cut: usize,
    /// `|L_{>= i*+1}|`, the vertices the cut is charged to.
    pub charged: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub iterations: usize,
    pub ldd_calls: usize,
    pub step2: usize,
    pub step3: usize,
    pub step4: usize,
    pub fast_accepts: usize,
    pub fast_rejects: usize,
    pub fast_fallbacks: usize,
    /// Accept/reject decision of every center sample, in order.
    pub fast_transcript: Vec<bool>,
    pub invariant_checks: usize,
    /// `|H|` at the start of every iteration.
    pub live_sizes: Vec<usize>,
    pub charge_events: Vec<ChargeEvent>,
    /// Vertices charged over the run; each may be charged once.
    pub charged_vertices: usize,
    /// Largest `|S|` returned by a decomposition, with the live size it came from.
    pub max_ldd_boundary: (usize, usize),
    pub largest_new_branch: usize,
    pub repair_flips: usize,
    pub ending: Option<Ending>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub outcome: SeparatorOutcome,
    pub stats: RunStats,
    pub params: Params,
    /// Verification of the outcome performed before returning.
    pub verification: VerificationReport,
}

impl RunResult {
    pub fn separator_size(&self) -> Option<usize> {
        match &self.outcome {
            SeparatorOutcome::BalancedSeparator(s) => Some(s.separator.len()),
            SeparatorOutcome::MinorWitness(_) => None,
        }
    }
}

/// Computes a balanced separator of `g`, or a `K_h` minor model if the run
/// finds one first. The outcome is verified before it is returned.
pub fn balanced_separator(g: &Graph, config: &Config) -> Result<RunResult> {
    if config.h < 3 {
        return Err(InputError::InvalidH(config.h).into());
    }
    let n = g.n();
    let ell = match config.ell {
        Some(l) => l,
        None => default_ell(n.max(1), config.h)?,
    };
    let params = Params::new(n, config.h, ell)?;

    // Inputs that are balanced before the main loop starts.
    let trivial = if n == 0 {
        Some(VertexMask::empty(0))
    } else if n == 1 {
        Some(VertexMask::full(1))
    } else if params.is_balanced_size(ComponentLabels::new(g, &g.all_vertices()).largest_size()) {
        Some(VertexMask::empty(n))
    } else {
        None
    };
    if let Some(sep) = trivial {
        let mut stats = RunStats {
            ending: Some(Ending::Trivial),
            ..RunStats::default()
        };
        return finish_balanced(g, &params, sep, SizeBreakdown::default(), &mut stats, 0).map(
            |(outcome, verification)| RunResult {
                outcome,
                stats,
                params,
                verification,
            },
        );
    }

    DriverState::new(g, params, config)?.run()
}

/// Mutable state of one run: the model `K`, the set `X` and the live subgraph `H`.
pub struct DriverState<'g> {
    g: &'g Graph,
    params: Params,
    seed: u64,
    fast_center: bool,
    check_invariants: bool,
    model: MinorModel,
    x_set: VertexMask,
    live: VertexMask,
    step1_sep: Option<VertexMask>,
    iteration: usize,
    /// Branches dropped by trimming, kept for the balance repair pass.
    retired: Vec<VertexMask>,
    charged: VertexMask,
    stats: RunStats,
}

impl<'g> DriverState<'g> {
    /// `K = {0}`, `X = {}`, `H` = largest component of `G - 0`, then trimmed.
    pub fn new(g: &'g Graph, params: Params, config: &Config) -> Result<Self> {
        let n = g.n();
        if n == 0 {
            return Err(InputError::InvalidParams("driver needs at least one vertex").into());
        }
        let x = 0;
        let mut rest = g.all_vertices();
        rest.remove(x);
        let live = largest_component(g, &rest);
        let mut model = MinorModel::new(n, x);
        let retired = model.trim(g, &live);
        Ok(DriverState {
            g,
            params,
            seed: config.seed,
            fast_center: config.fast_center,
            check_invariants: config.check_invariants,
            model,
            x_set: VertexMask::empty(n),
            live,
            step1_sep: None,
            iteration: 0,
            retired,
            charged: VertexMask::empty(n),
            stats: RunStats::default(),
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn model(&self) -> &MinorModel {
        &self.model
    }

    pub fn live(&self) -> &VertexMask {
        &self.live
    }

    pub fn x_set(&self) -> &VertexMask {
        &self.x_set
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn step1_separator(&self) -> Option<&VertexMask> {
        self.step1_sep.as_ref()
    }

    fn largest_radius(&self) -> usize {
        if self.fast_center {
            2 * self.params.delta
        } else {
            self.params.delta
        }
    }

    pub fn snapshot(&self) -> InvariantSnapshot<'_> {
        InvariantSnapshot {
            g: self.g,
            n: self.params.n,
            h: self.params.h,
            ell: self.params.ell,
            branch_size_bound: self.params.branch_size_bound(self.largest_radius()),
            branches: self.model.branches(),
            x_set: &self.x_set,
            live: &self.live,
        }
    }

    fn logic(&self, message: String) -> Error {
        Error::Logic(LogicError {
            iteration: self.iteration,
            message,
            dump: format!(
                "n={} h={} ell={} delta={} |H|={} |K|={} |X|={} branch sizes={:?}",
                self.params.n,
                self.params.h,
                self.params.ell,
                self.params.delta,
                self.live.len(),
                self.model.len(),
                self.x_set.len(),
                self.model.branches().iter().map(VertexMask::len).collect::<Vec<_>>()
            ),
        })
    }

    fn still_large(&self) -> bool {
        3 * self.live.len() >= 2 * self.params.n
    }

    pub fn run(mut self) -> Result<RunResult> {
        while self.still_large() {
            if self.check_invariants {
                let report = verify::check_invariants(&self.snapshot());
                self.stats.invariant_checks += 1;
                if !report.ok {
                    let failed: Vec<_> = report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
                    return Err(self.logic(format!("invariant violated: {}", failed.join("; "))));
                }
            }
            let live_before = self.live.len();
            self.stats.live_sizes.push(live_before);

            let view = match self.step1_decompose()? {
                Step1::Finished { boundary } => return self.finish_step1(boundary),
                Step1::Layered(view) => view,
            };
            if let Some(cand) = self.step2_grow_model(&view)? {
                if let Some(done) = self.apply_step2(cand)? {
                    return Ok(done);
                }
            } else if self.bottom_is_small(&view) {
                let plan = self.step3_grow_branch(&view)?;
                self.apply_step3(plan)?;
            } else {
                let layer = self.step4_cut_layer(&view)?;
                self.apply_step4(&view, layer)?;
            }

            if self.live.len() >= live_before {
                return Err(self.logic(format!("live subgraph did not shrink ({live_before})")));
            }
            self.iteration += 1;
            self.stats.iterations = self.iteration;
        }
        self.finish_loop()
    }

    /// Finds a center whose `delta`-ball holds `2n/3` live vertices, or
    /// reports that the decomposition alone balances `H`.
    pub fn step1_decompose(&mut self) -> Result<Step1> {
        let p = self.params;
        if self.fast_center && self.stats.ldd_calls > 0 {
            if let Some(s) = self.fast_center()? {
                return Ok(Step1::Layered(Box::new(LayeredView::new(
                    self.g,
                    &self.live,
                    s,
                    2 * p.delta,
                    &p,
                )?)));
            }
            self.stats.fast_fallbacks += 1;
        }

        let seed = substream_seed(self.seed, Stream::Ldd, self.iteration as u64);
        let res = ldd(self.g, &self.live, p.delta, seed)?;
        self.stats.ldd_calls += 1;
        if res.boundary.len() > self.stats.max_ldd_boundary.0 {
            self.stats.max_ldd_boundary = (res.boundary.len(), self.live.len());
        }
        let rest = self.live.difference(&res.boundary);
        let labels = ComponentLabels::new(self.g, &rest);
        if p.is_balanced_size(labels.largest_size()) {
            return Ok(Step1::Finished { boundary: res.boundary });
        }
        let big = labels.mask(0);
        let center = big.first().expect("nonempty component");
        let view = LayeredView::new(self.g, &self.live, center, p.delta, &p)?;
        if !big.is_subset(&view.upper) {
            return Err(self.logic(format!("component of weak diameter > {} around {center}", p.delta)));
        }
        Ok(Step1::Layered(Box::new(view)))
    }

    /// Samples live vertices until one has `2n/3` live vertices within `2 * delta`.
    pub fn fast_center(&mut self) -> Result<Option<usize>> {
        let mut rng = Rng::substream(self.seed, Stream::FastCenter, self.iteration as u64);
        let pool = self.live.to_vec();
        if pool.is_empty() {
            return Ok(None);
        }
        for _ in 0..FAST_CENTER_BUDGET {
            let s = pool[rng.below(pool.len())];
            let size = ball(self.g, &self.live, s, 2 * self.params.delta)?.len();
            let accept = 3 * size >= 2 * self.params.n;
            self.stats.fast_transcript.push(accept);
            if accept {
                self.stats.fast_accepts += 1;
                return Ok(Some(s));
            }
            self.stats.fast_rejects += 1;
        }
        Ok(None)
    }

    /// If every branch has a live neighbor within the first `radius + ell* + ell`
    /// layers, returns the union of tree paths from the center to the
    /// smallest such neighbor of each branch (`{center}` for an empty model).
    pub fn step2_grow_model(&self, view: &LayeredView) -> Result<Option<VertexMask>> {
        let n = self.params.n;
        let mut cand = VertexMask::from_vertices(n, [view.center]);
        let limit = view.plus_max();
        for i in 0..self.model.len() {
            let nb = self.model.neighbors_in(self.g, i, &self.live);
            let hit = nb.iter().find(|&u| view.layers.layer(u).is_some_and(|d| d <= limit));
            match hit {
                None => return Ok(None),
                Some(x) => {
                    for v in tree_path(&view.layers, x)? {
                        cand.insert(v);
                    }
                }
            }
        }
        Ok(Some(cand))
    }

    fn apply_step2(&mut self, cand: VertexMask) -> Result<Option<RunResult>> {
        self.stats.step2 += 1;
        self.stats.largest_new_branch = self.stats.largest_new_branch.max(cand.len());
        if let Err(e) = self.model.add_branch(self.g, cand.clone()) {
            return Err(self.logic(format!("new branch rejected: {e}")));
        }
        if self.model.len() == self.params.h {
            let report = verify::verify_witness(self.g, &self.model, self.params.h);
            if !report.ok {
                return Err(self.logic(format!("witness failed verification: {report:?}")));
            }
            self.stats.ending = Some(Ending::Witness);
            self.stats.iterations = self.iteration + 1;
            return Ok(Some(RunResult {
                outcome: SeparatorOutcome::MinorWitness(self.model.clone()),
                stats: core::mem::take(&mut self.stats),
                params: self.params,
                verification: report,
            }));
        }
        self.live = largest_component(self.g, &self.live.difference(&cand));
        let dropped = self.model.trim(self.g, &self.live);
        self.retired.extend(dropped);
        Ok(None)
    }

    /// `h * |B| <= n`.
    pub fn bottom_is_small(&self, view: &LayeredView) -> bool {
        self.params.h * view.bottom.len() <= self.params.n
    }

    /// Picks the first branch whose live neighbors all lie below `M+`, the
    /// thinnest layer `y` of the window `M+ - M`, and the set `Z` of vertices
    /// below `y` reachable from that branch's neighborhood.
    pub fn step3_grow_branch(&self, view: &LayeredView) -> Result<Step3Plan> {
        if !self.bottom_is_small(view) {
            return Err(self.logic(format!("step 3 with |B| = {} > n/h", view.bottom.len())));
        }
        let limit = view.plus_max();
        let (branch, nb) = (0..self.model.len())
            .map(|i| (i, self.model.neighbors_in(self.g, i, &self.live)))
            .find(|(_, nb)| !nb.is_empty() && nb.iter().all(|u| view.layers.layer(u).is_some_and(|d| d > limit)))
            .ok_or_else(|| self.logic(String::from("no branch hidden below M+")))?;

        let lo = view.middle_max() + 1;
        if view.layers.depth() <= limit {
            return Err(self.logic(format!(
                "BFS depth {} does not reach layer {limit}",
                view.layers.depth()
            )));
        }
        let y = (lo..=limit)
            .min_by_key(|&i| (view.layers.layer_size(i), i))
            .expect("window has ell >= 1 layers");
        let below = view.layers.band(y + 1, usize::MAX);
        let z = self.g.reach(&below, nb.iter());
        Ok(Step3Plan { branch, z, y })
    }

    fn apply_step3(&mut self, plan: Step3Plan) -> Result<()> {
        self.stats.step3 += 1;
        if let Err(e) = self.model.grow_branch(self.g, plan.branch, &plan.z) {
            return Err(self.logic(format!("branch growth rejected: {e}")));
        }
        self.live = largest_component(self.g, &self.live.difference(&plan.z));
        let dropped = self.model.trim(self.g, &self.live);
        self.retired.extend(dropped);
        Ok(())
    }

    /// Smallest layer `i` in `[radius+1, radius+ell*]` with
    /// `ell * |L_i| <= |L_{>= i+1}|`.
    pub fn step4_cut_layer(&self, view: &LayeredView) -> Result<usize> {
        let sizes: Vec<usize> = view.layers.layers().iter().map(Vec::len).collect();
        find_cut_layer(&sizes, view.radius + 1, view.middle_max(), view.ell).ok_or_else(|| {
            self.logic(format!(
                "no thin layer in [{}, {}]; layer sizes {:?}, |B| = {}",
                view.radius + 1,
                view.middle_max(),
                sizes,
                view.bottom.len()
            ))
        })
    }

    fn apply_step4(&mut self, view: &LayeredView, layer: usize) -> Result<()> {
        self.stats.step4 += 1;
        let cut = view.layers.band(layer, layer);
        let below = view.layers.band(layer + 1, usize::MAX);
        if self.charged.intersects(&below) {
            return Err(self.logic(format!("vertex charged twice at layer {layer}")));
        }
        self.charged.union_with(&below);
        self.stats.charged_vertices = self.charged.len();
        self.stats.charge_events.push(ChargeEvent {
            iteration: self.iteration,
            layer,
            cut: cut.len(),
            charged: below.len(),
        });
        self.x_set.union_with(&cut);
        let removed = cut.union(&below);
        self.live = largest_component(self.g, &self.live.difference(&removed));
        if !self.live.contains(view.center) {
            return Err(self.logic(String::from("cut separated the center from the largest component")));
        }
        let dropped = self.model.trim(self.g, &self.live);
        self.retired.extend(dropped);
        Ok(())
    }

    fn finish_step1(mut self, boundary: VertexMask) -> Result<RunResult> {
        let f = self.model.f_selector(self.g, &self.live);
        let breakdown = SizeBreakdown {
            x: self.x_set.len(),
            step1_s: boundary.len(),
            f_selector: f.len(),
            repair: 0,
        };
        let mut sep = self.x_set.union(&boundary);
        sep.union_with(&f);
        self.step1_sep = Some(boundary);
        self.stats.ending = Some(Ending::Step1);
        self.finalize(sep, breakdown)
    }

    fn finish_loop(mut self) -> Result<RunResult> {
        let f = self.model.f_selector(self.g, &self.live);
        let breakdown = SizeBreakdown {
            x: self.x_set.len(),
            step1_s: 0,
            f_selector: f.len(),
            repair: 0,
        };
        let sep = self.x_set.union(&f);
        self.stats.ending = Some(Ending::LoopExit);
        self.finalize(sep, breakdown)
    }

    fn finalize(mut self, sep: VertexMask, mut breakdown: SizeBreakdown) -> Result<RunResult> {
        let sep = self.repair_balance(sep, &mut breakdown)?;
        let iteration = self.iteration;
        let (outcome, verification) =
            finish_balanced(self.g, &self.params, sep, breakdown, &mut self.stats, iteration)?;
        Ok(RunResult {
            outcome,
            stats: self.stats,
            params: self.params,
            verification,
        })
    }

    /// `X ∪ F(K, H)` can leave a component outside `H` above `2n/3` when
    /// branches whose neighborhood was chosen glue dropped pieces together.
    /// Adding whole branch sets (current first, then retired, each in creation
    /// order) that meet the offending component restores balance: with every
    /// branch set removed, the pieces dropped from `H` are pairwise
    /// non-adjacent and each is below `2n/3`.
    fn repair_balance(&mut self, mut sep: VertexMask, breakdown: &mut SizeBreakdown) -> Result<VertexMask> {
        let before = sep.len();
        loop {
            let rest = self.g.all_vertices().difference(&sep);
            let labels = ComponentLabels::new(self.g, &rest);
            if self.params.is_balanced_size(labels.largest_size()) {
                break;
            }
            let pick = self
                .model
                .branches()
                .iter()
                .chain(self.retired.iter())
                .find(|b| b.iter().any(|v| labels.label(v) == Some(0)))
                .cloned();
            match pick {
                Some(b) => {
                    sep.union_with(&b);
                    self.stats.repair_flips += 1;
                }
                None => {
                    return Err(self.logic(format!(
                        "unbalanced separator with no branch left to add (largest {})",
                        labels.largest_size()
                    )))
                }
            }
        }
        breakdown.repair = sep.len() - before;
        Ok(sep)
    }
}

fn finish_balanced(
    g: &Graph,
    params: &Params,
    sep: VertexMask,
    breakdown: SizeBreakdown,
    stats: &mut RunStats,
    iteration: usize,
) -> Result<(SeparatorOutcome, VerificationReport)> {
    let report = verify::verify_balanced(g, &sep);
    if !report.ok {
        return Err(Error::Logic(LogicError {
            iteration,
            message: String::from("separator failed balance verification"),
            dump: format!("n={} |sep|={} worst={}", params.n, sep.len(), report.worst_component),
        }));
    }
    let component_sizes = ComponentLabels::new(g, &g.all_vertices().difference(&sep))
        .sizes()
        .to_vec();
    stats.iterations = iteration;
    Ok((
        SeparatorOutcome::BalancedSeparator(BalancedSeparator {
            separator: sep,
            component_sizes,
            breakdown,
        }),
        report,
    ))
}

/// Smallest `i` in `lo..=hi` with `ell * sizes[i] <= sum(sizes[i+1..])`;
/// layers past the end of `sizes` count as empty.
pub fn find_cut_layer(sizes: &[usize], lo: usize, hi: usize, ell: usize) -> Option<usize> {
    let mut suffix = alloc::vec![0usize; sizes.len() + 1];
    for i in (0..sizes.len()).rev() {
        suffix[i] = suffix[i + 1] + sizes[i];
    }
    let size = |i: usize| sizes.get(i).copied().unwrap_or(0);
    let after = |i: usize| suffix.get(i + 1).copied().unwrap_or(0);
    (lo..=hi).find(|&i| ell * size(i) <= after(i))
}
