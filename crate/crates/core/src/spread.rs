//! Stochastic virus-spread dynamics and Monte Carlo sample-path generation.
//!
//! Three dynamics are supported. In TN11C a single virus transits from node
//! to node in unit time steps, always succeeding. In RA1PC every infected
//! node picks one uniformly random neighbor per step and infects it with
//! probability `p`; in RAEPC every infected node attempts every neighbor
//! independently with probability `p` per step. All infected nodes keep
//! distributing, targets may already be infected (the attempt is then
//! wasted), and the initial infection always succeeds.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, NodeId};
use crate::matrices::VirusSpreadMatrix;
use crate::rng::path_rng;

/// Spread-dynamics code: replication/persistence/propagation/transmissibility/latency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpreadKind {
    /// Transit, new-only persistence, one neighbor, transmissibility 1, unit latency.
    Tn11c,
    /// Replicate, all infected distribute, one neighbor, transmissibility p, unit latency.
    Ra1pc,
    /// Replicate, all infected distribute, every neighbor, transmissibility p, unit latency.
    Raepc,
}

impl SpreadKind {
    pub const ALL: [SpreadKind; 3] = [SpreadKind::Tn11c, SpreadKind::Ra1pc, SpreadKind::Raepc];

    pub fn as_str(&self) -> &'static str {
        match self {
            SpreadKind::Tn11c => "TN11C",
            SpreadKind::Ra1pc => "RA1PC",
            SpreadKind::Raepc => "RAEPC",
        }
    }

    fn is_transit(&self) -> bool {
        matches!(self, SpreadKind::Tn11c)
    }
}

impl fmt::Display for SpreadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpreadKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpreadKind> {
        match s.to_ascii_uppercase().as_str() {
            "TN11C" => Ok(SpreadKind::Tn11c),
            "RA1PC" | "RA11C" => Ok(SpreadKind::Ra1pc),
            "RAEPC" | "RAE1C" => Ok(SpreadKind::Raepc),
            other => Err(invalid(format!("unknown spread kind {other:?}"))),
        }
    }
}

/// Spread-model parameters: dynamics, time threshold, transmission
/// probability (ignored by TN11C, where transmissibility is 1) and the pmf
/// of the initial virus location (uniform when absent).
#[derive(Debug, Clone, PartialEq)]
pub struct SpreadConfig {
    pub kind: SpreadKind,
    pub t0: u32,
    pub p: f64,
    pub initial_pmf: Option<Vec<f64>>,
}

impl SpreadConfig {
    pub fn new(kind: SpreadKind, t0: u32, p: f64) -> Result<SpreadConfig> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(invalid(format!("transmission probability must be in (0,1], got {p}")));
        }
        Ok(SpreadConfig {
            kind,
            t0,
            p,
            initial_pmf: None,
        })
    }

    pub fn with_initial_pmf(mut self, pmf: Vec<f64>) -> SpreadConfig {
        self.initial_pmf = Some(pmf);
        self
    }

    /// Check the config against a concrete graph.
    pub(crate) fn validate_for(&self, g: &Graph) -> Result<()> {
        if g.is_empty() {
            return Err(invalid("graph has no nodes"));
        }
        if !g.is_connected() {
            return Err(Error::NotConnected);
        }
        if self.kind.is_transit() && self.t0 >= 1 && g.node_count() < 2 {
            return Err(invalid("transit dynamics need a neighbor to hop to"));
        }
        if let Some(pmf) = &self.initial_pmf {
            if pmf.len() != g.node_count() {
                return Err(invalid(format!(
                    "initial pmf has {} entries for {} nodes",
                    pmf.len(),
                    g.node_count()
                )));
            }
            if pmf.iter().any(|&w| w < 0.0 || !w.is_finite()) {
                return Err(invalid("initial pmf entries must be non-negative"));
            }
            let total: f64 = pmf.iter().sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(invalid(format!("initial pmf sums to {total}, expected 1")));
            }
        }
        Ok(())
    }
}

/// Sampler for the initial virus location.
pub(crate) enum StartSampler {
    Uniform(usize),
    Weighted(WeightedIndex<f64>),
}

impl StartSampler {
    pub(crate) fn build(cfg: &SpreadConfig, n_nodes: usize) -> Result<StartSampler> {
        match &cfg.initial_pmf {
            None => Ok(StartSampler::Uniform(n_nodes)),
            Some(pmf) => WeightedIndex::new(pmf.iter().copied())
                .map(StartSampler::Weighted)
                .map_err(|e| invalid(format!("initial pmf unusable: {e}"))),
        }
    }

    pub(crate) fn sample(&self, rng: &mut ChaCha8Rng) -> NodeId {
        match self {
            StartSampler::Uniform(n) => rng.gen_range(0..*n) as NodeId,
            StartSampler::Weighted(w) => w.sample(rng) as NodeId,
        }
    }
}

/// Reusable per-thread mark set, cleared in O(1) between paths.
pub(crate) struct PathScratch {
    stamp: Vec<u32>,
    generation: u32,
}

impl PathScratch {
    pub(crate) fn new(n_nodes: usize) -> PathScratch {
        PathScratch {
            stamp: vec![0; n_nodes],
            generation: 0,
        }
    }

    pub(crate) fn begin(&mut self) {
        if self.generation == u32::MAX {
            self.stamp.fill(0);
            self.generation = 0;
        }
        self.generation += 1;
    }

    pub(crate) fn mark(&mut self, node: NodeId) {
        self.stamp[node as usize] = self.generation;
    }

    pub(crate) fn is_marked(&self, node: NodeId) -> bool {
        self.stamp[node as usize] == self.generation
    }
}

/// Append the transit trajectory `(node, t)` for `t = 0..=steps`; visited
/// nodes repeat if the walk revisits them.
pub(crate) fn transit_trajectory(
    g: &Graph,
    start: NodeId,
    steps: u32,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<(NodeId, u32)>,
) {
    out.clear();
    out.push((start, 0));
    let mut current = start;
    for t in 1..=steps {
        let nbrs = g.neighbors(current);
        current = nbrs[rng.gen_range(0..nbrs.len())];
        out.push((current, t));
    }
}

/// Append the replicate trajectory: distinct infected nodes with their
/// first-infection times, in infection order. Nodes infected during a step
/// start distributing the following step; attempts on already-infected
/// targets are wasted.
pub(crate) fn replicate_trajectory(
    g: &Graph,
    start: NodeId,
    steps: u32,
    every_neighbor: bool,
    p: f64,
    rng: &mut ChaCha8Rng,
    scratch: &mut PathScratch,
    out: &mut Vec<(NodeId, u32)>,
) {
    scratch.begin();
    out.clear();
    out.push((start, 0));
    scratch.mark(start);
    let n_nodes = g.node_count();
    for t in 1..=steps {
        if out.len() == n_nodes {
            break;
        }
        let distributing = out.len();
        for i in 0..distributing {
            let source = out[i].0;
            let nbrs = g.neighbors(source);
            if nbrs.is_empty() {
                continue;
            }
            if every_neighbor {
                for &target in nbrs {
                    if rng.gen_bool(p) && !scratch.is_marked(target) {
                        scratch.mark(target);
                        out.push((target, t));
                    }
                }
            } else {
                let target = nbrs[rng.gen_range(0..nbrs.len())];
                if rng.gen_bool(p) && !scratch.is_marked(target) {
                    scratch.mark(target);
                    out.push((target, t));
                }
            }
        }
    }
}

/// Trajectory for path `index` of the experiment keyed by `seed`, with the
/// number of spread steps overridable (the estimators simulate past `t0`).
pub(crate) fn trajectory_for_path(
    g: &Graph,
    cfg: &SpreadConfig,
    sampler: &StartSampler,
    steps: u32,
    seed: u64,
    index: u64,
    scratch: &mut PathScratch,
    out: &mut Vec<(NodeId, u32)>,
) {
    let mut rng = path_rng(seed, index);
    let start = sampler.sample(&mut rng);
    match cfg.kind {
        SpreadKind::Tn11c => transit_trajectory(g, start, steps, &mut rng, out),
        SpreadKind::Ra1pc => {
            replicate_trajectory(g, start, steps, false, cfg.p, &mut rng, scratch, out)
        }
        SpreadKind::Raepc => {
            replicate_trajectory(g, start, steps, true, cfg.p, &mut rng, scratch, out)
        }
    }
}

/// Generate `n` independent sample paths of virus spread. Rows are visit
/// sequences of length `t0+1` for TN11C and distinct infected nodes in
/// first-infection order for RA1PC/RAEPC. Deterministic in
/// `(g, cfg, n, seed)` regardless of thread count.
pub fn simulate_paths(g: &Graph, cfg: &SpreadConfig, n: usize, seed: u64) -> Result<VirusSpreadMatrix> {
    if n == 0 {
        return Err(invalid("need at least one sample path"));
    }
    cfg.validate_for(g)?;
    let sampler = StartSampler::build(cfg, g.node_count())?;
    let rows: Vec<Vec<NodeId>> = (0..n)
        .into_par_iter()
        .map_init(
            || (PathScratch::new(g.node_count()), Vec::new()),
            |(scratch, buf), l| {
                trajectory_for_path(g, cfg, &sampler, cfg.t0, seed, l as u64, scratch, buf);
                buf.iter().map(|&(node, _)| node).collect()
            },
        )
        .collect();
    Ok(VirusSpreadMatrix::new(rows))
}

/// Outcome of a time-threshold calibration run.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationResult {
    /// Mean first time step at which the target infection count was reached,
    /// over the replications that reached it. `None` if none did.
    pub mean_time: Option<f64>,
    pub completed: usize,
    /// Replications that exhausted the safety horizon without reaching the
    /// target; these are excluded from `mean_time`.
    pub exhausted: usize,
    /// Infection count that had to be reached: `max(1, round(fraction·|V|))`.
    pub target_nodes: usize,
    pub horizon: u32,
}

/// Estimate the average time for `target_fraction` of the nodes to become
/// infected, over `reps` independent replications with no `t0` cap. The
/// initial infection happens at t=0, so one target node means time 0.
pub fn calibrate_time_threshold(
    g: &Graph,
    cfg: &SpreadConfig,
    target_fraction: f64,
    reps: usize,
    seed: u64,
) -> Result<CalibrationResult> {
    if !(target_fraction > 0.0 && target_fraction <= 1.0) {
        return Err(invalid(format!(
            "target fraction must be in (0,1], got {target_fraction}"
        )));
    }
    if reps == 0 {
        return Err(invalid("need at least one replication"));
    }
    cfg.validate_for(g)?;
    let n_nodes = g.node_count();
    let target = ((target_fraction * n_nodes as f64).round() as usize).max(1);
    let horizon = (100 * n_nodes) as u32;
    let sampler = StartSampler::build(cfg, n_nodes)?;

    let times: Vec<Option<u32>> = (0..reps)
        .into_par_iter()
        .map_init(
            || PathScratch::new(n_nodes),
            |scratch, rep| {
                let mut rng = path_rng(seed, rep as u64);
                let start = sampler.sample(&mut rng);
                match cfg.kind {
                    SpreadKind::Tn11c => transit_hitting_time(g, start, target, horizon, &mut rng, scratch),
                    SpreadKind::Ra1pc => {
                        replicate_hitting_time(g, start, target, horizon, false, cfg.p, &mut rng, scratch)
                    }
                    SpreadKind::Raepc => {
                        replicate_hitting_time(g, start, target, horizon, true, cfg.p, &mut rng, scratch)
                    }
                }
            },
        )
        .collect();

    let completed: Vec<u32> = times.iter().filter_map(|&t| t).collect();
    let exhausted = times.len() - completed.len();
    let mean_time = if completed.is_empty() {
        None
    } else {
        Some(completed.iter().map(|&t| t as u64).sum::<u64>() as f64 / completed.len() as f64)
    };
    Ok(CalibrationResult {
        mean_time,
        completed: completed.len(),
        exhausted,
        target_nodes: target,
        horizon,
    })
}

fn transit_hitting_time(
    g: &Graph,
    start: NodeId,
    target: usize,
    horizon: u32,
    rng: &mut ChaCha8Rng,
    scratch: &mut PathScratch,
) -> Option<u32> {
    scratch.begin();
    scratch.mark(start);
    let mut distinct = 1usize;
    if distinct >= target {
        return Some(0);
    }
    let mut current = start;
    for t in 1..=horizon {
        let nbrs = g.neighbors(current);
        if nbrs.is_empty() {
            return None;
        }
        current = nbrs[rng.gen_range(0..nbrs.len())];
        if !scratch.is_marked(current) {
            scratch.mark(current);
            distinct += 1;
            if distinct >= target {
                return Some(t);
            }
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn replicate_hitting_time(
    g: &Graph,
    start: NodeId,
    target: usize,
    horizon: u32,
    every_neighbor: bool,
    p: f64,
    rng: &mut ChaCha8Rng,
    scratch: &mut PathScratch,
) -> Option<u32> {
    scratch.begin();
    scratch.mark(start);
    let mut infected = vec![start];
    if infected.len() >= target {
        return Some(0);
    }
    for t in 1..=horizon {
        let distributing = infected.len();
        for i in 0..distributing {
            let nbrs = g.neighbors(infected[i]);
            if nbrs.is_empty() {
                continue;
            }
            if every_neighbor {
                for &w in nbrs {
                    if rng.gen_bool(p) && !scratch.is_marked(w) {
                        scratch.mark(w);
                        infected.push(w);
                    }
                }
            } else {
                let w = nbrs[rng.gen_range(0..nbrs.len())];
                if rng.gen_bool(p) && !scratch.is_marked(w) {
                    scratch.mark(w);
                    infected.push(w);
                }
            }
        }
        if infected.len() >= target {
            return Some(t);
        }
    }
    None
}
