//! Sample-average-approximation detector placement as maximum coverage.
//!
//! Each sample path contributes the set of nodes where a successful
//! detection could occur; placing `k` detectors to maximize the fraction of
//! covered paths is the SAA of the detection-probability objective. The
//! empirical objective is monotone and submodular, which powers both the
//! greedy guarantee and the branch-and-bound pruning bound.

use std::io::Write;
use std::time::{Duration, Instant};

use crate::error::{invalid, Result};
use crate::graph::{NodeId, NodeSet};
use crate::matrices::SuccessfulDetectionMatrix;

/// Coverage instance: one candidate node set per sample path, a dense node
/// universe, and a detector budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageInstance {
    rows: Vec<Vec<NodeId>>,
    universe: usize,
    k: usize,
}

impl CoverageInstance {
    /// Rows may be empty (a path that never virtually detected); entries are
    /// deduplicated and sorted. Requires `1 ≤ k ≤ universe`.
    pub fn new(mut rows: Vec<Vec<NodeId>>, universe: usize, k: usize) -> Result<CoverageInstance> {
        if k < 1 || k > universe {
            return Err(invalid(format!(
                "detector budget k={k} outside 1..={universe}"
            )));
        }
        for row in &mut rows {
            if row.iter().any(|&v| v as usize >= universe) {
                return Err(invalid("row entry outside the node universe"));
            }
            row.sort_unstable();
            row.dedup();
        }
        Ok(CoverageInstance { rows, universe, k })
    }

    pub fn rows(&self) -> &[Vec<NodeId>] {
        &self.rows
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn non_empty_rows(&self) -> usize {
        self.rows.iter().filter(|row| !row.is_empty()).count()
    }

    /// Number of rows intersecting `s`.
    pub fn evaluate_count(&self, s: &NodeSet) -> usize {
        let mask = s.membership_mask(self.universe);
        self.rows
            .iter()
            .filter(|row| row.iter().any(|&v| mask[v as usize]))
            .count()
    }

    /// Fraction of rows intersecting `s` (the SAA objective).
    pub fn evaluate(&self, s: &NodeSet) -> f64 {
        if self.rows.is_empty() {
            return 0.0;
        }
        self.evaluate_count(s) as f64 / self.rows.len() as f64
    }

    /// Valid upper bound on the optimal SAA objective for a budget of `k`:
    /// the top-k singleton coverage counts, capped by the number of
    /// non-empty rows. By submodularity this is never below the optimum.
    pub fn upper_bound(&self, k: usize) -> f64 {
        if self.rows.is_empty() {
            return 0.0;
        }
        let mut counts = vec![0usize; self.universe];
        for row in &self.rows {
            for &v in row {
                counts[v as usize] += 1;
            }
        }
        counts.sort_unstable_by(|a, b| b.cmp(a));
        let top: usize = counts.iter().take(k).sum();
        top.min(self.non_empty_rows()) as f64 / self.rows.len() as f64
    }

    /// node → indices of rows containing it.
    fn inverted_index(&self) -> Vec<Vec<u32>> {
        let mut index = vec![Vec::new(); self.universe];
        for (l, row) in self.rows.iter().enumerate() {
            for &v in row {
                index[v as usize].push(l as u32);
            }
        }
        index
    }
}

/// Build the coverage instance from a successful-detection matrix: row `l`
/// is the set of non-sentinel entries of SDM row `l`.
pub fn build_instance(
    sdm: &SuccessfulDetectionMatrix,
    universe: usize,
    k: usize,
) -> Result<CoverageInstance> {
    let rows = sdm
        .rows()
        .iter()
        .map(|row| row.iter().filter_map(|&e| e).collect())
        .collect();
    CoverageInstance::new(rows, universe, k)
}

/// How a placement was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Greedy,
    Exact,
    External,
}

impl SolveMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveMethod::Greedy => "greedy",
            SolveMethod::Exact => "exact",
            SolveMethod::External => "external",
        }
    }
}

/// Certificate that the reported objective is within `gap` of the optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalityCertificate {
    /// Valid upper bound on the optimal SAA objective.
    pub upper_bound: f64,
    /// Relative gap between the bound and the reported objective.
    pub gap: f64,
}

/// A detector placement with its exact SAA objective and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacementSolution {
    pub nodes: NodeSet,
    pub covered_rows: usize,
    pub total_rows: usize,
    pub method: SolveMethod,
    /// Present only when optimality was certified within the requested gap.
    pub proof: Option<OptimalityCertificate>,
}

impl PlacementSolution {
    pub fn objective(&self) -> f64 {
        if self.total_rows == 0 {
            0.0
        } else {
            self.covered_rows as f64 / self.total_rows as f64
        }
    }
}

/// Greedy heuristic: repeatedly pick the node present in the largest number
/// of still-uncovered rows, ties broken by smallest node id. Once every
/// coverable row is covered the remaining budget is filled with the
/// smallest-id unused nodes.
pub fn greedy_placement(instance: &CoverageInstance) -> PlacementSolution {
    let index = instance.inverted_index();
    let mut gain: Vec<usize> = index.iter().map(Vec::len).collect();
    let mut covered = vec![false; instance.n_rows()];
    let mut chosen = vec![false; instance.universe];
    let mut picks = Vec::with_capacity(instance.k);
    let mut covered_count = 0usize;

    for _ in 0..instance.k {
        let mut best: Option<(usize, usize)> = None; // (gain, node)
        for (j, &g) in gain.iter().enumerate() {
            if chosen[j] {
                continue;
            }
            if best.map_or(true, |(bg, _)| g > bg) {
                best = Some((g, j));
            }
        }
        let (g, j) = best.expect("k <= universe leaves an unchosen node");
        chosen[j] = true;
        picks.push(j as NodeId);
        if g > 0 {
            for &row in &index[j] {
                let row = row as usize;
                if !covered[row] {
                    covered[row] = true;
                    covered_count += 1;
                    for &w in &instance.rows[row] {
                        gain[w as usize] -= 1;
                    }
                }
            }
        }
    }

    PlacementSolution {
        nodes: NodeSet::new(picks),
        covered_rows: covered_count,
        total_rows: instance.n_rows(),
        method: SolveMethod::Greedy,
        proof: None,
    }
}

/// Exact branch-and-bound over include/exclude decisions. The incumbent is
/// initialized from the greedy heuristic; subtree bounds add the top
/// remaining marginal coverage counts (valid by submodularity) capped by the
/// uncovered non-empty rows. With `gap_tolerance = 0` an exhausted tree is a
/// proof of optimality; a positive tolerance prunes subtrees that cannot
/// improve the incumbent by more than that relative gap. On an expired time
/// budget the best incumbent is returned without a certificate.
pub fn exact_placement(
    instance: &CoverageInstance,
    time_budget: Option<Duration>,
    gap_tolerance: f64,
) -> Result<PlacementSolution> {
    if gap_tolerance < 0.0 {
        return Err(invalid("gap tolerance must be non-negative"));
    }
    let greedy = greedy_placement(instance);
    let mut search = Search {
        instance,
        index: instance.inverted_index(),
        covered: vec![false; instance.n_rows()],
        covered_count: 0,
        uncovered_nonempty: instance.non_empty_rows(),
        state: vec![VarState::Free; instance.universe],
        chosen: Vec::with_capacity(instance.k),
        best_count: greedy.covered_rows,
        best_set: greedy.nodes.as_slice().to_vec(),
        abandoned_bound: 0,
        gap_tolerance,
        deadline: time_budget.map(|b| Instant::now() + b),
        timed_out: false,
        ticks: 0,
    };
    search.dfs();

    let total = instance.n_rows();
    let proof = if search.timed_out {
        None
    } else {
        let ub_count = search.best_count.max(search.abandoned_bound);
        let objective = if total == 0 {
            0.0
        } else {
            search.best_count as f64 / total as f64
        };
        let upper_bound = if total == 0 {
            0.0
        } else {
            ub_count as f64 / total as f64
        };
        let gap = if search.best_count == 0 {
            0.0
        } else {
            (upper_bound - objective) / objective
        };
        Some(OptimalityCertificate { upper_bound, gap })
    };
    Ok(PlacementSolution {
        nodes: NodeSet::new(search.best_set.clone()),
        covered_rows: search.best_count,
        total_rows: total,
        method: SolveMethod::Exact,
        proof,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum VarState {
    Free,
    Included,
    Excluded,
}

struct Search<'a> {
    instance: &'a CoverageInstance,
    index: Vec<Vec<u32>>,
    covered: Vec<bool>,
    covered_count: usize,
    uncovered_nonempty: usize,
    state: Vec<VarState>,
    chosen: Vec<NodeId>,
    best_count: usize,
    best_set: Vec<NodeId>,
    abandoned_bound: usize,
    gap_tolerance: f64,
    deadline: Option<Instant>,
    timed_out: bool,
    ticks: u32,
}

impl Search<'_> {
    fn dfs(&mut self) {
        if self.timed_out {
            return;
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 256 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                    return;
                }
            }
        }

        let remaining = self.instance.k - self.chosen.len();
        if remaining == 0 {
            self.offer(self.chosen.clone());
            return;
        }

        // Marginal coverage of each free node against the current partial set.
        let mut gains: Vec<(usize, usize)> = Vec::new(); // (gain, node)
        for j in 0..self.instance.universe {
            if self.state[j] != VarState::Free {
                continue;
            }
            let gain = self.index[j]
                .iter()
                .filter(|&&row| !self.covered[row as usize])
                .count();
            gains.push((gain, j));
        }

        let mut top: Vec<usize> = gains.iter().map(|&(g, _)| g).collect();
        top.sort_unstable_by(|a, b| b.cmp(a));
        let optimistic: usize = top.iter().take(remaining).sum();
        let bound = self.covered_count + optimistic.min(self.uncovered_nonempty);

        if bound <= self.best_count {
            return;
        }
        if self.gap_tolerance > 0.0
            && (bound as f64) <= (self.best_count as f64) * (1.0 + self.gap_tolerance)
        {
            self.abandoned_bound = self.abandoned_bound.max(bound);
            return;
        }

        // Best free node, ties toward the smallest id.
        let (best_gain, branch) = gains
            .iter()
            .copied()
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .expect("bound > best implies a free node exists");
        if best_gain == 0 {
            // No free node adds coverage; complete the set with the
            // smallest-id unused nodes and record it.
            let mut padded = self.chosen.clone();
            for j in 0..self.instance.universe {
                if padded.len() == self.instance.k {
                    break;
                }
                if !padded.contains(&(j as NodeId)) {
                    padded.push(j as NodeId);
                }
            }
            self.offer(padded);
            return;
        }

        // Include branch.
        let trail = self.apply(branch);
        self.chosen.push(branch as NodeId);
        self.state[branch] = VarState::Included;
        self.dfs();
        self.state[branch] = VarState::Free;
        self.chosen.pop();
        self.undo(trail);

        // Exclude branch.
        self.state[branch] = VarState::Excluded;
        self.dfs();
        self.state[branch] = VarState::Free;
    }

    /// Cover the rows of `node`, returning the rows newly covered.
    fn apply(&mut self, node: usize) -> Vec<u32> {
        let mut trail = Vec::new();
        for &row in &self.index[node] {
            if !self.covered[row as usize] {
                self.covered[row as usize] = true;
                self.covered_count += 1;
                self.uncovered_nonempty -= 1;
                trail.push(row);
            }
        }
        trail
    }

    fn undo(&mut self, trail: Vec<u32>) {
        for row in trail {
            self.covered[row as usize] = false;
            self.covered_count -= 1;
            self.uncovered_nonempty += 1;
        }
    }

    fn offer(&mut self, set: Vec<NodeId>) {
        let count = self.instance.evaluate_count(&NodeSet::new(set.clone()));
        if count > self.best_count {
            self.best_count = count;
            self.best_set = set;
        }
    }
}

/// Write the placement IP in LP format: binary placement variables, one
/// relaxable coverage variable per row, a cardinality constraint and one
/// coverage constraint per row. Rows are streamed; ordering is deterministic
/// so exports diff cleanly.
pub fn export_ip<W: Write>(instance: &CoverageInstance, mut w: W) -> Result<()> {
    let n = instance.n_rows();
    writeln!(
        w,
        "\\ maximum-coverage detector placement: n={} universe={} k={}",
        n, instance.universe, instance.k
    )?;
    writeln!(w, "Maximize")?;
    let coef = if n == 0 { 0.0 } else { 1.0 / n as f64 };
    let obj_terms: Vec<String> = (0..n)
        .map(|l| {
            if l == 0 {
                format!("{coef} u{l}")
            } else {
                format!("+ {coef} u{l}")
            }
        })
        .collect();
    write_wrapped(&mut w, " obj:", &obj_terms, "")?;
    writeln!(w, "Subject To")?;
    let card_terms: Vec<String> = (0..instance.universe)
        .map(|j| if j == 0 { format!("x{j}") } else { format!("+ x{j}") })
        .collect();
    write_wrapped(&mut w, " card:", &card_terms, &format!("= {}", instance.k))?;
    for (l, row) in instance.rows.iter().enumerate() {
        let mut terms = vec![format!("u{l}")];
        terms.extend(row.iter().map(|j| format!("- x{j}")));
        write_wrapped(&mut w, &format!(" r{l}:"), &terms, "<= 0")?;
    }
    writeln!(w, "Bounds")?;
    for l in 0..n {
        writeln!(w, " 0 <= u{l} <= 1")?;
    }
    writeln!(w, "Binary")?;
    for j in 0..instance.universe {
        writeln!(w, " x{j}")?;
    }
    writeln!(w, "End")?;
    Ok(())
}

fn write_wrapped<W: Write>(w: &mut W, head: &str, terms: &[String], tail: &str) -> std::io::Result<()> {
    const PER_LINE: usize = 8;
    write!(w, "{head}")?;
    for (i, term) in terms.iter().enumerate() {
        if i > 0 && i % PER_LINE == 0 {
            writeln!(w)?;
            write!(w, "   ")?;
        }
        write!(w, " {term}")?;
    }
    if tail.is_empty() {
        writeln!(w)
    } else {
        writeln!(w, " {tail}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::SuccessfulDetectionMatrix;
    use crate::rng::path_rng;
    use rand::Rng;

    fn example_instance(k: usize) -> CoverageInstance {
        CoverageInstance::new(
            vec![vec![5, 3, 13], vec![3, 5], vec![11, 13, 23]],
            24,
            k,
        )
        .unwrap()
    }

    /// Exhaustive search over all k-subsets, using per-node row bitmasks.
    /// Independent oracle for the greedy and branch-and-bound paths.
    fn brute_force_optimum(instance: &CoverageInstance) -> (usize, Vec<NodeId>) {
        let n = instance.n_rows();
        let words = n.div_ceil(64);
        let mut node_rows = vec![vec![0u64; words]; instance.universe()];
        for (l, row) in instance.rows().iter().enumerate() {
            for &v in row {
                node_rows[v as usize][l / 64] |= 1 << (l % 64);
            }
        }
        let k = instance.k();
        let universe = instance.universe();
        let mut best = (0usize, Vec::new());
        let mut subset: Vec<usize> = (0..k).collect();
        let mut acc = vec![0u64; words];
        loop {
            acc.fill(0);
            for &j in &subset {
                for (w, &bits) in node_rows[j].iter().enumerate() {
                    acc[w] |= bits;
                }
            }
            let covered: usize = acc.iter().map(|w| w.count_ones() as usize).sum();
            if covered > best.0 || best.1.is_empty() {
                best = (covered, subset.iter().map(|&j| j as NodeId).collect());
            }
            // next k-combination of 0..universe
            let mut i = k;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if subset[i] != i + universe - k {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn random_instance(rng: &mut impl Rng) -> CoverageInstance {
        let universe = rng.gen_range(4..=20usize);
        let n_rows = rng.gen_range(1..=60usize);
        let k = rng.gen_range(1..=4usize.min(universe));
        let rows = (0..n_rows)
            .map(|_| {
                let len = rng.gen_range(0..=5usize);
                (0..len)
                    .map(|_| rng.gen_range(0..universe) as NodeId)
                    .collect()
            })
            .collect();
        CoverageInstance::new(rows, universe, k).unwrap()
    }

    #[test]
    fn build_from_sdm_collapses_sentinels_and_duplicates() {
        let sdm = SuccessfulDetectionMatrix::new(vec![
            vec![Some(5), None, Some(3), None, Some(13), Some(3)],
            vec![None, Some(3), Some(5)],
            vec![None, Some(11), Some(13), Some(23)],
        ]);
        let instance = build_instance(&sdm, 24, 2).unwrap();
        assert_eq!(
            instance.rows(),
            &[vec![3, 5, 13], vec![3, 5], vec![11, 13, 23]]
        );
    }

    #[test]
    fn all_sentinel_rows_cover_nothing() {
        let sdm = SuccessfulDetectionMatrix::new(vec![vec![None, None], vec![None]]);
        let instance = build_instance(&sdm, 6, 2).unwrap();
        assert_eq!(instance.evaluate(&NodeSet::new((0..6).collect())), 0.0);
    }

    #[test]
    fn evaluate_examples() {
        let instance = example_instance(2);
        assert_eq!(instance.evaluate(&NodeSet::new(vec![3, 11])), 1.0);
        assert_eq!(instance.evaluate(&NodeSet::default()), 0.0);
        assert_eq!(instance.evaluate(&NodeSet::new((0..24).collect())), 1.0);
    }

    #[test]
    fn greedy_hand_traces() {
        let solution = greedy_placement(&example_instance(2));
        assert_eq!(solution.nodes.as_slice(), &[3, 11]);
        assert_eq!(solution.objective(), 1.0);

        let solution = greedy_placement(&example_instance(1));
        assert_eq!(solution.nodes.as_slice(), &[3]);
        assert!((solution.objective() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn greedy_pads_with_smallest_ids() {
        let instance = CoverageInstance::new(vec![vec![], vec![]], 10, 3).unwrap();
        let solution = greedy_placement(&instance);
        assert_eq!(solution.nodes.as_slice(), &[0, 1, 2]);
        assert_eq!(solution.objective(), 0.0);
    }

    #[test]
    fn exact_solves_worked_example() {
        let solution = exact_placement(&example_instance(2), None, 0.0).unwrap();
        assert_eq!(solution.objective(), 1.0);
        let proof = solution.proof.unwrap();
        assert_eq!(proof.gap, 0.0);
        assert_eq!(proof.upper_bound, 1.0);
    }

    #[test]
    fn exact_with_full_budget_is_trivially_optimal() {
        let instance = CoverageInstance::new(
            vec![vec![0, 1], vec![], vec![2]],
            3,
            3,
        )
        .unwrap();
        let solution = exact_placement(&instance, None, 0.0).unwrap();
        assert_eq!(solution.covered_rows, 2);
        assert_eq!(solution.nodes.len(), 3);
        assert!(solution.proof.is_some());
    }

    #[test]
    fn exact_matches_brute_force_on_random_instances() {
        let mut rng = path_rng(2024, 0);
        for _ in 0..60 {
            let instance = random_instance(&mut rng);
            let (opt, _) = brute_force_optimum(&instance);
            let solution = exact_placement(&instance, None, 0.0).unwrap();
            assert_eq!(solution.covered_rows, opt, "instance {instance:?}");
            assert!(solution.proof.is_some());
            assert_eq!(instance.evaluate_count(&solution.nodes), opt);
        }
    }

    #[test]
    fn upper_bound_examples_and_validity() {
        let instance = example_instance(1);
        assert!((instance.upper_bound(1) - 2.0 / 3.0).abs() < 1e-15);
        // budget covering every distinct node: bound equals the non-empty fraction
        assert_eq!(instance.upper_bound(24), 1.0);

        let with_empty = CoverageInstance::new(vec![vec![0], vec![]], 4, 4).unwrap();
        assert_eq!(with_empty.upper_bound(4), 0.5);

        let mut rng = path_rng(55, 1);
        for _ in 0..40 {
            let instance = random_instance(&mut rng);
            let greedy = greedy_placement(&instance);
            let exact = exact_placement(&instance, None, 0.0).unwrap();
            let ub = instance.upper_bound(instance.k());
            assert!(greedy.objective() <= exact.objective() + 1e-12);
            assert!(exact.objective() <= ub + 1e-12, "bound sandwich violated");
        }
    }

    #[test]
    fn greedy_and_exact_are_deterministic() {
        let mut rng = path_rng(7, 7);
        let instance = random_instance(&mut rng);
        let g1 = greedy_placement(&instance);
        let g2 = greedy_placement(&instance);
        assert_eq!(g1, g2);
        let e1 = exact_placement(&instance, None, 0.0).unwrap();
        let e2 = exact_placement(&instance, None, 0.0).unwrap();
        assert_eq!(e1, e2);
    }

    #[test]
    fn monotone_and_submodular_on_random_instances() {
        let mut rng = path_rng(99, 3);
        for _ in 0..30 {
            let instance = random_instance(&mut rng);
            let universe = instance.universe();
            for _ in 0..50 {
                let mut s1 = Vec::new();
                let mut s2 = Vec::new();
                for j in 0..universe as NodeId {
                    match rng.gen_range(0..4) {
                        0 => {
                            s1.push(j);
                            s2.push(j);
                        }
                        1 => s2.push(j),
                        _ => {}
                    }
                }
                let s2_set = NodeSet::new(s2.clone());
                let j = match (0..universe as NodeId).find(|&j| !s2_set.contains(j)) {
                    Some(j) => j,
                    None => continue,
                };
                let f = |nodes: &[NodeId]| instance.evaluate(&NodeSet::new(nodes.to_vec()));
                let f1 = f(&s1);
                let f2 = f(&s2);
                assert!(f1 <= f2 + 1e-12, "monotonicity violated");
                let mut s1j = s1.clone();
                s1j.push(j);
                let mut s2j = s2.clone();
                s2j.push(j);
                assert!(
                    f(&s1j) - f1 >= f(&s2j) - f2 - 1e-12,
                    "submodularity violated"
                );
            }
        }
    }

    #[test]
    fn export_has_expected_structure() {
        let instance = example_instance(2);
        let mut buf = Vec::new();
        export_ip(&instance, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let coverage_lines = text.lines().filter(|l| l.trim_start().starts_with('r')).count();
        assert_eq!(coverage_lines, 3);
        assert_eq!(text.lines().filter(|l| l.contains("card:")).count(), 1);
        assert!(text.contains("r1: u1 - x3 - x5 <= 0"));
        assert!(text.contains("= 2"));
        assert!(text.ends_with("End\n"));

        // Structural round trip: recover rows and k from the export.
        let mut k_back = None;
        let mut rows_back: Vec<Vec<NodeId>> = Vec::new();
        let mut card_pending = false;
        for line in text.lines() {
            let t = line.trim();
            if t.starts_with("card:") || card_pending {
                card_pending = !t.contains('=');
                if let Some(rhs) = t.split('=').nth(1) {
                    k_back = Some(rhs.trim().parse::<usize>().unwrap());
                }
            } else if t.starts_with('r') && t.contains("<=") {
                let nodes: Vec<NodeId> = t
                    .split_whitespace()
                    .filter_map(|tok| tok.strip_prefix('x'))
                    .map(|v| v.parse().unwrap())
                    .collect();
                rows_back.push(nodes);
            }
        }
        assert_eq!(k_back, Some(2));
        assert_eq!(rows_back, instance.rows().to_vec());
    }

    #[test]
    fn export_streams_large_instances() {
        let rows: Vec<Vec<NodeId>> = (0..50_000).map(|l| vec![(l % 97) as NodeId]).collect();
        let instance = CoverageInstance::new(rows, 100, 5).unwrap();
        let mut sink = std::io::sink();
        export_ip(&instance, &mut sink).unwrap();
    }

    #[test]
    fn rejects_bad_budgets() {
        assert!(CoverageInstance::new(vec![vec![0]], 4, 0).is_err());
        assert!(CoverageInstance::new(vec![vec![0]], 4, 5).is_err());
        assert!(CoverageInstance::new(vec![vec![9]], 4, 1).is_err());
    }
}
