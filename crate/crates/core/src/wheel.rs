//! Closed-form detection probabilities on the wheel network and a
//! cross-validating simulator.
//!
//! Setting: two detectors on a wheel with `v ≥ 5` nodes, TN11C spread with a
//! single time step (detection opportunities at t=0 and t=1), uniform initial
//! location, false-negative probability `r` per detector, independent flips.
//! Two detectors on the same node detect a visit with probability `1 - r²`.
//!
//! Multiset placements (two detectors on one node) exist only here; the main
//! SAA model has binary placement variables and cannot express them.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::graph::{wheel_graph, NodeId};
use crate::rng::path_rng;

/// The four analyzed two-detector configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WheelKind {
    /// Both detectors on rim nodes that are rim-adjacent.
    AdjacentEdge,
    /// Both detectors on rim nodes at maximal rim distance.
    DiametricallyOpposite,
    /// One detector on the hub, one on a rim node.
    CenterEdge,
    /// Both detectors on the hub.
    CenterCenter,
}

impl WheelKind {
    /// Display order for reports.
    pub const ALL: [WheelKind; 4] = [
        WheelKind::AdjacentEdge,
        WheelKind::DiametricallyOpposite,
        WheelKind::CenterEdge,
        WheelKind::CenterCenter,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            WheelKind::AdjacentEdge => "adjacent_edge",
            WheelKind::DiametricallyOpposite => "diametrically_opposite",
            WheelKind::CenterEdge => "center_edge",
            WheelKind::CenterCenter => "center_center",
        }
    }

    /// A concrete detector multiset realizing this configuration on
    /// `wheel_graph(v)` (hub = node 0, rim = 1..v-1).
    pub fn detector_multiset(&self, v: usize) -> Vec<(NodeId, u32)> {
        match self {
            WheelKind::AdjacentEdge => vec![(1, 1), (2, 1)],
            WheelKind::DiametricallyOpposite => {
                let opposite = 1 + ((v - 1) / 2) as NodeId;
                vec![(1, 1), (opposite, 1)]
            }
            WheelKind::CenterEdge => vec![(0, 1), (1, 1)],
            WheelKind::CenterCenter => vec![(0, 2)],
        }
    }

    /// Number of distinct nodes carrying a detector.
    pub fn distinct_nodes(&self) -> usize {
        match self {
            WheelKind::CenterCenter => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for WheelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A configuration together with the wheel size and false-negative rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WheelPlacement {
    pub kind: WheelKind,
    pub v: u64,
    pub r: f64,
}

impl WheelPlacement {
    pub fn new(kind: WheelKind, v: u64, r: f64) -> Result<WheelPlacement> {
        if v < 5 {
            return Err(invalid(format!("wheel placement needs v >= 5, got {v}")));
        }
        if !(0.0..1.0).contains(&r) {
            return Err(invalid(format!("false-negative rate must be in [0,1), got {r}")));
        }
        Ok(WheelPlacement { kind, v, r })
    }
}

/// Exact detection probability for a placement configuration.
pub fn wheel_probability(placement: &WheelPlacement) -> f64 {
    let v = placement.v as f64;
    let r = placement.r;
    match placement.kind {
        WheelKind::AdjacentEdge => {
            2.0 * (1.0 - r) * (4.0 * v - 1.0 + r * v - r) / (3.0 * v * (v - 1.0))
        }
        WheelKind::DiametricallyOpposite => {
            2.0 * (1.0 - r) * (5.0 * v - 2.0) / (3.0 * v * (v - 1.0))
        }
        WheelKind::CenterEdge => {
            (1.0 - r) * (v * v + 5.0 * v + r * v + 2.0 * r - 6.0) / (3.0 * v * (v - 1.0))
        }
        WheelKind::CenterCenter => (1.0 - r) * (1.0 + r) * (v + 2.0) / (3.0 * v),
    }
}

/// Holds iff center-center is at least as good as center-edge at (v, r),
/// i.e. `r v² - 4v - 4r + 4 ≥ 0`, evaluated in exact rational arithmetic.
fn center_center_at_least_center_edge(v: u64, r: &BigRational) -> bool {
    let v = BigInt::from(v);
    let lhs = r * BigRational::from_integer(&v * &v - BigInt::from(4))
        - BigRational::from_integer(BigInt::from(4) * (&v - BigInt::from(1)));
    lhs >= BigRational::from_integer(BigInt::from(0))
}

/// Least wheel size at which placing both detectors on the hub ties or beats
/// the center-edge placement: the ceiling of `2/r + 2·sqrt(1 - 1/r + 1/r²)`,
/// clamped to 5. The floating-point candidate is verified (and corrected if
/// needed) by exact rational comparison at the candidate and its predecessor.
pub fn wheel_vmin(r: f64) -> Result<u64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(invalid(format!(
            "center-center only wins for r in (0,1), got {r}"
        )));
    }
    let root = 2.0 / r + 2.0 * (1.0 - 1.0 / r + 1.0 / (r * r)).sqrt();
    let mut v = (root.ceil().max(5.0)) as u64;
    let r_exact = BigRational::from_float(r)
        .ok_or_else(|| invalid("false-negative rate must be finite"))?;
    while !center_center_at_least_center_edge(v, &r_exact) {
        v += 1;
    }
    while v > 5 && center_center_at_least_center_edge(v - 1, &r_exact) {
        v -= 1;
    }
    Ok(v)
}

/// Best of the four configurations at (v, r). Probabilities within 1e-12 of
/// each other count as ties, resolved toward fewer distinct detector nodes
/// (center-center first), then toward the hub-using configuration.
pub fn wheel_best_placement(v: u64, r: f64) -> Result<WheelKind> {
    const PREFERENCE: [WheelKind; 4] = [
        WheelKind::CenterCenter,
        WheelKind::CenterEdge,
        WheelKind::DiametricallyOpposite,
        WheelKind::AdjacentEdge,
    ];
    let mut best: Option<(f64, WheelKind)> = None;
    for kind in PREFERENCE {
        let prob = wheel_probability(&WheelPlacement::new(kind, v, r)?);
        if best.map_or(true, |(bp, _)| prob > bp + 1e-12) {
            best = Some((prob, kind));
        }
    }
    Ok(best.expect("four candidates").1)
}

/// Monte Carlo estimate from the wheel simulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WheelSimEstimate {
    pub probability: f64,
    pub std_error: f64,
    pub detected: u64,
    pub n_paths: u64,
}

/// Simulate TN11C with one time step on `wheel_graph(v)` under a detector
/// multiset (node, copies). A node holding `m` detectors detects a visit
/// with probability `1 - r^m` via `m` independent flips. The total detector
/// count must be exactly 2.
pub fn simulate_wheel(
    v: usize,
    r: f64,
    placement: &[(NodeId, u32)],
    n: usize,
    seed: u64,
) -> Result<WheelSimEstimate> {
    if !(0.0..1.0).contains(&r) {
        return Err(invalid(format!("false-negative rate must be in [0,1), got {r}")));
    }
    if n == 0 {
        return Err(invalid("need at least one path"));
    }
    let total: u32 = placement.iter().map(|&(_, m)| m).sum();
    if total != 2 {
        return Err(invalid(format!("wheel analysis assumes exactly 2 detectors, got {total}")));
    }
    let g = wheel_graph(v)?;
    let mut copies = vec![0u32; v];
    for &(node, m) in placement {
        if node as usize >= v {
            return Err(invalid(format!("detector node {node} outside wheel of {v} nodes")));
        }
        copies[node as usize] += m;
    }

    let detected: u64 = (0..n)
        .into_par_iter()
        .map(|l| {
            let mut rng = path_rng(seed, l as u64);
            let start = rng.gen_range(0..v);
            let mut hit = visit_detected(&copies, start, r, &mut rng);
            let nbrs = g.neighbors(start as NodeId);
            let next = nbrs[rng.gen_range(0..nbrs.len())] as usize;
            hit |= visit_detected(&copies, next, r, &mut rng);
            u64::from(hit)
        })
        .sum();

    let probability = detected as f64 / n as f64;
    let std_error = (probability * (1.0 - probability) / n as f64).sqrt();
    Ok(WheelSimEstimate {
        probability,
        std_error,
        detected,
        n_paths: n as u64,
    })
}

fn visit_detected(copies: &[u32], node: usize, r: f64, rng: &mut rand_chacha::ChaCha8Rng) -> bool {
    let mut hit = false;
    for _ in 0..copies[node] {
        if rng.gen_bool(1.0 - r) {
            hit = true;
        }
    }
    hit
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prob(kind: WheelKind, v: u64, r: f64) -> f64 {
        wheel_probability(&WheelPlacement::new(kind, v, r).unwrap())
    }

    #[test]
    fn spot_values_from_the_formulas() {
        // center-edge at v=9, r=0: (81+45-6)/216
        assert!((prob(WheelKind::CenterEdge, 9, 0.0) - 120.0 / 216.0).abs() < 1e-15);
        // center-center at v=5, r=0.5: 0.75 * 7/15
        assert!((prob(WheelKind::CenterCenter, 5, 0.5) - 0.35).abs() < 1e-15);
    }

    #[test]
    fn crossover_at_v5() {
        let r = 2.0 / 7.0;
        let d = prob(WheelKind::DiametricallyOpposite, 5, r);
        let c = prob(WheelKind::CenterEdge, 5, r);
        assert!((d - c).abs() < 1e-12);
        assert!((d - 23.0 / 42.0).abs() < 1e-12);
    }

    #[test]
    fn probabilities_stay_in_unit_interval() {
        for v in 5..=200u64 {
            for step in 0..20 {
                let r = step as f64 * 0.05;
                for kind in WheelKind::ALL {
                    let p = prob(kind, v, r);
                    assert!((0.0..=1.0).contains(&p), "{kind} v={v} r={r} -> {p}");
                }
            }
        }
    }

    #[test]
    fn diametrically_opposite_dominates_adjacent() {
        for v in 5..=200u64 {
            for step in 0..20 {
                let r = step as f64 * 0.05;
                assert!(
                    prob(WheelKind::DiametricallyOpposite, v, r)
                        >= prob(WheelKind::AdjacentEdge, v, r)
                );
            }
        }
    }

    #[test]
    fn limits_for_large_v() {
        let v = 1_000_000u64;
        for r in [0.0, 0.2, 0.5] {
            assert!(prob(WheelKind::AdjacentEdge, v, r) < 1e-4);
            assert!(prob(WheelKind::DiametricallyOpposite, v, r) < 1e-4);
            assert!((prob(WheelKind::CenterEdge, v, r) - (1.0 - r) / 3.0).abs() < 1e-4);
            assert!((prob(WheelKind::CenterCenter, v, r) - (1.0 - r * r) / 3.0).abs() < 1e-4);
        }
    }

    #[test]
    fn vmin_reproduces_reference_values() {
        assert_eq!(wheel_vmin(0.01).unwrap(), 400);
        assert_eq!(wheel_vmin(0.05).unwrap(), 80);
        assert_eq!(wheel_vmin(0.10).unwrap(), 40);
        assert!(wheel_vmin(0.0).is_err());
        assert!(wheel_vmin(1.0).is_err());
    }

    #[test]
    fn vmin_is_the_exact_threshold() {
        for r in [0.01, 0.02, 0.05, 0.10, 0.25, 0.5, 16.0 / 21.0, 0.9] {
            let vmin = wheel_vmin(r).unwrap();
            let cc = prob(WheelKind::CenterCenter, vmin, r);
            let ce = prob(WheelKind::CenterEdge, vmin, r);
            assert!(cc >= ce - 1e-12, "r={r} vmin={vmin}");
            if vmin > 5 {
                let cc = prob(WheelKind::CenterCenter, vmin - 1, r);
                let ce = prob(WheelKind::CenterEdge, vmin - 1, r);
                assert!(ce > cc - 1e-12, "r={r} below vmin");
            }
        }
    }

    #[test]
    fn best_placement_cases() {
        // reliable detectors on a larger wheel: hub + rim wins
        assert_eq!(wheel_best_placement(6, 0.0).unwrap(), WheelKind::CenterEdge);
        assert_eq!(wheel_best_placement(12, 0.05).unwrap(), WheelKind::CenterEdge);
        // v=5 below the r=2/7 crossover: diametrically opposite wins
        assert_eq!(
            wheel_best_placement(5, 0.1).unwrap(),
            WheelKind::DiametricallyOpposite
        );
        // very unreliable detectors: stack both on the hub
        for r in [16.0 / 21.0, 0.8, 0.9] {
            for v in [5u64, 6, 40, 100] {
                assert_eq!(wheel_best_placement(v, r).unwrap(), WheelKind::CenterCenter, "v={v} r={r}");
            }
        }
    }

    #[test]
    fn simulator_matches_closed_forms() {
        let n = 200_000;
        for (kind, v, r) in [
            (WheelKind::CenterEdge, 9usize, 0.0),
            (WheelKind::CenterCenter, 5, 0.5),
            (WheelKind::AdjacentEdge, 8, 0.3),
        ] {
            let placement = kind.detector_multiset(v);
            let estimate = simulate_wheel(v, r, &placement, n, 31).unwrap();
            let exact = prob(kind, v as u64, r);
            let sigma = estimate.std_error.max(1e-9);
            assert!(
                (estimate.probability - exact).abs() <= 4.0 * sigma,
                "{kind} v={v} r={r}: {} vs {exact}",
                estimate.probability
            );
        }
    }

    #[test]
    fn simulator_validates_detector_count() {
        assert!(simulate_wheel(5, 0.0, &[(0, 1)], 10, 1).is_err());
        assert!(simulate_wheel(5, 0.0, &[(0, 3)], 10, 1).is_err());
        assert!(simulate_wheel(5, 0.0, &[(9, 2)], 10, 1).is_err());
    }
}
