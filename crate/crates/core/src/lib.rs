//! Optimal placement of fallible detectors on contact networks.
//!
//! A virus spreads stochastically over an undirected contact network; a fixed
//! budget of detectors must be placed on nodes so that the spread is noticed
//! within a time threshold. Detectors may produce false negatives. This crate
//! provides the full pipeline:
//!
//! * [`graph`] — contact-network loading, c-core decomposition, component
//!   extraction and the wheel generator,
//! * [`spread`] — Monte Carlo sample paths under TN11C / RA1PC / RAEPC
//!   dynamics, plus time-threshold calibration,
//! * [`matrices`] — spread / virtual-detection / successful-detection
//!   matrices and their text serialization,
//! * [`saa`] — the sample-average-approximation coverage problem: greedy
//!   heuristic, exact branch-and-bound, valid upper bounds and LP export,
//! * [`assess`] — out-of-sample estimators: detection probability, McNemar
//!   paired comparison, multiple-replications optimality gaps, expected
//!   detection time, semi-Hamming distance,
//! * [`wheel`] — closed-form detection probabilities and placement
//!   comparisons on the wheel network.
//!
//! All randomized routines are deterministic functions of an explicit 64-bit
//! seed, independent of thread count.

pub mod assess;
pub mod error;
pub mod graph;
pub mod matrices;
pub mod rng;
pub mod saa;
pub mod spread;
pub mod wheel;

pub use error::{Error, Result};
pub use graph::{load_edge_list, wheel_graph, Graph, GraphSummary, NodeId, NodeSet};
pub use matrices::{
    sample_virtual_detections, successful_detection_matrix, MatrixHeader,
    SuccessfulDetectionMatrix, VirtualDetectionMatrix, VirusSpreadMatrix,
};
pub use saa::{
    build_instance, exact_placement, export_ip, greedy_placement, CoverageInstance,
    OptimalityCertificate, PlacementSolution, SolveMethod,
};
pub use spread::{calibrate_time_threshold, simulate_paths, CalibrationResult, SpreadConfig, SpreadKind};
