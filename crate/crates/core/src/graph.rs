//! Undirected simple contact networks.
//!
//! Nodes carry dense 0-based ids internally; the original external labels from
//! an edge-list file are retained for reporting. All derived graphs (cores,
//! components) keep mapping back to the original labels.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{invalid, Error, Result};

/// Dense node identifier, `0..|V|-1`.
pub type NodeId = u32;

/// Undirected simple graph with sorted adjacency lists.
///
/// Invariants: no self-loops, no duplicate edges, `j ∈ adj(i) ⇔ i ∈ adj(j)`,
/// neighbor lists sorted ascending, and `original_ids` strictly increasing
/// (dense ids preserve the order of the external labels).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    original_ids: Vec<u64>,
    edge_count: usize,
}

impl Graph {
    /// Build a graph from (label, label) pairs. Self-loops are dropped,
    /// parallel and reciprocal edges deduplicated, labels remapped to dense
    /// 0-based ids in ascending label order.
    pub fn from_edges<I>(edges: I) -> Graph
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut labels = BTreeSet::new();
        let mut undirected = BTreeSet::new();
        for (a, b) in edges {
            labels.insert(a);
            labels.insert(b);
            if a != b {
                undirected.insert((a.min(b), a.max(b)));
            }
        }
        let original_ids: Vec<u64> = labels.into_iter().collect();
        let index_of = |label: u64| -> NodeId {
            original_ids.binary_search(&label).expect("label present") as NodeId
        };
        let mut adjacency = vec![Vec::new(); original_ids.len()];
        for &(a, b) in &undirected {
            let (i, j) = (index_of(a), index_of(b));
            adjacency[i as usize].push(j);
            adjacency[j as usize].push(i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            adjacency,
            original_ids,
            edge_count: undirected.len(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node as usize].len()
    }

    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.adjacency[node as usize]
    }

    /// Original external label of a dense node id.
    pub fn original_id(&self, node: NodeId) -> u64 {
        self.original_ids[node as usize]
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn average_degree(&self) -> f64 {
        if self.adjacency.is_empty() {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.adjacency.len() as f64
        }
    }

    pub fn summary(&self) -> GraphSummary {
        GraphSummary {
            nodes: self.node_count(),
            edges: self.edge_count(),
            max_degree: self.max_degree(),
            avg_degree: self.average_degree(),
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.adjacency.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.node_count()];
        let mut stack = vec![0 as NodeId];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.node_count()
    }

    /// Maximum induced subgraph in which every vertex has degree ≥ `c`,
    /// computed by iterative peeling. The empty graph is a valid result.
    pub fn c_core(&self, c: usize) -> Graph {
        let n = self.node_count();
        let mut degree: Vec<usize> = (0..n).map(|v| self.adjacency[v].len()).collect();
        let mut alive = vec![true; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] < c).collect();
        for &v in &stack {
            alive[v] = false;
        }
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                let w = w as usize;
                if alive[w] {
                    degree[w] -= 1;
                    if degree[w] < c {
                        alive[w] = false;
                        stack.push(w);
                    }
                }
            }
        }
        self.induced(&alive)
    }

    /// Induced subgraph of the largest connected component. Ties are broken
    /// toward the component containing the smallest original node id.
    pub fn largest_connected_component(&self) -> Graph {
        let n = self.node_count();
        let mut component = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            let mut size = 0usize;
            let mut stack = vec![start];
            component[start] = id;
            while let Some(u) = stack.pop() {
                size += 1;
                for &w in &self.adjacency[u] {
                    let w = w as usize;
                    if component[w] == usize::MAX {
                        component[w] = id;
                        stack.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        // Components are discovered in increasing min-dense-id order and
        // original ids ascend with dense ids, so the first component of
        // maximal size realizes the tie rule.
        let Some(&best_size) = sizes.iter().max() else {
            return self.clone();
        };
        let best = sizes.iter().position(|&s| s == best_size).unwrap();
        let alive: Vec<bool> = component.iter().map(|&cid| cid == best).collect();
        self.induced(&alive)
    }

    /// Order-preserving induced subgraph on the nodes marked `true`.
    fn induced(&self, keep: &[bool]) -> Graph {
        let mut remap = vec![NodeId::MAX; self.node_count()];
        let mut original_ids = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                remap[v] = original_ids.len() as NodeId;
                original_ids.push(self.original_ids[v]);
            }
        }
        let mut adjacency = vec![Vec::new(); original_ids.len()];
        let mut edge_count = 0;
        for (v, &k) in keep.iter().enumerate() {
            if !k {
                continue;
            }
            let nv = remap[v] as usize;
            for &w in &self.adjacency[v] {
                if keep[w as usize] {
                    adjacency[nv].push(remap[w as usize]);
                    if (w as usize) > v {
                        edge_count += 1;
                    }
                }
            }
        }
        // Source lists are sorted and the remap is monotone, so the new
        // lists are already sorted.
        Graph {
            adjacency,
            original_ids,
            edge_count,
        }
    }

    /// Write the edge list using original labels, one edge per line,
    /// deterministically ordered. Reloading yields an identical graph.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for v in 0..self.node_count() {
            for &u in &self.adjacency[v] {
                if (u as usize) > v {
                    writeln!(w, "{} {}", self.original_ids[v], self.original_ids[u as usize])?;
                }
            }
            if self.adjacency[v].is_empty() {
                // Isolated nodes survive a round trip via a self-loop line,
                // which the loader drops while registering the label.
                writeln!(w, "{} {}", self.original_ids[v], self.original_ids[v])?;
            }
        }
        Ok(())
    }
}

/// Single-line network characteristics record: nodes, edges, max degree,
/// average degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphSummary {
    pub nodes: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub avg_degree: f64,
}

impl fmt::Display for GraphSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {}, {}, {}",
            self.nodes,
            self.edges,
            self.max_degree,
            format_sig3(self.avg_degree)
        )
    }
}

/// Format with three significant digits, matching network summary tables.
pub fn format_sig3(x: f64) -> String {
    let a = x.abs();
    let prec = if a >= 100.0 {
        0
    } else if a >= 10.0 {
        1
    } else if a >= 1.0 {
        2
    } else {
        3
    };
    format!("{:.*}", prec, x)
}

/// Read a whitespace-separated edge list: two integer labels per line,
/// `#`-prefixed comment lines and blank lines skipped. Directed inputs are
/// symmetrized; either way the result is a simple undirected graph with
/// self-loops dropped and duplicate/reciprocal edges merged.
pub fn load_edge_list<R: BufRead>(reader: R, directed_input: bool) -> Result<Graph> {
    let _ = directed_input; // both conventions collapse to the same simple graph
    let mut pairs = Vec::new();
    let mut saw_data = false;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        saw_data = true;
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected two integer tokens, got {trimmed:?}"),
            });
        };
        let parse = |tok: &str| -> Result<u64> {
            tok.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("invalid node id {tok:?}"),
            })
        };
        pairs.push((parse(a)?, parse(b)?));
    }
    if !saw_data {
        return Err(Error::EmptyEdgeList);
    }
    Ok(Graph::from_edges(pairs))
}

/// Wheel network on `v ≥ 5` nodes: node 0 is the hub adjacent to every rim
/// node; nodes `1..v-1` form a cycle, so every rim node has degree 3.
pub fn wheel_graph(v: usize) -> Result<Graph> {
    if v < 5 {
        return Err(invalid(format!("wheel graph needs v >= 5, got {v}")));
    }
    let rim = v - 1;
    let mut edges = Vec::with_capacity(2 * rim);
    for i in 1..v {
        edges.push((0u64, i as u64));
    }
    for i in 0..rim {
        let a = 1 + i;
        let b = 1 + (i + 1) % rim;
        edges.push((a as u64, b as u64));
    }
    Ok(Graph::from_edges(edges))
}

/// Sorted duplicate-free set of node ids; a placement when `|S| = k`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct NodeSet {
    members: Vec<NodeId>,
}

impl NodeSet {
    pub fn new(mut members: Vec<NodeId>) -> NodeSet {
        members.sort_unstable();
        members.dedup();
        NodeSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.members.binary_search(&node).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.members
    }

    /// Membership mask over a dense universe, for hot-loop lookups.
    pub fn membership_mask(&self, universe: usize) -> Vec<bool> {
        let mut mask = vec![false; universe];
        for &m in &self.members {
            if (m as usize) < universe {
                mask[m as usize] = true;
            }
        }
        mask
    }

    pub fn symmetric_difference_size(&self, other: &NodeSet) -> usize {
        let mut i = 0;
        let mut j = 0;
        let mut count = 0;
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => {
                    count += 1;
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    count += 1;
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        count + (self.members.len() - i) + (other.members.len() - j)
    }
}

impl FromIterator<NodeId> for NodeSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        NodeSet::new(iter.into_iter().collect())
    }
}
