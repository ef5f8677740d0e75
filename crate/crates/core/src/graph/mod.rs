//! Simple undirected graphs on dense vertex sets `0..n`.
//!
//! Edges carry a stable [`EdgeId`] equal to their position in the edge list, and
//! each edge is stored once as `(u, v)` with `u < v`. Everything downstream
//! (colorings, path masks, bridge sets) is keyed by these ids.

mod bridges;
mod generate;
mod io;
mod paths;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, GraphError, Result};

pub use bridges::{
    biconnected_blocks, block_decomposition, bridges_by_deletion, check_block_partition,
    find_bridges, BlockDecomposition,
};
pub use generate::{
    canonical_code, connected_labeled_graphs, generate_connected_graphs, random_connected_graph,
    MAX_GENERATED_ORDER,
};
pub use io::{parse_graph, to_dot, write_graph};
pub(crate) use io::{content_lines as io_lines, parse_pair as io_pair};
pub use paths::{
    enumerate_simple_paths, for_each_simple_path, path_through_edge, DEFAULT_PATH_CAP,
};

pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, EdgeId)>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, GraphError> {
        Graph::new(raw.n, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph { n: g.n, edges: g.edges }
    }
}

impl Graph {
    /// Builds a graph, normalizing every pair to `u < v` and keeping input order.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            let id = list.len();
            list.push((u, v));
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n.max(1), edges.collect::<Vec<_>>()).expect("complete graph is simple")
    }

    /// The path `0 - 1 - ... - (n-1)`; edge `i` joins `i` and `i + 1`.
    pub fn path(n: usize) -> Self {
        Graph::new(n.max(1), (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`, for `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges = (1..n).map(|v| (v - 1, v)).chain(std::iter::once((0, n - 1)));
        Graph::new(n, edges).expect("cycle is simple")
    }

    /// The star `K_{1,n-1}` centred at vertex 0.
    pub fn star(n: usize) -> Self {
        Graph::new(n.max(1), (1..n).map(|v| (0, v))).expect("star is simple")
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).expect("Petersen graph is simple")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e]
    }

    /// Neighbors of `v` together with the connecting edge, in edge-id order.
    pub fn neighbors(&self, v: usize) -> &[(usize, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<EdgeId> {
        self.adj
            .get(u)?
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
    }

    pub fn is_complete(&self) -> bool {
        self.size() == self.n * (self.n - 1) / 2
    }

    pub fn is_tree(&self) -> bool {
        self.size() + 1 == self.n && self.is_connected()
    }

    /// True iff every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        self.components().1 == 1
    }

    /// Component label per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        self.components_without(|_| false)
    }

    /// Components of the graph with the edges selected by `skip` removed.
    pub(crate) fn components_without(&self, skip: impl Fn(EdgeId) -> bool) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for root in 0..self.n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = count;
            stack.push(root);
            while let Some(x) = stack.pop() {
                for &(y, e) in &self.adj[x] {
                    if !skip(e) && label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Renames vertex `v` to `perm[v]`, keeping the edge order.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        assert_eq!(perm.len(), self.n, "permutation length must equal the order");
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Adjacency rows as bitmasks; only valid for `n <= 64`.
    pub(crate) fn adjacency_bits(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        let mut rows = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        rows
    }
}

/// A simple path, stored both as its vertex sequence and its edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    vertices: Vec<usize>,
    edges: Vec<EdgeId>,
}

impl Path {
    /// Checks that consecutive vertices are adjacent in `g` and that no vertex repeats.
    pub fn from_vertices(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Hypothesis("a path needs at least one vertex".into()));
        }
        let mut seen = HashSet::new();
        for &v in &vertices {
            if v >= g.order() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: g.order() }.into());
            }
            if !seen.insert(v) {
                return Err(Error::Hypothesis(format!("vertex {v} repeats on the path")));
            }
        }
        let edges = vertices
            .windows(2)
            .map(|w| {
                g.edge_between(w[0], w[1]).ok_or_else(|| {
                    Error::Hypothesis(format!("{} and {} are not adjacent", w[0], w[1]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Path { vertices, edges })
    }

    pub(crate) fn from_parts(vertices: Vec<usize>, edges: Vec<EdgeId>) -> Self {
        debug_assert_eq!(vertices.len(), edges.len() + 1);
        Path { vertices, edges }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("paths are non-empty")
    }

    /// Joins `self` (ending at `x`) with `other` (starting at `x`). Returns `None`
    /// if the endpoints do not meet or the result would revisit a vertex.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end() != other.start() {
            return None;
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        let distinct: HashSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path { vertices, edges })
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges.clone();
        vertices.reverse();
        edges.reverse();
        Path { vertices, edges }
    }
}

/// `⌈log₂ n⌉` for `n >= 1`.
pub fn ceil_log2(n: usize) -> usize {
    assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_pairs_and_keeps_order() {
        let g = Graph::new(3, [(2, 1), (0, 2)]).unwrap();
        assert_eq!(g.edges(), &[(1, 2), (0, 2)]);
        assert_eq!(g.edge_between(2, 0), Some(1));
        assert_eq!(g.edge_between(0, 1), None);
    }

    #[test]
    fn rejects_non_simple_input() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::new(0, []), Err(GraphError::NoVertices));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(5).is_connected());
        assert!(!Graph::new(4, [(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(Graph::new(1, []).unwrap().is_connected());
    }

    #[test]
    fn concat_joins_at_shared_endpoint() {
        let g = Graph::path(5);
        let a = Path::from_vertices(&g, vec![0, 1, 2]).unwrap();
        let b = Path::from_vertices(&g, vec![2, 3, 4]).unwrap();
        let p = a.concat(&b).unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2, 3, 4]);
        assert_eq!(p.edges(), &[0, 1, 2, 3]);
        assert!(b.concat(&a).is_none());
        let back = Path::from_vertices(&g, vec![2, 1]).unwrap();
        assert!(a.concat(&back).is_none());
    }

    #[test]
    fn from_vertices_rejects_non_paths() {
        let g = Graph::cycle(4);
        assert!(Path::from_vertices(&g, vec![0, 2]).is_err());
        assert!(Path::from_vertices(&g, vec![0, 1, 0]).is_err());
    }

    #[test]
    fn ceil_log2_values() {
        let expected = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (1025, 11)];
        for (n, want) in expected {
            assert_eq!(ceil_log2(n), want, "n = {n}");
        }
    }

    #[test]
    fn raw_conversion_validates() {
        assert!(Graph::try_from(RawGraph { n: 2, edges: vec![(0, 0)] }).is_err());
    }
}
