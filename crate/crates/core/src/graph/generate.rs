//! Exhaustive generation of small connected graphs.
//!
//! Isomorphism classes are identified by a canonical code: the upper triangle of
//! the adjacency matrix read pair by pair in the order
//! `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...`, as a bit string, minimized
//! lexicographically over all vertex orderings. The minimum is found by a
//! branch-and-bound over orderings, which returns the same value as trying every
//! permutation.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Largest order accepted by [`generate_connected_graphs`].
pub const MAX_GENERATED_ORDER: usize = 8;

/// Largest order for which a canonical code fits in a `u64`.
const MAX_CODE_ORDER: usize = 11;

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `i < j` in the canonical bit order.
fn pair_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

struct Canonizer<'a> {
    adj: &'a [u64],
    n: usize,
    total: usize,
    order: Vec<usize>,
    used: u64,
    best: Option<u64>,
}

impl Canonizer<'_> {
    fn search(&mut self, depth: usize, prefix: u64, bits: usize) {
        if depth == self.n {
            if self.best.is_none_or(|b| prefix < b) {
                self.best = Some(prefix);
            }
            return;
        }
        for cand in 0..self.n {
            if self.used & (1 << cand) != 0 {
                continue;
            }
            let mut p = prefix;
            for &earlier in &self.order {
                p = (p << 1) | ((self.adj[earlier] >> cand) & 1);
            }
            let now = bits + depth;
            if let Some(best) = self.best {
                if p > best >> (self.total - now) {
                    continue;
                }
            }
            self.order.push(cand);
            self.used |= 1 << cand;
            self.search(depth + 1, p, now);
            self.used &= !(1 << cand);
            self.order.pop();
        }
    }
}

fn canonical_from_adjacency(adj: &[u64]) -> u64 {
    let n = adj.len();
    let mut c = Canonizer { adj, n, total: pair_count(n), order: Vec::new(), used: 0, best: None };
    c.search(0, 0, 0);
    c.best.unwrap_or(0)
}

/// Canonical code of `g`; isomorphic graphs get equal codes. Requires `n <= 11`.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    if g.order() > MAX_CODE_ORDER {
        return Err(Error::TooLarge(format!(
            "canonical codes are limited to order {MAX_CODE_ORDER}"
        )));
    }
    Ok(canonical_from_adjacency(&g.adjacency_bits()))
}

fn adjacency_from_code(n: usize, code: u64) -> Vec<u64> {
    let total = pair_count(n);
    let mut adj = vec![0u64; n];
    for j in 1..n {
        for i in 0..j {
            if (code >> (total - 1 - pair_index(i, j))) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

fn graph_from_adjacency(adj: &[u64]) -> Graph {
    let n = adj.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| (adj[u] >> v) & 1 == 1).map(move |v| (u, v)));
    Graph::new(n, edges.collect::<Vec<_>>()).expect("adjacency rows describe a simple graph")
}

fn adjacency_connected(adj: &[u64]) -> bool {
    let n = adj.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen & all == all
}

/// Canonical codes of every graph (connected or not) on `n` vertices, built by
/// adding a vertex in every possible way to each class on `n - 1` vertices.
fn all_classes(n: usize, connected_only_at_top: bool) -> BTreeSet<u64> {
    let mut classes = BTreeSet::from([0u64]);
    for order in 2..=n {
        let last = order == n;
        let mut next = BTreeSet::new();
        for &code in &classes {
            let base = adjacency_from_code(order - 1, code);
            for nbrs in 0u64..(1 << (order - 1)) {
                let mut adj = base.clone();
                adj.push(nbrs);
                for (v, row) in adj.iter_mut().enumerate().take(order - 1) {
                    *row |= ((nbrs >> v) & 1) << (order - 1);
                }
                if last && connected_only_at_top && !adjacency_connected(&adj) {
                    continue;
                }
                next.insert(canonical_from_adjacency(&adj));
            }
        }
        classes = next;
    }
    classes
}

/// Every connected simple graph on `n` vertices.
///
/// With `dedup`, one canonical representative per isomorphism class, sorted by
/// canonical code. Without it, every labeled graph, in upper-triangle bitmask order.
pub fn generate_connected_graphs(
    n: usize,
    dedup: bool,
) -> Result<Box<dyn Iterator<Item = Graph> + Send>> {
    if n == 0 || n > MAX_GENERATED_ORDER {
        return Err(Error::OutOfRange(format!(
            "graph generation supports 1 <= n <= {MAX_GENERATED_ORDER}, got {n}"
        )));
    }
    if !dedup {
        return Ok(Box::new(connected_labeled_graphs(n)?));
    }
    let classes = all_classes(n, true);
    Ok(Box::new(classes.into_iter().map(move |code| graph_from_adjacency(&adjacency_from_code(n, code)))))
}

/// Lazily iterates the connected labeled graphs on `n` vertices.
pub fn connected_labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph> + Send> {
    if n == 0 || n > MAX_GENERATED_ORDER {
        return Err(Error::OutOfRange(format!(
            "graph generation supports 1 <= n <= {MAX_GENERATED_ORDER}, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let masks = 0u64..(1u64 << pairs.len());
    Ok(masks.filter_map(move |mask| {
        let mut adj = vec![0u64; n];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if (mask >> bit) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        adjacency_connected(&adj).then(|| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|&(bit, _)| (mask >> bit) & 1 == 1)
                .map(|(_, &p)| p);
            Graph::new(n, edges.collect::<Vec<_>>()).expect("mask describes a simple graph")
        })
    }))
}

/// A connected graph on `n` vertices: a random spanning tree plus every other
/// pair independently with probability `extra`.
pub fn random_connected_graph<R: Rng + ?Sized>(n: usize, extra: f64, rng: &mut R) -> Graph {
    assert!(n >= 1);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut present = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        let (a, b) = (perm[parent], perm[v]);
        present[a][b] = true;
        present[b][a] = true;
        edges.push((a, b));
    }
    for (u, row) in present.iter().enumerate() {
        for (v, &here) in row.iter().enumerate().skip(u + 1) {
            if !here && rng.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
    Graph::new(n, edges).expect("random construction is simple")
}
