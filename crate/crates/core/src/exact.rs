//! Exact conflict-free connection number by exhaustive search.
//!
//! Starting from a sound lower bound, each color budget `k` is searched
//! exhaustively before moving to `k + 1`. Edges are colored in edge-id order and a
//! new color may only be opened as `1 + (largest color so far)`, which removes
//! the `k!` relabelings of every coloring.
//!
//! Every non-adjacent vertex pair keeps its simple paths as edge bitmasks. A pair
//! is pruned as soon as none of its paths can still become conflict-free under
//! any completion of the current partial coloring, and is cached as satisfied as
//! soon as one fully colored path is conflict-free. Adjacent pairs are always
//! served by their edge and are never tracked.

use serde::{Deserialize, Serialize};

use crate::coloring::{check_conflict_free_connected, Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{ceil_log2, enumerate_simple_paths, Graph, DEFAULT_PATH_CAP};

/// Default search budget, in search-tree nodes.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest edge count the bitmask search handles.
pub const MAX_EXACT_EDGES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundReason {
    /// At least one color is always needed.
    Trivial,
    /// Pendant edges sharing an endpoint need pairwise distinct colors.
    PendantEdges,
    /// Trees on `n` vertices need at least `⌈log₂ n⌉` colors.
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: usize,
    pub reason: BoundReason,
}

/// Nodes spent proving that `colors` colors do not suffice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustedLevel {
    pub colors: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfcResult {
    pub value: usize,
    pub certificate: EdgeColoring,
    pub lower_bound: LowerBound,
    /// One entry per color budget below `value` that was searched to exhaustion;
    /// empty when `value` equals the analytic lower bound.
    pub exhausted: Vec<ExhaustedLevel>,
    pub nodes: u64,
}

impl CfcResult {
    pub fn proven_by_bound(&self) -> bool {
        self.exhausted.is_empty()
    }
}

fn check_solvable(g: &Graph) -> Result<()> {
    if g.order() < 2 {
        return Err(Error::TooSmall(2));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Lower bound with the argument that produced it.
///
/// If two pendant edges `xa`, `xb` meet at `x`, then `a x b` is the only `a`–`b`
/// path, so the two edges need different colors. Hence the largest number of
/// pendant edges at one vertex bounds the color count from below.
pub fn lower_bound_detail(g: &Graph) -> Result<LowerBound> {
    check_solvable(g)?;
    let pendant = (0..g.order())
        .map(|v| g.neighbors(v).iter().filter(|&&(w, _)| g.degree(w) == 1).count())
        .max()
        .unwrap_or(0);
    let tree = if g.is_tree() { ceil_log2(g.order()) } else { 1 };
    let bound = if tree > 1 && tree >= pendant {
        LowerBound { value: tree, reason: BoundReason::Tree }
    } else if pendant > 1 {
        LowerBound { value: pendant, reason: BoundReason::PendantEdges }
    } else {
        LowerBound { value: 1, reason: BoundReason::Trivial }
    };
    Ok(bound)
}

/// `max(1, p, t)`: `p` the most pendant edges at one vertex, `t = ⌈log₂ n⌉` for trees.
pub fn cfc_lower_bound(g: &Graph) -> Result<usize> {
    Ok(lower_bound_detail(g)?.value)
}

enum PairStatus {
    Satisfied,
    Alive,
    Dead,
}

struct BudgetExhausted;

struct Search {
    edges: usize,
    k: usize,
    /// Path masks of each tracked pair.
    pairs: Vec<Vec<u128>>,
    /// Pairs having at least one path through each edge.
    touching: Vec<Vec<usize>>,
    colors: Vec<Color>,
    class: Vec<u128>,
    colored: u128,
    satisfied: Vec<bool>,
    undo: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn new(g: &Graph) -> Result<Search> {
        let n = g.order();
        let mut pairs = Vec::new();
        let mut touching = vec![Vec::new(); g.size()];
        for u in 0..n {
            for v in u + 1..n {
                if g.edge_between(u, v).is_some() {
                    continue;
                }
                let masks: Vec<u128> = enumerate_simple_paths(g, u, v, DEFAULT_PATH_CAP)?
                    .iter()
                    .map(|p| p.edges().iter().fold(0u128, |m, &e| m | 1 << e))
                    .collect();
                let union = masks.iter().fold(0u128, |a, &m| a | m);
                for (e, list) in touching.iter_mut().enumerate() {
                    if union >> e & 1 == 1 {
                        list.push(pairs.len());
                    }
                }
                pairs.push(masks);
            }
        }
        let tracked = pairs.len();
        Ok(Search {
            edges: g.size(),
            k: 0,
            pairs,
            touching,
            colors: vec![0; g.size()],
            class: Vec::new(),
            colored: 0,
            satisfied: vec![false; tracked],
            undo: Vec::new(),
            nodes: 0,
            budget: 0,
        })
    }

    fn reset(&mut self, k: usize) {
        self.k = k;
        self.class = vec![0; k + 1];
        self.colored = 0;
        self.colors.iter_mut().for_each(|c| *c = 0);
        self.satisfied.iter_mut().for_each(|s| *s = false);
        self.undo.clear();
    }

    fn conflict_free(&self, path: u128) -> bool {
        self.class[1..].iter().any(|&cls| (path & cls).count_ones() == 1)
    }

    /// Whether some completion with colors `1..=k` can make `path` conflict-free.
    fn can_become_conflict_free(&self, path: u128) -> bool {
        // tracked pairs are non-adjacent, so a monochromatic completion never works
        self.k >= 2 && self.class[1..].iter().any(|&cls| (path & cls).count_ones() <= 1)
    }

    fn status(&self, pair: usize) -> PairStatus {
        let mut alive = false;
        for &path in &self.pairs[pair] {
            if path & !self.colored == 0 {
                if self.conflict_free(path) {
                    return PairStatus::Satisfied;
                }
            } else if !alive {
                alive = self.can_become_conflict_free(path);
            }
        }
        if alive {
            PairStatus::Alive
        } else {
            PairStatus::Dead
        }
    }

    /// Re-examines the pairs affected by coloring `edge`; false if one is dead.
    fn consistent(&mut self, edge: usize) -> bool {
        for i in 0..self.touching[edge].len() {
            let pair = self.touching[edge][i];
            if self.satisfied[pair] {
                continue;
            }
            match self.status(pair) {
                PairStatus::Satisfied => {
                    self.satisfied[pair] = true;
                    self.undo.push(pair);
                }
                PairStatus::Alive => {}
                PairStatus::Dead => return false,
            }
        }
        true
    }

    fn dfs(&mut self, edge: usize, max_used: usize) -> Result<bool, BudgetExhausted> {
        if edge == self.edges {
            return Ok(true);
        }
        let bit = 1u128 << edge;
        for color in 1..=self.k.min(max_used + 1) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(BudgetExhausted);
            }
            self.colors[edge] = color as Color;
            self.colored |= bit;
            self.class[color] |= bit;
            let mark = self.undo.len();
            if self.consistent(edge) && self.dfs(edge + 1, max_used.max(color))? {
                return Ok(true);
            }
            for pair in self.undo.drain(mark..) {
                self.satisfied[pair] = false;
            }
            self.class[color] &= !bit;
            self.colored &= !bit;
            self.colors[edge] = 0;
        }
        Ok(false)
    }
}

/// Computes `cfc(g)` with a certificate coloring, searching at most `budget` nodes.
///
/// Budget exhaustion is reported as [`Error::BudgetExhausted`]; no value is guessed.
pub fn cfc_exact(g: &Graph, budget: u64) -> Result<CfcResult> {
    let lower_bound = lower_bound_detail(g)?;
    if g.size() > MAX_EXACT_EDGES {
        return Err(Error::TooLarge(format!(
            "exact search handles at most {MAX_EXACT_EDGES} edges, graph has {}",
            g.size()
        )));
    }
    let mut search = Search::new(g)?;
    search.budget = budget;
    let mut exhausted = Vec::new();
    for k in lower_bound.value..=g.size() {
        search.reset(k);
        let before = search.nodes;
        let found = search
            .dfs(0, 0)
            .map_err(|_| Error::BudgetExhausted { budget })?;
        if !found {
            exhausted.push(ExhaustedLevel { colors: k, nodes: search.nodes - before });
            continue;
        }
        let certificate = EdgeColoring::new(search.colors.clone())?;
        if certificate.color_count() != k {
            return Err(Error::Internal(format!(
                "certificate uses {} colors at budget {k}",
                certificate.color_count()
            )));
        }
        if let Some((u, v)) = check_conflict_free_connected(g, &certificate, DEFAULT_PATH_CAP)? {
            return Err(Error::Internal(format!(
                "certificate rejected by the verifier at pair ({u}, {v})"
            )));
        }
        return Ok(CfcResult { value: k, certificate, lower_bound, exhausted, nodes: search.nodes });
    }
    Err(Error::Internal("no coloring found even with all colors distinct".into()))
}
