//! Extremal edge thresholds for the conflict-free connection number.
//!
//! For connected graphs of order `n`:
//!
//! - `s(n,k)`: most edges of a graph with `cfc >= k`;
//! - `t(n,k)`: fewest edges of a graph with `cfc <= k`;
//! - `f(n,k)`: least `F` such that `|E| >= F` forces `cfc <= k`, equal to `s(n,k+1) + 1`;
//! - `g(n,k)`: largest `G` such that `|E| <= G` forces `cfc >= k`, equal to `t(n,k-1) - 1`.
//!
//! `g(n,k)` is reported as not existing when the only valid thresholds lie below
//! `n - 1`, where no connected graph lives.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{cfc_exact, CfcResult};
use crate::graph::{ceil_log2, find_bridges, generate_connected_graphs, Graph};

/// `C(a, 2)`, zero for `a < 2`.
pub fn binom2(a: usize) -> usize {
    a * a.saturating_sub(1) / 2
}

fn check_k_range(n: usize, k: usize) -> Result<()> {
    if k < 2 || k + 1 > n {
        return Err(Error::OutOfRange(format!("need 2 <= k <= n - 1, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// `f(n,k) = C(n-k-1, 2) + k + 2` for `2 <= k <= n - 1`.
pub fn f_formula(n: usize, k: usize) -> Result<usize> {
    check_k_range(n, k)?;
    Ok(binom2(n - k - 1) + k + 2)
}

/// A value of `g(n,k)`: an edge count, or the marker that no threshold exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GValue {
    Edges(usize),
    DoesNotExist,
}

impl GValue {
    /// Classifies a raw threshold: anything below `n - 1` does not exist.
    pub fn from_threshold(n: usize, threshold: usize) -> GValue {
        if threshold + 1 >= n {
            GValue::Edges(threshold)
        } else {
            GValue::DoesNotExist
        }
    }
}

impl std::fmt::Display for GValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GValue::Edges(m) => write!(f, "{m}"),
            GValue::DoesNotExist => f.write_str("does-not-exist"),
        }
    }
}

impl Serialize for GValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GValue::Edges(m) => s.serialize_u64(*m as u64),
            GValue::DoesNotExist => s.serialize_str("does-not-exist"),
        }
    }
}

/// Piecewise `g(n,k)` for `2 <= k <= n - 1`:
///
/// - `C(n,2) - 1` for `k = 2`;
/// - `n - 1` for `3 <= k <= ⌈log₂ n⌉`;
/// - does not exist for `k > ⌈log₂ n⌉`.
///
/// The middle range includes `k = ⌈log₂ n⌉`: every graph with at most `n - 1`
/// edges is a tree, and trees need at least `⌈log₂ n⌉` colors, while `C_n` has
/// `n` edges and needs only 2. A version of this statement that excludes the
/// endpoint is refuted by the exhaustive tables.
pub fn g_formula(n: usize, k: usize) -> Result<GValue> {
    check_k_range(n, k)?;
    Ok(if k == 2 {
        GValue::Edges(binom2(n) - 1)
    } else if k <= ceil_log2(n) {
        GValue::Edges(n - 1)
    } else {
        GValue::DoesNotExist
    })
}

/// Upper bound `C(n-k, 2) + k` on the edges of a connected graph of order `n`
/// with `k` cut-edges.
///
/// The bound is attained whenever a graph with exactly `k` cut-edges exists,
/// which is every `k` except `k = n - 2` (see [`bridge_count_realizable`]).
/// Since the bound decreases in `k`, it is also the exact maximum over graphs
/// with at least `k` cut-edges.
pub fn max_edges_with_k_bridges(n: usize, k: usize) -> Result<usize> {
    if n == 0 || k >= n {
        return Err(Error::OutOfRange(format!("need 0 <= k <= n - 1, got n = {n}, k = {k}")));
    }
    Ok(binom2(n - k) + k)
}

/// Whether some connected graph of order `n` has exactly `k` cut-edges.
///
/// Deleting `k` cut-edges leaves `k + 1` components, each a single vertex or
/// bridgeless with at least 3 vertices. Sizes summing to `n` exist unless
/// `k = n - 2`, which would force one component of size exactly 2.
pub fn bridge_count_realizable(n: usize, k: usize) -> bool {
    n >= 1 && k < n && k + 2 != n
}

/// `K_{n-k-1}` on vertices `0..n-k-1` with `k + 1` pendant vertices hung on vertex 0.
///
/// Has `C(n-k-1, 2) + k + 1` edges. Its conflict-free connection number is
/// `k + 1`, except when `n - k - 1 = 2`: the clique is then a single edge and the
/// whole graph is the star `K_{1,n-1}`, which needs `k + 2` colors.
pub fn build_gk(n: usize, k: usize) -> Result<Graph> {
    if n < k + 2 {
        return Err(Error::OutOfRange(format!("need n >= k + 2, got n = {n}, k = {k}")));
    }
    Ok(clique_with_pendants(n - k - 1, k + 1))
}

/// The conflict-free connection number of [`build_gk`]`(n, k)`: `k + 2` when the
/// construction collapses to the star `K_{1,n-1}` (`n - k - 1 = 2`), else `k + 1`.
pub fn gk_cfc(n: usize, k: usize) -> Result<usize> {
    build_gk(n, k)?;
    Ok(if n - k - 1 == 2 { k + 2 } else { k + 1 })
}

/// `K_{n-k}` with `k` pendant vertices on vertex 0: exactly `k` cut-edges and
/// `C(n-k, 2) + k` edges. Fails for `k = n - 2`, where no graph has exactly `k`
/// cut-edges.
pub fn build_max_bridge_graph(n: usize, k: usize) -> Result<Graph> {
    max_edges_with_k_bridges(n, k)?;
    if !bridge_count_realizable(n, k) {
        return Err(Error::Unrealizable(format!(
            "no connected graph of order {n} has exactly {k} cut-edges"
        )));
    }
    Ok(clique_with_pendants(n - k, k))
}

fn clique_with_pendants(clique: usize, pendants: usize) -> Graph {
    let n = clique + pendants;
    let inner = (0..clique).flat_map(|u| (u + 1..clique).map(move |v| (u, v)));
    let leaves = (clique..n).map(|v| (0, v));
    Graph::new(n, inner.chain(leaves).collect::<Vec<_>>()).expect("construction is simple")
}

/// One connected graph of the census with its cut-edge count and exact solution.
#[derive(Debug, Clone)]
pub struct CensusEntry {
    pub id: usize,
    pub graph: Graph,
    pub bridges: usize,
    pub outcome: Result<CfcResult>,
}

impl CensusEntry {
    pub fn cfc(&self) -> Option<usize> {
        self.outcome.as_ref().ok().map(|r| r.value)
    }
}

/// Every connected graph of order `n` up to isomorphism, each solved exactly.
#[derive(Debug, Clone)]
pub struct Census {
    pub n: usize,
    pub entries: Vec<CensusEntry>,
}

impl Census {
    /// Solves every class in parallel; per-graph failures are kept, not raised.
    pub fn build(n: usize, budget: u64) -> Result<Census> {
        Census::build_with(n, budget, true)
    }

    /// As [`Census::build`]; without `dedup`, every labeled connected graph is included.
    pub fn build_with(n: usize, budget: u64, dedup: bool) -> Result<Census> {
        let graphs: Vec<Graph> = generate_connected_graphs(n, dedup)?.collect();
        let entries = graphs
            .into_par_iter()
            .enumerate()
            .map(|(id, graph)| {
                let bridges = find_bridges(&graph).len();
                let outcome = if n >= 2 { cfc_exact(&graph, budget) } else { Err(Error::TooSmall(2)) };
                CensusEntry { id, graph, bridges, outcome }
            })
            .collect();
        Ok(Census { n, entries })
    }

    /// False if any graph of order at least 2 went unsolved.
    pub fn is_complete(&self) -> bool {
        self.n < 2 || self.entries.iter().all(|e| e.outcome.is_ok())
    }

    pub fn unsolved(&self) -> Vec<usize> {
        if self.n < 2 {
            return Vec::new();
        }
        self.entries.iter().filter(|e| e.outcome.is_err()).map(|e| e.id).collect()
    }

    /// `(edges, cfc, id)` for every solved graph.
    pub fn solved(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.entries
            .iter()
            .filter_map(|e| e.cfc().map(|c| (e.graph.size(), c, e.id)))
    }

    /// `s(n,k)` with a witness id; `None` when no graph has `cfc >= k`.
    /// Ties go to the smallest id.
    pub fn s(&self, k: usize) -> Option<(usize, usize)> {
        self.solved()
            .filter(|&(_, c, _)| c >= k)
            .map(|(m, _, id)| (m, id))
            .min_by_key(|&(m, id)| (std::cmp::Reverse(m), id))
    }

    /// `t(n,k)` with a witness id; `None` when no graph has `cfc <= k`.
    pub fn t(&self, k: usize) -> Option<(usize, usize)> {
        self.solved()
            .filter(|&(_, c, _)| c <= k)
            .map(|(m, _, id)| (m, id))
            .min()
    }

    /// Least `F` such that every graph with at least `F` edges has `cfc <= k`,
    /// found by scanning thresholds.
    pub fn f_by_scan(&self, k: usize) -> usize {
        (0..=binom2(self.n) + 1)
            .find(|&threshold| self.solved().all(|(m, c, _)| m < threshold || c <= k))
            .expect("a threshold above C(n,2) is always vacuous")
    }

    /// Largest `G` such that every graph with at most `G` edges has `cfc >= k`,
    /// found by scanning thresholds.
    pub fn g_by_scan(&self, k: usize) -> usize {
        (0..=binom2(self.n))
            .rev()
            .find(|&threshold| self.solved().all(|(m, c, _)| m > threshold || c >= k))
            .unwrap_or(0)
    }

    /// Most edges over graphs with exactly `k` cut-edges, with a witness id.
    pub fn max_edges_with_exact_bridges(&self, k: usize) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .filter(|e| e.bridges == k)
            .map(|e| (e.graph.size(), e.id))
            .min_by_key(|&(m, id)| (std::cmp::Reverse(m), id))
    }

    pub fn graph(&self, id: usize) -> &Graph {
        &self.entries[id].graph
    }
}

fn serialize_opt<S: Serializer>(v: &Option<usize>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_u64(*x as u64),
        None => s.serialize_str("undefined"),
    }
}

/// One row of an [`ExtremalTable`]; `None` marks an undefined value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub k: usize,
    #[serde(serialize_with = "serialize_opt")]
    pub s: Option<usize>,
    #[serde(serialize_with = "serialize_opt")]
    pub t: Option<usize>,
    /// `s(n,k+1) + 1`; `None` for `k < 2` or when no graph has `cfc >= k + 1`.
    #[serde(serialize_with = "serialize_opt")]
    pub f: Option<usize>,
    /// `t(n,k-1) - 1`, classified; `None` for `k < 2`.
    pub g: Option<GValue>,
    #[serde(serialize_with = "serialize_opt")]
    pub f_formula: Option<usize>,
    pub g_formula: Option<GValue>,
    /// Thresholds found by scanning the census directly, without the duality relations.
    #[serde(serialize_with = "serialize_opt")]
    pub f_scan: Option<usize>,
    #[serde(serialize_with = "serialize_opt")]
    pub g_scan: Option<usize>,
    pub s_witness: Option<usize>,
    pub t_witness: Option<usize>,
}

impl TableRow {
    /// `s:<id> t:<id>`, omitting missing witnesses.
    pub fn witness_label(&self) -> String {
        let mut parts = Vec::new();
        if let Some(id) = self.s_witness {
            parts.push(format!("s:{id}"));
        }
        if let Some(id) = self.t_witness {
            parts.push(format!("t:{id}"));
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessGraph {
    pub id: usize,
    pub graph: Graph,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalTable {
    pub n: usize,
    pub graph_count: usize,
    /// True when some graphs could not be solved; values then cover solved graphs only.
    pub partial: bool,
    pub unsolved: Vec<usize>,
    pub rows: Vec<TableRow>,
    pub witnesses: Vec<WitnessGraph>,
}

/// Builds the exhaustive census of order `n` and tabulates it.
pub fn compute_s_t_table(n: usize, budget: u64) -> Result<ExtremalTable> {
    Ok(table_from_census(&Census::build(n, budget)?))
}

pub fn table_from_census(census: &Census) -> ExtremalTable {
    let n = census.n;
    let rows: Vec<TableRow> = (1..n)
        .map(|k| {
            let s = census.s(k);
            let t = census.t(k);
            let ranged = k >= 2;
            TableRow {
                k,
                s: s.map(|x| x.0),
                t: t.map(|x| x.0),
                f: if ranged { census.s(k + 1).map(|(m, _)| m + 1) } else { None },
                g: if ranged {
                    census.t(k - 1).map(|(m, _)| GValue::from_threshold(n, m - 1))
                } else {
                    None
                },
                f_formula: f_formula(n, k).ok(),
                g_formula: g_formula(n, k).ok(),
                f_scan: ranged.then(|| census.f_by_scan(k)),
                g_scan: ranged.then(|| census.g_by_scan(k)),
                s_witness: s.map(|x| x.1),
                t_witness: t.map(|x| x.1),
            }
        })
        .collect();
    let ids: std::collections::BTreeSet<usize> =
        rows.iter().flat_map(|r| r.s_witness.into_iter().chain(r.t_witness)).collect();
    let witnesses = ids
        .into_iter()
        .map(|id| WitnessGraph { id, graph: census.graph(id).clone() })
        .collect();
    let unsolved = census.unsolved();
    ExtremalTable {
        n,
        graph_count: census.entries.len(),
        partial: !unsolved.is_empty(),
        unsolved,
        rows,
        witnesses,
    }
}

impl ExtremalTable {
    pub fn row(&self, k: usize) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    /// CSV with columns `n,k,s,t,f,g,witness_graph_id`.
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<usize>, missing: &str| v.map_or(missing.to_string(), |x| x.to_string());
        let mut out = String::from("n,k,s,t,f,g,witness_graph_id\n");
        for r in &self.rows {
            let f = if r.k < 2 { "n/a".to_string() } else { opt(r.f, "vacuous") };
            let g = match r.g {
                None => "n/a".to_string(),
                Some(g) => g.to_string(),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                self.n,
                r.k,
                opt(r.s, "undefined"),
                opt(r.t, "undefined"),
                f,
                g,
                r.witness_label()
            );
        }
        out
    }

    /// Witness graphs keyed by census id.
    pub fn witness_map(&self) -> BTreeMap<usize, &Graph> {
        self.witnesses.iter().map(|w| (w.id, &w.graph)).collect()
    }
}
