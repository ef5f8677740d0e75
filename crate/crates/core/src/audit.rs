//! Pass/fail matrix of every closed-form claim against an exhaustive census.

use serde::Serialize;

use crate::coloring::{bridge_bound, check_conflict_free_connected, lemma4_coloring, ruler_path_coloring};
use crate::exact::cfc_exact;
use crate::extremal::{
    binom2, build_gk, build_max_bridge_graph, f_formula, max_edges_with_k_bridges,
    Census, ExtremalTable,
};
use crate::graph::{
    bridges_by_deletion, ceil_log2, check_block_partition, find_bridges, Graph, DEFAULT_PATH_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// Nothing to check: no graph or no value falls under the claim.
    Vacuous,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Vacuous => "VACUOUS",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub k: Option<usize>,
    pub outcome: Outcome,
    pub detail: String,
}

fn check(name: &'static str, k: Option<usize>, ok: bool, detail: impl Into<String>) -> Check {
    let outcome = if ok { Outcome::Pass } else { Outcome::Fail };
    Check { name, k, outcome, detail: detail.into() }
}

fn vacuous(name: &'static str, k: Option<usize>, detail: impl Into<String>) -> Check {
    Check { name, k, outcome: Outcome::Vacuous, detail: detail.into() }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub partial: bool,
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }
}

fn is_star(g: &Graph) -> bool {
    g.is_tree() && (0..g.order()).any(|v| g.degree(v) + 1 == g.order())
}

/// Expected `t(n,k)`: `C(n,2)` for `k = 1`, `n` below `⌈log₂ n⌉`, `n - 1` from there on.
pub fn expected_t(n: usize, k: usize) -> usize {
    if k == 1 {
        binom2(n)
    } else if k < ceil_log2(n) {
        n
    } else {
        n - 1
    }
}

/// Runs every check for the order of `census`.
///
/// `samples` are extra connected graphs (any order) for the bridge-bound check;
/// `budget` bounds the exact solves of the path and extremal constructions.
pub fn audit(census: &Census, table: &ExtremalTable, samples: &[Graph], budget: u64) -> AuditReport {
    let n = census.n;
    let mut checks = Vec::new();
    if n < 2 {
        checks.push(vacuous("census", None, "no pair of vertices to connect"));
        return AuditReport { n, partial: false, checks };
    }
    let unsolved = census.unsolved();
    if !unsolved.is_empty() {
        checks.push(check("census", None, false, format!("unsolved graphs {unsolved:?}")));
    }
    checks.push(characterization(census));
    checks.push(path_formula(n, budget));
    checks.push(bridge_bound_check(census, samples));
    checks.push(two_edge_connected(census));
    if n < 3 {
        checks.push(vacuous("f/g rows", None, "no k with 2 <= k <= n - 1"));
    }
    for k in 2..=n.saturating_sub(2) {
        checks.push(f_threshold(census, k));
        checks.push(f_extremal(n, k, budget));
    }
    checks.extend(formula_checks(census, table, true));
    checks.push(bridge_oracle(census));
    for k in 2..n {
        checks.push(duality(census, k));
    }
    AuditReport { n, partial: !unsolved.is_empty(), checks }
}

/// The comparisons behind the table output: `f`, `t`, `g` and the cut-edge bound.
///
/// With `strict`, the cut-edge bound must be attained by a graph with exactly `k`
/// cut-edges; otherwise a `k` with no such graph is reported as vacuous.
pub fn formula_checks(census: &Census, table: &ExtremalTable, strict: bool) -> Vec<Check> {
    let n = census.n;
    let mut checks = Vec::new();
    for row in &table.rows {
        let k = row.k;
        checks.push(check(
            "t-values",
            Some(k),
            row.t == Some(expected_t(n, k)),
            format!("t = {:?}, expected {}", row.t, expected_t(n, k)),
        ));
        if k < 2 {
            continue;
        }
        checks.push(match (row.f, row.f_formula) {
            (Some(f), Some(formula)) => {
                check("f-formula", Some(k), f == formula, format!("s(n,k+1)+1 = {f}, formula {formula}"))
            }
            _ => vacuous("f-formula", Some(k), "no graph has cfc >= k + 1"),
        });
        checks.push(match (row.g, row.g_formula) {
            (Some(g), Some(formula)) => {
                check("g-formula", Some(k), g == formula, format!("t(n,k-1)-1 -> {g}, formula {formula}"))
            }
            _ => vacuous("g-formula", Some(k), "undefined"),
        });
    }
    for k in 0..n {
        checks.push(cut_edge_bound(census, k, strict));
    }
    checks
}

fn characterization(census: &Census) -> Check {
    let n = census.n;
    let offenders: Vec<usize> = census
        .entries
        .iter()
        .filter(|e| match e.cfc() {
            None => true,
            Some(c) => (c == 1) != e.graph.is_complete() || (n >= 3 && (c == n - 1) != is_star(&e.graph)),
        })
        .map(|e| e.id)
        .collect();
    check(
        "characterization",
        None,
        offenders.is_empty(),
        format!("cfc = 1 iff complete, cfc = n - 1 iff star; offenders {offenders:?}"),
    )
}

fn path_formula(n: usize, budget: u64) -> Check {
    let want = ceil_log2(n);
    let exact = cfc_exact(&Graph::path(n), budget).map(|r| r.value);
    let ruler = ruler_path_coloring(n).and_then(|c| {
        let ok = check_conflict_free_connected(&Graph::path(n), &c, DEFAULT_PATH_CAP)?.is_none();
        Ok((c.color_count(), ok))
    });
    let ok = exact.as_ref().ok() == Some(&want) && ruler.as_ref().ok() == Some(&(want, true));
    check("path", None, ok, format!("cfc(P_n) = {exact:?}, ruler (colors, verified) = {ruler:?}, expected {want}"))
}

fn bridge_bound_check(census: &Census, samples: &[Graph]) -> Check {
    let graphs = census.entries.iter().map(|e| &e.graph).chain(samples);
    let mut total = 0;
    let mut failures = Vec::new();
    for g in graphs.filter(|g| g.order() >= 2) {
        total += 1;
        let ok = lemma4_coloring(g).and_then(|c| {
            Ok(c.color_count() <= bridge_bound(g)
                && check_conflict_free_connected(g, &c, DEFAULT_PATH_CAP)?.is_none())
        });
        if ok != Ok(true) {
            failures.push(format!("{:?}", g.edges()));
        }
    }
    check(
        "bridge-bound",
        None,
        failures.is_empty(),
        format!("{total} graphs, failures {failures:?}"),
    )
}

fn two_edge_connected(census: &Census) -> Check {
    let relevant: Vec<_> =
        census.entries.iter().filter(|e| e.bridges == 0 && !e.graph.is_complete()).collect();
    if relevant.is_empty() {
        return vacuous("two-edge-connected", None, "no 2-edge-connected non-complete graph");
    }
    let offenders: Vec<usize> = relevant.iter().filter(|e| e.cfc() != Some(2)).map(|e| e.id).collect();
    check(
        "two-edge-connected",
        None,
        offenders.is_empty(),
        format!("{} graphs, cfc != 2 for {offenders:?}", relevant.len()),
    )
}

fn f_threshold(census: &Census, k: usize) -> Check {
    let f = f_formula(census.n, k).expect("k in range");
    let dense: Vec<_> = census.entries.iter().filter(|e| e.graph.size() >= f).collect();
    if dense.is_empty() {
        return vacuous("f-threshold", Some(k), format!("no graph with at least {f} edges"));
    }
    let offenders: Vec<usize> =
        dense.iter().filter(|e| e.cfc().is_none_or(|c| c > k)).map(|e| e.id).collect();
    check(
        "f-threshold",
        Some(k),
        offenders.is_empty(),
        format!("{} graphs with |E| >= {f}, cfc > k for {offenders:?}", dense.len()),
    )
}

fn f_extremal(n: usize, k: usize, budget: u64) -> Check {
    let f = f_formula(n, k).expect("k in range");
    let gk = build_gk(n, k).expect("n >= k + 2");
    let cfc = cfc_exact(&gk, budget).map(|r| r.value);
    check(
        "f-extremal",
        Some(k),
        gk.size() + 1 == f && cfc.as_ref().ok() == Some(&(k + 1)),
        format!("G_k has {} edges (want {}), cfc {cfc:?} (want {})", gk.size(), f - 1, k + 1),
    )
}

fn cut_edge_bound(census: &Census, k: usize, strict: bool) -> Check {
    let n = census.n;
    let bound = max_edges_with_k_bridges(n, k).expect("k < n");
    let best = census.max_edges_with_exact_bridges(k).map(|(m, _)| m);
    let built = build_max_bridge_graph(n, k)
        .map(|g| g.size() == bound && find_bridges(&g).len() == k);
    let detail = format!("max |E| with exactly {k} cut-edges = {best:?}, bound {bound}, construction {built:?}");
    match best {
        None if !strict => vacuous("cut-edge-bound", Some(k), detail),
        _ => check("cut-edge-bound", Some(k), best == Some(bound) && built == Ok(true), detail),
    }
}

fn bridge_oracle(census: &Census) -> Check {
    let offenders: Vec<String> = census
        .entries
        .iter()
        .filter_map(|e| {
            if find_bridges(&e.graph) != bridges_by_deletion(&e.graph) {
                return Some(format!("#{}: bridges differ", e.id));
            }
            check_block_partition(&e.graph).err().map(|why| format!("#{}: {why}", e.id))
        })
        .collect();
    check("bridge-oracle", None, offenders.is_empty(), format!("{offenders:?}"))
}

fn duality(census: &Census, k: usize) -> Check {
    let g_ok = census.t(k - 1).map(|(t, _)| census.g_by_scan(k) + 1 == t);
    let f_ok = census.s(k + 1).map(|(s, _)| census.f_by_scan(k) == s + 1);
    let detail = format!(
        "scan f = {}, s(n,k+1) = {:?}; scan g = {}, t(n,k-1) = {:?}",
        census.f_by_scan(k),
        census.s(k + 1).map(|x| x.0),
        census.g_by_scan(k),
        census.t(k - 1).map(|x| x.0)
    );
    match (f_ok, g_ok) {
        (None, None) => vacuous("duality", Some(k), detail),
        (f, g) => check("duality", Some(k), f != Some(false) && g != Some(false), detail),
    }
}
