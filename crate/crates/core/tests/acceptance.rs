//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::process::ExitCode;
use std::time::Instant;

use cfc_core::coloring::{bridge_bound, check_conflict_free_connected, lemma4_coloring, ruler_path_coloring};
use cfc_core::exact::{cfc_exact, DEFAULT_BUDGET};
use cfc_core::extremal::{
    binom2, build_gk, build_max_bridge_graph, f_formula, g_formula, max_edges_with_k_bridges,
    table_from_census, Census, ExtremalTable, GValue,
};
use cfc_core::graph::{
    bridges_by_deletion, ceil_log2, check_block_partition, find_bridges, random_connected_graph,
    DEFAULT_PATH_CAP,
};
use cfc_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_CENSUS: usize = 7;

struct Data {
    /// Index `n` holds the census of order `n`.
    censuses: Vec<Census>,
    tables: Vec<ExtremalTable>,
}

type Outcome = Result<String, Vec<String>>;
type Criterion = (&'static str, fn(&Data) -> Outcome);

fn cfc(g: &Graph) -> Option<usize> {
    cfc_exact(g, DEFAULT_BUDGET).ok().map(|r| r.value)
}

fn is_star(g: &Graph) -> bool {
    g.is_tree() && (0..g.order()).any(|v| g.degree(v) + 1 == g.order())
}

fn finish(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(failures)
    }
}

fn characterization(d: &Data) -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=6 {
        if cfc(&Graph::complete(n)) != Some(1) {
            failures.push(format!("cfc(K_{n}) != 1"));
        }
    }
    for n in 3..=8 {
        if cfc(&Graph::star(n)) != Some(n - 1) {
            failures.push(format!("cfc(K_1,{}) != {}", n - 1, n - 1));
        }
    }
    for n in 2..=6 {
        for e in &d.censuses[n].entries {
            let c = e.cfc();
            if (c == Some(1)) != e.graph.is_complete() {
                failures.push(format!("n={n} #{}: cfc {c:?}, complete {}", e.id, e.graph.is_complete()));
            }
            if n >= 3 && (c == Some(n - 1)) != is_star(&e.graph) {
                failures.push(format!("n={n} #{}: cfc {c:?}, star {}", e.id, is_star(&e.graph)));
            }
        }
    }
    finish(failures, "K_n (2..6) -> 1, stars (3..8) -> n-1, unique in census n <= 6".into())
}

fn path_formula(_: &Data) -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=9 {
        let got = cfc(&Graph::path(n));
        if got != Some(ceil_log2(n)) {
            failures.push(format!("cfc(P_{n}) = {got:?}, want {}", ceil_log2(n)));
        }
    }
    for n in 2..=1025 {
        let c = ruler_path_coloring(n).unwrap();
        let missing = check_conflict_free_connected(&Graph::path(n), &c, DEFAULT_PATH_CAP);
        if c.color_count() != ceil_log2(n) || !matches!(missing, Ok(None)) {
            failures.push(format!("ruler P_{n}: {} colors, verifier {missing:?}", c.color_count()));
        }
    }
    finish(failures, "exact for n <= 9, ruler verified for n <= 1025".into())
}

fn bridge_coloring_ok(g: &Graph) -> Result<(), String> {
    let c = lemma4_coloring(g).map_err(|e| e.to_string())?;
    if c.color_count() > bridge_bound(g) {
        return Err(format!("{} colors > bound {}", c.color_count(), bridge_bound(g)));
    }
    match check_conflict_free_connected(g, &c, DEFAULT_PATH_CAP) {
        Ok(None) => Ok(()),
        other => Err(format!("verifier {other:?}")),
    }
}

fn bridge_bound_coloring(d: &Data) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=MAX_CENSUS {
        for e in &d.censuses[n].entries {
            count += 1;
            if let Err(why) = bridge_coloring_ok(&e.graph) {
                failures.push(format!("n={n} #{}: {why}", e.id));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..500 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.0..0.6);
        let g = random_connected_graph(n, p, &mut rng);
        if let Err(why) = bridge_coloring_ok(&g) {
            failures.push(format!("random #{i} {:?}: {why}", g.edges()));
        }
    }
    finish(failures, format!("{count} census graphs + 500 random graphs"))
}

fn two_edge_connected(d: &Data) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=MAX_CENSUS {
        for e in d.censuses[n].entries.iter().filter(|e| e.bridges == 0 && !e.graph.is_complete()) {
            count += 1;
            if e.cfc() != Some(2) {
                failures.push(format!("n={n} #{}: cfc {:?}", e.id, e.cfc()));
            }
        }
    }
    finish(failures, format!("{count} bridgeless non-complete graphs have cfc 2"))
}

fn f_sharpness(d: &Data) -> Outcome {
    let mut failures = Vec::new();
    for n in 5..=7 {
        for k in 2..=n - 2 {
            let f = f_formula(n, k).unwrap();
            for e in d.censuses[n].entries.iter().filter(|e| e.graph.size() >= f) {
                if e.cfc().is_none_or(|c| c > k) {
                    failures.push(format!("(a) n={n} k={k} #{}: |E|={} cfc {:?}", e.id, e.graph.size(), e.cfc()));
                }
            }
            let gk = build_gk(n, k).unwrap();
            let c = cfc(&gk);
            if gk.size() + 1 != f || c != Some(k + 1) {
                failures.push(format!(
                    "(b) n={n} k={k}: G_k has {} edges (want {}), cfc {c:?} (want {})",
                    gk.size(),
                    f - 1,
                    k + 1
                ));
            }
        }
    }
    finish(failures, "threshold and extremal graph for n in 5..7".into())
}

fn g_theorem(d: &Data) -> Outcome {
    let mut failures = Vec::new();
    for n in 5..=7 {
        let table = &d.tables[n];
        for row in &table.rows {
            let k = row.k;
            let want = if k == 1 {
                binom2(n)
            } else if k < ceil_log2(n) {
                n
            } else {
                n - 1
            };
            if row.t != Some(want) {
                failures.push(format!("t({n},{k}) = {:?}, want {want}", row.t));
            }
            if k >= 2 {
                let formula = g_formula(n, k).unwrap();
                if row.g != Some(formula) {
                    failures.push(format!("g({n},{k}) derived {:?}, formula {formula}", row.g));
                }
            }
        }
        if !table.rows.iter().any(|r| r.g == Some(GValue::DoesNotExist)) {
            failures.push(format!("n={n}: no does-not-exist row"));
        }
    }
    finish(failures, "t-tables and derived g for n in 5..7".into())
}

fn cut_edge_bound(d: &Data) -> Outcome {
    let mut failures = Vec::new();
    for n in 5..=7 {
        for k in 0..n {
            let bound = max_edges_with_k_bridges(n, k).unwrap();
            let best = d.censuses[n].max_edges_with_exact_bridges(k).map(|(m, _)| m);
            if best != Some(bound) {
                failures.push(format!("n={n} k={k}: exhaustive max {best:?}, formula {bound}"));
            }
            match build_max_bridge_graph(n, k) {
                Ok(g) if g.size() == bound && find_bridges(&g).len() == k => {}
                Ok(g) => failures.push(format!("n={n} k={k}: construction has {} edges", g.size())),
                Err(e) => failures.push(format!("n={n} k={k}: construction failed: {e}")),
            }
        }
    }
    finish(failures, "exhaustive maxima match for n in 5..7".into())
}

fn bridge_oracle(d: &Data) -> Outcome {
    let mut failures = Vec::new();
    let mut check = |label: String, g: &Graph| {
        if find_bridges(g) != bridges_by_deletion(g) {
            failures.push(format!("{label}: bridges differ"));
        }
        if let Err(why) = check_block_partition(g) {
            failures.push(format!("{label}: {why}"));
        }
    };
    for n in 1..=6 {
        for e in &d.censuses[n].entries {
            check(format!("n={n} #{}", e.id), &e.graph);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xb1d6e);
    for i in 0..1000 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.05..0.6);
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        check(format!("random #{i}"), &Graph::new(n, edges).unwrap());
    }
    finish(failures, "census n <= 6 and 1000 random graphs".into())
}

fn duality(d: &Data) -> Outcome {
    let mut failures = Vec::new();
    let mut compared = 0;
    for n in 3..=MAX_CENSUS {
        let census = &d.censuses[n];
        for k in 2..n {
            let f_scan = census.f_by_scan(k);
            if let Some((s, _)) = census.s(k + 1) {
                compared += 1;
                if f_scan != s + 1 {
                    failures.push(format!("f({n},{k}) by scan {f_scan} != s(n,k+1)+1 = {}", s + 1));
                }
            }
            let g_scan = census.g_by_scan(k);
            if let Some((t, _)) = census.t(k - 1) {
                compared += 1;
                if g_scan + 1 != t {
                    failures.push(format!("g({n},{k}) by scan {g_scan} != t(n,k-1)-1 = {}", t - 1));
                }
            }
        }
    }
    finish(failures, format!("{compared} identities on tables n <= {MAX_CENSUS}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut censuses = vec![Census { n: 0, entries: Vec::new() }];
    censuses.extend((1..=MAX_CENSUS).map(|n| Census::build(n, DEFAULT_BUDGET).expect("census")));
    let tables = censuses.iter().map(table_from_census).collect();
    let data = Data { censuses, tables };
    let incomplete: Vec<usize> = (2..=MAX_CENSUS).filter(|&n| !data.censuses[n].is_complete()).collect();
    println!("census n <= {MAX_CENSUS} built in {:.1?} (incomplete orders: {incomplete:?})", start.elapsed());

    let criteria: [Criterion; 9] = [
        ("1 characterization of the extremes", characterization),
        ("2 path formula", path_formula),
        ("3 bridge-bounded coloring", bridge_bound_coloring),
        ("4 2-edge-connected graphs need 2 colors", two_edge_connected),
        ("5 f threshold sharpness", f_sharpness),
        ("6 t-values and g", g_theorem),
        ("7 max edges with exactly k cut-edges", cut_edge_bound),
        ("8 bridge oracle equivalence", bridge_oracle),
        ("9 duality identities", duality),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        match run(&data) {
            Ok(summary) => println!("PASS  {name}: {summary} [{:.1?}]", t.elapsed()),
            Err(failures) => {
                failed += 1;
                println!("FAIL  {name}: {} violation(s) [{:.1?}]", failures.len(), t.elapsed());
                for f in failures.iter().take(20) {
                    println!("        {f}");
                }
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
