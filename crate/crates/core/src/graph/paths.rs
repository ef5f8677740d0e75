use std::ops::ControlFlow;

use super::{biconnected_blocks, EdgeId, Graph, Path};
use crate::error::{Error, Result};

/// Default limit on the number of paths an exhaustive enumeration may visit.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// Walks every simple `u`–`v` path in depth-first order, following adjacency
/// lists in edge-id order, and hands each one to `visit` as `(vertices, edges)`.
///
/// Only edges accepted by `include` are traversed. Stops early when `visit`
/// breaks. Errors once more than `cap` paths have been visited.
pub(crate) fn walk_simple_paths<B>(
    g: &Graph,
    u: usize,
    v: usize,
    cap: usize,
    include: impl Fn(EdgeId) -> bool,
    mut visit: impl FnMut(&[usize], &[EdgeId]) -> ControlFlow<B>,
) -> Result<Option<B>> {
    let mut on_path = vec![false; g.order()];
    let mut vertices = vec![u];
    let mut edges: Vec<EdgeId> = Vec::new();
    // next neighbor index to try, one entry per vertex on the current path
    let mut cursor = vec![0usize];
    let mut visited = 0usize;
    on_path[u] = true;

    while let Some(&x) = vertices.last() {
        let depth = vertices.len() - 1;
        let next = g.neighbors(x).get(cursor[depth]).copied();
        match next {
            Some((y, e)) => {
                cursor[depth] += 1;
                if on_path[y] || !include(e) {
                    continue;
                }
                if y == v {
                    visited += 1;
                    if visited > cap {
                        return Err(Error::PathCapExceeded { source_vertex: u, cap });
                    }
                    vertices.push(y);
                    edges.push(e);
                    let flow = visit(&vertices, &edges);
                    vertices.pop();
                    edges.pop();
                    if let ControlFlow::Break(b) = flow {
                        return Ok(Some(b));
                    }
                    continue;
                }
                on_path[y] = true;
                vertices.push(y);
                edges.push(e);
                cursor.push(0);
            }
            None => {
                on_path[x] = false;
                vertices.pop();
                edges.pop();
                cursor.pop();
            }
        }
    }
    Ok(None)
}

/// Visits every simple `u`–`v` path of `g` exactly once, in a deterministic order.
pub fn for_each_simple_path<B>(
    g: &Graph,
    u: usize,
    v: usize,
    cap: usize,
    visit: impl FnMut(&[usize], &[EdgeId]) -> ControlFlow<B>,
) -> Result<Option<B>> {
    check_endpoints(g, u, v)?;
    walk_simple_paths(g, u, v, cap, |_| true, visit)
}

/// Collects every simple `u`–`v` path; fails if there are more than `cap`.
pub fn enumerate_simple_paths(g: &Graph, u: usize, v: usize, cap: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    for_each_simple_path(g, u, v, cap, |vs, es| {
        out.push(Path::from_parts(vs.to_vec(), es.to_vec()));
        ControlFlow::<()>::Continue(())
    })?;
    Ok(out)
}

fn check_endpoints(g: &Graph, u: usize, v: usize) -> Result<()> {
    let n = g.order();
    if u >= n || v >= n {
        return Err(Error::Hypothesis(format!("endpoints {u}, {v} out of range for order {n}")));
    }
    if u == v {
        return Err(Error::Hypothesis("path endpoints must be distinct".into()));
    }
    Ok(())
}

/// A simple `u`–`v` path that uses edge `e`.
///
/// Requires `e` to lie in a 2-connected block of `g` that also contains `u` and
/// `v`; in that setting such a path always exists. The search is confined to the
/// block and stops at the first hit.
pub fn path_through_edge(g: &Graph, u: usize, v: usize, e: EdgeId) -> Result<Path> {
    check_endpoints(g, u, v)?;
    if e >= g.size() {
        return Err(Error::Hypothesis(format!("edge {e} does not exist")));
    }
    let block = biconnected_blocks(g, |_| true)
        .into_iter()
        .find(|b| b.binary_search(&e).is_ok())
        .expect("every edge lies in some block");
    if block.len() < 2 {
        let (a, b) = g.edge(e);
        return Err(Error::Hypothesis(format!(
            "edge {e} = {{{a}, {b}}} is a bridge, not part of a 2-connected block"
        )));
    }
    let mut in_block = vec![false; g.size()];
    let mut block_vertex = vec![false; g.order()];
    for &f in &block {
        in_block[f] = true;
        let (a, b) = g.edge(f);
        block_vertex[a] = true;
        block_vertex[b] = true;
    }
    for x in [u, v] {
        if !block_vertex[x] {
            return Err(Error::Hypothesis(format!(
                "vertex {x} is outside the block containing edge {e}"
            )));
        }
    }
    let found = walk_simple_paths(g, u, v, usize::MAX, |f| in_block[f], |vs, es| {
        if es.contains(&e) {
            ControlFlow::Break(Path::from_parts(vs.to_vec(), es.to_vec()))
        } else {
            ControlFlow::Continue(())
        }
    })?;
    found.ok_or_else(|| Error::Internal(format!("no {u}-{v} path through edge {e} in its block")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{find_bridges, generate_connected_graphs};

    fn count(g: &Graph, u: usize, v: usize) -> usize {
        enumerate_simple_paths(g, u, v, DEFAULT_PATH_CAP).unwrap().len()
    }

    #[test]
    fn path_counts() {
        assert_eq!(count(&Graph::path(4), 0, 3), 1);
        let c5 = Graph::cycle(5);
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert_eq!(count(&c5, u, v), 2);
                }
            }
        }
        let k4 = Graph::complete(4);
        let paths = enumerate_simple_paths(&k4, 0, 1, DEFAULT_PATH_CAP).unwrap();
        let mut lengths: Vec<_> = paths.iter().map(Path::len).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![1, 2, 2, 3, 3]);
    }

    #[test]
    fn paths_are_distinct_and_simple() {
        let g = Graph::complete(5);
        let paths = enumerate_simple_paths(&g, 0, 4, DEFAULT_PATH_CAP).unwrap();
        // 1 + 3 + 3*2 + 3*2*1
        assert_eq!(paths.len(), 16);
        let unique: std::collections::HashSet<_> = paths.iter().collect();
        assert_eq!(unique.len(), paths.len());
        for p in &paths {
            assert_eq!(Path::from_vertices(&g, p.vertices().to_vec()).unwrap(), *p);
        }
    }

    #[test]
    fn trees_have_unique_paths() {
        for g in generate_connected_graphs(6, true).unwrap().filter(Graph::is_tree) {
            for u in 0..6 {
                for v in u + 1..6 {
                    assert_eq!(count(&g, u, v), 1);
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::complete(6);
        let err = enumerate_simple_paths(&g, 0, 1, 10).unwrap_err();
        assert_eq!(err, Error::PathCapExceeded { source_vertex: 0, cap: 10 });
        assert!(enumerate_simple_paths(&g, 0, 0, 10).is_err());
    }

    #[test]
    fn forced_path_in_c4() {
        let g = Graph::cycle(4); // edges 01 12 23 30
        let e = g.edge_between(2, 3).unwrap();
        let p = path_through_edge(&g, 0, 1, e).unwrap();
        assert_eq!(p.vertices(), &[0, 3, 2, 1]);
    }

    #[test]
    fn k4_either_orientation() {
        let g = Graph::complete(4);
        let e = g.edge_between(2, 3).unwrap();
        let p = path_through_edge(&g, 0, 1, e).unwrap();
        assert!(p.vertices() == [0, 2, 3, 1] || p.vertices() == [0, 3, 2, 1]);
    }

    #[test]
    fn long_arc_in_c5() {
        let g = Graph::cycle(5);
        let e = g.edge_between(3, 4).unwrap();
        let all = enumerate_simple_paths(&g, 0, 2, DEFAULT_PATH_CAP).unwrap();
        let through: Vec<_> = all.iter().filter(|p| p.edges().contains(&e)).collect();
        assert_eq!(through.len(), 1);
        assert_eq!(through[0].vertices(), &[0, 4, 3, 2]);
        assert_eq!(path_through_edge(&g, 0, 2, e).unwrap().vertices(), &[0, 4, 3, 2]);
    }

    #[test]
    fn hypothesis_violations_are_reported() {
        let g = Graph::path(3);
        assert!(matches!(path_through_edge(&g, 0, 2, 0), Err(Error::Hypothesis(_))));
        // triangle 0-1-2 with pendant 3: vertex 3 is outside the triangle's block
        let g = Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(matches!(path_through_edge(&g, 0, 3, 0), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn every_triple_in_small_two_connected_graphs() {
        for n in 3..=6 {
            for g in generate_connected_graphs(n, true).unwrap() {
                let blocks = biconnected_blocks(&g, |_| true);
                if blocks.len() != 1 || !find_bridges(&g).is_empty() {
                    continue;
                }
                for e in 0..g.size() {
                    for u in 0..n {
                        for v in 0..n {
                            if u == v {
                                continue;
                            }
                            let p = path_through_edge(&g, u, v, e).unwrap();
                            assert!(p.edges().contains(&e));
                            assert_eq!((p.start(), p.end()), (u, v));
                            Path::from_vertices(&g, p.vertices().to_vec()).unwrap();
                        }
                    }
                }
            }
        }
    }
}
