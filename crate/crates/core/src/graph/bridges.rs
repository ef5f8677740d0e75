use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{EdgeId, Graph};

/// Cut-edges of `g` together with the blocks and components left after deleting them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// The cut-edges `B`.
    pub bridges: BTreeSet<EdgeId>,
    /// Maximal 2-connected edge sets of `G - B`, each sorted, ordered by smallest edge id.
    pub blocks: Vec<Vec<EdgeId>>,
    /// Component index of each vertex in `G - B`.
    pub component_of: Vec<usize>,
    pub component_count: usize,
}

impl BlockDecomposition {
    pub fn is_bridge(&self, e: EdgeId) -> bool {
        self.bridges.contains(&e)
    }

    /// Index of the block holding `e`, or `None` for a bridge.
    pub fn block_of(&self, e: EdgeId) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&e).is_ok())
    }
}

struct Frame {
    vertex: usize,
    parent_edge: Option<EdgeId>,
    next: usize,
}

/// Edges whose removal disconnects their component, found with one low-link DFS.
pub fn find_bridges(g: &Graph) -> BTreeSet<EdgeId> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut timer = 0;
    let mut bridges = BTreeSet::new();
    let mut stack: Vec<Frame> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push(Frame { vertex: root, parent_edge: None, next: 0 });
        while let Some(frame) = stack.last_mut() {
            let v = frame.vertex;
            if let Some(&(w, e)) = g.neighbors(v).get(frame.next) {
                frame.next += 1;
                if Some(e) == frame.parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push(Frame { vertex: w, parent_edge: Some(e), next: 0 });
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let done = stack.pop().expect("frame present");
                if let (Some(parent), Some(e)) = (stack.last(), done.parent_edge) {
                    let u = parent.vertex;
                    low[u] = low[u].min(low[v]);
                    if low[v] > disc[u] {
                        bridges.insert(e);
                    }
                }
            }
        }
    }
    bridges
}

/// Biconnected blocks of the subgraph made of the edges accepted by `include`.
///
/// Each block is a sorted edge list; blocks come out ordered by their smallest edge.
/// An isolated edge (a bridge of the subgraph) forms a block of its own.
pub fn biconnected_blocks(g: &Graph, include: impl Fn(EdgeId) -> bool) -> Vec<Vec<EdgeId>> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut timer = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut blocks = Vec::new();
    let mut stack: Vec<Frame> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push(Frame { vertex: root, parent_edge: None, next: 0 });
        while let Some(frame) = stack.last_mut() {
            let v = frame.vertex;
            if let Some(&(w, e)) = g.neighbors(v).get(frame.next) {
                frame.next += 1;
                if !include(e) || Some(e) == frame.parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push(Frame { vertex: w, parent_edge: Some(e), next: 0 });
                } else if disc[w] < disc[v] {
                    // back edge, seen once from its lower end
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let done = stack.pop().expect("frame present");
                if let (Some(parent), Some(tree_edge)) = (stack.last(), done.parent_edge) {
                    let u = parent.vertex;
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == tree_edge {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    blocks
}

pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let bridges = find_bridges(g);
    let blocks = biconnected_blocks(g, |e| !bridges.contains(&e));
    let (component_of, component_count) = g.components_without(|e| bridges.contains(&e));
    BlockDecomposition { bridges, blocks, component_of, component_count }
}

/// Delete-and-recount reference for cut-edges: quadratic, but obviously right.
pub fn bridges_by_deletion(g: &Graph) -> BTreeSet<EdgeId> {
    let (_, base) = g.components();
    (0..g.size())
        .filter(|&e| g.components_without(|x| x == e).1 > base)
        .collect()
}

/// Checks that bridges and blocks partition the edge set and that every block
/// is 2-connected; the error names the first violation.
pub fn check_block_partition(g: &Graph) -> Result<(), String> {
    let d = block_decomposition(g);
    let mut seen = vec![0usize; g.size()];
    for &e in d.bridges.iter().chain(d.blocks.iter().flatten()) {
        seen[e] += 1;
    }
    if let Some(e) = seen.iter().position(|&c| c != 1) {
        return Err(format!("edge {e} covered {} times", seen[e]));
    }
    match d.blocks.iter().find(|b| !is_two_connected(g, b)) {
        Some(block) => Err(format!("block {block:?} is not 2-connected")),
        None => Ok(()),
    }
}

/// At least three vertices, connected, and still connected after deleting any one vertex.
fn is_two_connected(g: &Graph, block: &[EdgeId]) -> bool {
    let vertices: BTreeSet<usize> =
        block.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
    let connected_without = |gone: Option<usize>| {
        let keep: Vec<usize> = vertices.iter().copied().filter(|&v| Some(v) != gone).collect();
        let mut reached = BTreeSet::from([keep[0]]);
        let mut changed = true;
        while changed {
            changed = false;
            for &e in block {
                let (a, b) = g.edge(e);
                if Some(a) == gone || Some(b) == gone {
                    continue;
                }
                if reached.contains(&a) != reached.contains(&b) {
                    reached.insert(a);
                    reached.insert(b);
                    changed = true;
                }
            }
        }
        reached.len() == keep.len()
    };
    vertices.len() >= 3
        && connected_without(None)
        && vertices.iter().all(|&x| connected_without(Some(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_connected_graphs;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_triangles_with_bridge() -> Graph {
        Graph::new(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn paths_and_cycles() {
        for n in 2..10 {
            let expected: BTreeSet<_> = (0..n - 1).collect();
            assert_eq!(find_bridges(&Graph::path(n)), expected);
        }
        for n in 3..10 {
            assert!(find_bridges(&Graph::cycle(n)).is_empty());
        }
    }

    #[test]
    fn two_triangles() {
        let g = two_triangles_with_bridge();
        let d = block_decomposition(&g);
        assert_eq!(d.bridges, BTreeSet::from([3]));
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![4, 5, 6]]);
        assert_eq!(d.component_count, 2);
        assert_eq!(d.block_of(3), None);
        assert_eq!(d.block_of(5), Some(1));
    }

    #[test]
    fn complete_graph_is_one_block() {
        let d = block_decomposition(&Graph::complete(4));
        assert!(d.bridges.is_empty());
        assert_eq!(d.blocks, vec![(0..6).collect::<Vec<_>>()]);
        assert_eq!(d.component_count, 1);
    }

    #[test]
    fn star_has_no_blocks() {
        let d = block_decomposition(&Graph::star(5));
        assert_eq!(d.bridges.len(), 4);
        assert!(d.blocks.is_empty());
        assert_eq!(d.component_count, 5);
    }

    #[test]
    fn bowtie_splits_at_cut_vertex() {
        // two triangles sharing vertex 2: no bridges, two blocks
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let d = block_decomposition(&g);
        assert!(d.bridges.is_empty());
        assert_eq!(d.blocks, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(d.component_count, 1);
    }

    #[test]
    fn disconnected_input_is_handled_per_component() {
        let g = Graph::new(5, [(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(find_bridges(&g), BTreeSet::from([0]));
    }

    #[test]
    fn matches_deletion_oracle_on_census() {
        for n in 1..=6 {
            for g in generate_connected_graphs(n, true).unwrap() {
                assert_eq!(find_bridges(&g), bridges_by_deletion(&g), "{g:?}");
                check_block_partition(&g).unwrap();
            }
        }
    }

    #[test]
    fn matches_deletion_oracle_on_random_graphs() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(0.05..0.6);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::new(n, edges).unwrap();
            assert_eq!(find_bridges(&g), bridges_by_deletion(&g), "{g:?}");
            check_block_partition(&g).unwrap();
        }
    }

    #[test]
    fn removing_a_bridge_adds_one_component() {
        for g in generate_connected_graphs(6, true).unwrap() {
            for e in find_bridges(&g) {
                assert_eq!(g.components_without(|x| x == e).1, 2);
            }
        }
    }

    mod props {
        use super::*;
        use crate::graph::random_connected_graph;
        use proptest::prelude::*;
        use rand::seq::SliceRandom;

        proptest! {
            #[test]
            fn agrees_with_deletion(n in 1usize..=16, p in 0.0f64..0.5, seed: u64) {
                let g = random_connected_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
                prop_assert_eq!(find_bridges(&g), bridges_by_deletion(&g));
                prop_assert_eq!(check_block_partition(&g), Ok(()));
            }

            #[test]
            fn relabeling_keeps_bridge_edges(n in 2usize..=12, p in 0.0f64..0.5, seed: u64) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let g = random_connected_graph(n, p, &mut rng);
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                // relabel keeps edge ids, so the bridge sets must coincide
                prop_assert_eq!(find_bridges(&g), find_bridges(&g.relabel(&perm).unwrap()));
            }
        }
    }
}
