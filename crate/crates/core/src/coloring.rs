//! Edge colorings and the conflict-free connectivity check.
//!
//! A path is conflict-free when some color occurs on exactly one of its edges; a
//! coloring makes a graph conflict-free connected when every pair of distinct
//! vertices is joined by such a path.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::graph::{block_decomposition, EdgeId, Graph, Path, DEFAULT_PATH_CAP};

pub type Color = u32;

/// One positive color per edge, relabeled so colors appear in first-use order `1, 2, ..., k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Color>", into = "Vec<Color>")]
pub struct EdgeColoring {
    colors: Vec<Color>,
    count: usize,
}

impl TryFrom<Vec<Color>> for EdgeColoring {
    type Error = Error;

    fn try_from(colors: Vec<Color>) -> Result<Self> {
        EdgeColoring::new(colors)
    }
}

impl From<EdgeColoring> for Vec<Color> {
    fn from(c: EdgeColoring) -> Self {
        c.colors
    }
}

impl EdgeColoring {
    /// `colors[e]` is the color of edge `e`. Labels are canonicalized; zero is rejected.
    pub fn new(colors: Vec<Color>) -> Result<Self> {
        if colors.contains(&0) {
            return Err(Error::ZeroColor);
        }
        let colors = canonicalize(&colors);
        let count = colors.iter().copied().max().unwrap_or(0) as usize;
        Ok(EdgeColoring { colors, count })
    }

    pub fn color(&self, e: EdgeId) -> Option<Color> {
        self.colors.get(e).copied()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Number of distinct colors.
    pub fn color_count(&self) -> usize {
        self.count
    }

    /// Number of colored edges.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Edges of each color, indexed by `color - 1`.
    pub fn classes(&self) -> Vec<Vec<EdgeId>> {
        let mut out = vec![Vec::new(); self.count];
        for (e, &c) in self.colors.iter().enumerate() {
            out[c as usize - 1].push(e);
        }
        out
    }
}

/// Relabels colors by order of first appearance.
pub fn canonicalize(colors: &[Color]) -> Vec<Color> {
    let mut map = HashMap::new();
    colors
        .iter()
        .map(|&c| {
            let next = map.len() as Color + 1;
            *map.entry(c).or_insert(next)
        })
        .collect()
}

/// Coloring file: one `edge_index color` line per edge.
pub fn write_coloring(c: &EdgeColoring) -> String {
    let mut out = String::new();
    for (e, color) in c.colors().iter().enumerate() {
        let _ = writeln!(out, "{e} {color}");
    }
    out
}

pub fn parse_coloring(text: &str, edge_count: usize) -> Result<EdgeColoring, ParseError> {
    let mut colors: Vec<Option<Color>> = vec![None; edge_count];
    let mut last = 1;
    for (line, body) in crate::graph::io_lines(text) {
        last = line;
        let (e, color) = crate::graph::io_pair(line, body)?;
        let slot = colors
            .get_mut(e)
            .ok_or(ParseError { line, kind: ParseErrorKind::EdgeIndex(e) })?;
        if slot.is_some() {
            return Err(ParseError { line, kind: ParseErrorKind::DuplicateColor(e) });
        }
        if color == 0 {
            return Err(ParseError { line, kind: ParseErrorKind::ZeroColor });
        }
        *slot = Some(color as Color);
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(e, c)| c.ok_or(ParseError { line: last, kind: ParseErrorKind::MissingColor(e) }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EdgeColoring::new(colors).expect("colors checked positive"))
}

/// True iff some color occurs exactly once on `p`.
pub fn is_conflict_free_path(p: &Path, c: &EdgeColoring) -> Result<bool> {
    let mut counts: HashMap<Color, usize> = HashMap::new();
    for &e in p.edges() {
        let color = c.color(e).ok_or(Error::UncoloredEdge(e))?;
        *counts.entry(color).or_default() += 1;
    }
    Ok(counts.values().any(|&k| k == 1))
}

/// Outcome of checking every vertex pair for a conflict-free path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConnectivityReport {
    /// One conflict-free witness per pair `(u, v)`, `u < v`.
    Connected { witnesses: BTreeMap<(usize, usize), Path> },
    /// The lexicographically first pair with no conflict-free path.
    Failed { pair: (usize, usize) },
}

impl ConnectivityReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, ConnectivityReport::Connected { .. })
    }

    pub fn failure_pair(&self) -> Option<(usize, usize)> {
        match self {
            ConnectivityReport::Failed { pair } => Some(*pair),
            ConnectivityReport::Connected { .. } => None,
        }
    }

    pub fn witness(&self, u: usize, v: usize) -> Option<&Path> {
        match self {
            ConnectivityReport::Connected { witnesses } => witnesses.get(&(u.min(v), u.max(v))),
            ConnectivityReport::Failed { .. } => None,
        }
    }
}

struct SourceScan {
    first_missing: Option<usize>,
    witnesses: Vec<(usize, Path)>,
}

/// Enumerates simple paths out of `u`, tracking color multiplicities incrementally,
/// until every target `w > u` has a conflict-free path or the paths run out.
fn scan_source(
    g: &Graph,
    c: &EdgeColoring,
    u: usize,
    cap: usize,
    keep_witnesses: bool,
) -> Result<SourceScan> {
    let n = g.order();
    let mut found = vec![false; n];
    let mut remaining = n - 1 - u;
    let mut witnesses = Vec::new();
    if remaining == 0 {
        return Ok(SourceScan { first_missing: None, witnesses });
    }
    // a single edge is always conflict-free
    for &(w, e) in g.neighbors(u) {
        if w > u {
            found[w] = true;
            remaining -= 1;
            if keep_witnesses {
                witnesses.push((w, Path::from_parts(vec![u, w], vec![e])));
            }
        }
    }
    if remaining == 0 {
        return Ok(SourceScan { first_missing: None, witnesses });
    }
    let mut counts = vec![0usize; c.color_count() + 1];
    let mut singletons = 0usize;
    let mut on_path = vec![false; n];
    let mut vertices = vec![u];
    let mut edges: Vec<EdgeId> = Vec::new();
    let mut cursor = vec![0usize];
    let mut visited = 0usize;
    on_path[u] = true;

    'walk: while let Some(&x) = vertices.last() {
        let depth = vertices.len() - 1;
        match g.neighbors(x).get(cursor[depth]).copied() {
            Some((y, e)) => {
                cursor[depth] += 1;
                if on_path[y] {
                    continue;
                }
                visited += 1;
                if visited > cap {
                    return Err(Error::PathCapExceeded { source_vertex: u, cap });
                }
                let color = c.colors[e] as usize;
                counts[color] += 1;
                match counts[color] {
                    1 => singletons += 1,
                    2 => singletons -= 1,
                    _ => {}
                }
                on_path[y] = true;
                vertices.push(y);
                edges.push(e);
                cursor.push(0);
                if y > u && !found[y] && singletons > 0 {
                    found[y] = true;
                    if keep_witnesses {
                        witnesses.push((y, Path::from_parts(vertices.clone(), edges.clone())));
                    }
                    remaining -= 1;
                    if remaining == 0 {
                        break 'walk;
                    }
                }
            }
            None => {
                on_path[x] = false;
                vertices.pop();
                cursor.pop();
                if let Some(e) = edges.pop() {
                    let color = c.colors[e] as usize;
                    counts[color] -= 1;
                    match counts[color] {
                        1 => singletons += 1,
                        0 => singletons -= 1,
                        _ => {}
                    }
                }
            }
        }
    }
    let first_missing = (u + 1..n).find(|&w| !found[w]);
    Ok(SourceScan { first_missing, witnesses })
}

fn check_inputs(g: &Graph, c: &EdgeColoring) -> Result<()> {
    if c.len() != g.size() {
        return Err(Error::ColoringSize { expected: g.size(), found: c.len() });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn scan_all(
    g: &Graph,
    c: &EdgeColoring,
    cap: usize,
    keep_witnesses: bool,
) -> Result<Vec<SourceScan>> {
    check_inputs(g, c)?;
    (0..g.order())
        .into_par_iter()
        .map(|u| scan_source(g, c, u, cap, keep_witnesses))
        .collect()
}

/// Checks every pair and returns a witness path per pair, or the first failing pair.
pub fn is_conflict_free_connected(g: &Graph, c: &EdgeColoring) -> Result<ConnectivityReport> {
    is_conflict_free_connected_with_cap(g, c, DEFAULT_PATH_CAP)
}

/// As [`is_conflict_free_connected`], with `cap` bounding the paths explored per source vertex.
pub fn is_conflict_free_connected_with_cap(
    g: &Graph,
    c: &EdgeColoring,
    cap: usize,
) -> Result<ConnectivityReport> {
    let scans = scan_all(g, c, cap, true)?;
    let mut witnesses = BTreeMap::new();
    for (u, scan) in scans.into_iter().enumerate() {
        if let Some(v) = scan.first_missing {
            return Ok(ConnectivityReport::Failed { pair: (u, v) });
        }
        witnesses.extend(scan.witnesses.into_iter().map(|(v, p)| ((u, v), p)));
    }
    Ok(ConnectivityReport::Connected { witnesses })
}

/// Witness-free variant of [`is_conflict_free_connected`]: `Ok(None)` when every
/// pair is served, otherwise the first failing pair. Suited to long paths where
/// storing one witness per pair would be wasteful.
pub fn check_conflict_free_connected(
    g: &Graph,
    c: &EdgeColoring,
    cap: usize,
) -> Result<Option<(usize, usize)>> {
    let scans = scan_all(g, c, cap, false)?;
    Ok(scans
        .into_iter()
        .enumerate()
        .find_map(|(u, s)| s.first_missing.map(|v| (u, v))))
}

/// `max{2, |B|}`, the color budget of [`lemma4_coloring`].
pub fn bridge_bound(g: &Graph) -> usize {
    crate::graph::find_bridges(g).len().max(2)
}

/// Colors a connected graph with at most `max{2, |B|}` colors, `B` its cut-edges.
///
/// In every block of `G - B` the lowest-numbered edge gets one color and the rest
/// share a second; bridges, in edge-id order, get pairwise distinct colors
/// `1..=|B|`, reusing the two block colors for the first two bridges.
pub fn lemma4_coloring(g: &Graph) -> Result<EdgeColoring> {
    if g.order() < 2 {
        return Err(Error::TooSmall(2));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let d = block_decomposition(g);
    let mut colors = vec![0 as Color; g.size()];
    for block in &d.blocks {
        colors[block[0]] = 1;
        for &e in &block[1..] {
            colors[e] = 2;
        }
    }
    for (i, &e) in d.bridges.iter().enumerate() {
        colors[e] = i as Color + 1;
    }
    EdgeColoring::new(colors)
}

/// Colors `P_n` by the ruler sequence: edge `i` (1-based) gets `1 + v₂(i)`.
///
/// The largest color in any run of consecutive edges occurs once in it, so every
/// subpath is conflict-free; the coloring uses `⌈log₂ n⌉` colors.
pub fn ruler_path_coloring(n: usize) -> Result<EdgeColoring> {
    if n < 2 {
        return Err(Error::TooSmall(2));
    }
    EdgeColoring::new((1..n).map(|i| 1 + i.trailing_zeros()).collect())
}
