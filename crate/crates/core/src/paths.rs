//! Stabilized paths, truncated path and loop graphs, and subloops.
//!
//! A path is a map `I_∞ → G` that is constant at the base for `t ≤ 0` and
//! constant from some `t = L` on. Paths are identified as functions: the
//! stored trace `ω(0..=L)` uses the minimal `L`, so it never ends in a
//! repeated vertex. The infinite path graph is filtered by this minimal
//! length; `path_graph_trunc(G, L)` keeps the paths of length at most `L`.
//!
//! Two paths are adjacent when they agree up to adjacency at every time,
//! since both are constant outside a finite window and a map
//! `I_∞ ⊗ I_1 → G` only has to respect the rungs.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMap, PointedGraph, Vertex};
use crate::limits::Limits;

/// A path in canonical (minimal-length) form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Path {
    trace: Vec<Vertex>,
}

/// Drops trailing repeats so the trace has minimal length.
pub(crate) fn canonicalize(trace: &mut Vec<Vertex>) {
    while trace.len() > 1 && trace[trace.len() - 1] == trace[trace.len() - 2] {
        trace.pop();
    }
}

impl Path {
    /// Validates and canonicalizes a finite trace `ω(0), …, ω(L)`.
    pub fn from_trace(g: &PointedGraph, mut trace: Vec<Vertex>) -> Result<Path> {
        if trace.first() != Some(&g.base()) {
            return Err(Error::invalid("a path must start at the base vertex"));
        }
        if let Some(&bad) = trace.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::invalid(format!("vertex {bad} out of range")));
        }
        if let Some(w) = trace.windows(2).find(|w| !g.adjacent_or_equal(w[0], w[1])) {
            return Err(Error::invalid(format!(
                "consecutive entries {} and {} are neither equal nor adjacent",
                w[0], w[1]
            )));
        }
        canonicalize(&mut trace);
        Ok(Path { trace })
    }

    pub(crate) fn from_canonical(trace: Vec<Vertex>) -> Path {
        Path { trace }
    }

    pub fn trace(&self) -> &[Vertex] {
        &self.trace
    }

    /// The minimal stabilization index.
    pub fn length(&self) -> usize {
        self.trace.len() - 1
    }

    /// `ω(t)` for any `t ≥ 0`.
    pub fn at(&self, t: usize) -> Vertex {
        *self.trace.get(t).unwrap_or_else(|| self.trace.last().unwrap())
    }

    /// The eventual value `ω(L)`.
    pub fn stable(&self) -> Vertex {
        *self.trace.last().unwrap()
    }

    pub fn start(&self) -> Vertex {
        self.trace[0]
    }

    pub fn is_loop(&self) -> bool {
        self.stable() == self.start()
    }

    /// The trace extended by its stable value to `len + 1` entries.
    pub fn padded(&self, len: usize) -> Vec<Vertex> {
        (0..=len.max(self.length())).map(|t| self.at(t)).collect()
    }
}

/// Every walk `ω(0..=len)` from the base, as canonical paths in
/// lexicographic order. With `loops_only`, walks must end at the base.
pub fn enumerate_paths(g: &PointedGraph, len: usize, loops_only: bool, limits: &Limits) -> Result<Vec<Path>> {
    let base = g.base();
    let dist = g.distances_from(base);
    let closed = g.closed_neighborhoods();
    let mut out = Vec::new();
    let mut walk = vec![base; len + 1];

    fn rec(
        t: usize,
        len: usize,
        walk: &mut Vec<Vertex>,
        closed: &[Vec<Vertex>],
        dist: Option<&[Option<usize>]>,
        out: &mut Vec<Path>,
        limits: &Limits,
    ) -> Result<()> {
        if t > len {
            let mut trace = walk.clone();
            canonicalize(&mut trace);
            out.push(Path::from_canonical(trace));
            return limits.check("paths", out.len());
        }
        for &c in &closed[walk[t - 1]] {
            if let Some(d) = dist {
                if !d[c].is_some_and(|d| d <= len - t) {
                    continue;
                }
            }
            walk[t] = c;
            rec(t + 1, len, walk, closed, dist, out, limits)?;
        }
        Ok(())
    }

    rec(1, len, &mut walk, &closed, loops_only.then_some(&dist[..]), &mut out, limits)?;
    out.sort_unstable();
    Ok(out)
}

/// A truncated path graph `P_{≤L}G` or loop graph `Ω_{≤L}G`, with the index
/// between its vertices and paths. Vertices are in lexicographic order of
/// traces, so the base (the length-0 path) is vertex 0.
#[derive(Clone, Debug)]
pub struct PathGraph {
    target: Arc<PointedGraph>,
    max_len: usize,
    loops_only: bool,
    paths: Vec<Path>,
    index: HashMap<Vec<Vertex>, usize>,
    graph: Arc<PointedGraph>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathGraphSummary {
    pub kind: &'static str,
    pub max_length: usize,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub base_component_size: usize,
}

pub fn path_graph_trunc(g: Arc<PointedGraph>, max_len: usize, limits: &Limits) -> Result<PathGraph> {
    PathGraph::build(g, max_len, false, limits)
}

pub fn loop_graph_trunc(g: Arc<PointedGraph>, max_len: usize, limits: &Limits) -> Result<PathGraph> {
    PathGraph::build(g, max_len, true, limits)
}

impl PathGraph {
    fn build(target: Arc<PointedGraph>, max_len: usize, loops_only: bool, limits: &Limits) -> Result<PathGraph> {
        let paths = enumerate_paths(&target, max_len, loops_only, limits)?;
        let index: HashMap<Vec<Vertex>, usize> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.trace.clone(), i))
            .collect();
        let base = target.base();
        let dist = target.distances_from(base);
        let closed = target.closed_neighborhoods();
        let mut lists = vec![Vec::new(); paths.len()];
        let mut edges_seen = 0usize;
        let mut walk = vec![base; max_len + 1];
        for (i, p) in paths.iter().enumerate() {
            let padded = p.padded(max_len);
            let mut found = Vec::new();
            neighbor_walks(
                1,
                &padded,
                &mut walk,
                &target,
                &closed,
                loops_only.then_some(&dist[..]),
                &mut |w| {
                    let mut trace = w.to_vec();
                    canonicalize(&mut trace);
                    let j = index[&trace];
                    if j > i {
                        found.push(j);
                    }
                },
            );
            edges_seen += found.len();
            limits.check("path graph edges", edges_seen)?;
            lists[i] = found;
        }
        let graph = Graph::from_neighbor_lists(lists);
        let graph = Arc::new(PointedGraph::new(graph, 0)?);
        Ok(PathGraph {
            target,
            max_len,
            loops_only,
            paths,
            index,
            graph,
        })
    }

    pub fn target(&self) -> &Arc<PointedGraph> {
        &self.target
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn is_loop_graph(&self) -> bool {
        self.loops_only
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn graph(&self) -> &Arc<PointedGraph> {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Index of the path with this trace (canonicalized first), if present.
    pub fn index_of_trace(&self, trace: &[Vertex]) -> Option<usize> {
        let mut t = trace.to_vec();
        canonicalize(&mut t);
        self.index.get(&t).copied()
    }

    pub fn summary(&self) -> PathGraphSummary {
        let comps = self.graph.components();
        let base_comp = comps[self.graph.base()];
        PathGraphSummary {
            kind: if self.loops_only { "loop_graph" } else { "path_graph" },
            max_length: self.max_len,
            vertices: self.paths.len(),
            edges: self.graph.edge_count(),
            components: comps.iter().max().map_or(0, |m| m + 1),
            base_component_size: comps.iter().filter(|&&c| c == base_comp).count(),
        }
    }
}

/// Visits every walk `w` from the base with `w(t) ∈ N[ω(t)]` for all `t`
/// (and ending at the base when `dist` is given). Includes `ω` itself.
fn neighbor_walks(
    t: usize,
    omega: &[Vertex],
    walk: &mut Vec<Vertex>,
    g: &Graph,
    closed: &[Vec<Vertex>],
    dist: Option<&[Option<usize>]>,
    visit: &mut dyn FnMut(&[Vertex]),
) {
    let len = omega.len() - 1;
    if t > len {
        if walk[..] != omega[..] {
            visit(walk);
        }
        return;
    }
    for &c in &closed[omega[t]] {
        if !g.adjacent_or_equal(c, walk[t - 1]) {
            continue;
        }
        if let Some(d) = dist {
            if !d[c].is_some_and(|d| d <= len - t) {
                continue;
            }
        }
        walk[t] = c;
        neighbor_walks(t + 1, omega, walk, g, closed, dist, visit);
    }
}

/// `Ωf`: sends a loop `ω` to the canonical form of `f ∘ ω`.
///
/// `src` must be a loop graph of `f`'s domain and `dst` a loop graph of its
/// codomain with at least the same length budget.
pub fn loop_map(f: &GraphMap, src: &PathGraph, dst: &PathGraph) -> Result<GraphMap> {
    if !f.is_pointed() {
        return Err(Error::invalid("the loop functor needs a pointed map"));
    }
    if src.target() != f.domain() || dst.target() != f.codomain() {
        return Err(Error::invalid("loop graphs do not match the map"));
    }
    path_image_map(f, src, dst)
}

/// `ω ↦ f ∘ ω` between any two path graphs; shared by `Ωf` and the
/// structural maps of the fiber tower.
pub(crate) fn path_image_map(f: &GraphMap, src: &PathGraph, dst: &PathGraph) -> Result<GraphMap> {
    let mut assignment = Vec::with_capacity(src.len());
    for p in src.paths() {
        let image: Vec<Vertex> = p.trace().iter().map(|&v| f.apply(v)).collect();
        let j = dst
            .index_of_trace(&image)
            .ok_or_else(|| Error::invalid("image path is missing from the target path graph"))?;
        assignment.push(j);
    }
    GraphMap::new(src.graph().clone(), dst.graph().clone(), assignment, true)
}

/// `Ω^n` built by re-applying the loop graph construction, with one length
/// budget per level.
pub fn iterated_loop_graph(g: Arc<PointedGraph>, lengths: &[usize], limits: &Limits) -> Result<Vec<PathGraph>> {
    let mut levels: Vec<PathGraph> = Vec::with_capacity(lengths.len());
    let mut current = g;
    for &len in lengths {
        let level = loop_graph_trunc(current, len, limits)?;
        current = level.graph().clone();
        levels.push(level);
    }
    Ok(levels)
}

/// A maximal base-to-base window `[start, end]` of a loop with non-base
/// interior, and the number of distinct vertices it visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Subloop {
    pub start: usize,
    pub end: usize,
    pub sublength: usize,
}

/// Windows between consecutive visits to the base. Windows with empty
/// interior (the loop resting at the base) are not subloops.
pub fn subloop_decompose(omega: &Path) -> Vec<Subloop> {
    let base = omega.start();
    let trace = omega.trace();
    let visits: Vec<usize> = (0..trace.len()).filter(|&t| trace[t] == base).collect();
    visits
        .windows(2)
        .filter(|w| w[1] > w[0] + 1)
        .map(|w| {
            let mut seen: Vec<Vertex> = trace[w[0]..=w[1]].to_vec();
            seen.sort_unstable();
            seen.dedup();
            Subloop {
                start: w[0],
                end: w[1],
                sublength: seen.len(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SublengthOffender {
    pub trace: Vec<Vertex>,
    pub subloop: Subloop,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SublengthReport {
    pub holds: bool,
    pub bound: usize,
    pub max_length: usize,
    pub loops_checked: usize,
    pub max_sublength: usize,
    /// Lexicographically first loop attaining the largest sublength, when
    /// that sublength exceeds the bound.
    pub offender: Option<SublengthOffender>,
}

/// Whether every loop of length at most `max_len` has only subloops of
/// sublength at most `bound`.
pub fn check_sublength_condition(g: &PointedGraph, max_len: usize, bound: usize, limits: &Limits) -> Result<SublengthReport> {
    let loops = enumerate_paths(g, max_len, true, limits)?;
    let mut max_sublength = 0;
    let mut worst: Option<SublengthOffender> = None;
    for l in &loops {
        for s in subloop_decompose(l) {
            if s.sublength > max_sublength {
                max_sublength = s.sublength;
                worst = Some(SublengthOffender {
                    trace: l.trace().to_vec(),
                    subloop: s,
                });
            }
        }
    }
    let holds = max_sublength <= bound;
    Ok(SublengthReport {
        holds,
        bound,
        max_length: max_len,
        loops_checked: loops.len(),
        max_sublength,
        offender: if holds { None } else { worst },
    })
}
