//! Finite simple graphs and the standard operations on them.
//!
//! Vertices are dense indices `0..n`. Edges are stored canonically as
//! `(min, max)` pairs in lexicographic order, so two graphs are equal exactly
//! when their vertex counts and canonical edge lists agree. Labels are
//! cosmetic and never take part in equality.

mod io;
pub(crate) mod map;

pub use io::{GraphFile, MapFile};
pub use map::{is_graph_map, GraphMap};

use std::collections::VecDeque;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a simple graph. Reversed and repeated edges are merged; loops
    /// and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge {u}-{v} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        canon.dedup();
        Ok(Self::from_canonical_edges(n, canon))
    }

    pub fn empty(n: usize) -> Graph {
        Self::from_canonical_edges(n, Vec::new())
    }

    /// `edges` must already be sorted, deduplicated, loop-free `(min,max)` pairs.
    pub(crate) fn from_canonical_edges(n: usize, edges: Vec<(Vertex, Vertex)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            labels: None,
        }
    }

    /// Builds a graph from neighbour lists, which need not be symmetric or
    /// sorted; an edge is present if either endpoint lists the other.
    pub(crate) fn from_neighbor_lists(lists: Vec<Vec<Vertex>>) -> Graph {
        let n = lists.len();
        let mut edges = Vec::new();
        for (u, list) in lists.iter().enumerate() {
            for &v in list {
                debug_assert!(v < n && v != u);
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Self::from_canonical_edges(n, edges)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n {
            return Err(Error::invalid(format!(
                "{} labels given for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// Sorted open neighbourhood.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// The relation a graph map must preserve: equal or adjacent.
    #[inline]
    pub fn adjacent_or_equal(&self, u: Vertex, v: Vertex) -> bool {
        u == v || self.adjacent(u, v)
    }

    /// Sorted closed neighbourhood `N[v] = {v} ∪ N(v)`.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.adj[v].len() + 1);
        let pos = self.adj[v].partition_point(|&w| w < v);
        out.extend_from_slice(&self.adj[v][..pos]);
        out.push(v);
        out.extend_from_slice(&self.adj[v][pos..]);
        out
    }

    pub(crate) fn closed_neighborhoods(&self) -> Vec<Vec<Vertex>> {
        self.vertices().map(|v| self.closed_neighborhood(v)).collect()
    }

    /// Breadth-first distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Component id per vertex, numbered in order of smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Vertices in breadth-first order from `root`, followed by the other
    /// components in the same manner. Every vertex except a component root
    /// has a neighbour earlier in the order.
    pub fn bfs_order(&self, root: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let roots = std::iter::once(root).chain(0..self.n);
        for r in roots {
            if r >= self.n || seen[r] {
                continue;
            }
            seen[r] = true;
            let start = order.len();
            order.push(r);
            let mut i = start;
            while i < order.len() {
                let u = order[i];
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
                i += 1;
            }
        }
        order
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length mismatch"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("not a permutation"));
            }
        }
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Self::from_canonical_edges(self.n + other.n, edges)
    }

    pub fn to_dot(&self, name: &str) -> String {
        io::to_dot(self, None, name)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// A graph together with a distinguished base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedGraph {
    graph: Graph,
    base: Vertex,
}

impl PointedGraph {
    pub fn new(graph: Graph, base: Vertex) -> Result<PointedGraph> {
        if base >= graph.vertex_count() {
            return Err(Error::invalid(format!(
                "base {base} outside 0..{}",
                graph.vertex_count()
            )));
        }
        Ok(PointedGraph { graph, base })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn to_dot(&self, name: &str) -> String {
        io::to_dot(&self.graph, Some(self.base), name)
    }
}

impl Deref for PointedGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

/// The single-vertex graph, which is also the terminal pointed graph.
pub fn point() -> PointedGraph {
    PointedGraph::new(Graph::empty(1), 0).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `I_m`: the path with vertices `0..=m`.
    Interval,
    /// `C_n`: the cycle on `n ≥ 3` vertices.
    Cycle,
    /// `K_n`: the complete graph.
    Complete,
    /// `Q_n`: the `n`-fold box power of `I_1`.
    Cube,
}

impl Family {
    pub fn symbol(self) -> &'static str {
        match self {
            Family::Interval => "I",
            Family::Cycle => "C",
            Family::Complete => "K",
            Family::Cube => "Q",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s {
            "I" | "i" | "interval" | "path" => Ok(Family::Interval),
            "C" | "c" | "cycle" => Ok(Family::Cycle),
            "K" | "k" | "complete" => Ok(Family::Complete),
            "Q" | "q" | "cube" => Ok(Family::Cube),
            other => Err(Error::invalid(format!("unknown graph family {other:?}"))),
        }
    }
}

/// Builds a member of a standard family, pointed at vertex 0.
pub fn make_standard(family: Family, size: usize) -> Result<PointedGraph> {
    let domain = |constraint: &str| Error::Domain {
        family: format!("{}_{size}", family.symbol()),
        constraint: constraint.to_string(),
    };
    let graph = match family {
        Family::Interval => Graph::new(size + 1, (0..size).map(|i| (i, i + 1)))?,
        Family::Cycle => {
            if size < 3 {
                return Err(domain("cycles need at least 3 vertices"));
            }
            Graph::new(size, (0..size).map(|i| (i, (i + 1) % size)))?
        }
        Family::Complete => {
            if size < 1 {
                return Err(domain("complete graphs need at least 1 vertex"));
            }
            Graph::new(
                size,
                (0..size).flat_map(|u| (u + 1..size).map(move |v| (u, v))),
            )?
        }
        Family::Cube => {
            if size < 1 {
                return Err(domain("cubes need dimension at least 1"));
            }
            let edge = Graph::new(2, [(0, 1)])?;
            let mut cube = edge.clone();
            for _ in 1..size {
                cube = box_product(&cube, &edge);
            }
            cube
        }
    };
    PointedGraph::new(graph, 0)
}

/// A pointed retract obtained by repeatedly folding a non-base vertex `v`
/// onto a neighbour `w` with `N[v] ⊆ N[w]`. Each fold is one step away from
/// the identity through pointed maps, so the inclusion of the core is a
/// pointed A-homotopy equivalence.
#[derive(Clone, Debug)]
pub struct Retraction {
    pub core: PointedGraph,
    /// Vertex of the core that each original vertex folds to.
    pub to_core: Vec<Vertex>,
    /// Original index of each core vertex.
    pub from_core: Vec<Vertex>,
}

pub fn fold_retract(g: &PointedGraph) -> Retraction {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut folded_to: Vec<Vertex> = (0..n).collect();
    let dominated = |v: Vertex, w: Vertex, alive: &[bool]| {
        g.neighbors(v)
            .iter()
            .all(|&x| !alive[x] || x == w || g.adjacent(x, w))
    };
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if !alive[v] || v == g.base() {
                continue;
            }
            let w = g
                .neighbors(v)
                .iter()
                .copied()
                .find(|&w| alive[w] && dominated(v, w, &alive));
            if let Some(w) = w {
                alive[v] = false;
                folded_to[v] = w;
                changed = true;
            }
        }
    }
    let from_core: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
    let mut new_index = vec![usize::MAX; n];
    for (i, &v) in from_core.iter().enumerate() {
        new_index[v] = i;
    }
    let to_core = (0..n)
        .map(|v| {
            let mut x = v;
            while !alive[x] {
                x = folded_to[x];
            }
            new_index[x]
        })
        .collect();
    let (core, _) = induced_subgraph(g, &from_core).expect("core vertices are in range");
    let core = PointedGraph::new(core, new_index[g.base()]).expect("base survives");
    Retraction {
        core,
        to_core,
        from_core,
    }
}

/// Parses names like `C5`, `I_2` or `K1` into a standard pointed graph.
pub fn standard_from_name(name: &str) -> Result<PointedGraph> {
    let split = name
        .find(|c: char| c.is_ascii_digit() || c == '_')
        .ok_or_else(|| Error::invalid(format!("graph name {name:?} has no size")))?;
    let family: Family = name[..split].parse()?;
    let size = name[split..]
        .trim_start_matches('_')
        .parse()
        .map_err(|_| Error::invalid(format!("bad size in graph name {name:?}")))?;
    make_standard(family, size)
}

/// Box (Cartesian) product. Vertex `(g, h)` has index `g * |V_H| + h`.
pub fn box_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.vertex_count();
    let mut edges = Vec::with_capacity(g.n * h.edge_count() + g.edge_count() * nh);
    for a in g.vertices() {
        for &(x, y) in h.edges() {
            edges.push((a * nh + x, a * nh + y));
        }
    }
    for &(a, b) in g.edges() {
        for x in h.vertices() {
            edges.push((a * nh + x, b * nh + x));
        }
    }
    edges.sort_unstable();
    Graph::from_canonical_edges(g.n * nh, edges)
}

/// A box product that remembers its factors, so maps out of it can be
/// curried. The base is `(base_left, base_right)`.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    left: PointedGraph,
    right: PointedGraph,
    product: PointedGraph,
}

impl ProductGraph {
    pub fn new(left: PointedGraph, right: PointedGraph) -> ProductGraph {
        let graph = box_product(&left, &right);
        let base = left.base() * right.vertex_count() + right.base();
        let product = PointedGraph::new(graph, base).unwrap();
        ProductGraph {
            left,
            right,
            product,
        }
    }

    pub fn left(&self) -> &PointedGraph {
        &self.left
    }

    pub fn right(&self) -> &PointedGraph {
        &self.right
    }

    pub fn product(&self) -> &PointedGraph {
        &self.product
    }

    pub fn pair_index(&self, a: Vertex, b: Vertex) -> Vertex {
        a * self.right.vertex_count() + b
    }

    pub fn split(&self, v: Vertex) -> (Vertex, Vertex) {
        let nr = self.right.vertex_count();
        (v / nr, v % nr)
    }
}

/// Induced subgraph on `subset` (sorted, duplicates ignored). The returned
/// vector sends each old vertex to its new index, if it was kept.
pub fn induced_subgraph(g: &Graph, subset: &[Vertex]) -> Result<(Graph, Vec<Option<Vertex>>)> {
    let mut keep = subset.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|&&v| v >= g.n) {
        return Err(Error::invalid(format!("vertex {bad} outside 0..{}", g.n)));
    }
    let mut map = vec![None; g.n];
    for (new, &old) in keep.iter().enumerate() {
        map[old] = Some(new);
    }
    let edges = g
        .edges
        .iter()
        .filter_map(|&(u, v)| Some((map[u]?, map[v]?)))
        .collect();
    Ok((Graph::from_canonical_edges(keep.len(), edges), map))
}

/// Contracts each block of `partition` to a single vertex; unlisted
/// vertices stay as singletons. The result is simplified (loops dropped,
/// parallel edges merged). New vertices are numbered by their smallest
/// member, so the trivial partition returns `g` unchanged.
pub fn quotient_contract(g: &Graph, partition: &[Vec<Vertex>]) -> Result<(Graph, Vec<Vertex>)> {
    let mut block_of = vec![usize::MAX; g.n];
    for (b, block) in partition.iter().enumerate() {
        for &v in block {
            if v >= g.n {
                return Err(Error::invalid(format!("vertex {v} outside 0..{}", g.n)));
            }
            if block_of[v] != usize::MAX && block_of[v] != b {
                return Err(Error::invalid(format!("vertex {v} lies in two blocks")));
            }
            block_of[v] = b;
        }
    }
    // Representative = smallest member; singletons represent themselves.
    let mut rep = vec![0; g.n];
    let mut block_min = vec![usize::MAX; partition.len()];
    for v in g.vertices() {
        if block_of[v] != usize::MAX {
            let m = &mut block_min[block_of[v]];
            *m = (*m).min(v);
        }
    }
    for v in g.vertices() {
        rep[v] = if block_of[v] == usize::MAX {
            v
        } else {
            block_min[block_of[v]]
        };
    }
    let mut new_index = vec![usize::MAX; g.n];
    let mut count = 0;
    for v in g.vertices() {
        if rep[v] == v {
            new_index[v] = count;
            count += 1;
        }
    }
    let projection: Vec<Vertex> = g.vertices().map(|v| new_index[rep[v]]).collect();
    let mut edges: Vec<_> = g
        .edges
        .iter()
        .filter_map(|&(u, v)| {
            let (a, b) = (projection[u], projection[v]);
            (a != b).then(|| (a.min(b), a.max(b)))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Ok((Graph::from_canonical_edges(count, edges), projection))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> Graph {
        make_standard(Family::Cycle, n).unwrap().into_graph()
    }

    #[test]
    fn folding() {
        let tree = make_standard(Family::Interval, 4).unwrap();
        let r = fold_retract(&tree);
        assert_eq!(r.core.vertex_count(), 1);
        assert_eq!(r.to_core, vec![0; 5]);
        // C4 is contractible but has no dominated vertex.
        let c4 = make_standard(Family::Cycle, 4).unwrap();
        assert_eq!(fold_retract(&c4).core.vertex_count(), 4);
        let c5 = make_standard(Family::Cycle, 5).unwrap();
        assert_eq!(fold_retract(&c5).core.vertex_count(), 5);
        let k4 = make_standard(Family::Complete, 4).unwrap();
        assert_eq!(fold_retract(&k4).core.vertex_count(), 1);
        // The base is never folded away.
        let star = PointedGraph::new(Graph::new(3, [(0, 1), (0, 2)]).unwrap(), 2).unwrap();
        let r = fold_retract(&star);
        assert_eq!(r.from_core, vec![2]);
    }

    #[test]
    fn standard_families() {
        let i3 = make_standard(Family::Interval, 3).unwrap();
        assert_eq!(i3.vertex_count(), 4);
        assert_eq!(i3.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(i3.base(), 0);

        assert_eq!(c(3).edges(), &[(0, 1), (0, 2), (1, 2)]);

        let q2 = make_standard(Family::Cube, 2).unwrap();
        assert_eq!(q2.vertex_count(), 4);
        assert_eq!(q2.edge_count(), 4);
        // (0,0)=0 (0,1)=1 (1,0)=2 (1,1)=3: the 4-cycle 0-1-3-2.
        let relabelled = q2.relabel(&[0, 1, 3, 2]).unwrap();
        assert_eq!(relabelled, c(4));

        assert_eq!(make_standard(Family::Complete, 4).unwrap().edge_count(), 6);
        assert_eq!(make_standard(Family::Interval, 0).unwrap().vertex_count(), 1);
    }

    #[test]
    fn family_domain_errors() {
        for (fam, size) in [(Family::Cycle, 2), (Family::Complete, 0), (Family::Cube, 0)] {
            match make_standard(fam, size) {
                Err(Error::Domain { constraint, .. }) => assert!(!constraint.is_empty()),
                other => panic!("expected domain error, got {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(Graph::new(2, [(1, 1)]).is_err());
        assert!(Graph::new(2, [(0, 2)]).is_err());
        let g = Graph::new(3, [(2, 1), (1, 2), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn box_product_examples() {
        let k1 = point().into_graph();
        let c5 = c(5);
        assert_eq!(box_product(&k1, &c5), c5);
        assert_eq!(box_product(&c5, &k1), c5);

        let i1 = make_standard(Family::Interval, 1).unwrap().into_graph();
        let p = box_product(&c(3), &i1);
        assert_eq!((p.vertex_count(), p.edge_count()), (6, 9));

        let sq = box_product(&i1, &i1);
        assert_eq!(sq.relabel(&[0, 1, 3, 2]).unwrap(), c(4));
    }

    #[test]
    fn induced_subgraph_examples() {
        let c5 = c(5);
        let (all, map) = induced_subgraph(&c5, &[4, 3, 2, 1, 0]).unwrap();
        assert_eq!(all, c5);
        assert_eq!(map, (0..5).map(Some).collect::<Vec<_>>());

        let (path, _) = induced_subgraph(&c5, &[0, 1, 2]).unwrap();
        assert_eq!(path, make_standard(Family::Interval, 2).unwrap().into_graph());

        let (empty, map) = induced_subgraph(&c5, &[]).unwrap();
        assert_eq!(empty.vertex_count(), 0);
        assert!(map.iter().all(Option::is_none));

        assert!(induced_subgraph(&c5, &[5]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let i1 = make_standard(Family::Interval, 1).unwrap().into_graph();
        let (q, proj) = quotient_contract(&i1, &[vec![0, 1]]).unwrap();
        assert_eq!(q, point().into_graph());
        assert_eq!(proj, vec![0, 0]);

        let (q, _) = quotient_contract(&c(3), &[vec![0, 1]]).unwrap();
        assert_eq!(q, i1);

        let c5 = c(5);
        let (q, proj) = quotient_contract(&c5, &[]).unwrap();
        assert_eq!(q, c5);
        assert_eq!(proj, vec![0, 1, 2, 3, 4]);

        assert!(quotient_contract(&c5, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn components_and_order() {
        let g = c(3).disjoint_union(&c(5));
        assert_eq!(g.component_count(), 2);
        let order = g.bfs_order(4);
        assert_eq!(order.len(), 8);
        assert_eq!(order[0], 4);
        assert_eq!(g.closed_neighborhood(0), vec![0, 1, 2]);
    }
}
