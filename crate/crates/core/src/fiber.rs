//! Mapping fiber graphs and the fiber tower `Mf₁ ← Mf₂ ← Mf₃`.
//!
//! `Mf` for a pointed map `f: G → H` is the induced subgraph of
//! `G ⊗ P_{≤L}H` on pairs `(u, ω)` with `ω` ending at `f(u)`. Iterating on
//! the projection `Mf → G` gives the tower; each stage is built by the same
//! function, so a vertex of `Mf₂` is `((u, ω), β)` with `β` a path in `G`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMap, PointedGraph, Vertex};
use crate::hom::{are_homotopic, homotopy_search, search::MapSearch, HomotopyVerdict, HomotopyWitness};
use crate::limits::Limits;
use crate::paths::{check_sublength_condition, loop_graph_trunc, loop_map, path_graph_trunc, PathGraph, SublengthReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberVertex {
    pub u: Vertex,
    pub path: Vec<Vertex>,
}

#[derive(Clone, Debug)]
pub struct FiberGraph {
    f1: GraphMap,
    paths: PathGraph,
    loops: PathGraph,
    /// `(u, index into paths)`, sorted.
    vertices: Vec<(Vertex, usize)>,
    index: HashMap<(Vertex, usize), usize>,
    graph: Arc<PointedGraph>,
    k: GraphMap,
    f2: GraphMap,
    q: GraphMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSummary {
    pub max_length: usize,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub loops: usize,
    pub k_injective: bool,
    pub image_k_equals_fiber_over_base: bool,
    pub pullback: bool,
}

/// Builds `Mf₁` at truncation `max_len`, with `k`, `f₂` and `q` validated
/// as pointed graph maps.
pub fn mapping_fiber(f1: &GraphMap, max_len: usize, limits: &Limits) -> Result<FiberGraph> {
    if !f1.is_pointed() {
        return Err(Error::invalid("the mapping fiber needs a pointed map"));
    }
    let g = f1.domain().clone();
    let h = f1.codomain().clone();
    let paths = path_graph_trunc(h.clone(), max_len, limits)?;
    let loops = loop_graph_trunc(h.clone(), max_len, limits)?;

    let mut ending_at: Vec<Vec<usize>> = vec![Vec::new(); h.vertex_count()];
    for (i, p) in paths.paths().iter().enumerate() {
        ending_at[p.stable()].push(i);
    }
    let mut vertices = Vec::new();
    for u in g.vertices() {
        for &p in &ending_at[f1.apply(u)] {
            vertices.push((u, p));
        }
        limits.check("fiber vertices", vertices.len())?;
    }
    let index: HashMap<(Vertex, usize), usize> = vertices.iter().enumerate().map(|(i, &x)| (x, i)).collect();

    let pg = paths.graph();
    let mut lists = Vec::with_capacity(vertices.len());
    let mut edges = 0usize;
    for &(u, p) in &vertices {
        let mut out = Vec::new();
        for &p2 in pg.neighbors(p) {
            if let Some(&j) = index.get(&(u, p2)) {
                out.push(j);
            }
        }
        for &u2 in g.neighbors(u) {
            if let Some(&j) = index.get(&(u2, p)) {
                out.push(j);
            }
        }
        edges += out.len();
        limits.check("fiber edges", edges / 2)?;
        lists.push(out);
    }
    let base = index[&(g.base(), 0)];
    let graph = Arc::new(PointedGraph::new(Graph::from_neighbor_lists(lists), base)?);

    let k = GraphMap::new(
        loops.graph().clone(),
        graph.clone(),
        loops
            .paths()
            .iter()
            .map(|l| index[&(g.base(), paths.index_of_trace(l.trace()).unwrap())])
            .collect(),
        true,
    )?;
    let f2 = GraphMap::new(graph.clone(), g.clone(), vertices.iter().map(|&(u, _)| u).collect(), true)?;
    let q = GraphMap::new(
        graph.clone(),
        h.clone(),
        vertices.iter().map(|&(_, p)| paths.path(p).stable()).collect(),
        true,
    )?;
    Ok(FiberGraph {
        f1: f1.clone(),
        paths,
        loops,
        vertices,
        index,
        graph,
        k,
        f2,
        q,
    })
}

impl FiberGraph {
    pub fn map(&self) -> &GraphMap {
        &self.f1
    }

    pub fn max_len(&self) -> usize {
        self.paths.max_len()
    }

    pub fn graph(&self) -> &Arc<PointedGraph> {
        &self.graph
    }

    /// `P_{≤L}H` for the codomain `H`.
    pub fn paths(&self) -> &PathGraph {
        &self.paths
    }

    /// `Ω_{≤L}H`, the domain of `k`.
    pub fn loops(&self) -> &PathGraph {
        &self.loops
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> FiberVertex {
        let (u, p) = self.vertices[i];
        FiberVertex {
            u,
            path: self.paths.path(p).trace().to_vec(),
        }
    }

    /// Index of `(u, ω)`, with `ω` given by any trace of the path.
    pub fn index_of(&self, u: Vertex, trace: &[Vertex]) -> Option<usize> {
        let p = self.paths.index_of_trace(trace)?;
        self.index.get(&(u, p)).copied()
    }

    /// `ω ↦ (u₀, ω)` on `Ω_{≤L}H`.
    pub fn k(&self) -> &GraphMap {
        &self.k
    }

    /// The projection `(u, ω) ↦ u`.
    pub fn f2(&self) -> &GraphMap {
        &self.f2
    }

    /// `(u, ω) ↦ ω(L)`.
    pub fn q(&self) -> &GraphMap {
        &self.q
    }

    /// Whether the image of `k` is exactly the set of vertices over the base.
    pub fn image_k_equals_fiber_over_base(&self) -> bool {
        let image: BTreeSet<Vertex> = self.k.assignment().iter().copied().collect();
        let over_base: BTreeSet<Vertex> = (0..self.len())
            .filter(|&i| self.f2.apply(i) == self.f1.domain().base())
            .collect();
        image == over_base
    }

    pub fn summary(&self) -> FiberSummary {
        FiberSummary {
            max_length: self.max_len(),
            vertices: self.len(),
            edges: self.graph.edge_count(),
            components: self.graph.component_count(),
            loops: self.loops.len(),
            k_injective: self.k.is_injective(),
            image_k_equals_fiber_over_base: self.image_k_equals_fiber_over_base(),
            pullback: verify_pullback(self),
        }
    }
}

fn paths_adjacent(a: &[Vertex], b: &[Vertex], h: &Graph) -> bool {
    let len = a.len().max(b.len());
    let at = |p: &[Vertex], t: usize| *p.get(t).unwrap_or_else(|| p.last().unwrap());
    a != b && (0..len).all(|t| h.adjacent_or_equal(at(a, t), at(b, t)))
}

/// Rechecks the pullback description of the fiber from its raw data: the
/// vertex set is all `(u, ω)` with `p(ω) = f₁(u)`, adjacency is the one
/// induced from `G ⊗ P_{≤L}H` (path adjacency recomputed pointwise), and
/// `f₁ ∘ f₂ = p ∘ pr` holds at every vertex.
pub fn verify_pullback(fiber: &FiberGraph) -> bool {
    let f1 = &fiber.f1;
    let g = f1.domain();
    let h = f1.codomain();
    let traces: Vec<&[Vertex]> = fiber.paths.paths().iter().map(|p| p.trace()).collect();

    let mut expected = Vec::new();
    for u in g.vertices() {
        for (i, t) in traces.iter().enumerate() {
            if *t.last().unwrap() == f1.apply(u) {
                expected.push((u, i));
            }
        }
    }
    let mut actual = fiber.vertices.clone();
    actual.sort_unstable();
    if actual != expected || actual.len() != fiber.graph.vertex_count() {
        return false;
    }
    let n = fiber.vertices.len();
    for i in 0..n {
        let (u, p) = fiber.vertices[i];
        if f1.apply(fiber.f2.apply(i)) != *traces[p].last().unwrap() || fiber.f2.apply(i) != u {
            return false;
        }
        for j in i + 1..n {
            let (u2, p2) = fiber.vertices[j];
            let induced = (u == u2 && paths_adjacent(traces[p], traces[p2], h)) || (p == p2 && g.adjacent(u, u2));
            if induced != fiber.graph.adjacent(i, j) {
                return false;
            }
        }
    }
    true
}

/// `Mf₁`, `Mf₂`, `Mf₃` (as far as `depth`) with the connecting maps.
#[derive(Clone, Debug)]
pub struct FiberTower {
    stages: Vec<FiberGraph>,
    j: Option<GraphMap>,
    j_prime: Option<GraphMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerSummary {
    pub depth: usize,
    pub stages: Vec<FiberSummary>,
    pub j_injective: Option<bool>,
    pub j_prime_injective: Option<bool>,
}

/// Builds the tower with one truncation per stage: `lengths[n]` bounds the
/// paths added at stage `n + 1`, so `lengths.len()` is the depth (1 to 3).
/// Stage `n + 1` is the fiber of the projection of stage `n`.
pub fn iterated_fiber(f1: &GraphMap, lengths: &[usize], limits: &Limits) -> Result<FiberTower> {
    let depth = lengths.len();
    if !(1..=3).contains(&depth) {
        return Err(Error::invalid("tower depth must be 1, 2 or 3"));
    }
    let mut stages = vec![mapping_fiber(f1, lengths[0], limits)?];
    for &len in &lengths[1..] {
        let next = mapping_fiber(stages.last().unwrap().f2(), len, limits)?;
        stages.push(next);
    }
    let j = if depth >= 2 {
        // ω ↦ ((u₀, ω), β₀)
        let (s1, s2) = (&stages[0], &stages[1]);
        let assignment = s1.k().assignment().iter().map(|&x| s2.index[&(x, 0)]).collect();
        Some(GraphMap::new(s1.loops().graph().clone(), s2.graph().clone(), assignment, true)?)
    } else {
        None
    };
    let j_prime = if depth >= 3 {
        // β ↦ (((u₀, ω₀), β), γ₀)
        let (s2, s3) = (&stages[1], &stages[2]);
        let assignment = s2.k().assignment().iter().map(|&y| s3.index[&(y, 0)]).collect();
        Some(GraphMap::new(s2.loops().graph().clone(), s3.graph().clone(), assignment, true)?)
    } else {
        None
    };
    Ok(FiberTower { stages, j, j_prime })
}

impl FiberTower {
    pub fn stages(&self) -> &[FiberGraph] {
        &self.stages
    }

    pub fn depth(&self) -> usize {
        self.stages.len()
    }

    /// `j: Ω_{≤L}H → Mf₂`.
    pub fn j(&self) -> Option<&GraphMap> {
        self.j.as_ref()
    }

    /// `j′: Ω_{≤L}G → Mf₃`.
    pub fn j_prime(&self) -> Option<&GraphMap> {
        self.j_prime.as_ref()
    }

    pub fn summary(&self) -> TowerSummary {
        TowerSummary {
            depth: self.depth(),
            stages: self.stages.iter().map(FiberGraph::summary).collect(),
            j_injective: self.j.as_ref().map(GraphMap::is_injective),
            j_prime_injective: self.j_prime.as_ref().map(GraphMap::is_injective),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SquareStatus {
    /// Equal at every vertex.
    Commutes,
    /// Commutes up to a pointed homotopy of the given length.
    HomotopyCommutes { method: String, length: usize },
    /// The two composites differ at `vertex` (strict squares), or are
    /// certified non-homotopic.
    Fails { vertex: Option<Vertex> },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareReport {
    pub square: String,
    #[serde(flatten)]
    pub status: SquareStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerticalMapCheck {
    pub map: String,
    pub graph_map: bool,
    pub pointed: bool,
    pub injective: bool,
}

/// Knobs for [`check_mf2_ladder`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderOptions {
    /// Maps visited by the fallback search for the left square.
    pub search_budget: u64,
    /// Truncation for the paths in `Mf₁` that make up `Mf₃`. Only the
    /// constant path enters the ladder, and `P_{≤L}Mf₁` is far too large
    /// at the `L` used for the other stages.
    pub mf3_path_length: usize,
}

impl Default for LadderOptions {
    fn default() -> Self {
        LadderOptions {
            search_budget: 100_000,
            mf3_path_length: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderReport {
    pub max_length: usize,
    pub options: LadderOptions,
    pub hypothesis_met: bool,
    pub sublength_domain: SublengthReport,
    pub sublength_codomain: SublengthReport,
    pub vertical_maps: Vec<VerticalMapCheck>,
    pub squares: Vec<SquareReport>,
    pub tower: Option<TowerSummary>,
    #[serde(skip)]
    pub witness: Option<HomotopyWitness>,
}

impl LadderReport {
    pub fn all_pass(&self) -> bool {
        self.hypothesis_met
            && self.vertical_maps.iter().all(|m| m.graph_map && m.pointed && m.injective)
            && !self.squares.is_empty()
            && self
                .squares
                .iter()
                .all(|s| matches!(s.status, SquareStatus::Commutes | SquareStatus::HomotopyCommutes { .. }))
    }
}

fn strict_square(name: &str, a: &GraphMap, b: &GraphMap) -> SquareReport {
    let status = match (0..a.assignment().len()).find(|&v| a.apply(v) != b.apply(v)) {
        None => SquareStatus::Commutes,
        Some(v) => SquareStatus::Fails { vertex: Some(v) },
    };
    SquareReport {
        square: name.to_string(),
        status,
    }
}

/// Checks the ladder from the loop row `ΩG → ΩH → Mf₁ → G → H` into the
/// tower row `Mf₃ → Mf₂ → Mf₁ → G → H`, with vertical maps `j′, j, id, id,
/// id`. The right three squares are compared vertex by vertex. The left
/// square `j ∘ Ωf₁ ≃ f₄ ∘ j′` is attempted first by loop-wise contraction:
/// a pointed null-homotopy of `f₁` pushes `f₁β` down to the constant loop,
/// then a pointed contraction of `G` grows `β₀` into `β`. If either
/// contraction does not exist, a bounded search over maps
/// `Ω_{≤L}G → Mf₂` is run with at most `options.search_budget` maps
/// visited.
pub fn check_mf2_ladder(f1: &GraphMap, max_len: usize, options: &LadderOptions, limits: &Limits) -> Result<LadderReport> {
    let budget = options.search_budget;
    let g = f1.domain().clone();
    let h = f1.codomain().clone();
    let sub_g = check_sublength_condition(&g, max_len, 4, limits)?;
    let sub_h = check_sublength_condition(&h, max_len, 4, limits)?;
    let mut report = LadderReport {
        max_length: max_len,
        options: options.clone(),
        hypothesis_met: sub_g.holds && sub_h.holds,
        sublength_domain: sub_g,
        sublength_codomain: sub_h,
        vertical_maps: Vec::new(),
        squares: Vec::new(),
        tower: None,
        witness: None,
    };
    if !report.hypothesis_met {
        return Ok(report);
    }

    let tower = iterated_fiber(f1, &[max_len, max_len, options.mf3_path_length], limits)?;
    let [s1, s2, s3] = [&tower.stages[0], &tower.stages[1], &tower.stages[2]];
    let j = tower.j().unwrap();
    let j_prime = tower.j_prime().unwrap();
    for (name, m) in [("j_prime", j_prime), ("j", j)] {
        report.vertical_maps.push(VerticalMapCheck {
            map: name.to_string(),
            graph_map: true,
            pointed: m.preserves_base(),
            injective: m.is_injective(),
        });
    }

    // Ω_{≤L}G is stage 2's loop graph, Ω_{≤L}H is stage 1's.
    let omega_f1 = loop_map(f1, s2.loops(), s1.loops())?;
    let top = omega_f1.then(j)?;
    let bottom = j_prime.then(s3.f2())?;
    let left = ladder_left_square(f1, &tower, &top, &bottom, budget, limits)?;
    report.witness = left.1;
    report.squares.push(SquareReport {
        square: "j . omega_f1 ~ f4 . j_prime".to_string(),
        status: left.0,
    });

    let id_mf1 = GraphMap::identity(s1.graph().clone());
    report.squares.push(strict_square("f3 . j = id . k", &j.then(s2.f2())?, &s1.k().then(&id_mf1)?));
    let id_g = GraphMap::identity(g.clone());
    report.squares.push(strict_square("f2 . id = id . f2", &id_mf1.then(s1.f2())?, &s1.f2().then(&id_g)?));
    let id_h = GraphMap::identity(h.clone());
    report.squares.push(strict_square("f1 . id = id . f1", &id_g.then(f1)?, &f1.then(&id_h)?));
    report.tower = Some(tower.summary());
    Ok(report)
}

fn ladder_left_square(
    f1: &GraphMap,
    tower: &FiberTower,
    top: &GraphMap,
    bottom: &GraphMap,
    budget: u64,
    limits: &Limits,
) -> Result<(SquareStatus, Option<HomotopyWitness>)> {
    if top.assignment() == bottom.assignment() {
        return Ok((
            SquareStatus::Commutes,
            Some(HomotopyWitness::trivial(top.assignment(), true)),
        ));
    }
    if let Some(w) = two_phase_witness(f1, tower, limits)? {
        if w.start() == top.assignment()
            && w.end() == bottom.assignment()
            && w.validate(top.domain(), top.codomain()).is_ok()
        {
            let length = w.length();
            return Ok((
                SquareStatus::HomotopyCommutes {
                    method: "two_phase".to_string(),
                    length,
                },
                Some(w),
            ));
        }
    }
    let search = MapSearch::new(top.domain(), top.codomain(), true);
    match homotopy_search(&search, top.assignment(), bottom.assignment(), &Limits::with_cap(budget), None) {
        Ok(HomotopyVerdict::Homotopic { distance, witness }) => Ok((
            SquareStatus::HomotopyCommutes {
                method: "search".to_string(),
                length: distance,
            },
            Some(witness),
        )),
        Ok(HomotopyVerdict::NotHomotopic { .. }) => Ok((SquareStatus::Fails { vertex: None }, None)),
        Err(e) if e.is_cap() => Ok((
            SquareStatus::Inconclusive {
                reason: format!("search budget of {budget} maps exhausted"),
            },
            None,
        )),
        Err(e) => Err(e),
    }
}

/// `F_s(β) = (u₀, e_s∘β, β₀)` along a pointed null-homotopy `e` of `f₁`,
/// then `(u₀, ω₀, g_s∘β)` along a pointed homotopy `g` from the constant
/// map to `id_G`. `None` when either homotopy does not exist.
fn two_phase_witness(f1: &GraphMap, tower: &FiberTower, limits: &Limits) -> Result<Option<HomotopyWitness>> {
    let g = f1.domain();
    let h = f1.codomain();
    let (s1, s2) = (&tower.stages[0], &tower.stages[1]);
    let c_h = GraphMap::constant(g.clone(), h.clone(), h.base())?;
    let e = match are_homotopic(f1, &c_h, true, limits)? {
        HomotopyVerdict::Homotopic { witness, .. } => witness,
        HomotopyVerdict::NotHomotopic { .. } => return Ok(None),
    };
    let c_g = GraphMap::constant(g.clone(), g.clone(), g.base())?;
    let grow = match are_homotopic(&c_g, &GraphMap::identity(g.clone()), true, limits)? {
        HomotopyVerdict::Homotopic { witness, .. } => witness,
        HomotopyVerdict::NotHomotopic { .. } => return Ok(None),
    };

    let loops_g = s2.loops();
    let base_g = g.base();
    let mut steps = Vec::new();
    for es in &e.steps {
        let step: Option<Vec<Vertex>> = loops_g
            .paths()
            .iter()
            .map(|beta| {
                let image: Vec<Vertex> = beta.trace().iter().map(|&v| es[v]).collect();
                let x = s1.index_of(base_g, &image)?;
                s2.index.get(&(x, 0)).copied()
            })
            .collect();
        match step {
            Some(s) => steps.push(s),
            None => return Ok(None),
        }
    }
    let x0 = s1.graph().base();
    for gs in &grow.steps[1..] {
        let step: Option<Vec<Vertex>> = loops_g
            .paths()
            .iter()
            .map(|beta| {
                let image: Vec<Vertex> = beta.trace().iter().map(|&v| gs[v]).collect();
                let p = s2.paths().index_of_trace(&image)?;
                s2.index.get(&(x0, p)).copied()
            })
            .collect();
        match step {
            Some(s) => steps.push(s),
            None => return Ok(None),
        }
    }
    Ok(Some(HomotopyWitness { steps, pointed: true }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_standard, point, Family};

    fn pg(f: Family, n: usize) -> Arc<PointedGraph> {
        Arc::new(make_standard(f, n).unwrap())
    }

    #[test]
    fn trivial_fiber() {
        let k1 = Arc::new(point());
        let f = GraphMap::identity(k1);
        let m = mapping_fiber(&f, 3, &Limits::default()).unwrap();
        assert_eq!(m.len(), 1);
        assert!(verify_pullback(&m));
        let t = iterated_fiber(&f, &[3, 3, 3], &Limits::default()).unwrap();
        assert!(t.stages().iter().all(|s| s.len() == 1));
    }

    #[test]
    fn base_inclusion_recovers_loop_graph() {
        let lim = Limits::default();
        let c5 = pg(Family::Cycle, 5);
        let f = GraphMap::new(Arc::new(point()), c5.clone(), vec![0], true).unwrap();
        let m = mapping_fiber(&f, 4, &lim).unwrap();
        let omega = loop_graph_trunc(c5, 4, &lim).unwrap();
        assert_eq!(m.len(), omega.len());
        assert!(m.k().is_injective() && m.k().is_surjective());
        assert_eq!(m.graph().edges(), omega.graph().edges());
    }

    #[test]
    fn identity_fiber_counts_and_projections() {
        let lim = Limits::default();
        let i1 = pg(Family::Interval, 1);
        let m = mapping_fiber(&GraphMap::identity(i1.clone()), 2, &lim).unwrap();
        // Paths of length ≤ 2 in I_1 from 0: [0], [0,1], [0,0,1], [0,1,0].
        assert_eq!(m.len(), 4);
        assert!(verify_pullback(&m));
        assert!(m.f2().is_surjective());
        assert!(m.image_k_equals_fiber_over_base());

        let c4 = pg(Family::Cycle, 4);
        let m = mapping_fiber(&GraphMap::identity(c4.clone()), 4, &lim).unwrap();
        assert_eq!(m.len(), 81);
        for i in 0..m.len() {
            assert_eq!(m.map().apply(m.f2().apply(i)), m.q().apply(i));
        }
    }

    #[test]
    fn pullback_negative_control() {
        let lim = Limits::default();
        let i1 = pg(Family::Interval, 1);
        let m = mapping_fiber(&GraphMap::identity(i1), 2, &lim).unwrap();
        let mut bad = m.clone();
        // (1, [0]) has p(ω) = 0 ≠ f₁(1).
        bad.vertices.push((1, 0));
        assert!(!verify_pullback(&bad));

        let mut bad = m.clone();
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        bad.graph = Arc::new(PointedGraph::new(g, 0).unwrap());
        assert!(!verify_pullback(&bad));
    }

    #[test]
    fn truncation_is_induced() {
        let lim = Limits::default();
        let f = GraphMap::identity(pg(Family::Cycle, 3));
        let small = mapping_fiber(&f, 2, &lim).unwrap();
        let big = mapping_fiber(&f, 3, &lim).unwrap();
        let embed: Vec<usize> = (0..small.len())
            .map(|i| {
                let v = small.vertex(i);
                big.index_of(v.u, &v.path).unwrap()
            })
            .collect();
        for a in 0..small.len() {
            for b in 0..small.len() {
                assert_eq!(small.graph().adjacent(a, b), big.graph().adjacent(embed[a], embed[b]));
            }
        }
    }

    #[test]
    fn tower_maps() {
        let lim = Limits::default();
        let c4 = pg(Family::Cycle, 4);
        let f = GraphMap::new(Arc::new(point()), c4, vec![0], true).unwrap();
        let t = iterated_fiber(&f, &[4, 4], &lim).unwrap();
        let (s1, s2) = (&t.stages()[0], &t.stages()[1]);
        let j = t.j().unwrap();
        assert!(j.is_injective());
        assert_eq!(j.then(s2.f2()).unwrap().assignment(), s1.k().assignment());
    }

    #[test]
    fn ladder_hypothesis_not_met_for_c5() {
        let f = GraphMap::identity(pg(Family::Cycle, 5));
        let r = check_mf2_ladder(&f, 5, &LadderOptions::default(), &Limits::default()).unwrap();
        assert!(!r.hypothesis_met);
        assert!(!r.all_pass());
        assert_eq!(r.sublength_domain.offender.as_ref().unwrap().trace, vec![0, 1, 2, 3, 4, 0]);
    }

    #[test]
    fn ladder_point() {
        let f = GraphMap::identity(Arc::new(point()));
        let r = check_mf2_ladder(&f, 2, &LadderOptions::default(), &Limits::default()).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.squares[0].status, SquareStatus::Commutes);
    }

    #[test]
    fn ladder_identity_c4() {
        let f = GraphMap::identity(pg(Family::Cycle, 4));
        let r = check_mf2_ladder(&f, 4, &LadderOptions::default(), &Limits::default()).unwrap();
        assert!(r.all_pass());
        let w = r.witness.as_ref().unwrap();
        assert!(matches!(r.squares[0].status, SquareStatus::HomotopyCommutes { .. }));
        assert_eq!(r.tower.as_ref().unwrap().stages[1].vertices, 1641);
        assert!(w.length() > 0);
    }
}
