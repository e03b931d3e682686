//! Exactness of pointed sequences on homotopy classes, suspension, the
//! loop/suspension adjunction, and the Puppe-sequence harness.
//!
//! Everything here works on truncated loop graphs, so a negative answer
//! is only ever "not exact at this truncation".

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::mapping_fiber;
use crate::graph::{quotient_contract, standard_from_name, GraphMap, PointedGraph, ProductGraph, Vertex};
use crate::hom::{class_spanning_maps, homotopy_classes, induced_on_classes, ClassTable, HomGraph};
use crate::limits::Limits;
use crate::paths::{check_sublength_condition, loop_graph_trunc, loop_map, PathGraph, SublengthReport};

/// `X₀ → X₁ → ⋯ → Xₙ`, all maps pointed.
#[derive(Clone, Debug)]
pub struct PointedSequence {
    labels: Vec<String>,
    maps: Vec<GraphMap>,
}

impl PointedSequence {
    /// `labels` names the stages, so it has one more entry than `maps`.
    pub fn new(labels: Vec<String>, maps: Vec<GraphMap>) -> Result<PointedSequence> {
        if maps.is_empty() || labels.len() != maps.len() + 1 {
            return Err(Error::invalid("a sequence needs at least one map and one label per stage"));
        }
        for (i, m) in maps.iter().enumerate() {
            if !m.is_pointed() {
                return Err(Error::invalid(format!("map {i} is not pointed")));
            }
            if i + 1 < maps.len() && m.codomain() != maps[i + 1].domain() {
                return Err(Error::invalid(format!("maps {i} and {} do not compose", i + 1)));
            }
        }
        Ok(PointedSequence { labels, maps })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn maps(&self) -> &[GraphMap] {
        &self.maps
    }

    pub fn stage(&self, i: usize) -> &Arc<PointedGraph> {
        if i == 0 {
            self.maps[0].domain()
        } else {
            self.maps[i - 1].codomain()
        }
    }

    /// Applies `Ω_{≤len}` to every stage and map.
    pub fn looped(&self, len: usize, limits: &Limits) -> Result<PointedSequence> {
        let loops: Vec<PathGraph> = (0..self.len())
            .map(|i| loop_graph_trunc(self.stage(i).clone(), len, limits))
            .collect::<Result<_>>()?;
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| loop_map(m, &loops[i], &loops[i + 1]))
            .collect::<Result<_>>()?;
        let labels = self.labels.iter().map(|l| format!("Omega {l}")).collect();
        PointedSequence::new(labels, maps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ExactnessVerdict {
    Exact,
    /// A kernel class outside the image.
    ImageProperSubsetOfKernel { witness_class: usize, witness_map: Vec<Vertex> },
    /// An image class that does not go to the base class.
    ImageNotInKernel { witness_class: usize, witness_map: Vec<Vertex> },
    Inconclusive { reason: String },
}

impl ExactnessVerdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, ExactnessVerdict::Exact)
    }

    pub fn is_refutation(&self) -> bool {
        matches!(
            self,
            ExactnessVerdict::ImageProperSubsetOfKernel { .. } | ExactnessVerdict::ImageNotInKernel { .. }
        )
    }

    pub fn image_in_kernel(&self) -> Option<bool> {
        match self {
            ExactnessVerdict::Exact | ExactnessVerdict::ImageProperSubsetOfKernel { .. } => Some(true),
            ExactnessVerdict::ImageNotInKernel { .. } => Some(false),
            ExactnessVerdict::Inconclusive { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub position: usize,
    pub stage: String,
    pub probe: String,
    /// Maps `K → X_{p-1}` pushed forward to compute the image.
    pub incoming_maps: Option<usize>,
    /// `|[K, X_p]|` and `|[K, X_{p+1}]|`.
    pub class_counts: Option<[usize; 2]>,
    pub image: Vec<usize>,
    pub kernel: Vec<usize>,
    #[serde(flatten)]
    pub verdict: ExactnessVerdict,
}

/// Compares `im (f_{p-1})_*` with `(f_p)_*⁻¹(base)` in `[K, X_p]`.
pub fn check_exact_at(
    seq: &PointedSequence,
    position: usize,
    probe: &Probe,
    limits: &Limits,
) -> Result<ExactnessReport> {
    if position == 0 || position + 1 >= seq.len() {
        return Err(Error::invalid(format!("position {position} is not interior")));
    }
    let mut report = ExactnessReport {
        position,
        stage: seq.labels[position].clone(),
        probe: probe.name.clone(),
        incoming_maps: None,
        class_counts: None,
        image: Vec::new(),
        kernel: Vec::new(),
        verdict: ExactnessVerdict::Exact,
    };
    let inconclusive = |mut report: ExactnessReport, e: Error| {
        report.verdict = ExactnessVerdict::Inconclusive { reason: e.to_string() };
        Ok(report)
    };
    // The image only needs one map per class of [K, X_{p-1}], so that
    // stage is enumerated without its map graph.
    let tables: Result<Vec<ClassTable>> = (position..=position + 1)
        .map(|i| homotopy_classes(probe.graph.clone(), seq.stage(i).clone(), true, limits))
        .collect();
    let tables = match tables {
        Ok(t) => t,
        Err(e) if e.is_cap() => return inconclusive(report, e),
        Err(e) => return Err(e),
    };
    let incoming = match class_spanning_maps(&probe.graph, seq.stage(position - 1), true, limits) {
        Ok(m) => m,
        Err(e) if e.is_cap() => return inconclusive(report, e),
        Err(e) => return Err(e),
    };
    let f = &seq.maps[position - 1];
    let mut image = BTreeSet::new();
    for phi in &incoming {
        let pushed: Vec<Vertex> = phi.iter().map(|&v| f.apply(v)).collect();
        let c = tables[0]
            .class_of_map(&pushed)
            .ok_or_else(|| Error::invalid("composite map missing from class table"))?;
        image.insert(c);
    }
    let outgoing = induced_on_classes(&seq.maps[position], &tables[0], &tables[1])?;
    let kernel: BTreeSet<usize> = outgoing.preimage(tables[1].base_class()).into_iter().collect();
    report.incoming_maps = Some(incoming.len());
    report.class_counts = Some([tables[0].class_count(), tables[1].class_count()]);
    let witness = |c: usize| tables[0].representative(c);
    report.verdict = if let Some(&c) = image.difference(&kernel).next() {
        ExactnessVerdict::ImageNotInKernel { witness_class: c, witness_map: witness(c) }
    } else if let Some(&c) = kernel.difference(&image).next() {
        ExactnessVerdict::ImageProperSubsetOfKernel { witness_class: c, witness_map: witness(c) }
    } else {
        ExactnessVerdict::Exact
    };
    report.image = image.into_iter().collect();
    report.kernel = kernel.into_iter().collect();
    Ok(report)
}

/// `Σ_l G`: `G ⊗ I_l` with the bottom level, the top level and the base
/// column contracted to the base vertex.
#[derive(Clone, Debug)]
pub struct Suspension {
    graph: Arc<PointedGraph>,
    levels: usize,
    product: ProductGraph,
    projection: Vec<Vertex>,
}

pub fn suspension(g: &PointedGraph, levels: usize) -> Result<Suspension> {
    let interval = crate::graph::make_standard(crate::graph::Family::Interval, levels)?;
    let product = ProductGraph::new(g.clone(), interval);
    let mut block = Vec::new();
    for u in g.vertices() {
        block.push(product.pair_index(u, 0));
        block.push(product.pair_index(u, levels));
    }
    for t in 0..=levels {
        block.push(product.pair_index(g.base(), t));
    }
    block.sort_unstable();
    block.dedup();
    let (quotient, projection) = quotient_contract(product.product(), &[block])?;
    let base = projection[product.pair_index(g.base(), 0)];
    Ok(Suspension {
        graph: Arc::new(PointedGraph::new(quotient, base)?),
        levels,
        product,
        projection,
    })
}

impl Suspension {
    pub fn graph(&self) -> &Arc<PointedGraph> {
        &self.graph
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// The image of `(u, t)`; levels outside `0..=l` are collapsed.
    pub fn project(&self, u: Vertex, t: usize) -> Vertex {
        self.projection[self.product.pair_index(u, t.min(self.levels))]
    }
}

/// `Φ(f)(u) = (t ↦ f(u, t))`, as an assignment into `loops`.
fn phi(f: &[Vertex], sigma: &Suspension, g: &PointedGraph, loops: &PathGraph) -> Option<Vec<Vertex>> {
    g.vertices()
        .map(|u| {
            let trace: Vec<Vertex> = (0..=sigma.levels).map(|t| f[sigma.project(u, t)]).collect();
            loops.index_of_trace(&trace)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub levels: usize,
    pub loop_length: usize,
    pub suspension_vertices: usize,
    pub suspension_maps: usize,
    pub loop_side_maps: usize,
    pub suspension_classes: usize,
    pub loop_side_classes: usize,
    /// `Φ` is a bijection between the two sets of pointed maps.
    pub bijective_on_maps: bool,
    /// One-step homotopies go to one-step homotopies (or equalities).
    pub preserves_steps: bool,
    pub well_defined_on_classes: bool,
    pub bijective_on_classes: bool,
    /// Class of `Φ(f)` for each class of `f`.
    pub class_map: Vec<usize>,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.suspension_classes == self.loop_side_classes
            && self.bijective_on_maps
            && self.preserves_steps
            && self.well_defined_on_classes
            && self.bijective_on_classes
    }
}

/// Compares `[Σ_l G, H]` with `[G, Ω_{≤l}H]` through `Φ`.
pub fn adjunction_check(g: &Arc<PointedGraph>, h: &Arc<PointedGraph>, levels: usize, limits: &Limits) -> Result<AdjunctionReport> {
    let sigma = suspension(g, levels)?;
    let loops = loop_graph_trunc(h.clone(), levels, limits)?;
    let left = ClassTable::from_hom(HomGraph::build(sigma.graph().clone(), h.clone(), true, limits)?);
    let right = ClassTable::from_hom(HomGraph::build(g.clone(), loops.graph().clone(), true, limits)?);

    let mut image = Vec::with_capacity(left.hom().maps().len());
    for f in left.hom().maps() {
        let a = phi(f, &sigma, g, &loops).ok_or_else(|| Error::invalid("a loop escaped the truncation"))?;
        let i = right
            .hom()
            .index_of(&a)
            .ok_or_else(|| Error::invalid("the adjoint is not a pointed graph map"))?;
        image.push(i);
    }
    let mut hit = vec![false; right.hom().maps().len()];
    let mut injective = true;
    for &i in &image {
        injective &= !std::mem::replace(&mut hit[i], true);
    }
    let bijective_on_maps = injective && hit.iter().all(|&b| b);

    let lg = left.hom().graph();
    let rg = right.hom().graph();
    let preserves_steps = lg.edges().iter().all(|&(a, b)| rg.adjacent_or_equal(image[a], image[b]));

    let mut class_map = Vec::with_capacity(left.class_count());
    let mut well_defined = true;
    for members in left.classes() {
        let c = right.class_of_index(image[members[0]]);
        well_defined &= members.iter().all(|&m| right.class_of_index(image[m]) == c);
        class_map.push(c);
    }
    let mut seen = vec![false; right.class_count()];
    for &c in &class_map {
        seen[c] = true;
    }
    let distinct = class_map.iter().collect::<BTreeSet<_>>().len() == class_map.len();
    Ok(AdjunctionReport {
        levels,
        loop_length: levels,
        suspension_vertices: sigma.graph().vertex_count(),
        suspension_maps: left.hom().maps().len(),
        loop_side_maps: right.hom().maps().len(),
        suspension_classes: left.class_count(),
        loop_side_classes: right.class_count(),
        bijective_on_maps,
        preserves_steps,
        well_defined_on_classes: well_defined,
        bijective_on_classes: well_defined && distinct && seen.iter().all(|&b| b),
        class_map,
    })
}

/// `Φ(h ∘ f) = Ωh ∘ Φ(f)` for every class representative `f` of
/// `[Σ_l G, H]`, where `h: H → H′`.
pub fn adjunction_naturality(g: &Arc<PointedGraph>, h: &GraphMap, levels: usize, limits: &Limits) -> Result<bool> {
    let sigma = suspension(g, levels)?;
    let src = loop_graph_trunc(h.domain().clone(), levels, limits)?;
    let dst = loop_graph_trunc(h.codomain().clone(), levels, limits)?;
    let omega_h = loop_map(h, &src, &dst)?;
    let table = homotopy_classes(sigma.graph().clone(), h.domain().clone(), true, limits)?;
    for c in 0..table.class_count() {
        let f = table.representative(c);
        let hf: Vec<Vertex> = f.iter().map(|&x| h.apply(x)).collect();
        let (Some(left), Some(right)) = (phi(&hf, &sigma, g, &dst), phi(&f, &sigma, g, &src)) else {
            return Ok(false);
        };
        if left.iter().zip(&right).any(|(&a, &b)| a != omega_h.apply(b)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A named pointed probe graph `K`.
#[derive(Clone, Debug)]
pub struct Probe {
    pub name: String,
    pub graph: Arc<PointedGraph>,
}

impl Probe {
    pub fn new(name: impl Into<String>, graph: PointedGraph) -> Probe {
        Probe {
            name: name.into(),
            graph: Arc::new(graph),
        }
    }

    pub fn standard(name: &str) -> Result<Probe> {
        Ok(Probe::new(name, standard_from_name(name)?))
    }
}

pub const DEFAULT_PROBES: [&str; 6] = ["K1", "I1", "I2", "C3", "C4", "C5"];

pub fn default_probes() -> Vec<Probe> {
    DEFAULT_PROBES.iter().map(|n| Probe::standard(n).unwrap()).collect()
}

/// `"default"` or a comma-separated list of standard names.
pub fn parse_probes(list: &str) -> Result<Vec<Probe>> {
    if list == "default" {
        return Ok(default_probes());
    }
    list.split(',').map(|s| Probe::standard(s.trim())).collect()
}

/// Length budgets for the harness. `max_len` truncates the first loop
/// graphs of `G` and `H` and the fiber; every other loop graph (loops in
/// `Mf₁` and in loop graphs) uses `inner_length`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuppeOptions {
    pub max_len: usize,
    pub depth: usize,
    pub inner_length: usize,
    /// How many times a refuted position is rechecked at `L + 2`.
    pub retries: usize,
}

impl Default for PuppeOptions {
    fn default() -> Self {
        PuppeOptions {
            max_len: 6,
            depth: 1,
            inner_length: 2,
            retries: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelHypotheses {
    /// Level `k` concerns loops in `Ω^k G`, `Ω^k H` and the map `Ω^{k+1} f₁`.
    pub level: usize,
    pub loop_length: usize,
    pub sublength_domain: Option<SublengthReport>,
    pub sublength_codomain: Option<SublengthReport>,
    pub loop_map_surjective: Option<bool>,
    /// First loop of `Ω^{k+1} H` not hit, as a trace of vertices of `Ω^k H`.
    pub missed_loop: Option<Vec<Vertex>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inconclusive: Option<String>,
}

impl LevelHypotheses {
    pub fn met(&self) -> Option<bool> {
        let a = self.sublength_domain.as_ref()?.holds;
        let b = self.sublength_codomain.as_ref()?.holds;
        Some(a && b && self.loop_map_surjective?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuppeHypothesisReport {
    pub checked_depth: usize,
    pub levels: Vec<LevelHypotheses>,
    /// Exactness of `Mf₁ → G → H` over the probes.
    pub base_exactness: Vec<ExactnessReport>,
}

impl PuppeHypothesisReport {
    /// True only when every checked level passed; says nothing about
    /// levels beyond `checked_depth`.
    pub fn all_met(&self) -> bool {
        self.levels.iter().all(|l| l.met() == Some(true))
    }
}

fn cap_to_none<T>(r: Result<T>, note: &mut Option<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_cap() => {
            note.get_or_insert_with(|| e.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn check_puppe_hypotheses(
    f1: &GraphMap,
    options: &PuppeOptions,
    probes: &[Probe],
    limits: &Limits,
) -> Result<PuppeHypothesisReport> {
    let mut levels = Vec::new();
    let mut map = Some(f1.clone());
    for level in 0..options.depth {
        let len = if level == 0 { options.max_len } else { options.inner_length };
        let mut note = None;
        let mut entry = LevelHypotheses {
            level,
            loop_length: len,
            sublength_domain: None,
            sublength_codomain: None,
            loop_map_surjective: None,
            missed_loop: None,
            inconclusive: None,
        };
        let Some(f) = map.take() else {
            entry.inconclusive = Some("previous level could not be built".to_string());
            levels.push(entry);
            continue;
        };
        entry.sublength_domain = cap_to_none(check_sublength_condition(f.domain(), len, 4, limits), &mut note)?;
        entry.sublength_codomain = cap_to_none(check_sublength_condition(f.codomain(), len, 4, limits), &mut note)?;
        let src = cap_to_none(loop_graph_trunc(f.domain().clone(), len, limits), &mut note)?;
        let dst = cap_to_none(loop_graph_trunc(f.codomain().clone(), len, limits), &mut note)?;
        if let (Some(src), Some(dst)) = (src, dst) {
            let omega_f = loop_map(&f, &src, &dst)?;
            let mut hit = vec![false; dst.len()];
            for &x in omega_f.assignment() {
                hit[x] = true;
            }
            let missed = hit.iter().position(|&b| !b);
            entry.loop_map_surjective = Some(missed.is_none());
            entry.missed_loop = missed.map(|i| dst.path(i).trace().to_vec());
            map = Some(omega_f);
        }
        entry.inconclusive = note;
        levels.push(entry);
    }

    let mut base_exactness = Vec::new();
    match mapping_fiber(f1, options.max_len, limits) {
        Ok(fiber) => {
            let seq = PointedSequence::new(
                vec!["Mf1".into(), "G".into(), "H".into()],
                vec![fiber.f2().clone(), f1.clone()],
            )?;
            for p in probes {
                base_exactness.push(check_exact_at(&seq, 1, p, limits)?);
            }
        }
        Err(e) if e.is_cap() => {
            for p in probes {
                base_exactness.push(ExactnessReport {
                    position: 1,
                    stage: "G".into(),
                    probe: p.name.clone(),
                    incoming_maps: None,
                    class_counts: None,
                    image: Vec::new(),
                    kernel: Vec::new(),
                    verdict: ExactnessVerdict::Inconclusive { reason: e.to_string() },
                });
            }
        }
        Err(e) => return Err(e),
    }
    Ok(PuppeHypothesisReport {
        checked_depth: options.depth,
        levels,
        base_exactness,
    })
}

/// `Ω^d Mf₁ → Ω^d G → Ω^d H → Ω^{d-1} Mf₁ → ⋯ → ΩH → Mf₁ → G → H`.
pub fn puppe_sequence(f1: &GraphMap, max_len: usize, depth: usize, inner_length: usize, limits: &Limits) -> Result<PointedSequence> {
    if inner_length > max_len {
        return Err(Error::invalid("inner length budget must not exceed the outer one"));
    }
    let fiber = mapping_fiber(f1, max_len, limits)?;
    // f1s[n] = Ω^n f₁, f2s[n] = Ω^n f₂, ks[n] = Ω^n k.
    let mut f1s = vec![f1.clone()];
    let mut f2s = vec![fiber.f2().clone()];
    let mut ks = vec![fiber.k().clone()];
    for n in 1..=depth {
        let len = if n == 1 { max_len } else { inner_length };
        let og = loop_graph_trunc(f1s[n - 1].domain().clone(), len, limits)?;
        let oh = loop_graph_trunc(f1s[n - 1].codomain().clone(), len, limits)?;
        let om = loop_graph_trunc(f2s[n - 1].domain().clone(), inner_length, limits)?;
        f1s.push(loop_map(&f1s[n - 1], &og, &oh)?);
        f2s.push(loop_map(&f2s[n - 1], &om, &og)?);
        if n < depth {
            let ohh = loop_graph_trunc(oh.graph().clone(), inner_length, limits)?;
            ks.push(loop_map(&ks[n - 1], &ohh, &om)?);
        }
    }
    let mut labels = Vec::new();
    let mut maps = Vec::new();
    let omega = |n: usize, x: &str| match n {
        0 => x.to_string(),
        1 => format!("Omega {x}"),
        _ => format!("Omega^{n} {x}"),
    };
    for n in (1..=depth).rev() {
        labels.push(omega(n, "Mf1"));
        labels.push(omega(n, "G"));
        labels.push(omega(n, "H"));
        maps.push(f2s[n].clone());
        maps.push(f1s[n].clone());
        maps.push(ks[n - 1].clone());
    }
    labels.extend(["Mf1".to_string(), "G".to_string(), "H".to_string()]);
    maps.push(f2s[0].clone());
    maps.push(f1s[0].clone());
    PointedSequence::new(labels, maps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageSummary {
    pub label: String,
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositionCheck {
    pub position: usize,
    pub stage: String,
    pub probe: String,
    /// One report per truncation tried, the last one being the answer.
    pub attempts: Vec<AttemptReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttemptReport {
    pub max_length: usize,
    pub report: ExactnessReport,
}

impl PositionCheck {
    pub fn verdict(&self) -> &ExactnessVerdict {
        &self.attempts.last().unwrap().report.verdict
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregateVerdict {
    /// Every checked position is exact for every probe.
    Exact,
    /// Some position is not exact at the largest truncation tried.
    NotExactAtTruncation,
    /// No refutation, but some position could not be decided.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuppeReport {
    pub options: PuppeOptions,
    pub probes: Vec<String>,
    pub stages: Vec<StageSummary>,
    pub hypotheses: PuppeHypothesisReport,
    pub checks: Vec<PositionCheck>,
    pub verdict: AggregateVerdict,
}

/// Builds the sequence, checks exactness at every interior position for
/// every probe, and rechecks refuted positions at longer truncations.
pub fn puppe_build_and_check(f1: &GraphMap, options: &PuppeOptions, probes: &[Probe], limits: &Limits) -> Result<PuppeReport> {
    let hypotheses = check_puppe_hypotheses(f1, options, probes, limits)?;
    let mut checks: Vec<PositionCheck> = Vec::new();
    let mut stages = Vec::new();
    let depth = options.depth;
    let positions = 3 * depth + 1;
    let labels_for = |seq: Option<&PointedSequence>, p: usize| {
        seq.map_or_else(|| format!("position {p}"), |s| s.labels()[p].clone())
    };

    let first = puppe_sequence(f1, options.max_len, depth, options.inner_length, limits);
    let first = match first {
        Ok(s) => Some(s),
        Err(e) if e.is_cap() => None,
        Err(e) => return Err(e),
    };
    if let Some(seq) = &first {
        for i in 0..seq.len() {
            let s = seq.stage(i);
            stages.push(StageSummary {
                label: seq.labels()[i].clone(),
                vertices: s.vertex_count(),
                edges: s.edge_count(),
            });
        }
    }
    for p in 1..=positions {
        for probe in probes {
            let report = match &first {
                Some(seq) => check_exact_at(seq, p, probe, limits)?,
                None => ExactnessReport {
                    position: p,
                    stage: labels_for(None, p),
                    probe: probe.name.clone(),
                    incoming_maps: None,
                    class_counts: None,
                    image: Vec::new(),
                    kernel: Vec::new(),
                    verdict: ExactnessVerdict::Inconclusive {
                        reason: "sequence exceeds the enumeration cap".to_string(),
                    },
                },
            };
            checks.push(PositionCheck {
                position: p,
                stage: report.stage.clone(),
                probe: probe.name.clone(),
                attempts: vec![AttemptReport { max_length: options.max_len, report }],
            });
        }
    }

    for retry in 1..=options.retries {
        if !checks.iter().any(|c| c.verdict().is_refutation()) {
            break;
        }
        let len = options.max_len + 2 * retry;
        let seq = match puppe_sequence(f1, len, depth, options.inner_length, limits) {
            Ok(s) => Some(s),
            Err(e) if e.is_cap() => None,
            Err(e) => return Err(e),
        };
        for c in checks.iter_mut().filter(|c| c.verdict().is_refutation()) {
            let probe = probes.iter().find(|p| p.name == c.probe).unwrap();
            let report = match &seq {
                Some(seq) => check_exact_at(seq, c.position, probe, limits)?,
                None => ExactnessReport {
                    verdict: ExactnessVerdict::Inconclusive {
                        reason: format!("sequence at length {len} exceeds the enumeration cap"),
                    },
                    ..c.attempts.last().unwrap().report.clone()
                },
            };
            c.attempts.push(AttemptReport { max_length: len, report });
        }
    }

    let verdict = if checks.iter().any(|c| c.verdict().is_refutation()) {
        AggregateVerdict::NotExactAtTruncation
    } else if checks.iter().all(|c| c.verdict().is_exact()) {
        AggregateVerdict::Exact
    } else {
        AggregateVerdict::Inconclusive
    };
    Ok(PuppeReport {
        options: options.clone(),
        probes: probes.iter().map(|p| p.name.clone()).collect(),
        stages,
        hypotheses,
        checks,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_standard, point, Family, Graph};

    fn pg(f: Family, n: usize) -> Arc<PointedGraph> {
        Arc::new(make_standard(f, n).unwrap())
    }

    #[test]
    fn identity_then_collapse_is_exact() {
        let lim = Limits::default();
        let c5 = pg(Family::Cycle, 5);
        let k1 = Arc::new(point());
        let seq = PointedSequence::new(
            vec!["G".into(), "G".into(), "pt".into()],
            vec![GraphMap::identity(c5.clone()), GraphMap::new(c5, k1, vec![0; 5], true).unwrap()],
        )
        .unwrap();
        for probe in default_probes() {
            let r = check_exact_at(&seq, 1, &probe, &lim).unwrap();
            assert!(r.verdict.is_exact(), "{}", probe.name);
        }
        assert!(check_exact_at(&seq, 0, &default_probes()[0], &lim).is_err());
    }

    #[test]
    fn refutation_witness() {
        // pt → C5 → C5 by the identity: the kernel is the base class only,
        // but a probe C5 sees the non-null class of id.
        let lim = Limits::default();
        let c5 = pg(Family::Cycle, 5);
        let seq = PointedSequence::new(
            vec!["pt".into(), "C5".into(), "C5".into()],
            vec![
                GraphMap::new(Arc::new(point()), c5.clone(), vec![0], true).unwrap(),
                GraphMap::identity(c5.clone()),
            ],
        )
        .unwrap();
        let r = check_exact_at(&seq, 1, &Probe::standard("C5").unwrap(), &lim).unwrap();
        assert!(r.verdict.is_exact());

        let seq = PointedSequence::new(
            vec!["C5".into(), "C5".into(), "pt".into()],
            vec![
                GraphMap::constant(c5.clone(), c5.clone(), 0).unwrap(),
                GraphMap::new(c5.clone(), Arc::new(point()), vec![0; 5], true).unwrap(),
            ],
        )
        .unwrap();
        let r = check_exact_at(&seq, 1, &Probe::standard("C5").unwrap(), &lim).unwrap();
        assert!(matches!(r.verdict, ExactnessVerdict::ImageProperSubsetOfKernel { .. }));
    }

    #[test]
    fn inconclusive_on_cap() {
        let c5 = pg(Family::Cycle, 5);
        let seq = PointedSequence::new(
            vec!["G".into(), "G".into(), "G".into()],
            vec![GraphMap::identity(c5.clone()), GraphMap::identity(c5)],
        )
        .unwrap();
        let r = check_exact_at(&seq, 1, &Probe::standard("C5").unwrap(), &Limits::with_cap(3)).unwrap();
        assert!(matches!(r.verdict, ExactnessVerdict::Inconclusive { .. }));
    }

    #[test]
    fn suspension_shapes() {
        for l in 0..4 {
            assert_eq!(suspension(&point(), l).unwrap().graph().vertex_count(), 1);
        }
        for n in [3, 4, 5] {
            assert_eq!(suspension(&pg(Family::Cycle, n), 1).unwrap().graph().vertex_count(), 1);
        }
        let s = suspension(&pg(Family::Interval, 1), 2).unwrap();
        assert_eq!(**s.graph(), PointedGraph::new(Graph::new(2, [(0, 1)]).unwrap(), 0).unwrap());
        for (n, l) in [(4, 3), (5, 4), (3, 2)] {
            let s = suspension(&pg(Family::Cycle, n), l).unwrap();
            assert_eq!(s.graph().vertex_count(), (l - 1) * (n - 1) + 1);
        }
    }

    #[test]
    fn adjunction_small_cases() {
        let lim = Limits::default();
        let r = adjunction_check(&Arc::new(point()), &pg(Family::Cycle, 4), 2, &lim).unwrap();
        assert_eq!((r.suspension_classes, r.loop_side_classes), (1, 1));
        assert!(r.holds());
        let r = adjunction_check(&pg(Family::Interval, 1), &pg(Family::Cycle, 4), 2, &lim).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn adjunction_is_natural() {
        let lim = Limits::default();
        let c4 = pg(Family::Cycle, 4);
        let fold = GraphMap::new(c4.clone(), pg(Family::Interval, 1), vec![0, 1, 0, 1], true).unwrap();
        assert!(adjunction_naturality(&pg(Family::Interval, 1), &fold, 2, &lim).unwrap());
        let rot = GraphMap::new(c4.clone(), c4, vec![0, 3, 2, 1], true).unwrap();
        assert!(adjunction_naturality(&pg(Family::Interval, 2), &rot, 3, &lim).unwrap());
    }

    #[test]
    fn hypotheses() {
        let lim = Limits::default();
        let probes = default_probes();
        let opts = PuppeOptions { max_len: 6, ..PuppeOptions::default() };
        let r = check_puppe_hypotheses(&GraphMap::identity(pg(Family::Cycle, 4)), &opts, &probes, &lim).unwrap();
        assert!(r.all_met());

        let opts = PuppeOptions { max_len: 5, ..PuppeOptions::default() };
        let r = check_puppe_hypotheses(&GraphMap::identity(pg(Family::Cycle, 5)), &opts, &probes, &lim).unwrap();
        assert!(!r.levels[0].sublength_domain.as_ref().unwrap().holds);

        let opts = PuppeOptions { max_len: 2, ..PuppeOptions::default() };
        let incl = GraphMap::new(Arc::new(point()), pg(Family::Cycle, 4), vec![0], true).unwrap();
        let r = check_puppe_hypotheses(&incl, &opts, &probes, &lim).unwrap();
        assert_eq!(r.levels[0].loop_map_surjective, Some(false));
        assert_eq!(r.levels[0].missed_loop.as_deref(), Some(&[0, 1, 0][..]));
        assert!(r.base_exactness.iter().all(|e| e.verdict.image_in_kernel() == Some(true)));
    }

    #[test]
    fn sequence_shape() {
        let lim = Limits::default();
        let f = GraphMap::identity(pg(Family::Cycle, 4));
        let seq = puppe_sequence(&f, 4, 2, 2, &lim).unwrap();
        assert_eq!(seq.len(), 9);
        assert_eq!(seq.labels()[0], "Omega^2 Mf1");
        assert_eq!(seq.labels()[3], "Omega Mf1");
    }

    #[test]
    fn point_sequence_is_exact() {
        let lim = Limits::default();
        let f = GraphMap::identity(Arc::new(point()));
        let opts = PuppeOptions { max_len: 2, depth: 2, ..PuppeOptions::default() };
        let r = puppe_build_and_check(&f, &opts, &default_probes(), &lim).unwrap();
        assert_eq!(r.verdict, AggregateVerdict::Exact);
        assert_eq!(r.checks.len(), 7 * 6);
    }

    #[test]
    fn triangle_to_point_is_exact_at_g() {
        let lim = Limits::default();
        let f = GraphMap::new(pg(Family::Cycle, 3), Arc::new(point()), vec![0; 3], true).unwrap();
        let opts = PuppeOptions { max_len: 4, ..PuppeOptions::default() };
        let r = puppe_build_and_check(&f, &opts, &[Probe::standard("K1").unwrap()], &lim).unwrap();
        let at_g = r.checks.iter().find(|c| c.stage == "G").unwrap();
        assert!(at_g.verdict().is_exact());
    }

    #[test]
    fn looped_exactness_transport() {
        // Exact at G for probe Σ_l K must imply exact at ΩG for probe K.
        let lim = Limits::default();
        let l = 2;
        let maps = [
            GraphMap::identity(pg(Family::Cycle, 4)),
            GraphMap::new(pg(Family::Cycle, 4), pg(Family::Interval, 1), vec![0, 1, 0, 1], true).unwrap(),
            GraphMap::new(pg(Family::Interval, 2), pg(Family::Cycle, 5), vec![0, 1, 2], true).unwrap(),
        ];
        let mut nonvacuous = 0;
        for f1 in maps {
            let mf = crate::fiber::mapping_fiber(&f1, 3, &lim).unwrap();
            let labels = vec!["Mf1".to_string(), "G".to_string(), "H".to_string()];
            let seq = PointedSequence::new(labels, vec![mf.f2().clone(), f1.clone()]).unwrap();
            let looped = seq.looped(l, &lim).unwrap();
            for name in ["K1", "I1", "C3"] {
                let k = Probe::standard(name).unwrap();
                let sigma = Probe::new(format!("S{name}"), (**suspension(&k.graph, l).unwrap().graph()).clone());
                let outer = check_exact_at(&seq, 1, &sigma, &lim).unwrap();
                if outer.verdict.is_exact() {
                    nonvacuous += 1;
                    let inner = check_exact_at(&looped, 1, &k, &lim).unwrap();
                    assert!(inner.verdict.is_exact(), "{name}: {:?}", inner.verdict);
                }
            }
        }
        assert!(nonvacuous > 0);
    }
}
