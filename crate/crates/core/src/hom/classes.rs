use std::sync::Arc;

use serde::Serialize;

use super::{enumerate_maps, HomGraph};
use crate::error::{Error, Result};
use crate::graph::{fold_retract, induced_subgraph, GraphMap, PointedGraph, Vertex};
use crate::limits::Limits;

/// The homotopy classes `[K, G]`: components of the (pointed) map graph.
/// Classes are numbered by their lexicographically least member, which is
/// also the class representative.
///
/// A table may be computed on a fold retract of `G` (see
/// [`homotopy_classes`]); members, representatives and lookups are then
/// translated through the retraction, and [`ClassTable::hom`] is the map
/// graph into the retract.
#[derive(Clone, Debug)]
pub struct ClassTable {
    hom: HomGraph,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    base_class: usize,
    reduction: Option<Reduction>,
}

#[derive(Clone, Debug)]
struct Reduction {
    target: Arc<PointedGraph>,
    to_core: Vec<Vertex>,
    from_core: Vec<Vertex>,
}

/// Serializable view of a [`ClassTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassTableSummary {
    pub pointed: bool,
    /// Maps into the reduced target when it is smaller; `sizes` likewise.
    pub map_count: usize,
    /// Vertices of the target actually enumerated into.
    pub target_vertices: usize,
    pub class_count: usize,
    pub base_class: usize,
    pub representatives: Vec<Vec<Vertex>>,
    pub sizes: Vec<usize>,
}

/// Pointed maps from a connected probe stay in the base component, so the
/// target is first cut down to it; the result is then replaced by its fold
/// retract. Folds fix the base, so both steps keep `[K, G]`. Only pointed
/// tables are reduced. `None` when nothing is removed.
fn reduce_target(probe: &PointedGraph, target: &Arc<PointedGraph>, pointed: bool) -> Result<Option<(PointedGraph, Reduction)>> {
    if !pointed {
        return Ok(None);
    }
    let n = target.vertex_count();
    let (piece, keep): (PointedGraph, Vec<Vertex>) = if probe.is_connected() && !target.is_connected() {
        let comps = target.components();
        let keep: Vec<Vertex> = target.vertices().filter(|&v| comps[v] == comps[target.base()]).collect();
        let (sub, map) = induced_subgraph(target, &keep)?;
        (PointedGraph::new(sub, map[target.base()].unwrap())?, keep)
    } else {
        ((**target).clone(), (0..n).collect())
    };
    let r = fold_retract(&piece);
    if r.core.vertex_count() == n {
        return Ok(None);
    }
    let mut to_core = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        to_core[v] = r.to_core[i];
    }
    let from_core = r.from_core.iter().map(|&i| keep[i]).collect();
    Ok(Some((
        r.core,
        Reduction {
            target: target.clone(),
            to_core,
            from_core,
        },
    )))
}

/// `[K, G]`, computed on a reduced target (see [`ClassTable`]).
pub fn homotopy_classes(
    probe: Arc<PointedGraph>,
    target: Arc<PointedGraph>,
    pointed: bool,
    limits: &Limits,
) -> Result<ClassTable> {
    match reduce_target(&probe, &target, pointed)? {
        None => Ok(ClassTable::from_hom(HomGraph::build(probe, target, pointed, limits)?)),
        Some((core, reduction)) => {
            let hom = HomGraph::build(probe, Arc::new(core), pointed, limits)?;
            let mut table = ClassTable::from_hom(hom);
            table.reduction = Some(reduction);
            Ok(table)
        }
    }
}

/// Maps `K → G` meeting every class of `[K, G]`, without building the map
/// graph: all maps into the reduced target, read back in `G`.
pub fn class_spanning_maps(
    probe: &Arc<PointedGraph>,
    target: &Arc<PointedGraph>,
    pointed: bool,
    limits: &Limits,
) -> Result<Vec<Vec<Vertex>>> {
    match reduce_target(probe, target, pointed)? {
        None => enumerate_maps(probe, target, pointed, limits),
        Some((core, r)) => Ok(enumerate_maps(probe, &core, pointed, limits)?
            .into_iter()
            .map(|f| f.into_iter().map(|v| r.from_core[v]).collect())
            .collect()),
    }
}

impl ClassTable {
    pub fn from_hom(hom: HomGraph) -> ClassTable {
        let class_of = hom.graph().components();
        let count = class_of.iter().max().map_or(0, |m| m + 1);
        let mut classes = vec![Vec::new(); count];
        for (i, &c) in class_of.iter().enumerate() {
            classes[c].push(i);
        }
        let base_class = class_of[hom.graph().base()];
        ClassTable {
            hom,
            class_of,
            classes,
            base_class,
            reduction: None,
        }
    }

    pub fn hom(&self) -> &HomGraph {
        &self.hom
    }

    pub fn probe(&self) -> &Arc<PointedGraph> {
        self.hom.domain()
    }

    pub fn target(&self) -> &Arc<PointedGraph> {
        match &self.reduction {
            Some(r) => &r.target,
            None => self.hom.codomain(),
        }
    }

    pub fn is_pointed(&self) -> bool {
        self.hom.is_pointed()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn base_class(&self) -> usize {
        self.base_class
    }

    /// Member map indices (into [`HomGraph::maps`]) of each class.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Class of a map into the target. Maps that are not graph maps (or not
    /// pointed, for a pointed table) give `None`.
    pub fn class_of_map(&self, assignment: &[Vertex]) -> Option<usize> {
        let i = match &self.reduction {
            Some(r) => {
                crate::graph::map::first_violation(self.probe(), &r.target, assignment, self.is_pointed())
                    .is_none()
                    .then_some(())?;
                let folded: Vec<Vertex> = assignment
                    .iter()
                    .map(|&v| (r.to_core[v] != usize::MAX).then_some(r.to_core[v]))
                    .collect::<Option<_>>()?;
                self.hom.index_of(&folded)?
            }
            None => self.hom.index_of(assignment)?,
        };
        Some(self.class_of[i])
    }

    /// Member `m` of the map graph, as a map into the target.
    pub fn member(&self, m: usize) -> Vec<Vertex> {
        let f = &self.hom.maps()[m];
        match &self.reduction {
            Some(r) => f.iter().map(|&v| r.from_core[v]).collect(),
            None => f.clone(),
        }
    }

    pub fn representative(&self, class: usize) -> Vec<Vertex> {
        self.member(self.classes[class][0])
    }

    pub fn summary(&self) -> ClassTableSummary {
        ClassTableSummary {
            pointed: self.is_pointed(),
            map_count: self.hom.maps().len(),
            target_vertices: self.hom.codomain().vertex_count(),
            class_count: self.class_count(),
            base_class: self.base_class,
            representatives: (0..self.class_count())
                .map(|c| self.representative(c))
                .collect(),
            sizes: self.classes.iter().map(Vec::len).collect(),
        }
    }
}

/// Postcomposition `f_*: [K, G] → [K, H]` on class indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFunction {
    pub image: Vec<usize>,
}

impl ClassFunction {
    pub fn is_bijective(&self, target_count: usize) -> bool {
        let mut hit = vec![false; target_count];
        for &c in &self.image {
            if std::mem::replace(&mut hit[c], true) {
                return false;
            }
        }
        hit.into_iter().all(|b| b)
    }

    /// Classes sent to `class`.
    pub fn preimage(&self, class: usize) -> Vec<usize> {
        (0..self.image.len()).filter(|&c| self.image[c] == class).collect()
    }
}

/// Computes `f_*` and checks that it is well defined: every member of a
/// source class must land in the same target class.
pub fn induced_on_classes(f: &GraphMap, src: &ClassTable, dst: &ClassTable) -> Result<ClassFunction> {
    if src.target() != f.domain() || dst.target() != f.codomain() {
        return Err(Error::invalid("map is not composable with the class tables"));
    }
    if src.probe() != dst.probe() || src.is_pointed() != dst.is_pointed() {
        return Err(Error::invalid("class tables use different probes or pointedness"));
    }
    if src.is_pointed() && !f.preserves_base() {
        return Err(Error::invalid("pointed class tables need a pointed map"));
    }
    let mut image = Vec::with_capacity(src.class_count());
    let mut buf = Vec::new();
    for members in src.classes() {
        let mut target = None;
        for &m in members {
            buf.clear();
            buf.extend(src.member(m).iter().map(|&v| f.apply(v)));
            let c = dst
                .class_of_map(&buf)
                .ok_or_else(|| Error::invalid("composite map missing from target table"))?;
            match target {
                None => target = Some(c),
                Some(t) if t != c => {
                    return Err(Error::invalid("postcomposition is not well defined on classes"))
                }
                Some(_) => {}
            }
        }
        image.push(target.expect("classes are nonempty"));
    }
    Ok(ClassFunction { image })
}
