//! Exponential graphs and A-homotopy.
//!
//! Two maps `f, g: K → G` are one homotopy step apart exactly when
//! `f(u) = g(u)` or `f(u) ~ g(u)` for every `u`: a map `K ⊗ I_1 → G` only
//! has to respect the two copies of `K` (which `f` and `g` already do) and
//! the rungs `(u,0)-(u,1)`. A-homotopy is reachability in the graph of maps
//! under that relation, and pointed homotopy is reachability through
//! pointed maps only.

mod classes;
mod curry;
pub(crate) mod search;

pub use classes::{class_spanning_maps, homotopy_classes, induced_on_classes, ClassFunction, ClassTable, ClassTableSummary};
pub use curry::{curry, evaluation_map, uncurry};

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::map::first_violation;
use crate::graph::{Graph, GraphMap, PointedGraph, ProductGraph, Vertex};
use crate::limits::Limits;
use search::MapSearch;

/// Enumerates all (pointed) graph maps `domain → codomain` in lexicographic
/// order of their assignment vectors.
pub fn enumerate_maps(
    domain: &PointedGraph,
    codomain: &PointedGraph,
    pointed: bool,
    limits: &Limits,
) -> Result<Vec<Vec<Vertex>>> {
    let search = MapSearch::new(domain, codomain, pointed);
    let mut maps = Vec::new();
    let mut overflow = false;
    let _ = search.for_each(None, &mut |g| {
        maps.push(g.to_vec());
        if maps.len() as u64 > limits.cap {
            overflow = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if overflow {
        limits.check("graph maps", maps.len())?;
    }
    maps.sort_unstable();
    Ok(maps)
}

/// `|V_codomain|^|V_domain|`, or `None` if it does not fit in 128 bits.
pub fn assignment_space(domain: &Graph, codomain: &Graph) -> Option<u128> {
    (codomain.vertex_count() as u128).checked_pow(domain.vertex_count().try_into().ok()?)
}

/// The graph whose vertices are the (pointed) maps `domain → codomain` and
/// whose edges are one-step homotopies. Its base is the constant map at the
/// codomain base.
#[derive(Clone, Debug)]
pub struct HomGraph {
    domain: Arc<PointedGraph>,
    codomain: Arc<PointedGraph>,
    pointed: bool,
    maps: Vec<Vec<Vertex>>,
    index: HashMap<Vec<Vertex>, usize>,
    graph: Arc<PointedGraph>,
}

impl HomGraph {
    pub fn build(
        domain: Arc<PointedGraph>,
        codomain: Arc<PointedGraph>,
        pointed: bool,
        limits: &Limits,
    ) -> Result<HomGraph> {
        let maps = enumerate_maps(&domain, &codomain, pointed, limits)?;
        let index: HashMap<Vec<Vertex>, usize> =
            maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let search = MapSearch::new(&domain, &codomain, pointed);
        let mut lists = Vec::with_capacity(maps.len());
        let mut seen = 0usize;
        for (i, m) in maps.iter().enumerate() {
            let near = search.neighbors(m);
            seen += near.len();
            limits.check("map graph edges", seen / 2)?;
            lists.push(near.into_iter().map(|g| index[&g]).filter(|&j| j > i).collect());
        }
        let graph = Graph::from_neighbor_lists(lists);
        let constant = vec![codomain.base(); domain.vertex_count()];
        let base = index[&constant];
        let graph = Arc::new(PointedGraph::new(graph, base)?);
        Ok(HomGraph {
            domain,
            codomain,
            pointed,
            maps,
            index,
            graph,
        })
    }

    pub fn domain(&self) -> &Arc<PointedGraph> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<PointedGraph> {
        &self.codomain
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    /// The maps, in lexicographic order; map `i` is vertex `i` of [`Self::graph`].
    pub fn maps(&self) -> &[Vec<Vertex>] {
        &self.maps
    }

    pub fn graph(&self) -> &Arc<PointedGraph> {
        &self.graph
    }

    pub fn index_of(&self, assignment: &[Vertex]) -> Option<usize> {
        self.index.get(assignment).copied()
    }

    pub fn map(&self, i: usize) -> GraphMap {
        GraphMap::new_unchecked(
            self.domain.clone(),
            self.codomain.clone(),
            self.maps[i].clone(),
            self.pointed,
        )
    }
}

/// A sequence `f = h_0, h_1, …, h_m = g` of maps, consecutive ones a single
/// homotopy step apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyWitness {
    pub steps: Vec<Vec<Vertex>>,
    pub pointed: bool,
}

impl HomotopyWitness {
    pub fn trivial(f: &[Vertex], pointed: bool) -> HomotopyWitness {
        HomotopyWitness {
            steps: vec![f.to_vec()],
            pointed,
        }
    }

    /// The length `m` of the homotopy `G ⊗ I_m → H`.
    pub fn length(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn start(&self) -> &[Vertex] {
        &self.steps[0]
    }

    pub fn end(&self) -> &[Vertex] {
        self.steps.last().unwrap()
    }

    pub fn reversed(&self) -> HomotopyWitness {
        let mut steps = self.steps.clone();
        steps.reverse();
        HomotopyWitness {
            steps,
            pointed: self.pointed,
        }
    }

    /// Concatenation; `self` must end where `next` starts.
    pub fn concat(&self, next: &HomotopyWitness) -> Result<HomotopyWitness> {
        if self.end() != next.start() {
            return Err(Error::invalid("witnesses do not meet"));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps[1..]);
        Ok(HomotopyWitness {
            steps,
            pointed: self.pointed && next.pointed,
        })
    }

    /// Assembles `F(u, t) = h_t(u)` and checks that it is a graph map
    /// `domain ⊗ I_m → codomain`. In the pointed case every `h_t` must also
    /// fix the base, i.e. `F(u_0, t) = v_0` for all `t`.
    pub fn validate(&self, domain: &PointedGraph, codomain: &PointedGraph) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::invalid("empty witness"));
        }
        let interval = crate::graph::make_standard(crate::graph::Family::Interval, self.length())?;
        let product = ProductGraph::new(domain.clone(), interval);
        let mut assembled = vec![0; product.product().vertex_count()];
        for (t, step) in self.steps.iter().enumerate() {
            if step.len() != domain.vertex_count() {
                return Err(Error::invalid("witness step has the wrong length"));
            }
            for (u, &x) in step.iter().enumerate() {
                assembled[product.pair_index(u, t)] = x;
            }
        }
        crate::graph::is_graph_map(product.product(), codomain, &assembled, false)?
            .map_or(Ok(()), |v| Err(Error::NotAGraphMap(v)))?;
        if self.pointed {
            if let Some(v) = self
                .steps
                .iter()
                .find_map(|s| first_violation(domain, codomain, s, true))
            {
                return Err(Error::NotAGraphMap(v));
            }
        }
        Ok(())
    }
}

/// Which endpoint's homotopy class was exhausted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Source,
    Target,
}

/// Proof of non-homotopy: a complete component of the map graph that
/// contains one endpoint and not the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCertificate {
    pub side: Side,
    pub component_size: usize,
    /// Lexicographically least map in the exhausted component.
    pub representative: Vec<Vertex>,
    /// `|V_codomain|^|V_domain|`, when representable.
    pub assignment_space: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HomotopyVerdict {
    Homotopic {
        distance: usize,
        witness: HomotopyWitness,
    },
    NotHomotopic {
        certificate: ComponentCertificate,
    },
}

impl HomotopyVerdict {
    pub fn distance(&self) -> Option<usize> {
        match self {
            HomotopyVerdict::Homotopic { distance, .. } => Some(*distance),
            HomotopyVerdict::NotHomotopic { .. } => None,
        }
    }

    pub fn is_homotopic(&self) -> bool {
        self.distance().is_some()
    }
}

/// Decides whether `f ≃ g` (through pointed maps when `pointed`), returning
/// a shortest witness or a component certificate.
///
/// The map graph is explored implicitly by a layered bidirectional
/// breadth-first search; `limits.cap` bounds the number of maps visited.
pub fn are_homotopic(f: &GraphMap, g: &GraphMap, pointed: bool, limits: &Limits) -> Result<HomotopyVerdict> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(Error::invalid("maps must share domain and codomain"));
    }
    if pointed && !(f.preserves_base() && g.preserves_base()) {
        return Err(Error::invalid("pointed homotopy needs pointed maps"));
    }
    let search = MapSearch::new(f.domain(), f.codomain(), pointed);
    let space = assignment_space(f.domain(), f.codomain());
    homotopy_search(&search, f.assignment(), g.assignment(), limits, space)
}

pub(crate) fn homotopy_search(
    search: &MapSearch<'_>,
    from: &[Vertex],
    to: &[Vertex],
    limits: &Limits,
    space: Option<u128>,
) -> Result<HomotopyVerdict> {
    let pointed = search.pointed();
    if from == to {
        return Ok(HomotopyVerdict::Homotopic {
            distance: 0,
            witness: HomotopyWitness::trivial(from, pointed),
        });
    }
    struct Node {
        map: Vec<Vertex>,
        side: Side,
        parent: usize,
        dist: usize,
    }
    let mut nodes = vec![
        Node { map: from.to_vec(), side: Side::Source, parent: 0, dist: 0 },
        Node { map: to.to_vec(), side: Side::Target, parent: 1, dist: 0 },
    ];
    let mut index: HashMap<Vec<Vertex>, usize> = HashMap::new();
    index.insert(from.to_vec(), 0);
    index.insert(to.to_vec(), 1);
    let mut frontier = [vec![0usize], vec![1usize]];

    loop {
        for (k, side) in [(0, Side::Source), (1, Side::Target)] {
            if frontier[k].is_empty() {
                let members: Vec<&Vec<Vertex>> =
                    nodes.iter().filter(|n| n.side == side).map(|n| &n.map).collect();
                let representative = members.iter().min().map(|m| m.to_vec()).unwrap_or_default();
                return Ok(HomotopyVerdict::NotHomotopic {
                    certificate: ComponentCertificate {
                        side,
                        component_size: members.len(),
                        representative,
                        assignment_space: space,
                    },
                });
            }
        }
        let k = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let side = if k == 0 { Side::Source } else { Side::Target };
        let layer = std::mem::take(&mut frontier[k]);
        let mut next = Vec::new();
        let mut meet: Option<(usize, usize, usize)> = None;
        for s in layer {
            let ds = nodes[s].dist;
            for nb in search.neighbors(&nodes[s].map) {
                match index.get(&nb) {
                    None => {
                        index.insert(nb.clone(), nodes.len());
                        next.push(nodes.len());
                        nodes.push(Node { map: nb, side, parent: s, dist: ds + 1 });
                        limits.check("homotopy search states", nodes.len())?;
                    }
                    Some(&t) if nodes[t].side != side => {
                        let total = ds + 1 + nodes[t].dist;
                        if meet.is_none_or(|(best, _, _)| total < best) {
                            meet = Some((total, s, t));
                        }
                    }
                    Some(_) => {}
                }
            }
        }
        if let Some((distance, s, t)) = meet {
            let chain = |mut i: usize| {
                let mut out = vec![nodes[i].map.clone()];
                while nodes[i].dist > 0 {
                    i = nodes[i].parent;
                    out.push(nodes[i].map.clone());
                }
                out
            };
            let (a, b) = if side == Side::Source { (s, t) } else { (t, s) };
            let mut steps = chain(a);
            steps.reverse();
            steps.extend(chain(b));
            debug_assert_eq!(steps.len(), distance + 1);
            return Ok(HomotopyVerdict::Homotopic {
                distance,
                witness: HomotopyWitness { steps, pointed },
            });
        }
        frontier[k] = next;
    }
}
