use std::sync::Arc;

use super::{Graph, PointedGraph, Vertex};
use crate::error::{Error, Result, Violation};

/// Checks whether `assignment` is a graph map `domain → codomain`, and when
/// `pointed` also whether it sends base to base.
///
/// Returns `Ok(None)` for a graph map, `Ok(Some(v))` with the first
/// violation otherwise (edges are scanned in canonical order after the base
/// condition), and `Err` when the assignment is not a total function into
/// the codomain.
pub fn is_graph_map(
    domain: &PointedGraph,
    codomain: &PointedGraph,
    assignment: &[Vertex],
    pointed: bool,
) -> Result<Option<Violation>> {
    if assignment.len() != domain.vertex_count() {
        return Err(Error::invalid(format!(
            "assignment has {} entries for {} domain vertices",
            assignment.len(),
            domain.vertex_count()
        )));
    }
    if let Some(&bad) = assignment.iter().find(|&&x| x >= codomain.vertex_count()) {
        return Err(Error::invalid(format!(
            "image {bad} outside 0..{}",
            codomain.vertex_count()
        )));
    }
    Ok(first_violation(domain, codomain, assignment, pointed))
}

pub(crate) fn first_violation(
    domain: &PointedGraph,
    codomain: &PointedGraph,
    assignment: &[Vertex],
    pointed: bool,
) -> Option<Violation> {
    if pointed && assignment[domain.base()] != codomain.base() {
        return Some(Violation::Base {
            image: assignment[domain.base()],
            expected: codomain.base(),
        });
    }
    edge_violation(domain, codomain, assignment)
}

pub(crate) fn edge_violation(domain: &Graph, codomain: &Graph, f: &[Vertex]) -> Option<Violation> {
    domain.edges().iter().find_map(|&(u, v)| {
        (!codomain.adjacent_or_equal(f[u], f[v])).then_some(Violation::Edge {
            u,
            v,
            fu: f[u],
            fv: f[v],
        })
    })
}

/// A validated graph map. Unpointed maps still carry pointed graphs; the
/// base vertices are simply not constrained.
#[derive(Clone, Debug)]
pub struct GraphMap {
    domain: Arc<PointedGraph>,
    codomain: Arc<PointedGraph>,
    assignment: Vec<Vertex>,
    pointed: bool,
}

impl PartialEq for GraphMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment
            && self.pointed == other.pointed
            && (Arc::ptr_eq(&self.domain, &other.domain) || self.domain == other.domain)
            && (Arc::ptr_eq(&self.codomain, &other.codomain) || self.codomain == other.codomain)
    }
}

impl GraphMap {
    pub fn new(
        domain: Arc<PointedGraph>,
        codomain: Arc<PointedGraph>,
        assignment: Vec<Vertex>,
        pointed: bool,
    ) -> Result<GraphMap> {
        if let Some(v) = is_graph_map(&domain, &codomain, &assignment, pointed)? {
            return Err(Error::NotAGraphMap(v));
        }
        Ok(GraphMap {
            domain,
            codomain,
            assignment,
            pointed,
        })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn new_unchecked(
        domain: Arc<PointedGraph>,
        codomain: Arc<PointedGraph>,
        assignment: Vec<Vertex>,
        pointed: bool,
    ) -> GraphMap {
        debug_assert!(first_violation(&domain, &codomain, &assignment, pointed).is_none());
        GraphMap {
            domain,
            codomain,
            assignment,
            pointed,
        }
    }

    pub fn identity(g: Arc<PointedGraph>) -> GraphMap {
        let assignment = g.vertices().collect();
        GraphMap {
            domain: g.clone(),
            codomain: g,
            assignment,
            pointed: true,
        }
    }

    /// The constant map at `value`; pointed exactly when `value` is the
    /// codomain base.
    pub fn constant(domain: Arc<PointedGraph>, codomain: Arc<PointedGraph>, value: Vertex) -> Result<GraphMap> {
        if value >= codomain.vertex_count() {
            return Err(Error::invalid(format!("constant value {value} out of range")));
        }
        let pointed = value == codomain.base();
        let assignment = vec![value; domain.vertex_count()];
        Ok(GraphMap {
            domain,
            codomain,
            assignment,
            pointed,
        })
    }

    pub fn domain(&self) -> &Arc<PointedGraph> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<PointedGraph> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[Vertex] {
        &self.assignment
    }

    pub fn into_assignment(self) -> Vec<Vertex> {
        self.assignment
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    /// Whether the map happens to preserve base vertices.
    pub fn preserves_base(&self) -> bool {
        self.assignment[self.domain.base()] == self.codomain.base()
    }

    /// The same map, flagged pointed. Fails if it does not preserve base.
    pub fn as_pointed(&self) -> Result<GraphMap> {
        if !self.preserves_base() {
            return Err(Error::NotAGraphMap(Violation::Base {
                image: self.assignment[self.domain.base()],
                expected: self.codomain.base(),
            }));
        }
        Ok(GraphMap {
            pointed: true,
            ..self.clone()
        })
    }

    pub fn as_unpointed(&self) -> GraphMap {
        GraphMap {
            pointed: false,
            ..self.clone()
        }
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.assignment[v]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GraphMap) -> Result<GraphMap> {
        if !(Arc::ptr_eq(&self.codomain, &next.domain) || *self.codomain == *next.domain) {
            return Err(Error::invalid("maps are not composable"));
        }
        let assignment = self.assignment.iter().map(|&v| next.assignment[v]).collect();
        Ok(GraphMap {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            assignment,
            pointed: self.pointed && next.pointed,
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.vertex_count()];
        self.assignment
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain.vertex_count()];
        for &v in &self.assignment {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }
}
