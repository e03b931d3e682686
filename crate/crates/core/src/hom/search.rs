//! Backtracking enumeration of graph maps.
//!
//! Domain vertices are assigned in breadth-first order from the base, so
//! every vertex after the first of its component has an already-assigned
//! neighbour and its candidates come from a closed neighbourhood rather than
//! the whole codomain.

use std::ops::ControlFlow;

use crate::graph::{PointedGraph, Vertex};

pub(crate) struct MapSearch<'a> {
    domain: &'a PointedGraph,
    codomain: &'a PointedGraph,
    pointed: bool,
    order: Vec<Vertex>,
    earlier: Vec<Vec<Vertex>>,
    closed: Vec<Vec<Vertex>>,
    all: Vec<Vertex>,
}

impl<'a> MapSearch<'a> {
    pub fn new(domain: &'a PointedGraph, codomain: &'a PointedGraph, pointed: bool) -> Self {
        let order = domain.bfs_order(domain.base());
        let mut position = vec![0; domain.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let earlier = order
            .iter()
            .map(|&v| {
                domain
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| position[w] < position[v])
                    .collect()
            })
            .collect();
        MapSearch {
            domain,
            codomain,
            pointed,
            order,
            earlier,
            closed: codomain.closed_neighborhoods(),
            all: codomain.vertices().collect(),
        }
    }

    pub fn pointed(&self) -> bool {
        self.pointed
    }

    /// Visits every (pointed, if configured) graph map. With `near = Some(f)`
    /// only maps `g` with `g(u) ∈ N[f(u)]` for all `u` are visited, `f`
    /// itself included. Returns `Break` if the visitor stopped early.
    pub fn for_each(
        &self,
        near: Option<&[Vertex]>,
        visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if self.domain.vertex_count() == 0 {
            return visit(&[]);
        }
        if self.codomain.vertex_count() == 0 {
            return ControlFlow::Continue(());
        }
        let mut g = vec![usize::MAX; self.domain.vertex_count()];
        self.extend(0, &mut g, near, visit)
    }

    fn extend(
        &self,
        i: usize,
        g: &mut Vec<Vertex>,
        near: Option<&[Vertex]>,
        visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == self.order.len() {
            return visit(g);
        }
        let v = self.order[i];
        let earlier = &self.earlier[i];
        let fixed = [self.codomain.base()];
        let pool: &[Vertex] = if self.pointed && v == self.domain.base() {
            &fixed
        } else {
            let from_earlier = earlier.first().map(|&w| &self.closed[g[w]][..]);
            let from_near = near.map(|f| &self.closed[f[v]][..]);
            match (from_earlier, from_near) {
                (Some(a), Some(b)) => {
                    if a.len() <= b.len() {
                        a
                    } else {
                        b
                    }
                }
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => &self.all,
            }
        };
        for &c in pool {
            if let Some(f) = near {
                if !self.codomain.adjacent_or_equal(c, f[v]) {
                    continue;
                }
            }
            if !earlier
                .iter()
                .all(|&w| self.codomain.adjacent_or_equal(c, g[w]))
            {
                continue;
            }
            g[v] = c;
            self.extend(i + 1, g, near, visit)?;
        }
        g[v] = usize::MAX;
        ControlFlow::Continue(())
    }

    /// All maps one homotopy step away from `f` (excluding `f`).
    pub fn neighbors(&self, f: &[Vertex]) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        let _ = self.for_each(Some(f), &mut |g| {
            if g != f {
                out.push(g.to_vec());
            }
            ControlFlow::Continue(())
        });
        out
    }
}
