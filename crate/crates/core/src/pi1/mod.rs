//! `A₁` through the 2-complex obtained by filling every 3- and 4-cycle.
//!
//! Generators are the non-tree edges of a breadth-first spanning tree
//! rooted at the base, oriented from smaller to larger endpoint; each
//! filled cycle contributes its boundary word. Letters are signed 1-based
//! generator numbers, so `-2` is the inverse of the second generator.

mod snf;
mod tietze;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::graph::{induced_subgraph, Graph, PointedGraph, Vertex};

pub use snf::invariant_factors;
pub use tietze::{tietze_simplify, TietzeResult, TietzeStatus};

pub type Word = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// `⟨ x1, x2 | x1 x2^-1 ⟩`.
    pub fn to_text(&self) -> String {
        let gens: Vec<String> = (1..=self.generators).map(|i| format!("x{i}")).collect();
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| if x > 0 { format!("x{x}") } else { format!("x{}^-1", -x) })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        format!("⟨ {} | {} ⟩", gens.join(", "), rels.join(", "))
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> Vec<Vec<BigInt>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![BigInt::from(0); self.generators];
                for &x in r {
                    row[x.unsigned_abs() as usize - 1] += x.signum();
                }
                row
            })
            .collect()
    }
}

/// Every triangle and every 4-cycle subgraph (chords allowed), once each.
/// Triangles come as `[a, b, c]` with `a < b < c`; 4-cycles as `[a, b, c, d]`
/// in cyclic order with `a` least and `b < d`.
pub fn fill_cycles(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for &(a, b) in g.edges() {
        for &c in g.neighbors(b) {
            if c > b && g.adjacent(a, c) {
                out.push(vec![a, b, c]);
            }
        }
    }
    for a in g.vertices() {
        let higher: Vec<Vertex> = g.neighbors(a).iter().copied().filter(|&x| x > a).collect();
        for (i, &b) in higher.iter().enumerate() {
            for &d in &higher[i + 1..] {
                for &c in g.neighbors(b) {
                    if c > a && c != d && g.adjacent(c, d) {
                        out.push(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Where each generator and relator of a [`Presentation`] came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// Non-tree edge of each generator, in the original vertex numbering.
    pub generator_edges: Vec<(Vertex, Vertex)>,
    /// Filled cycle of each relator.
    pub relator_cycles: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Presentation {
    pub presentation: Presentation,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

pub fn pi1_presentation(g: &PointedGraph) -> Pi1Presentation {
    let comps = g.components();
    let base_comp = comps[g.base()];
    let keep: Vec<Vertex> = g.vertices().filter(|&v| comps[v] == base_comp).collect();
    let (sub, map, warning) = if keep.len() == g.vertex_count() {
        (g.graph().clone(), (0..g.vertex_count()).map(Some).collect::<Vec<_>>(), None)
    } else {
        let (sub, map) = induced_subgraph(g, &keep).expect("component vertices are in range");
        let w = format!(
            "graph is disconnected; using the base component ({} of {} vertices)",
            keep.len(),
            g.vertex_count()
        );
        (sub, map, Some(w))
    };
    let base = map[g.base()].unwrap();

    let mut parent = vec![usize::MAX; sub.vertex_count()];
    parent[base] = base;
    for v in sub.bfs_order(base) {
        for &w in sub.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
            }
        }
    }
    let is_tree = |u: Vertex, v: Vertex| (parent[v] == u && v != base) || (parent[u] == v && u != base);
    let mut generator_of = std::collections::HashMap::new();
    let mut generator_edges = Vec::new();
    for &(u, v) in sub.edges() {
        if !is_tree(u, v) {
            generator_of.insert((u, v), generator_edges.len() as i64 + 1);
            generator_edges.push((keep[u], keep[v]));
        }
    }
    let mut relators = Vec::new();
    let mut relator_cycles = Vec::new();
    for cycle in fill_cycles(&sub) {
        let mut word = Vec::new();
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            if let Some(&x) = generator_of.get(&(a.min(b), a.max(b))) {
                word.push(if a < b { x } else { -x });
            }
        }
        relators.push(word);
        relator_cycles.push(cycle.iter().map(|&v| keep[v]).collect());
    }
    Pi1Presentation {
        presentation: Presentation {
            generators: generator_edges.len(),
            relators,
        },
        provenance: Provenance {
            generator_edges,
            relator_cycles,
        },
        warning,
    }
}

fn big_list<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_u64() {
            Some(n) => seq.serialize_element(&n)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// `ℤ^free_rank ⊕ ⨁ ℤ/dᵢ` with `d₁ | d₂ | …`, all `dᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(serialize_with = "big_list")]
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let d = invariant_factors(&p.relation_matrix(), p.generators);
    AbelianInvariants {
        free_rank: p.generators - d.len(),
        torsion: d.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

/// Three-valued answer to "is `A₁` trivial?".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Contractibility {
    /// Tietze moves reached the empty presentation.
    Trivialized,
    /// The abelianization is nonzero.
    NontrivialByAbelianization,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct A1Report {
    pub vertices: usize,
    pub edges: usize,
    pub base: Vertex,
    pub triangles: usize,
    pub squares: usize,
    pub presentation: Pi1Presentation,
    pub abelianization: AbelianInvariants,
    pub simplified: TietzeResult,
    pub verdict: Contractibility,
}

pub fn a1_report(g: &PointedGraph, budget: usize) -> A1Report {
    let presentation = pi1_presentation(g);
    let cells = &presentation.provenance.relator_cycles;
    let abelianization = abelianization(&presentation.presentation);
    let simplified = tietze_simplify(&presentation.presentation, budget);
    let verdict = if !abelianization.is_trivial() {
        Contractibility::NontrivialByAbelianization
    } else if simplified.status == TietzeStatus::Trivialized {
        Contractibility::Trivialized
    } else {
        Contractibility::Unknown
    };
    A1Report {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        base: g.base(),
        triangles: cells.iter().filter(|c| c.len() == 3).count(),
        squares: cells.iter().filter(|c| c.len() == 4).count(),
        abelianization,
        presentation,
        simplified,
        verdict,
    }
}
