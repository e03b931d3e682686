//! The exponential law `G^{K⊗H} ≅ (G^H)^K`.

use std::sync::Arc;

use super::HomGraph;
use crate::error::{Error, Result};
use crate::graph::{GraphMap, PointedGraph, ProductGraph};

fn check_shapes(product: &ProductGraph, exp: &HomGraph) -> Result<()> {
    if **exp.domain() != *product.right() {
        return Err(Error::invalid("exponent graph does not match the right factor"));
    }
    Ok(())
}

/// `φ ↦ φ#` with `φ#(w) = φ(w, •)`, a map `K → G^H`.
///
/// Every slice `φ(w, •)` must be a vertex of `exp` (a graph map `H → G`,
/// pointed if `exp` is pointed). The result is validated as a graph map, and
/// flagged pointed when `φ` is pointed and `φ#` sends the base of `K` to
/// the constant map.
pub fn curry(phi: &GraphMap, product: &ProductGraph, exp: &HomGraph) -> Result<GraphMap> {
    check_shapes(product, exp)?;
    if **phi.domain() != *product.product() || phi.codomain() != exp.codomain() {
        return Err(Error::invalid("map does not go from the product into the exponent base"));
    }
    let k = product.left();
    let nh = product.right().vertex_count();
    let mut assignment = Vec::with_capacity(k.vertex_count());
    for w in k.vertices() {
        let slice: Vec<_> = (0..nh).map(|h| phi.apply(product.pair_index(w, h))).collect();
        let idx = exp.index_of(&slice).ok_or_else(|| {
            Error::invalid(format!("slice at {w} is not a vertex of the exponential graph"))
        })?;
        assignment.push(idx);
    }
    let pointed = phi.is_pointed() && assignment[k.base()] == exp.graph().base();
    GraphMap::new(Arc::new(k.clone()), exp.graph().clone(), assignment, pointed)
}

/// `ψ ↦ ψ♭` with `ψ♭(w, v) = ψ(w)(v)`.
pub fn uncurry(psi: &GraphMap, product: &ProductGraph, exp: &HomGraph) -> Result<GraphMap> {
    check_shapes(product, exp)?;
    if **psi.domain() != *product.left() || psi.codomain() != exp.graph() {
        return Err(Error::invalid("map does not go from the left factor into the exponential graph"));
    }
    let n = product.product().vertex_count();
    let assignment = (0..n)
        .map(|x| {
            let (w, v) = product.split(x);
            exp.maps()[psi.apply(w)][v]
        })
        .collect();
    GraphMap::new(
        Arc::new(product.product().clone()),
        exp.codomain().clone(),
        assignment,
        psi.is_pointed(),
    )
}

/// The evaluation map `e: G^H ⊗ H → G`, `e(ω, v) = ω(v)`.
pub fn evaluation_map(exp: &HomGraph) -> Result<(ProductGraph, GraphMap)> {
    let left: PointedGraph = (**exp.graph()).clone();
    let product = ProductGraph::new(left, (**exp.domain()).clone());
    let n = product.product().vertex_count();
    let assignment = (0..n)
        .map(|x| {
            let (w, v) = product.split(x);
            exp.maps()[w][v]
        })
        .collect();
    let e = GraphMap::new(
        Arc::new(product.product().clone()),
        exp.codomain().clone(),
        assignment,
        true,
    )?;
    Ok((product, e))
}
