use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Network, VertexSet};
use crate::ust::{wired_tree_law, OrientedForest};

/// One conditioning path `φ` of the exact comparison
/// `P(𝔥(P^{T_{u,v}}(w)) ≥ ℓ | F^{T_{u,v}}(w) = φ) ≤ P(𝔥(P^{T_{u,w}}(w)) ≥ ℓ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DominationGap {
    pub ell: usize,
    pub future: Vec<usize>,
    pub conditional: f64,
    pub unconditional: f64,
}

impl DominationGap {
    pub fn holds(&self) -> bool {
        self.conditional <= self.unconditional + 1e-12
    }
}

fn forests(g: &Network, roots: &[usize]) -> Result<Vec<(OrientedForest, f64)>> {
    let w = VertexSet::new(g, roots.iter().copied())?;
    wired_tree_law(g, &w)?
        .into_iter()
        .map(|(edges, p)| Ok((OrientedForest::from_edges(g, &edges, w.ids())?, p)))
        .collect()
}

/// Both sides of the wiring comparison for every future `φ` of `w` in
/// `T_{u,v}` and every `ℓ`, by exhaustive enumeration.
pub fn domination_gaps(
    g: &Network,
    u: usize,
    v: usize,
    w: usize,
    ells: &[usize],
) -> Result<Vec<DominationGap>> {
    for x in [u, v, w] {
        g.check_vertex(x)?;
    }
    if u == v || w == u || w == v {
        return Err(Error::invalid("u, v and w must be distinct"));
    }
    let wired_uw = forests(g, &[u, w])?;
    let wired_uv = forests(g, &[u, v])?;
    let mut by_future: BTreeMap<Vec<usize>, Vec<(usize, f64)>> = BTreeMap::new();
    for (f, p) in &wired_uv {
        by_future
            .entry(f.future(w))
            .or_default()
            .push((f.height_of_past(w), *p));
    }
    let uw_heights: Vec<(usize, f64)> = wired_uw
        .iter()
        .map(|(f, p)| (f.height_of_past(w), *p))
        .collect();
    let mut out = Vec::new();
    for &ell in ells {
        let unconditional: f64 = uw_heights
            .iter()
            .filter(|(h, _)| *h >= ell)
            .map(|x| x.1)
            .sum();
        for (future, rows) in &by_future {
            let mass: f64 = rows.iter().map(|x| x.1).sum();
            let hit: f64 = rows.iter().filter(|(h, _)| *h >= ell).map(|x| x.1).sum();
            out.push(DominationGap {
                ell,
                future: future.clone(),
                conditional: hit / mass,
                unconditional,
            });
        }
    }
    Ok(out)
}
