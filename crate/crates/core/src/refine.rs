//! The refined poset `rP(X)`, refinement and the refined-ness test.

use crate::error::{Error, Result};
use crate::poset::{unique_names, Poset, PosetMap};
use crate::strat::{StratMap, StratSet};

/// Path components of the non-empty strata of `X`, ordered by zigzags whose
/// backward steps stay inside a stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedPoset {
    pub poset: Poset,
    pub component_of: Vec<usize>,
    pub stratum_of: Vec<usize>,
}

fn find(parent: &mut [usize], a: usize) -> usize {
    let mut r = a;
    while parent[r] != r {
        r = parent[r];
    }
    let mut a = a;
    while parent[a] != r {
        let next = parent[a];
        parent[a] = r;
        a = next;
    }
    r
}

pub fn refined_poset(x: &StratSet) -> Result<RefinedPoset> {
    let nv = x.space.count(0);
    let edges: Vec<(usize, usize)> = (0..x.space.count(1))
        .map(|e| {
            let vs = x.space.gen_vertices(1, e);
            (vs[0], vs[1])
        })
        .collect();
    let mut parent: Vec<usize> = (0..nv).collect();
    for &(a, b) in &edges {
        if x.labels[a] == x.labels[b] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    // components numbered by least member vertex
    let mut component_of = vec![usize::MAX; nv];
    let mut leaders: Vec<usize> = Vec::new();
    for v in 0..nv {
        let r = find(&mut parent, v);
        if component_of[r] == usize::MAX {
            component_of[r] = leaders.len();
            leaders.push(v);
        }
        component_of[v] = component_of[r];
    }
    let n = leaders.len();
    let mut reach = vec![false; n * n];
    for i in 0..n {
        reach[i * n + i] = true;
    }
    for &(a, b) in &edges {
        reach[component_of[a] * n + component_of[b]] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i * n + k] {
                for j in 0..n {
                    if reach[k * n + j] {
                        reach[i * n + j] = true;
                    }
                }
            }
        }
    }
    let names: Vec<String> = x.space.generators(0).iter().map(|g| g.name.clone()).collect();
    let names = unique_names(&names);
    let ids: Vec<String> = leaders.iter().map(|&v| names[v].clone()).collect();
    for i in 0..n {
        for j in i + 1..n {
            if reach[i * n + j] && reach[j * n + i] {
                return Err(Error::internal(format!(
                    "components of {} and {} reach each other in the refined order",
                    ids[i], ids[j]
                )));
            }
        }
    }
    let poset = Poset::from_matrix(ids, reach)?;
    let stratum_of = leaders.iter().map(|&v| x.labels[v]).collect();
    Ok(RefinedPoset { poset, component_of, stratum_of })
}

/// `X^red` together with the counit `X^red -> X`.
pub fn refinement(x: &StratSet) -> Result<(StratSet, StratMap)> {
    let r = refined_poset(x)?;
    let red = StratSet::new(x.space.clone(), r.poset.clone(), r.component_of.clone())?;
    let counit = StratMap::new(
        red.clone(),
        x.clone(),
        crate::sset::SimplicialMap::identity(&x.space),
        PosetMap::new(r.poset, x.poset.clone(), r.stratum_of)?,
    )?;
    Ok((red, counit))
}

/// Whether the counit of the refinement is an isomorphism.
pub fn is_refined(x: &StratSet) -> Result<bool> {
    let (_, counit) = refinement(x)?;
    Ok(counit.poset_map.is_isomorphism())
}
