use std::collections::HashMap;

use super::{quotient, Generator, SimplexRef, SimplicialMap, SimplicialSet};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::poset::{Poset, PosetMap};

/// The nerve of a finite poset together with the chain indexing of its generators.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: SimplicialSet,
    pub poset: Poset,
    chains: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Nerve {
    pub fn new(poset: &Poset) -> Self {
        let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut level: Vec<Vec<usize>> = (0..poset.len()).map(|p| vec![p]).collect();
        while !level.is_empty() {
            let mut next = Vec::new();
            for c in &level {
                let last = *c.last().unwrap();
                for p in 0..poset.len() {
                    if poset.lt(last, p) {
                        let mut e = c.clone();
                        e.push(p);
                        next.push(e);
                    }
                }
            }
            chains.push(std::mem::replace(&mut level, next));
        }
        let index: HashMap<Vec<usize>, usize> = chains
            .iter()
            .flat_map(|l| l.iter().enumerate().map(|(i, c)| (c.clone(), i)))
            .collect();
        let gens = chains
            .iter()
            .enumerate()
            .map(|(d, level)| {
                level
                    .iter()
                    .map(|c| {
                        let name = if d == 0 {
                            poset.id(c[0]).to_string()
                        } else {
                            format!("[{}]", c.iter().map(|&p| poset.id(p)).collect::<Vec<_>>().join(","))
                        };
                        let faces = if d == 0 {
                            vec![]
                        } else {
                            (0..=d)
                                .map(|i| {
                                    let mut f = c.clone();
                                    f.remove(i);
                                    SimplexRef::gen(d - 1, index[&f])
                                })
                                .collect()
                        };
                        Generator { name, faces }
                    })
                    .collect()
            })
            .collect();
        Nerve { sset: SimplicialSet::new_unchecked(gens), poset: poset.clone(), chains, index }
    }

    /// The strictly increasing chain of a generator.
    pub fn chain(&self, d: usize, g: usize) -> &[usize] {
        &self.chains[d][g]
    }

    pub fn chain_index(&self, chain: &[usize]) -> Option<usize> {
        self.index.get(chain).copied()
    }

    /// The simplex with the given weakly increasing vertex tuple.
    pub fn simplex(&self, tuple: &[usize]) -> SimplexRef {
        let mut chain = tuple.to_vec();
        chain.dedup();
        let mut op = Vec::with_capacity(tuple.len());
        let mut k = 0;
        for &v in tuple {
            while chain[k] != v {
                k += 1;
            }
            op.push(k);
        }
        let d = chain.len() - 1;
        SimplexRef {
            op: MonotoneMap::from_images_unchecked(op, d),
            gen: *self.index.get(&chain).expect("tuple is a chain of the poset"),
        }
    }

    /// Vertex tuple of a simplex.
    pub fn tuple(&self, s: &SimplexRef) -> Vec<usize> {
        let c = &self.chains[s.gen_dim()][s.gen];
        s.op.images().iter().map(|&i| c[i]).collect()
    }
}

/// The map of nerves induced by a monotone map of the underlying posets.
pub fn nerve_map(source: &Nerve, target: &Nerve, f: &[usize]) -> SimplicialMap {
    let assignment = source
        .chains
        .iter()
        .map(|l| {
            l.iter()
                .map(|c| target.simplex(&c.iter().map(|&p| f[p]).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    SimplicialMap { source: source.sset.clone(), target: target.sset.clone(), assignment }
}

impl PosetMap {
    pub fn nerve(&self) -> SimplicialMap {
        nerve_map(&Nerve::new(&self.source), &Nerve::new(&self.target), &self.assignment)
    }
}

/// The standard simplex `Δ^n`; generator names are vertex lists.
pub fn simplex(n: usize) -> SimplicialSet {
    let nerve = Nerve::new(&Poset::chain(n));
    rename_by_vertices(nerve.sset, &nerve.chains)
}

fn rename_by_vertices(x: SimplicialSet, chains: &[Vec<Vec<usize>>]) -> SimplicialSet {
    let gens = x
        .levels()
        .iter()
        .enumerate()
        .map(|(d, l)| {
            l.iter()
                .enumerate()
                .map(|(g, gen)| Generator {
                    name: chains[d][g].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""),
                    faces: gen.faces.clone(),
                })
                .collect()
        })
        .collect();
    SimplicialSet::new_unchecked(gens)
}

/// Generators of `Δ^n` other than the ones listed, as a subcomplex.
fn simplex_without(n: usize, drop: &[Vec<usize>]) -> SimplicialSet {
    let nerve = Nerve::new(&Poset::chain(n));
    let x = rename_by_vertices(nerve.sset.clone(), &nerve.chains);
    let keep: Vec<Vec<bool>> = (0..x.levels().len())
        .map(|d| (0..x.count(d)).map(|g| !drop.contains(&nerve.chains[d][g])).collect())
        .collect();
    x.subcomplex(&keep).0
}

/// The boundary `∂Δ^n`; `∂Δ^0` is empty.
pub fn boundary(n: usize) -> SimplicialSet {
    simplex_without(n, &[(0..=n).collect()])
}

/// The horn `Λ^n_k`, the union of all faces of `Δ^n` except the `k`-th.
pub fn horn(n: usize, k: usize) -> Result<SimplicialSet> {
    if n == 0 || k > n {
        return Err(Error::invalid(format!("no horn Λ^{n}_{k}")));
    }
    let full: Vec<usize> = (0..=n).collect();
    let face: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
    Ok(simplex_without(n, &[full, face]))
}

/// `Δ^1 / ∂Δ^1`: one vertex and one loop.
pub fn circle() -> SimplicialSet {
    let d1 = simplex(1);
    quotient(&d1, &[(SimplexRef::vertex(0), SimplexRef::vertex(1))]).sset
}

/// `Δ^2` with the edge `[0,2]` collapsed to a point and vertices `0`, `1` identified.
pub fn e_complex() -> SimplicialSet {
    let d2 = simplex(2);
    let v0 = SimplexRef::vertex(0);
    let edge02 = SimplexRef::gen(1, 1);
    let collapsed = d2.degeneracy(&v0, 0);
    quotient(&d2, &[(edge02, collapsed), (v0, SimplexRef::vertex(1))]).sset
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Simplex(usize),
    Boundary(usize),
    Horn(usize, usize),
    Nerve(Poset),
    Circle,
    E,
}

pub fn standard(kind: &StandardKind) -> Result<SimplicialSet> {
    Ok(match kind {
        StandardKind::Simplex(n) => simplex(*n),
        StandardKind::Boundary(n) => boundary(*n),
        StandardKind::Horn(n, k) => horn(*n, *k)?,
        StandardKind::Nerve(p) => Nerve::new(p).sset,
        StandardKind::Circle => circle(),
        StandardKind::E => e_complex(),
    })
}

/// The map `Δ^n -> X` classifying the generator `(d, g)`.
pub fn yoneda_map(x: &SimplicialSet, d: usize, g: usize) -> SimplicialMap {
    let delta = Nerve::new(&Poset::chain(d));
    let top = SimplexRef::gen(d, g);
    let assignment = delta
        .chains
        .iter()
        .map(|l| {
            l.iter()
                .map(|c| x.act(&top, &MonotoneMap::from_images_unchecked(c.clone(), d)))
                .collect()
        })
        .collect();
    SimplicialMap { source: simplex(d), target: x.clone(), assignment }
}
