//! Stratified simplicial sets over varying posets.

mod join;
mod mapping;

pub use join::strat_join;
pub(crate) use mapping::restricted_exponential;
pub use mapping::{strat_mapping_space, strat_maps, strat_maps_over, StratLevelwise};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{poset_pushout, posetify, Flag, Poset, PosetMap};
use crate::sset::{self, pushout, Nerve, Product, SimplexRef, SimplicialMap, SimplicialSet};

/// A simplicial set with a monotone labelling of its vertices by a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratSet {
    pub space: SimplicialSet,
    pub poset: Poset,
    pub labels: Vec<usize>,
}

impl StratSet {
    /// Validates that labels are weakly increasing along every edge.
    pub fn new(space: SimplicialSet, poset: Poset, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != space.count(0) {
            return Err(Error::invalid(format!(
                "{} labels given for {} vertices",
                labels.len(),
                space.count(0)
            )));
        }
        if let Some(&l) = labels.iter().find(|&&l| l >= poset.len()) {
            return Err(Error::invalid(format!("label index {l} outside the poset")));
        }
        for e in 0..space.count(1) {
            let vs = space.gen_vertices(1, e);
            let (a, b) = (labels[vs[0]], labels[vs[1]]);
            if !poset.leq(a, b) {
                return Err(Error::NonMonotoneEdge {
                    edge: space.generator(1, e).name.clone(),
                    source_label: poset.id(a).to_string(),
                    target_label: poset.id(b).to_string(),
                });
            }
        }
        Ok(StratSet { space, poset, labels })
    }

    pub(crate) fn new_unchecked(space: SimplicialSet, poset: Poset, labels: Vec<usize>) -> Self {
        debug_assert!(StratSet::new(space.clone(), poset.clone(), labels.clone()).is_ok());
        StratSet { space, poset, labels }
    }

    pub fn empty(poset: Poset) -> Self {
        StratSet { space: SimplicialSet::empty(), poset, labels: vec![] }
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// The flag traced out by the vertices of a simplex.
    pub fn flag_of(&self, s: &SimplexRef) -> Flag {
        Flag::from_entries_unchecked(self.space.simplex_vertices(s).iter().map(|&v| self.labels[v]).collect())
    }

    /// The flag of the generator `(d, g)`.
    pub fn gen_flag(&self, d: usize, g: usize) -> Flag {
        Flag::from_entries_unchecked(self.space.gen_vertices(d, g).iter().map(|&v| self.labels[v]).collect())
    }

    /// The stratum over `p`, as a stratified set over the point `{p}`.
    pub fn stratum(&self, p: usize) -> StratSet {
        let inclusion = PosetMap {
            source: self.poset.subposet(&[p]),
            target: self.poset.clone(),
            assignment: vec![p],
        };
        base_change(&inclusion, self)
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    /// Isomorphism over an identical poset: an injective, generator-bijective,
    /// label-preserving map.
    pub fn is_isomorphic_over(&self, other: &StratSet) -> bool {
        if self.space.counts() != other.space.counts() || self.poset != other.poset {
            return false;
        }
        sset::MapSearch::new(&self.space, &other.space)
            .injective()
            .constraint(|d, g, c| d > 0 || self.labels[g] == other.labels[c.gen])
            .first()
            .is_some()
    }

    /// Isomorphism allowing an order isomorphism between the posets.
    pub fn is_isomorphic(&self, other: &StratSet) -> bool {
        if self.space.counts() != other.space.counts() || self.poset.len() != other.poset.len() {
            return false;
        }
        crate::poset::monotone_maps(&self.poset, &other.poset).into_iter().any(|phi| {
            let m = PosetMap { source: self.poset.clone(), target: other.poset.clone(), assignment: phi.clone() };
            m.is_isomorphism()
                && sset::MapSearch::new(&self.space, &other.space)
                    .injective()
                    .constraint(|d, g, c| d > 0 || phi[self.labels[g]] == other.labels[c.gen])
                    .first()
                    .is_some()
        })
    }
}

/// A stratum-compatible pair of a simplicial map and a poset map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratMap {
    pub source: StratSet,
    pub target: StratSet,
    pub space_map: SimplicialMap,
    pub poset_map: PosetMap,
}

impl StratMap {
    pub fn new(source: StratSet, target: StratSet, space_map: SimplicialMap, poset_map: PosetMap) -> Result<Self> {
        if space_map.source != source.space || space_map.target != target.space {
            return Err(Error::invalid("space map does not match the stratified sets"));
        }
        if poset_map.source != source.poset || poset_map.target != target.poset {
            return Err(Error::invalid("poset map does not match the stratified sets"));
        }
        for v in 0..source.space.count(0) {
            let image = space_map.apply_vertex(v);
            if target.labels[image] != poset_map.apply(source.labels[v]) {
                return Err(Error::invalid(format!(
                    "vertex {} lands in stratum {} instead of {}",
                    source.space.generator(0, v).name,
                    target.poset.id(target.labels[image]),
                    target.poset.id(poset_map.apply(source.labels[v]))
                )));
            }
        }
        Ok(StratMap { source, target, space_map, poset_map })
    }

    pub fn identity(x: &StratSet) -> Self {
        StratMap {
            source: x.clone(),
            target: x.clone(),
            space_map: SimplicialMap::identity(&x.space),
            poset_map: PosetMap::identity(&x.poset),
        }
    }

    pub fn compose(&self, first: &StratMap) -> StratMap {
        StratMap {
            source: first.source.clone(),
            target: self.target.clone(),
            space_map: self.space_map.compose(&first.space_map),
            poset_map: self.poset_map.compose(&first.poset_map),
        }
    }

    /// From a space map and poset map assumed compatible.
    pub(crate) fn from_parts(source: &StratSet, target: &StratSet, assignment: sset::Assignment, phi: Vec<usize>) -> Self {
        StratMap {
            source: source.clone(),
            target: target.clone(),
            space_map: SimplicialMap { source: source.space.clone(), target: target.space.clone(), assignment },
            poset_map: PosetMap { source: source.poset.clone(), target: target.poset.clone(), assignment: phi },
        }
    }
}

/// Validated stratified set from a labelling.
pub fn strat_from_labels(space: SimplicialSet, poset: Poset, labels: Vec<usize>) -> Result<StratSet> {
    StratSet::new(space, poset, labels)
}

/// `Δ^J` over the poset of `J`.
pub fn strat_simplex(poset: &Poset, flag: &Flag) -> Result<StratSet> {
    let n = flag.length().ok_or_else(|| Error::invalid("the empty flag has no simplex"))?;
    Ok(StratSet::new_unchecked(sset::simplex(n), poset.clone(), flag.entries().to_vec()))
}

fn restrict_to(x: SimplicialSet, flag: &Flag, poset: &Poset) -> StratSet {
    let labels = x
        .generators(0)
        .iter()
        .map(|g| flag.entries()[g.name.parse::<usize>().expect("standard vertex names")])
        .collect();
    StratSet::new_unchecked(x, poset.clone(), labels)
}

/// `∂Δ^J`.
pub fn strat_boundary(poset: &Poset, flag: &Flag) -> Result<StratSet> {
    let n = flag.length().ok_or_else(|| Error::invalid("the empty flag has no boundary"))?;
    Ok(restrict_to(sset::boundary(n), flag, poset))
}

/// `Λ^J_k`.
pub fn strat_horn(poset: &Poset, flag: &Flag, k: usize) -> Result<StratSet> {
    let n = flag.length().ok_or_else(|| Error::invalid("the empty flag has no horn"))?;
    Ok(restrict_to(sset::horn(n, k)?, flag, poset))
}

/// Inclusion of a standard subcomplex (boundary, horn, spine) of `Δ^J`.
pub fn standard_inclusion(sub: &StratSet, full: &StratSet) -> StratMap {
    let assignment = sub
        .space
        .levels()
        .iter()
        .map(|l| {
            l.iter()
                .map(|g| {
                    let (d, i) = full.space.find_generator(&g.name).expect("standard names match");
                    SimplexRef::gen(d, i)
                })
                .collect()
        })
        .collect();
    StratMap::from_parts(sub, full, assignment, (0..full.poset.len()).collect())
}

/// Stratified set with the posetification as poset and the unit as labels.
pub fn lstr(x: &SimplicialSet) -> StratSet {
    let (poset, labels) = posetify(x);
    StratSet::new_unchecked(x.clone(), poset, labels)
}

/// `Δ^{[n]} = lstr(Δ^n)`.
pub fn lstr_simplex(n: usize) -> StratSet {
    lstr(&sset::simplex(n))
}

pub fn lstr_boundary(n: usize) -> StratSet {
    lstr(&sset::boundary(n))
}

pub fn lstr_horn(n: usize, k: usize) -> Result<StratSet> {
    Ok(lstr(&sset::horn(n, k)?))
}

/// `X` over the one-point poset.
pub fn trivial(x: &SimplicialSet) -> StratSet {
    StratSet::new_unchecked(x.clone(), Poset::point(), vec![0; x.count(0)])
}

/// `N(P)` stratified by the identity.
pub fn nerve_strat(poset: &Poset) -> StratSet {
    let n = Nerve::new(poset);
    StratSet::new_unchecked(n.sset, poset.clone(), (0..poset.len()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HornClass {
    pub admissible: bool,
    pub inner: bool,
}

pub fn classify_horn(flag: &Flag, k: usize) -> Result<HornClass> {
    let n = flag.length().ok_or_else(|| Error::invalid("the empty flag has no horns"))?;
    if k > n {
        return Err(Error::invalid(format!("horn index {k} exceeds flag length {n}")));
    }
    let e = flag.entries();
    let admissible = (k < n && e[k] == e[k + 1]) || (k > 0 && e[k] == e[k - 1]);
    Ok(HornClass { admissible, inner: 0 < k && k < n })
}

/// Base change `f^* X = uX ×_{N(P)} N(Q)` along `f: Q -> P`.
pub fn base_change(f: &PosetMap, x: &StratSet) -> StratSet {
    let nq = Nerve::new(&f.source);
    let prod = Product::new(&x.space, &nq.sset);
    let mut keep: Vec<Vec<bool>> = Vec::new();
    for d in 0..prod.sset.levels().len() {
        keep.push(
            (0..prod.sset.count(d))
                .map(|g| {
                    prod.sset.gen_vertices(d, g).iter().all(|&v| {
                        let (a, q) = prod.pair(0, v);
                        x.labels[a.gen] == f.apply(q.gen)
                    })
                })
                .collect(),
        );
    }
    let (space, _) = prod.sset.subcomplex(&keep);
    let mut kept = (0..prod.sset.count(0)).filter(|&v| keep[0][v]);
    let labels = (0..space.count(0)).map(|_| prod.pair(0, kept.next().unwrap()).1.gen).collect();
    StratSet::new_unchecked(space, f.source.clone(), labels)
}

/// Pushforward `f_! X`: the same space relabelled through `f: P -> Q`.
pub fn pushforward(f: &PosetMap, x: &StratSet) -> StratSet {
    let labels = x.labels.iter().map(|&l| f.apply(l)).collect();
    StratSet::new_unchecked(x.space.clone(), f.target.clone(), labels)
}

/// `X ⊗ K = (uX × K -> uX -> P)`.
pub fn tensor(x: &StratSet, k: &SimplicialSet) -> (StratSet, Product) {
    let prod = Product::new(&x.space, k);
    let labels = (0..prod.sset.count(0)).map(|v| x.labels[prod.pair(0, v).0.gen]).collect();
    (StratSet::new_unchecked(prod.sset.clone(), x.poset.clone(), labels), prod)
}

/// Pushout of stratified sets, computed on spaces and posets separately.
pub fn strat_pushout(f: &StratMap, g: &StratMap) -> (StratSet, StratMap, StratMap) {
    let (space, left, right) = pushout(&f.space_map, &g.space_map);
    let (poset, pl, pr) = poset_pushout(&f.poset_map, &g.poset_map);
    let mut labels = vec![usize::MAX; space.count(0)];
    for v in 0..f.target.space.count(0) {
        labels[left.apply_vertex(v)] = pl.apply(f.target.labels[v]);
    }
    for v in 0..g.target.space.count(0) {
        labels[right.apply_vertex(v)] = pr.apply(g.target.labels[v]);
    }
    let result = StratSet::new_unchecked(space, poset, labels);
    let l = StratMap::from_parts(&f.target, &result, left.assignment, pl.assignment);
    let r = StratMap::from_parts(&g.target, &result, right.assignment, pr.assignment);
    (result, l, r)
}

/// The spine of `Δ^J`: the edges between consecutive vertices, with its inclusion.
pub fn spine(poset: &Poset, flag: &Flag) -> Result<(StratSet, StratMap)> {
    let full = strat_simplex(poset, flag)?;
    let n = flag.length().unwrap();
    let seeds: Vec<(usize, usize)> = if n == 0 {
        vec![(0, 0)]
    } else {
        (0..n)
            .map(|k| full.space.find_generator(&format!("{}{}", k, k + 1)).unwrap())
            .collect()
    };
    let (space, _) = full.space.generated_subcomplex(&seeds);
    let sub = restrict_to(space, flag, poset);
    let inclusion = standard_inclusion(&sub, &full);
    Ok((sub, inclusion))
}

/// Product over `P_X × P_Y`, with its product structure.
pub fn strat_product(x: &StratSet, y: &StratSet) -> (StratSet, Product) {
    let prod = Product::new(&x.space, &y.space);
    let m = y.poset.len();
    let labels = (0..prod.sset.count(0))
        .map(|v| {
            let (a, b) = prod.pair(0, v);
            x.labels[a.gen] * m + y.labels[b.gen]
        })
        .collect();
    (StratSet::new_unchecked(prod.sset.clone(), x.poset.product(&y.poset), labels), prod)
}

/// Disjoint union over the same poset.
pub fn strat_coproduct(x: &StratSet, y: &StratSet) -> StratSet {
    let space = x.space.disjoint_union(&y.space);
    let labels = x.labels.iter().chain(&y.labels).copied().collect();
    StratSet::new_unchecked(space, x.poset.clone(), labels)
}
