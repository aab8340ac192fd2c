use super::{StratMap, StratSet};
use crate::poset::{exponential_poset, monotone_maps, Poset};
use crate::sset::{tagged_mapping_space, Assignment, LevelwiseSimplicialSet, MapSearch, Product, SimplexRef};

/// A levelwise simplicial set with a monotone labelling of its vertices.
#[derive(Clone, Debug)]
pub struct StratLevelwise {
    pub space: LevelwiseSimplicialSet,
    pub poset: Poset,
    pub labels: Vec<usize>,
}

impl StratLevelwise {
    /// Labels weakly increase along every level-1 element.
    pub fn is_monotone(&self) -> bool {
        self.space.bound() == 0
            || (0..self.space.count(1)).all(|e| {
                let (s, t) = (self.space.face(1, e, 1), self.space.face(1, e, 0));
                self.poset.leq(self.labels[s], self.labels[t])
            })
    }
}

/// Space assignments of all stratified maps `X -> Y` over a fixed poset map.
pub fn strat_maps_over(x: &StratSet, y: &StratSet, phi: &[usize]) -> Vec<Assignment> {
    MapSearch::new(&x.space, &y.space)
        .constraint(|d, g, c| d > 0 || y.labels[c.gen] == phi[x.labels[g]])
        .all()
}

/// All stratified maps `X -> Y`, over every monotone map of posets.
pub fn strat_maps(x: &StratSet, y: &StratSet) -> Vec<StratMap> {
    monotone_maps(&x.poset, &y.poset)
        .into_iter()
        .flat_map(|phi| {
            strat_maps_over(x, y, &phi)
                .into_iter()
                .map(move |a| StratMap::from_parts(x, y, a, phi.clone()))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Weakly increasing chains of length `k + 1` in a poset.
fn chains(poset: &Poset, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..poset.len()).map(|p| vec![p]).collect();
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|c| {
                let last = *c.last().unwrap();
                (0..poset.len()).filter(move |&q| poset.leq(last, q)).map(move |q| {
                    let mut d = c.clone();
                    d.push(q);
                    d
                })
            })
            .collect();
    }
    out
}

/// The internal hom `Y^X` to level `bound`. A `k`-simplex is a chain
/// `φ_0 <= ... <= φ_k` in `P_Y^{P_X}` together with a map `h: uX × Δ^k -> uY`
/// sending each vertex `(x, j)` into the stratum `φ_j(label x)`. Level-0
/// elements are labelled by `φ_0`. Also returns, per level, the chain and
/// space map of every element.
#[allow(clippy::type_complexity)]
pub fn strat_mapping_space(
    y: &StratSet,
    x: &StratSet,
    bound: usize,
) -> (StratLevelwise, Vec<Vec<(Vec<usize>, Assignment)>>) {
    restricted_exponential(y, x, bound, &|_, _, _| true)
}

/// `Y^X` cut down by an extra per-generator constraint on `uX × Δ^k -> uY`,
/// which must be stable under the simplicial operators.
#[allow(clippy::type_complexity)]
pub(crate) fn restricted_exponential(
    y: &StratSet,
    x: &StratSet,
    bound: usize,
    extra: &dyn Fn(&Product, (usize, usize), &SimplexRef) -> bool,
) -> (StratLevelwise, Vec<Vec<(Vec<usize>, Assignment)>>) {
    let (poset, maps) = exponential_poset(&y.poset, &x.poset);
    let t = tagged_mapping_space(
        &x.space,
        &y.space,
        bound,
        &|k| chains(&poset, k),
        &|chain: &Vec<usize>, prod, (d, g), c| {
            if !extra(prod, (d, g), c) {
                return false;
            }
            if d > 0 {
                return true;
            }
            let (v, j) = prod.pair(0, g);
            y.labels[c.gen] == maps[chain[j.gen]][x.labels[v.gen]]
        },
        &|chain, i| {
            let mut c = chain.clone();
            c.remove(i);
            c
        },
        &|chain, i| {
            let mut c = chain.clone();
            c.insert(i, chain[i]);
            c
        },
    );
    let labels = t.elements[0].iter().map(|(c, _)| c[0]).collect();
    (StratLevelwise { space: t.levelwise, poset, labels }, t.elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Flag;
    use crate::sset::{self, enumerate_maps};
    use crate::strat::{lstr, nerve_strat, strat_product, strat_simplex, trivial};

    #[test]
    fn lstr_adjunction_counts() {
        let pq = Poset::chain_of(vec!["p".into(), "q".into()]);
        let targets = [
            strat_simplex(&pq, &Flag::parse(&pq, "p,q").unwrap()).unwrap(),
            strat_simplex(&pq, &Flag::parse(&pq, "p,p,q").unwrap()).unwrap(),
            nerve_strat(&Poset::chain(2)),
            lstr(&sset::circle()),
        ];
        for k in [sset::simplex(0), sset::simplex(1), sset::boundary(1)] {
            for y in &targets {
                assert_eq!(strat_maps(&lstr(&k), y).len(), enumerate_maps(&k, &y.space).len());
            }
        }
    }

    #[test]
    fn exponential_of_nerves_on_vertices() {
        let p = Poset::chain(1);
        let (e, elements) = strat_mapping_space(&nerve_strat(&p), &nerve_strat(&p), 1);
        assert_eq!(e.space.count(0), 3);
        assert_eq!(e.labels, vec![0, 1, 2]);
        assert!(e.is_monotone());
        e.space.check_identities().unwrap();
        // level 1: one element per chain φ0 <= φ1, as N(P)^N(P) = N(P^P)
        assert_eq!(elements[1].len(), 6);
    }

    #[test]
    fn exponential_adjunction_counts() {
        let pq = Poset::chain_of(vec!["p".into(), "q".into()]);
        let xs = [
            strat_simplex(&pq, &Flag::parse(&pq, "p,q").unwrap()).unwrap(),
            strat_simplex(&pq, &Flag::parse(&pq, "p,p").unwrap()).unwrap(),
            lstr(&sset::boundary(1)),
        ];
        let ys = [
            strat_simplex(&pq, &Flag::parse(&pq, "p,q").unwrap()).unwrap(),
            strat_simplex(&pq, &Flag::parse(&pq, "p,p,q").unwrap()).unwrap(),
        ];
        let point = nerve_strat(&Poset::chain(0));
        let edge = nerve_strat(&Poset::chain(1));
        let flat = trivial(&sset::simplex(1));
        for x in &xs {
            for y in &ys {
                let (e, elements) = strat_mapping_space(y, x, 1);
                e.space.check_identities().unwrap();
                assert!(e.is_monotone());
                let count = |z: &StratSet| strat_maps(&strat_product(z, x).0, y).len();
                assert_eq!(count(&point), elements[0].len());
                assert_eq!(count(&edge), elements[1].len());
                let constant = elements[1].iter().filter(|(c, _)| c[0] == c[1]).count();
                assert_eq!(count(&flat), constant);
            }
        }
    }
}
