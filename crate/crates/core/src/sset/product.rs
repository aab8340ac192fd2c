use std::collections::HashMap;

use super::{Generator, SimplexRef, SimplicialMap, SimplicialSet};
use crate::delta::{surjections, MonotoneMap};

/// Splits simplices of a common level `n` into a joint degeneracy `[n] ->> [r]`
/// and the reduced simplices at level `r`, so that `refs[i] = reduced[i] ∘ epi`.
pub fn joint_normalize(refs: &[SimplexRef]) -> (MonotoneMap, Vec<SimplexRef>) {
    let n = refs[0].dim();
    let mut epi = Vec::with_capacity(n + 1);
    let mut keep = Vec::with_capacity(n + 1);
    let mut k = 0;
    for i in 0..=n {
        if i > 0 {
            let collapsed = refs.iter().all(|s| s.op.apply(i) == s.op.apply(i - 1));
            if !collapsed {
                k += 1;
                keep.push(i);
            }
        } else {
            keep.push(0);
        }
        epi.push(k);
    }
    let reduced = refs
        .iter()
        .map(|s| SimplexRef {
            op: MonotoneMap::from_images_unchecked(
                keep.iter().map(|&i| s.op.apply(i)).collect(),
                s.gen_dim(),
            ),
            gen: s.gen,
        })
        .collect();
    (MonotoneMap::from_images_unchecked(epi, k), reduced)
}

/// A binary product with its generator indexing.
#[derive(Clone, Debug)]
pub struct Product {
    pub sset: SimplicialSet,
    pairs: Vec<Vec<(SimplexRef, SimplexRef)>>,
    index: HashMap<(SimplexRef, SimplexRef), usize>,
    pub first: SimplicialSet,
    pub second: SimplicialSet,
}

impl Product {
    pub fn new(x: &SimplicialSet, y: &SimplicialSet) -> Self {
        let top = match (x.dim(), y.dim()) {
            (Some(a), Some(b)) => a + b + 1,
            _ => 0,
        };
        let mut pairs: Vec<Vec<(SimplexRef, SimplexRef)>> = Vec::new();
        let mut index = HashMap::new();
        let mut gens: Vec<Vec<Generator>> = Vec::new();
        for d in 0..top {
            let mut level_pairs = Vec::new();
            let mut level_gens = Vec::new();
            for a in 0..=d.min(x.dim().unwrap()) {
                let ops_a = surjections(d, a);
                for b in 0..=d.min(y.dim().unwrap()) {
                    if a + b < d {
                        continue;
                    }
                    let ops_b = surjections(d, b);
                    for ga in 0..x.count(a) {
                        for gb in 0..y.count(b) {
                            for oa in &ops_a {
                                for ob in &ops_b {
                                    let common = (1..=d).any(|i| {
                                        oa.apply(i) == oa.apply(i - 1) && ob.apply(i) == ob.apply(i - 1)
                                    });
                                    if common {
                                        continue;
                                    }
                                    let p = (
                                        SimplexRef { op: oa.clone(), gen: ga },
                                        SimplexRef { op: ob.clone(), gen: gb },
                                    );
                                    let faces = if d == 0 {
                                        vec![]
                                    } else {
                                        (0..=d)
                                            .map(|i| {
                                                let fx = x.face(&p.0, i);
                                                let fy = y.face(&p.1, i);
                                                lookup(&index, &[fx, fy])
                                            })
                                            .collect()
                                    };
                                    let name = format!("({},{})", x.describe(&p.0), y.describe(&p.1));
                                    index.insert(p.clone(), level_gens.len());
                                    level_pairs.push(p);
                                    level_gens.push(Generator { name, faces });
                                }
                            }
                        }
                    }
                }
            }
            pairs.push(level_pairs);
            gens.push(level_gens);
        }
        Product {
            sset: SimplicialSet::new_unchecked(gens),
            pairs,
            index,
            first: x.clone(),
            second: y.clone(),
        }
    }

    /// The component simplices of a generator.
    pub fn pair(&self, d: usize, g: usize) -> &(SimplexRef, SimplexRef) {
        &self.pairs[d][g]
    }

    /// The simplex with the given components (of equal dimension).
    pub fn simplex(&self, x: &SimplexRef, y: &SimplexRef) -> SimplexRef {
        lookup(&self.index, &[x.clone(), y.clone()])
    }

    pub fn components(&self, s: &SimplexRef) -> (SimplexRef, SimplexRef) {
        let (a, b) = &self.pairs[s.gen_dim()][s.gen];
        (self.first.act(a, &s.op), self.second.act(b, &s.op))
    }

    pub fn projection(&self, which: usize) -> SimplicialMap {
        let target = if which == 0 { &self.first } else { &self.second };
        let assignment = self
            .pairs
            .iter()
            .map(|l| l.iter().map(|p| if which == 0 { p.0.clone() } else { p.1.clone() }).collect())
            .collect();
        SimplicialMap { source: self.sset.clone(), target: target.clone(), assignment }
    }

    /// The product map `f × g` into another product.
    pub fn map_into(&self, target: &Product, f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
        let assignment = self
            .pairs
            .iter()
            .map(|l| l.iter().map(|(a, b)| target.simplex(&f.apply(a), &g.apply(b))).collect())
            .collect();
        SimplicialMap { source: self.sset.clone(), target: target.sset.clone(), assignment }
    }

    /// The map into this product with the given components.
    pub fn pairing(&self, f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
        let assignment = f
            .assignment
            .iter()
            .zip(&g.assignment)
            .map(|(lf, lg)| lf.iter().zip(lg).map(|(a, b)| self.simplex(a, b)).collect())
            .collect();
        SimplicialMap { source: f.source.clone(), target: self.sset.clone(), assignment }
    }
}

fn lookup(index: &HashMap<(SimplexRef, SimplexRef), usize>, refs: &[SimplexRef]) -> SimplexRef {
    let (epi, reduced) = joint_normalize(refs);
    let key = (reduced[0].clone(), reduced[1].clone());
    SimplexRef { op: epi, gen: index[&key] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{circle, simplex};

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn shuffle_counts() {
        for m in 0..=3 {
            for n in 0..=3 - m.min(3) {
                let p = Product::new(&simplex(m), &simplex(n));
                assert_eq!(p.sset.count(m + n), binom(m + n, n), "Δ{m}×Δ{n}");
                assert_eq!(p.sset.dim(), Some(m + n));
            }
        }
        let sq = Product::new(&simplex(1), &simplex(1));
        assert_eq!(sq.sset.counts(), vec![4, 5, 2]);
    }

    #[test]
    fn product_with_point_is_isomorphic() {
        for x in [circle(), simplex(2)] {
            let p = Product::new(&x, &simplex(0));
            assert!(p.sset.is_isomorphic(&x));
            assert!(p.projection(0).is_isomorphism());
        }
    }

    #[test]
    fn product_is_symmetric() {
        let a = Product::new(&simplex(1), &circle());
        let b = Product::new(&circle(), &simplex(1));
        assert!(a.sset.is_isomorphic(&b.sset));
    }

    #[test]
    fn empty_factor_gives_empty_product() {
        assert!(Product::new(&SimplicialSet::empty(), &simplex(2)).sset.is_empty());
    }
}
