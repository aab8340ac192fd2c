//! Barycentric subdivision, truncated Ex, and simplicial mapping spaces.

use super::colimit::{colimit_of_nerves, NerveDiagram};
use super::{
    apply_assignment, Assignment, LevelwiseBuilder, LevelwiseSimplicialSet, MapSearch, Nerve, Product,
    SimplexIndex, SimplexRef, SimplicialMap, SimplicialSet,
};
use std::hash::Hash;

use crate::delta::MonotoneMap;
use crate::poset::Poset;

/// Non-empty subsets of `[n]`, ordered by size then lexicographically.
pub(crate) fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << (n + 1)))
        .map(|mask| (0..=n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

pub(crate) fn subset_poset(n: usize) -> (Vec<Vec<usize>>, Poset) {
    let elements = subsets(n);
    let ids = elements
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    let k = elements.len();
    let mut leq = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            leq[a * k + b] = elements[a].iter().all(|v| elements[b].contains(v));
        }
    }
    (elements, Poset::from_matrix(ids, leq).expect("inclusion order"))
}

fn image(alpha: &MonotoneMap, subset: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = subset.iter().map(|&i| alpha.apply(i)).collect();
    out.dedup();
    out
}

struct SubdivisionDiagram;

impl NerveDiagram for SubdivisionDiagram {
    fn poset(&self, _x: &SimplicialSet, s: &SimplexRef) -> (Vec<Vec<usize>>, Poset) {
        subset_poset(s.dim())
    }

    fn push(&self, alpha: &MonotoneMap, e: &[usize]) -> Vec<usize> {
        image(alpha, e)
    }
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub sset: SimplicialSet,
    pub last_vertex: SimplicialMap,
}

/// `sd X` glued from the subdivided generators, with the last vertex map.
pub fn subdivision(x: &SimplicialSet) -> Subdivision {
    let colim = colimit_of_nerves(x, &SubdivisionDiagram);
    let assignment = colim
        .origin
        .iter()
        .enumerate()
        .map(|(cd, level)| {
            level
                .iter()
                .map(|&((d, g), c)| {
                    let (elements, nerve) = &colim.pieces[d][g];
                    let maxima: Vec<usize> =
                        nerve.chain(cd, c).iter().map(|&e| *elements[e].last().unwrap()).collect();
                    x.act_gen(d, g, &MonotoneMap::from_images_unchecked(maxima, d))
                })
                .collect()
        })
        .collect();
    let last_vertex = SimplicialMap { source: colim.sset.clone(), target: x.clone(), assignment };
    Subdivision { sset: colim.sset, last_vertex }
}

/// `sd Δ^n` as a nerve, with its subset elements.
fn sd_simplex(n: usize) -> (Vec<Vec<usize>>, Nerve) {
    let (elements, poset) = subset_poset(n);
    (elements, Nerve::new(&poset))
}

/// `sd(alpha)` for `alpha: [m] -> [n]`, as an assignment on the generators of `sd Δ^m`.
fn sd_operator(source: &(Vec<Vec<usize>>, Nerve), target: &(Vec<Vec<usize>>, Nerve), alpha: &MonotoneMap) -> Assignment {
    let f: Vec<usize> = source
        .0
        .iter()
        .map(|s| {
            let im = image(alpha, s);
            target.0.iter().position(|t| *t == im).unwrap()
        })
        .collect();
    super::nerve_map(&source.1, &target.1, &f).assignment
}

fn precompose(target: &SimplicialSet, h: &Assignment, op: &Assignment) -> Assignment {
    op.iter().map(|l| l.iter().map(|s| apply_assignment(target, h, s)).collect()).collect()
}

/// Levels `0..=bound` of `Ex X`, with the unit `X -> Ex X`.
#[derive(Clone, Debug)]
pub struct ExTruncated {
    pub levelwise: LevelwiseSimplicialSet,
    /// Level `n` elements as maps `sd Δ^n -> X`.
    pub elements: Vec<Vec<Assignment>>,
    /// `unit[n][i]` is the image of the `i`-th simplex of `X.simplices(n)`.
    pub unit: Vec<Vec<usize>>,
}

pub fn ex_truncated(x: &SimplicialSet, bound: usize) -> ExTruncated {
    let sd: Vec<(Vec<Vec<usize>>, Nerve)> = (0..=bound).map(sd_simplex).collect();
    let top = sd.iter().filter_map(|(_, n)| n.sset.dim()).max().unwrap_or(0);
    let index = SimplexIndex::new(x, top);
    let mut builder = LevelwiseBuilder::new(bound);
    for n in 0..=bound {
        builder.set_level(n, MapSearch::new(&sd[n].1.sset, x).with_index(&index).all());
    }
    let faces: Vec<Vec<Assignment>> = (0..=bound)
        .map(|n| (0..=n).map(|i| if n == 0 { vec![] } else { sd_operator(&sd[n - 1], &sd[n], &MonotoneMap::coface(n, i)) }).collect())
        .collect();
    let degens: Vec<Vec<Assignment>> = (0..bound)
        .map(|n| (0..=n).map(|i| sd_operator(&sd[n + 1], &sd[n], &MonotoneMap::codegeneracy(n, i))).collect())
        .collect();
    let (levelwise, elements) = builder.finish_with_elements(
        |n, h, i| precompose(x, h, &faces[n][i]),
        |n, h, i| precompose(x, h, &degens[n][i]),
    );
    let lookup: Vec<std::collections::HashMap<&Assignment, usize>> =
        elements.iter().map(|l| l.iter().enumerate().map(|(i, h)| (h, i)).collect()).collect();
    let unit = (0..=bound)
        .map(|n| {
            x.simplices(n)
                .iter()
                .map(|s| {
                    let (elems, nerve) = &sd[n];
                    let h: Assignment = nerve
                        .sset
                        .levels()
                        .iter()
                        .enumerate()
                        .map(|(cd, l)| {
                            (0..l.len())
                                .map(|c| {
                                    let maxima: Vec<usize> =
                                        nerve.chain(cd, c).iter().map(|&e| *elems[e].last().unwrap()).collect();
                                    x.act(s, &MonotoneMap::from_images_unchecked(maxima, n))
                                })
                                .collect()
                        })
                        .collect();
                    lookup[n][&h]
                })
                .collect()
        })
        .collect();
    ExTruncated { levelwise, elements, unit }
}

/// Levels `0..=bound` of a mapping space `Map(A, X)`, possibly restricted.
#[derive(Clone, Debug)]
pub struct MappingSpace {
    pub levelwise: LevelwiseSimplicialSet,
    /// Level `k` elements as maps `A × Δ^k -> X`.
    pub elements: Vec<Vec<Assignment>>,
    pub products: Vec<Product>,
}

impl MappingSpace {
    pub fn index_of(&self, k: usize, h: &Assignment) -> Option<usize> {
        self.elements[k].iter().position(|e| e == h)
    }
}

/// `Map(A, X)` truncated at `bound`.
pub fn mapping_space(a: &SimplicialSet, x: &SimplicialSet, bound: usize) -> MappingSpace {
    restricted_mapping_space(a, x, bound, &|_, _, _| true)
}

/// Mapping space whose level-`k` elements satisfy a per-generator constraint on
/// `A × Δ^k` (given the product, generator and candidate). The constraint must
/// be stable under the simplicial operators.
pub(crate) fn restricted_mapping_space(
    a: &SimplicialSet,
    x: &SimplicialSet,
    bound: usize,
    constraint: &dyn Fn(&Product, (usize, usize), &SimplexRef) -> bool,
) -> MappingSpace {
    let t = tagged_mapping_space(a, x, bound, &|_| vec![()], &|_, p, g, c| constraint(p, g, c), &|_, _| (), &|_, _| ());
    let elements = t.elements.into_iter().map(|l| l.into_iter().map(|(_, h)| h).collect()).collect();
    MappingSpace { levelwise: t.levelwise, elements, products: t.products }
}

/// A mapping space whose elements carry a tag acted on by the simplicial operators.
#[derive(Clone, Debug)]
pub(crate) struct TaggedMappingSpace<T> {
    pub levelwise: LevelwiseSimplicialSet,
    pub elements: Vec<Vec<(T, Assignment)>>,
    pub products: Vec<Product>,
}

/// Level `k` consists of pairs of a tag from `tags(k)` and a map `A × Δ^k -> X`
/// satisfying `constraint` for that tag; faces and degeneracies act on both.
#[allow(clippy::type_complexity)]
pub(crate) fn tagged_mapping_space<T: Clone + Eq + Hash>(
    a: &SimplicialSet,
    x: &SimplicialSet,
    bound: usize,
    tags: &dyn Fn(usize) -> Vec<T>,
    constraint: &dyn Fn(&T, &Product, (usize, usize), &SimplexRef) -> bool,
    face_tag: &dyn Fn(&T, usize) -> T,
    degen_tag: &dyn Fn(&T, usize) -> T,
) -> TaggedMappingSpace<T> {
    let simplices: Vec<SimplicialSet> = (0..=bound).map(super::simplex).collect();
    let products: Vec<Product> = simplices.iter().map(|d| Product::new(a, d)).collect();
    let top = products.iter().filter_map(|p| p.sset.dim()).max().unwrap_or(0);
    let index = SimplexIndex::new(x, top);
    let id_a = SimplicialMap::identity(a);
    let mut builder = LevelwiseBuilder::new(bound);
    for (k, p) in products.iter().enumerate() {
        let mut found = Vec::new();
        for tag in tags(k) {
            MapSearch::new(&p.sset, x)
                .with_index(&index)
                .constraint(|d, g, c| constraint(&tag, p, (d, g), c))
                .for_each(|h| {
                    found.push((tag.clone(), h.clone()));
                    true
                });
        }
        builder.set_level(k, found);
    }
    let nerves: Vec<Nerve> = (0..=bound).map(|k| Nerve::new(&Poset::chain(k))).collect();
    let delta_map = |m: usize, n: usize, alpha: MonotoneMap| -> SimplicialMap {
        super::nerve_map(&nerves[m], &nerves[n], alpha.images())
    };
    let faces: Vec<Vec<Assignment>> = (0..=bound)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    if k == 0 {
                        vec![]
                    } else {
                        let d = delta_map(k - 1, k, MonotoneMap::coface(k, i));
                        products[k - 1].map_into(&products[k], &id_a, &d).assignment
                    }
                })
                .collect()
        })
        .collect();
    let degens: Vec<Vec<Assignment>> = (0..bound)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let s = delta_map(k + 1, k, MonotoneMap::codegeneracy(k, i));
                    products[k + 1].map_into(&products[k], &id_a, &s).assignment
                })
                .collect()
        })
        .collect();
    let (levelwise, elements) = builder.finish_with_elements(
        |n, (t, h), i| (face_tag(t, i), precompose(x, h, &faces[n][i])),
        |n, (t, h), i| (degen_tag(t, i), precompose(x, h, &degens[n][i])),
    );
    TaggedMappingSpace { levelwise, elements, products }
}
