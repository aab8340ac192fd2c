use std::collections::HashMap;

use super::{Assignment, Generator, Nerve, SimplexRef, SimplicialMap, SimplicialSet};
use crate::delta::MonotoneMap;
use crate::poset::Poset;

/// Disjoint union; returns the union and the inclusion of each summand.
pub fn coproduct(parts: &[&SimplicialSet]) -> (SimplicialSet, Vec<SimplicialMap>) {
    let top = parts.iter().map(|p| p.levels().len()).max().unwrap_or(0);
    let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); top];
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
    for part in parts {
        let off: Vec<usize> = (0..top).map(|d| gens[d].len()).collect();
        for (d, level) in part.levels().iter().enumerate() {
            for g in level {
                let faces = g
                    .faces
                    .iter()
                    .map(|f| SimplexRef { op: f.op.clone(), gen: f.gen + off[f.gen_dim()] })
                    .collect();
                gens[d].push(Generator { name: g.name.clone(), faces });
            }
        }
        offsets.push(off);
    }
    let sum = SimplicialSet::new_unchecked(gens);
    let legs = parts
        .iter()
        .zip(&offsets)
        .map(|(part, off)| {
            let assignment = part
                .levels()
                .iter()
                .enumerate()
                .map(|(d, l)| (0..l.len()).map(|g| SimplexRef::gen(d, g + off[d])).collect())
                .collect();
            SimplicialMap { source: (*part).clone(), target: sum.clone(), assignment }
        })
        .collect();
    (sum, legs)
}

/// Result of a quotient: the quotient, the projection, and for each quotient
/// generator the generator of the original it comes from.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub sset: SimplicialSet,
    pub projection: SimplicialMap,
    pub representative: Vec<Vec<usize>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Quotient of `y` by the simplicial equivalence relation generated by the given
/// pairs of simplices of equal dimension.
///
/// Classes containing a degenerate simplex become degenerate; the surviving
/// generators keep the name of their least representative.
pub fn quotient(y: &SimplicialSet, relations: &[(SimplexRef, SimplexRef)]) -> Quotient {
    let top = match y.dim() {
        Some(d) => d,
        None => {
            return Quotient {
                sset: SimplicialSet::empty(),
                projection: SimplicialMap::from_empty(&SimplicialSet::empty()),
                representative: vec![],
            }
        }
    };
    // all simplices of levels 0..=top, numbered globally
    let mut levels: Vec<Vec<SimplexRef>> = Vec::with_capacity(top + 1);
    let mut offset = Vec::with_capacity(top + 1);
    let mut index: HashMap<SimplexRef, usize> = HashMap::new();
    let mut total = 0;
    for n in 0..=top {
        let l = y.simplices(n);
        offset.push(total);
        for (i, s) in l.iter().enumerate() {
            index.insert(s.clone(), total + i);
        }
        total += l.len();
        levels.push(l);
    }
    let mut uf = UnionFind::new(total);
    let mut queue: Vec<(SimplexRef, SimplexRef)> = relations.to_vec();
    while let Some((a, b)) = queue.pop() {
        assert_eq!(a.dim(), b.dim(), "identified simplices must have equal dimension");
        if !uf.union(index[&a], index[&b]) {
            continue;
        }
        let n = a.dim();
        if n > 0 {
            for i in 0..=n {
                queue.push((y.face(&a, i), y.face(&b, i)));
            }
        }
        if n < top {
            for i in 0..=n {
                queue.push((y.degeneracy(&a, i), y.degeneracy(&b, i)));
            }
        }
    }
    // a class is degenerate iff it contains a degenerate simplex
    let mut degenerate_witness: HashMap<usize, (usize, SimplexRef)> = HashMap::new();
    for n in 1..=top {
        for s in &levels[n] {
            if s.is_degenerate() {
                let root = uf.find(index[s]);
                if degenerate_witness.contains_key(&root) {
                    continue;
                }
                // s = s_i(d_i s) for the first collapsed position
                let i = (0..n).find(|&i| s.op.apply(i) == s.op.apply(i + 1)).unwrap();
                degenerate_witness.insert(root, (i, y.face(s, i)));
            }
        }
    }
    // surviving generators, ordered by least member generator
    let mut new_gen: HashMap<usize, usize> = HashMap::new();
    let mut representative: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for n in 0..=top {
        for g in 0..y.count(n) {
            let root = uf.find(index[&SimplexRef::gen(n, g)]);
            if degenerate_witness.contains_key(&root) || new_gen.contains_key(&root) {
                continue;
            }
            new_gen.insert(root, representative[n].len());
            representative[n].push(g);
        }
    }
    // normal form of each class, by increasing level
    let mut normal: HashMap<usize, SimplexRef> = HashMap::new();
    for n in 0..=top {
        for s in &levels[n] {
            let root = uf.find(index[s]);
            if normal.contains_key(&root) {
                continue;
            }
            let nf = if let Some(&g) = new_gen.get(&root) {
                SimplexRef::gen(n, g)
            } else {
                let (i, face) = degenerate_witness[&root].clone();
                let inner = normal[&uf.find(index[&face])].clone();
                SimplexRef { op: inner.op.compose(&MonotoneMap::codegeneracy(n - 1, i)), gen: inner.gen }
            };
            normal.insert(root, nf);
        }
    }
    let gens: Vec<Vec<Generator>> = representative
        .iter()
        .enumerate()
        .map(|(n, reps)| {
            reps.iter()
                .map(|&g| {
                    let gen = y.generator(n, g);
                    let faces = gen.faces.iter().map(|f| normal[&uf.find(index[f])].clone()).collect();
                    Generator { name: gen.name.clone(), faces }
                })
                .collect()
        })
        .collect();
    let sset = SimplicialSet::new_unchecked(gens);
    let assignment: Assignment = (0..=top)
        .map(|n| (0..y.count(n)).map(|g| normal[&uf.find(index[&SimplexRef::gen(n, g)])].clone()).collect())
        .collect();
    representative.truncate(sset.levels().len());
    let projection = SimplicialMap { source: y.clone(), target: sset.clone(), assignment };
    Quotient { sset, projection, representative }
}

/// Pushout of `x <- a -> y`; returns the pushout and the two legs.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> (SimplicialSet, SimplicialMap, SimplicialMap) {
    let (sum, legs) = coproduct(&[&f.target, &g.target]);
    let mut relations = Vec::new();
    for (d, level) in f.assignment.iter().enumerate() {
        for (k, image) in level.iter().enumerate() {
            relations.push((legs[0].apply(image), legs[1].apply(&g.assignment[d][k])));
        }
    }
    let q = quotient(&sum, &relations);
    let left = q.projection.compose(&legs[0]);
    let right = q.projection.compose(&legs[1]);
    (q.sset, left, right)
}

/// A functor from simplices to nerves of posets whose elements are vectors and
/// whose structure maps act entrywise through the simplicial operator.
pub(crate) trait NerveDiagram {
    /// Elements and order of the poset attached to a simplex of the indexing complex.
    fn poset(&self, x: &SimplicialSet, s: &SimplexRef) -> (Vec<Vec<usize>>, Poset);

    /// The element of the poset of `s` corresponding to `e` in the poset of
    /// `alpha^*(s)`.
    fn push(&self, alpha: &MonotoneMap, e: &[usize]) -> Vec<usize>;
}

/// A colimit of nerves over the generators of `x`, presented as the coequalizer
/// of the face relations.
#[derive(Clone, Debug)]
pub(crate) struct NerveColimit {
    pub sset: SimplicialSet,
    /// For each generator of `x`: its poset elements and nerve.
    pub pieces: Vec<Vec<(Vec<Vec<usize>>, Nerve)>>,
    /// For each piece, the map into the colimit.
    pub legs: Vec<Vec<SimplicialMap>>,
    /// For each colimit generator: the piece `(dim, gen)` and the piece generator it comes from.
    pub origin: Vec<Vec<((usize, usize), usize)>>,
}

impl NerveColimit {
    /// Image in the colimit of the element chain `tuple` of the piece of generator `(d, g)`.
    pub fn simplex(&self, d: usize, g: usize, tuple: &[Vec<usize>]) -> SimplexRef {
        let (elements, nerve) = &self.pieces[d][g];
        let idx: Vec<usize> = tuple.iter().map(|e| elements.iter().position(|x| x == e).unwrap()).collect();
        self.legs[d][g].apply(&nerve.simplex(&idx))
    }
}

pub(crate) fn colimit_of_nerves(x: &SimplicialSet, diagram: &dyn NerveDiagram) -> NerveColimit {
    let mut pieces: Vec<Vec<(Vec<Vec<usize>>, Nerve)>> = Vec::new();
    for d in 0..x.levels().len() {
        let level = (0..x.count(d))
            .map(|g| {
                let (elements, poset) = diagram.poset(x, &SimplexRef::gen(d, g));
                (elements, Nerve::new(&poset))
            })
            .collect();
        pieces.push(level);
    }
    let flat: Vec<&SimplicialSet> = pieces.iter().flatten().map(|(_, n)| &n.sset).collect();
    let (sum, legs) = coproduct(&flat);
    let mut offsets = Vec::new();
    let mut k = 0;
    for level in &pieces {
        offsets.push(k);
        k += level.len();
    }
    let mut relations = Vec::new();
    for d in 1..x.levels().len() {
        for g in 0..x.count(d) {
            for (i, face) in x.generator(d, g).faces.iter().enumerate() {
                let (elements, poset) = diagram.poset(x, face);
                let nerve = Nerve::new(&poset);
                let coface = MonotoneMap::coface(d, i);
                let (into_g, into_face): (Vec<usize>, Vec<usize>) = elements
                    .iter()
                    .map(|e| {
                        let a = diagram.push(&coface, e);
                        let b = diagram.push(&face.op, e);
                        let pa = pieces[d][g].0.iter().position(|x| *x == a).unwrap();
                        let pb = pieces[face.gen_dim()][face.gen].0.iter().position(|x| *x == b).unwrap();
                        (pa, pb)
                    })
                    .unzip();
                let leg_g = &legs[offsets[d] + g];
                let leg_f = &legs[offsets[face.gen_dim()] + face.gen];
                let target_g = &pieces[d][g].1;
                let target_f = &pieces[face.gen_dim()][face.gen].1;
                for (cd, level) in nerve.sset.levels().iter().enumerate() {
                    for c in 0..level.len() {
                        let chain = nerve.chain(cd, c);
                        let a: Vec<usize> = chain.iter().map(|&e| into_g[e]).collect();
                        let b: Vec<usize> = chain.iter().map(|&e| into_face[e]).collect();
                        relations.push((leg_g.apply(&target_g.simplex(&a)), leg_f.apply(&target_f.simplex(&b))));
                    }
                }
            }
        }
    }
    let q = quotient(&sum, &relations);
    let legs: Vec<Vec<SimplicialMap>> = pieces
        .iter()
        .enumerate()
        .map(|(d, level)| {
            (0..level.len()).map(|g| q.projection.compose(&legs[offsets[d] + g])).collect()
        })
        .collect();
    // locate each surviving generator of the sum in its piece
    let mut locate: Vec<Vec<((usize, usize), usize)>> = vec![Vec::new(); sum.levels().len()];
    for (d, level) in pieces.iter().enumerate() {
        for (g, (_, nerve)) in level.iter().enumerate() {
            for (cd, l) in nerve.sset.levels().iter().enumerate() {
                for c in 0..l.len() {
                    locate[cd].push(((d, g), c));
                }
            }
        }
    }
    let origin = q
        .representative
        .iter()
        .enumerate()
        .map(|(cd, reps)| reps.iter().map(|&r| locate[cd][r]).collect())
        .collect();
    NerveColimit { sset: q.sset, pieces, legs, origin }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{boundary, simplex};

    #[test]
    fn pushout_of_endpoints_to_point_is_circle() {
        let d1 = simplex(1);
        let b = boundary(1);
        let incl = b.generated_subcomplex(&[(0, 0), (0, 1)]).1;
        let incl = SimplicialMap {
            source: b.clone(),
            target: d1.clone(),
            assignment: incl.assignment.clone(),
        };
        let point = simplex(0);
        let collapse = SimplicialMap {
            source: b.clone(),
            target: point.clone(),
            assignment: vec![vec![SimplexRef::vertex(0), SimplexRef::vertex(0)]],
        };
        let (p, _, _) = pushout(&collapse, &incl);
        assert_eq!(p.counts(), vec![1, 1]);
    }

    #[test]
    fn gluing_two_intervals_gives_a_spine() {
        let d1 = simplex(1);
        let d0 = simplex(0);
        let end = SimplicialMap { source: d0.clone(), target: d1.clone(), assignment: vec![vec![SimplexRef::vertex(1)]] };
        let start = SimplicialMap { source: d0, target: d1, assignment: vec![vec![SimplexRef::vertex(0)]] };
        let (p, l, r) = pushout(&end, &start);
        assert_eq!(p.counts(), vec![3, 2]);
        assert!(l.is_injective() && r.is_injective());
    }

    #[test]
    fn pushout_along_empty_is_disjoint_union() {
        let e = SimplicialSet::empty();
        let a = SimplicialMap::from_empty(&simplex(1));
        let b = SimplicialMap::from_empty(&simplex(2));
        let _ = e;
        let (p, _, _) = pushout(&a, &b);
        assert_eq!(p.counts(), vec![5, 4, 1]);
    }
}
