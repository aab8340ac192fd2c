//! Finitely generated simplicial sets in Eilenberg–Zilber normal form.

mod colimit;
mod homology;
mod levelwise;
mod maps;
mod nerve;
mod product;
mod subdivision;

pub use colimit::{coproduct, pushout, quotient, Quotient};
pub use homology::{betti_numbers, levelwise_betti, levelwise_pi0, pi0, Components};
pub use levelwise::{LevelwiseBuilder, LevelwiseSimplicialSet};
pub use maps::{enumerate_maps, find_map, MapSearch, SimplexIndex};
pub use nerve::{
    boundary, circle, e_complex, horn, nerve_map, simplex, standard, yoneda_map, Nerve, StandardKind,
};
pub use product::{joint_normalize, Product};
pub use subdivision::{ex_truncated, mapping_space, subdivision, ExTruncated, MappingSpace, Subdivision};
pub(crate) use colimit::{colimit_of_nerves, NerveColimit, NerveDiagram};
pub(crate) use subdivision::{restricted_mapping_space, tagged_mapping_space};

use std::collections::HashMap;
use std::fmt;

use crate::delta::{surjections, MonotoneMap};
use crate::error::{Error, Result};

/// A simplex `op^*(gen)` with `op` a surjection `[n] ->> [m]` and `gen` a
/// non-degenerate `m`-simplex (index within dimension `m`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub op: MonotoneMap,
    pub gen: usize,
}

impl fmt::Debug for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.op.is_identity() {
            write!(f, "g{}/{}", self.op.target_dim(), self.gen)
        } else {
            write!(f, "{:?}*g{}/{}", self.op.images(), self.op.target_dim(), self.gen)
        }
    }
}

impl SimplexRef {
    /// The non-degenerate generator itself.
    pub fn gen(dim: usize, gen: usize) -> Self {
        SimplexRef { op: MonotoneMap::identity(dim), gen }
    }

    pub fn vertex(gen: usize) -> Self {
        Self::gen(0, gen)
    }

    pub fn dim(&self) -> usize {
        self.op.source_dim()
    }

    pub fn gen_dim(&self) -> usize {
        self.op.target_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim() != self.gen_dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// `faces[i] = d_i` of this generator; empty for vertices.
    pub faces: Vec<SimplexRef>,
}

/// A finite simplicial set given by its non-degenerate simplices and their faces.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialSet {
    gens: Vec<Vec<Generator>>,
    vertices: Vec<Vec<Vec<usize>>>,
}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialSet{:?}", self.counts())
    }
}

impl SimplicialSet {
    pub fn empty() -> Self {
        SimplicialSet { gens: vec![], vertices: vec![] }
    }

    /// Builds and validates a simplicial set from per-dimension generator lists.
    pub fn new(gens: Vec<Vec<Generator>>) -> Result<Self> {
        let x = Self::build(gens)?;
        x.check_identities()?;
        Ok(x)
    }

    /// Structural checks only; used for constructions that are correct by design.
    pub(crate) fn new_unchecked(gens: Vec<Vec<Generator>>) -> Self {
        let x = Self::build(gens).expect("well-formed generator lists");
        debug_assert!(x.check_identities().is_ok(), "{:?}", x.check_identities());
        x
    }

    fn build(mut gens: Vec<Vec<Generator>>) -> Result<Self> {
        while gens.last().is_some_and(|l| l.is_empty()) {
            gens.pop();
        }
        for (d, level) in gens.iter().enumerate() {
            for g in level {
                let expected = if d == 0 { 0 } else { d + 1 };
                if g.faces.len() != expected {
                    return Err(Error::SimplicialIdentity {
                        generator: g.name.clone(),
                        detail: format!("expected {expected} faces, found {}", g.faces.len()),
                    });
                }
                for face in &g.faces {
                    if face.dim() + 1 != d
                        || !face.op.is_surjective()
                        || face.gen_dim() >= gens.len()
                        || face.gen >= gens[face.gen_dim()].len()
                    {
                        return Err(Error::SimplicialIdentity {
                            generator: g.name.clone(),
                            detail: format!("face {face:?} is not a valid ({})-simplex", d - 1),
                        });
                    }
                }
            }
        }
        let mut x = SimplicialSet { gens, vertices: vec![] };
        let mut vertices: Vec<Vec<Vec<usize>>> = Vec::with_capacity(x.gens.len());
        for d in 0..x.gens.len() {
            let mut level = Vec::with_capacity(x.gens[d].len());
            for g in 0..x.gens[d].len() {
                if d == 0 {
                    level.push(vec![g]);
                    continue;
                }
                // vertex j of g: for j < d it is vertex j of face d, vertex d is vertex d-1 of face 0
                let last = &x.gens[d][g].faces[d];
                let first = &x.gens[d][g].faces[0];
                let mut vs: Vec<usize> = last
                    .op
                    .images()
                    .iter()
                    .map(|&i| vertices[last.gen_dim()][last.gen][i])
                    .collect();
                let k = first.op.apply(d - 1);
                vs.push(vertices[first.gen_dim()][first.gen][k]);
                level.push(vs);
            }
            vertices.push(level);
        }
        x.vertices = vertices;
        Ok(x)
    }

    fn check_identities(&self) -> Result<()> {
        for d in 2..self.gens.len() {
            for g in 0..self.gens[d].len() {
                let s = SimplexRef::gen(d, g);
                for j in 1..=d {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&s, j), i);
                        let rhs = self.face(&self.face(&s, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::SimplicialIdentity {
                                generator: self.gens[d][g].name.clone(),
                                detail: format!(
                                    "d{i} d{j} = {} but d{} d{i} = {}",
                                    self.describe(&lhs),
                                    j - 1,
                                    self.describe(&rhs)
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Highest dimension with a generator; `None` for the empty simplicial set.
    pub fn dim(&self) -> Option<usize> {
        self.gens.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Number of generators in each dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.gens.iter().map(|l| l.len()).collect()
    }

    pub fn count(&self, d: usize) -> usize {
        self.gens.get(d).map_or(0, |l| l.len())
    }

    pub fn total_generators(&self) -> usize {
        self.gens.iter().map(|l| l.len()).sum()
    }

    pub fn generators(&self, d: usize) -> &[Generator] {
        self.gens.get(d).map_or(&[], |l| l.as_slice())
    }

    pub fn generator(&self, d: usize, g: usize) -> &Generator {
        &self.gens[d][g]
    }

    pub fn levels(&self) -> &[Vec<Generator>] {
        &self.gens
    }

    /// Vertex generators of the generator `(d, g)`, in order.
    pub fn gen_vertices(&self, d: usize, g: usize) -> &[usize] {
        &self.vertices[d][g]
    }

    /// Vertex generators of an arbitrary simplex, in order.
    pub fn simplex_vertices(&self, s: &SimplexRef) -> Vec<usize> {
        let vs = &self.vertices[s.gen_dim()][s.gen];
        s.op.images().iter().map(|&i| vs[i]).collect()
    }

    pub fn find_generator(&self, name: &str) -> Option<(usize, usize)> {
        self.gens
            .iter()
            .enumerate()
            .find_map(|(d, l)| l.iter().position(|g| g.name == name).map(|i| (d, i)))
    }

    /// `alpha^*(gen)` in normal form for a generator of dimension `d`.
    pub fn act_gen(&self, d: usize, g: usize, alpha: &MonotoneMap) -> SimplexRef {
        debug_assert_eq!(alpha.target_dim(), d);
        let (epi, mono) = alpha.factor();
        if mono.is_identity() {
            return SimplexRef { op: epi, gen: g };
        }
        let missing = (0..=d).find(|&i| !mono.images().contains(&i)).unwrap();
        let shifted: Vec<usize> =
            mono.images().iter().map(|&v| if v > missing { v - 1 } else { v }).collect();
        let rest = MonotoneMap::from_images_unchecked(shifted, d - 1).compose(&epi);
        let face = &self.gens[d][g].faces[missing];
        self.act_gen(face.gen_dim(), face.gen, &face.op.compose(&rest))
    }

    /// `alpha^*(s)` in normal form.
    pub fn act(&self, s: &SimplexRef, alpha: &MonotoneMap) -> SimplexRef {
        self.act_gen(s.gen_dim(), s.gen, &s.op.compose(alpha))
    }

    /// Checked variant of [`act`](Self::act).
    pub fn try_act(&self, s: &SimplexRef, alpha: &MonotoneMap) -> Result<SimplexRef> {
        if alpha.target_dim() != s.dim() {
            return Err(Error::DimensionMismatch { expected: s.dim(), found: alpha.target_dim() });
        }
        if s.gen_dim() >= self.gens.len() || s.gen >= self.gens[s.gen_dim()].len() {
            return Err(Error::invalid(format!("simplex {s:?} is not in this simplicial set")));
        }
        Ok(self.act(s, alpha))
    }

    pub fn face(&self, s: &SimplexRef, i: usize) -> SimplexRef {
        self.act(s, &MonotoneMap::coface(s.dim(), i))
    }

    pub fn degeneracy(&self, s: &SimplexRef, i: usize) -> SimplexRef {
        self.act(s, &MonotoneMap::codegeneracy(s.dim(), i))
    }

    /// The vertex `j` of a simplex, as a vertex generator index.
    pub fn vertex_of(&self, s: &SimplexRef, j: usize) -> usize {
        self.vertices[s.gen_dim()][s.gen][s.op.apply(j)]
    }

    /// All simplices of level `n`, grouped by generator dimension then generator.
    pub fn simplices(&self, n: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for m in 0..=n.min(self.gens.len().saturating_sub(1)) {
            if m >= self.gens.len() {
                break;
            }
            let ops = surjections(n, m);
            for g in 0..self.gens[m].len() {
                for op in &ops {
                    out.push(SimplexRef { op: op.clone(), gen: g });
                }
            }
        }
        out
    }

    /// A human-readable name for a simplex.
    pub fn describe(&self, s: &SimplexRef) -> String {
        let name = &self.gens[s.gen_dim()][s.gen].name;
        if s.op.is_identity() {
            name.clone()
        } else {
            format!("{}{:?}", name, s.op.images())
        }
    }

    /// Indices of generators that are exactly the vertices.
    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    /// Disjoint union with another simplicial set; generators of `other` follow.
    pub fn disjoint_union(&self, other: &SimplicialSet) -> SimplicialSet {
        coproduct(&[self, other]).0
    }

    /// The simplicial subset generated by the given generators, with its inclusion.
    pub fn generated_subcomplex(&self, seeds: &[(usize, usize)]) -> (SimplicialSet, SimplicialMap) {
        let mut keep: Vec<Vec<bool>> = self.gens.iter().map(|l| vec![false; l.len()]).collect();
        let mut stack: Vec<(usize, usize)> = seeds.to_vec();
        while let Some((d, g)) = stack.pop() {
            if keep[d][g] {
                continue;
            }
            keep[d][g] = true;
            for f in &self.gens[d][g].faces {
                stack.push((f.gen_dim(), f.gen));
            }
        }
        self.subcomplex(&keep)
    }

    /// The simplicial subset on the generators marked in `keep`, which must be
    /// closed under faces.
    pub fn subcomplex(&self, keep: &[Vec<bool>]) -> (SimplicialSet, SimplicialMap) {
        let mut new_index: Vec<Vec<usize>> = Vec::with_capacity(self.gens.len());
        let mut gens: Vec<Vec<Generator>> = Vec::with_capacity(self.gens.len());
        let mut assignment = Vec::with_capacity(self.gens.len());
        for (d, level) in self.gens.iter().enumerate() {
            let mut idx = vec![usize::MAX; level.len()];
            let mut out = Vec::new();
            let mut assign = Vec::new();
            for (g, gen) in level.iter().enumerate() {
                if !keep[d][g] {
                    continue;
                }
                idx[g] = out.len();
                let faces = gen
                    .faces
                    .iter()
                    .map(|f| {
                        let k = new_index[f.gen_dim()][f.gen];
                        assert!(k != usize::MAX, "subcomplex is not closed under faces");
                        SimplexRef { op: f.op.clone(), gen: k }
                    })
                    .collect();
                out.push(Generator { name: gen.name.clone(), faces });
                assign.push(SimplexRef::gen(d, g));
            }
            new_index.push(idx);
            gens.push(out);
            assignment.push(assign);
        }
        let sub = SimplicialSet::new_unchecked(gens);
        assignment.truncate(sub.gens.len());
        let inclusion = SimplicialMap { source: sub.clone(), target: self.clone(), assignment };
        (sub, inclusion)
    }

    /// Whether the two simplicial sets agree up to renaming and reordering of generators.
    pub fn is_isomorphic(&self, other: &SimplicialSet) -> bool {
        self.counts() == other.counts() && find_map(self, other, true).is_some()
    }
}

/// Images of the generators of a source simplicial set, per dimension.
pub type Assignment = Vec<Vec<SimplexRef>>;

/// A simplicial map, stored by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: SimplicialSet,
    pub target: SimplicialSet,
    pub assignment: Assignment,
}

impl SimplicialMap {
    /// Validates dimensions and compatibility with faces.
    pub fn new(source: SimplicialSet, target: SimplicialSet, assignment: Assignment) -> Result<Self> {
        let counts = source.counts();
        if assignment.len() != counts.len()
            || assignment.iter().zip(&counts).any(|(a, &c)| a.len() != c)
        {
            return Err(Error::invalid("map assignment does not cover the source generators"));
        }
        for (d, level) in assignment.iter().enumerate() {
            for (g, s) in level.iter().enumerate() {
                let name = source.generator(d, g).name.clone();
                if s.dim() != d
                    || s.gen_dim() >= target.gens.len()
                    || s.gen >= target.gens[s.gen_dim()].len()
                {
                    return Err(Error::NotSimplicial {
                        generator: name,
                        detail: format!("image {s:?} is not a {d}-simplex of the target"),
                    });
                }
            }
        }
        let map = SimplicialMap { source, target, assignment };
        for d in 1..map.assignment.len() {
            for g in 0..map.assignment[d].len() {
                for (i, f) in map.source.generator(d, g).faces.iter().enumerate() {
                    let lhs = map.target.face(&map.assignment[d][g], i);
                    let rhs = map.apply(f);
                    if lhs != rhs {
                        return Err(Error::NotSimplicial {
                            generator: map.source.generator(d, g).name.clone(),
                            detail: format!(
                                "d{i} of image is {} but image of d{i} is {}",
                                map.target.describe(&lhs),
                                map.target.describe(&rhs)
                            ),
                        });
                    }
                }
            }
        }
        Ok(map)
    }

    pub fn identity(x: &SimplicialSet) -> Self {
        let assignment = x
            .gens
            .iter()
            .enumerate()
            .map(|(d, l)| (0..l.len()).map(|g| SimplexRef::gen(d, g)).collect())
            .collect();
        SimplicialMap { source: x.clone(), target: x.clone(), assignment }
    }

    /// The unique map out of the empty simplicial set.
    pub fn from_empty(target: &SimplicialSet) -> Self {
        SimplicialMap { source: SimplicialSet::empty(), target: target.clone(), assignment: vec![] }
    }

    pub fn apply(&self, s: &SimplexRef) -> SimplexRef {
        apply_assignment(&self.target, &self.assignment, s)
    }

    pub fn apply_vertex(&self, v: usize) -> usize {
        self.assignment[0][v].gen
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SimplicialMap) -> SimplicialMap {
        let assignment = first
            .assignment
            .iter()
            .map(|l| l.iter().map(|s| self.apply(s)).collect())
            .collect();
        SimplicialMap { source: first.source.clone(), target: self.target.clone(), assignment }
    }

    /// Injective on simplices: distinct generators go to distinct generators.
    pub fn is_injective(&self) -> bool {
        self.non_injective_witness().is_none()
    }

    /// A generator sent to a degenerate simplex, or two generators with the same image.
    pub fn non_injective_witness(&self) -> Option<String> {
        let mut seen: HashMap<&SimplexRef, usize> = HashMap::new();
        for (d, level) in self.assignment.iter().enumerate() {
            for (g, s) in level.iter().enumerate() {
                let name = &self.source.generator(d, g).name;
                if s.is_degenerate() {
                    return Some(format!("{name} is sent to the degenerate simplex {}", self.target.describe(s)));
                }
                if let Some(&h) = seen.get(s) {
                    return Some(format!(
                        "{} and {name} are both sent to {}",
                        self.source.generator(d, h).name,
                        self.target.describe(s)
                    ));
                }
                seen.insert(s, g);
            }
        }
        None
    }

    /// Bijective on generators (and hence an isomorphism).
    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.source.counts() == self.target.counts()
    }
}

pub(crate) fn apply_assignment(target: &SimplicialSet, assignment: &Assignment, s: &SimplexRef) -> SimplexRef {
    target.act(&assignment[s.gen_dim()][s.gen], &s.op)
}
