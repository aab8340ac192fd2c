//! Homotopy links, geometric links, the comparison between them, extended
//! homotopy links and the bounded diagrammatic-equivalence probe.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::poset::{flags_of_length, Flag, Poset};
use crate::sset::{
    self, colimit_of_nerves, levelwise_betti, levelwise_pi0, restricted_mapping_space, Assignment,
    LevelwiseSimplicialSet, MappingSpace, NerveDiagram, SimplexRef, SimplicialMap, SimplicialSet,
};
use crate::strat::{StratMap, StratSet};

/// Stratified maps `Δ^J ⊗ Δ^k -> X` over the identity of the poset, for
/// `k <= bound`; `J` may be degenerate.
pub fn maps_from_flag(x: &StratSet, flag: &Flag, bound: usize) -> MappingSpace {
    let n = flag.length().expect("non-empty flag");
    let entries = flag.entries();
    restricted_mapping_space(
        &sset::simplex(n),
        &x.space,
        bound,
        &|prod, (d, g), c| d > 0 || x.labels[c.gen] == entries[prod.pair(0, g).0.gen],
    )
}

/// The homotopy link `Hol_I(X)` to level `bound`.
pub fn hol(x: &StratSet, flag: &Flag, bound: usize) -> Result<MappingSpace> {
    if flag.is_empty() || !flag.is_regular() {
        return Err(Error::invalid("homotopy links are indexed by non-empty regular flags"));
    }
    Ok(maps_from_flag(x, flag, bound))
}

/// The extended homotopy link of length `n`, split by the flag picked out on
/// posets. Flags come in lexicographic order.
pub fn ext_hol(x: &StratSet, n: usize, bound: usize) -> Vec<(Flag, MappingSpace)> {
    flags_of_length(&x.poset, n)
        .into_iter()
        .map(|j| {
            let m = maps_from_flag(x, &j, bound);
            (j, m)
        })
        .collect()
}

struct LinkDiagram<'a> {
    labels: &'a [usize],
    flag: &'a [usize],
}

impl NerveDiagram for LinkDiagram<'_> {
    fn poset(&self, x: &SimplicialSet, s: &SimplexRef) -> (Vec<Vec<usize>>, Poset) {
        let labels: Vec<usize> = x.simplex_vertices(s).iter().map(|&v| self.labels[v]).collect();
        let positions: Vec<Vec<usize>> =
            self.flag.iter().map(|&p| (0..labels.len()).filter(|&j| labels[j] == p).collect()).collect();
        let elements: Vec<Vec<usize>> = positions.iter().map(|p| p.iter().copied()).multi_cartesian_product().collect();
        let ids = elements.iter().map(|e| format!("{e:?}")).collect();
        let n = elements.len();
        let mut leq = vec![false; n * n];
        for (a, ea) in elements.iter().enumerate() {
            for (b, eb) in elements.iter().enumerate() {
                leq[a * n + b] = ea.iter().zip(eb).all(|(u, v)| u <= v);
            }
        }
        (elements, Poset::from_matrix(ids, leq).expect("coordinatewise order"))
    }

    fn push(&self, alpha: &MonotoneMap, e: &[usize]) -> Vec<usize> {
        e.iter().map(|&j| alpha.apply(j)).collect()
    }
}

/// The geometric link `Link_I(X)`: the colimit over the simplices of `X` of
/// the products `∏_{p ∈ I} Δ^{J_p}`.
#[derive(Clone, Debug)]
pub struct GeometricLink {
    pub sset: SimplicialSet,
    flag: Flag,
    colim: sset::NerveColimit,
    /// Vertices of each generator of `X`, to translate piece positions.
    vertices: Vec<Vec<Vec<usize>>>,
}

impl GeometricLink {
    pub fn flag(&self) -> &Flag {
        &self.flag
    }

    /// A generator of the link as a chain of `I`-tuples of vertices of `X`.
    pub fn vertex_chain(&self, d: usize, g: usize) -> Vec<Vec<usize>> {
        let ((pd, pg), c) = self.colim.origin[d][g];
        let (elements, nerve) = &self.colim.pieces[pd][pg];
        nerve.chain(d, c).iter().map(|&e| elements[e].iter().map(|&j| self.vertices[pd][pg][j]).collect()).collect()
    }

    /// The generator of `X` and the chain of position tuples (in that generator)
    /// representing a link generator.
    pub fn origin(&self, d: usize, g: usize) -> ((usize, usize), Vec<Vec<usize>>) {
        let ((pd, pg), c) = self.colim.origin[d][g];
        let (elements, nerve) = &self.colim.pieces[pd][pg];
        ((pd, pg), nerve.chain(d, c).iter().map(|&e| elements[e].clone()).collect())
    }

    /// Image of a chain of position tuples in the piece of generator `(d, g)`.
    pub fn simplex(&self, d: usize, g: usize, chain: &[Vec<usize>]) -> SimplexRef {
        self.colim.simplex(d, g, chain)
    }
}

pub fn link_geo(x: &StratSet, flag: &Flag) -> Result<GeometricLink> {
    if flag.is_empty() || !flag.is_regular() {
        return Err(Error::invalid("geometric links are indexed by non-empty regular flags"));
    }
    let diagram = LinkDiagram { labels: &x.labels, flag: flag.entries() };
    let colim = colimit_of_nerves(&x.space, &diagram);
    let vertices = x
        .space
        .levels()
        .iter()
        .enumerate()
        .map(|(d, l)| (0..l.len()).map(|g| x.space.gen_vertices(d, g).to_vec()).collect())
        .collect();
    Ok(GeometricLink { sset: colim.sset.clone(), flag: flag.clone(), colim, vertices })
}

/// `Link_I(f)` for a map over the identity of the poset.
pub fn link_geo_map(f: &StratMap, source: &GeometricLink, target: &GeometricLink) -> Result<SimplicialMap> {
    if f.source.poset != f.target.poset || f.poset_map.assignment.iter().enumerate().any(|(i, &j)| i != j) {
        return Err(Error::invalid("links of maps are computed over the identity of a poset"));
    }
    let assignment = source
        .sset
        .levels()
        .iter()
        .enumerate()
        .map(|(d, l)| {
            (0..l.len())
                .map(|g| {
                    let ((pd, pg), chain) = source.origin(d, g);
                    let image = f.space_map.apply(&SimplexRef::gen(pd, pg));
                    let pushed: Vec<Vec<usize>> =
                        chain.iter().map(|e| e.iter().map(|&j| image.op.apply(j)).collect()).collect();
                    target.simplex(image.gen_dim(), image.gen, &pushed)
                })
                .collect()
        })
        .collect();
    Ok(SimplicialMap { source: source.sset.clone(), target: target.sset.clone(), assignment })
}

/// The comparison `Link_I(X) -> Hol_I(X)` on levels `0..=bound`: for each level,
/// the index in `hol` of the image of every simplex of the link (simplices in
/// the order of [`SimplicialSet::simplices`]).
pub fn link_to_hol(link: &GeometricLink, x: &StratSet, hol: &MappingSpace) -> Vec<Vec<usize>> {
    let bound = hol.levelwise.bound();
    let lookup: Vec<HashMap<&Assignment, usize>> =
        hol.elements.iter().map(|l| l.iter().enumerate().map(|(i, h)| (h, i)).collect()).collect();
    (0..=bound)
        .map(|k| {
            let prod = &hol.products[k];
            link.sset
                .simplices(k)
                .iter()
                .map(|s| {
                    let ((pd, pg), chain) = link.origin(s.gen_dim(), s.gen);
                    // matrix entry (l, j): position of the l-th coordinate at time j
                    let column = |j: usize| &chain[s.op.apply(j)];
                    let assignment: Assignment = prod
                        .sset
                        .levels()
                        .iter()
                        .enumerate()
                        .map(|(e, level)| {
                            (0..level.len())
                                .map(|c| {
                                    let images = prod
                                        .sset
                                        .gen_vertices(e, c)
                                        .iter()
                                        .map(|&v| {
                                            let (a, b) = prod.pair(0, v);
                                            column(b.gen)[a.gen]
                                        })
                                        .collect();
                                    x.space.act_gen(pd, pg, &MonotoneMap::from_images_unchecked(images, pd))
                                })
                                .collect()
                        })
                        .collect();
                    lookup[k][&assignment]
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProbeStatus {
    Fail,
    PassUpToDepth,
}

/// Where a probe failed, what was compared, and the values on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub location: String,
    pub invariant: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeVerdict {
    pub status: ProbeStatus,
    pub witness: Option<Witness>,
    pub depth: usize,
}

impl ProbeVerdict {
    pub fn pass(depth: usize) -> Self {
        ProbeVerdict { status: ProbeStatus::PassUpToDepth, witness: None, depth }
    }

    pub fn fail(depth: usize, witness: Witness) -> Self {
        ProbeVerdict { status: ProbeStatus::Fail, witness: Some(witness), depth }
    }

    pub fn passed(&self) -> bool {
        self.status == ProbeStatus::PassUpToDepth
    }
}

fn union_of(parts: Vec<MappingSpace>, bound: usize) -> (LevelwiseSimplicialSet, Vec<Assignment>) {
    let level0 = parts.iter().flat_map(|m| m.elements[0].iter().cloned()).collect();
    let spaces: Vec<LevelwiseSimplicialSet> = parts.into_iter().map(|m| m.levelwise).collect();
    (LevelwiseSimplicialSet::disjoint_union(&spaces, bound), level0)
}

/// Compares `π_0` and mod-2 Betti numbers `b_0..b_depth` of the extended
/// homotopy links of source and target, flag by flag of the target, for flags
/// of length `<= max_len`. A failure is a genuine obstruction; passing is
/// only evidence.
pub fn diag_equiv_probe(f: &StratMap, depth: usize, max_len: usize, bound: usize) -> Result<ProbeVerdict> {
    if bound < depth + 1 {
        return Err(Error::LevelBound { bound, needed: depth + 1 });
    }
    let (x, y) = (&f.source, &f.target);
    for n in 0..=max_len {
        let source_flags = flags_of_length(&x.poset, n);
        for k in flags_of_length(&y.poset, n) {
            let location = k.display(&y.poset);
            let over: Vec<MappingSpace> = source_flags
                .iter()
                .filter(|j| j.entries().iter().map(|&p| f.poset_map.apply(p)).eq(k.entries().iter().copied()))
                .map(|j| maps_from_flag(x, j, bound))
                .collect();
            let (src, src0) = union_of(over, bound);
            let tgt = maps_from_flag(y, &k, bound);
            let (cs, ct) = (levelwise_pi0(&src)?, levelwise_pi0(&tgt.levelwise)?);
            let index: HashMap<&Assignment, usize> = tgt.elements[0].iter().enumerate().map(|(i, h)| (h, i)).collect();
            let mut induced = vec![None; cs.count];
            let mut hit = vec![false; ct.count];
            let mut injective = true;
            for (v, h) in src0.iter().enumerate() {
                let pushed: Assignment =
                    h.iter().map(|l| l.iter().map(|s| f.space_map.apply(s)).collect()).collect();
                let c = ct.of_vertex[index[&pushed]];
                match induced[cs.of_vertex[v]] {
                    None => {
                        if hit[c] {
                            injective = false;
                        }
                        induced[cs.of_vertex[v]] = Some(c);
                        hit[c] = true;
                    }
                    Some(prev) => debug_assert_eq!(prev, c),
                }
            }
            if !injective || hit.iter().any(|h| !h) {
                return Ok(ProbeVerdict::fail(
                    depth,
                    Witness {
                        location,
                        invariant: "pi0".into(),
                        source: cs.count.to_string(),
                        target: ct.count.to_string(),
                    },
                ));
            }
            let (bs, bt) = (levelwise_betti(&src, depth, 2)?, levelwise_betti(&tgt.levelwise, depth, 2)?);
            if bs != bt {
                let i = (0..=depth).find(|&i| bs[i] != bt[i]).unwrap();
                return Ok(ProbeVerdict::fail(
                    depth,
                    Witness {
                        location,
                        invariant: format!("betti{i}"),
                        source: format!("{bs:?}"),
                        target: format!("{bt:?}"),
                    },
                ));
            }
        }
    }
    Ok(ProbeVerdict::pass(depth))
}

/// Recovers `rP(X)` from `π_0` of the extended links of lengths 0 and 1:
/// elements are components of length-0 links, and a component of the link at
/// `[p <= q]` relates the components of its two endpoints. Returns, per
/// vertex, its element, together with the order as a relation matrix.
pub fn refined_poset_from_links(x: &StratSet) -> Result<(Vec<usize>, Vec<Vec<bool>>)> {
    let zero = ext_hol(x, 0, 1);
    // vertex of X -> global component index
    let mut element_of_vertex = vec![usize::MAX; x.space.count(0)];
    let mut offset = 0;
    for (_, m) in &zero {
        let comps = levelwise_pi0(&m.levelwise)?;
        for (i, h) in m.elements[0].iter().enumerate() {
            let v = h[0][0].gen;
            element_of_vertex[v] = offset + comps.of_vertex[i];
        }
        offset += comps.count;
    }
    let n = offset;
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    for (_, m) in ext_hol(x, 1, 1) {
        let prod = &m.products[0];
        for h in &m.elements[0] {
            let (mut a, mut b) = (usize::MAX, usize::MAX);
            for v in 0..prod.sset.count(0) {
                let (s, _) = prod.pair(0, v);
                let image = h[0][v].gen;
                if s.gen == 0 {
                    a = element_of_vertex[image];
                } else {
                    b = element_of_vertex[image];
                }
            }
            rel[a][b] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    Ok((element_of_vertex, rel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strat::{standard_inclusion, strat_horn, strat_simplex};

    fn pq() -> Poset {
        Poset::chain_of(vec!["p".into(), "q".into()])
    }

    #[test]
    fn hol_examples() {
        let p = pq();
        let pq_flag = Flag::parse(&p, "p,q").unwrap();
        let x = strat_simplex(&p, &pq_flag).unwrap();
        let h = hol(&x, &pq_flag, 2).unwrap();
        assert_eq!(h.levelwise.counts(), &[1, 1, 1]);
        let h = hol(&x, &Flag::parse(&p, "p").unwrap(), 1).unwrap();
        assert_eq!(h.levelwise.count(0), 1);
        let point = strat_simplex(&p, &Flag::parse(&p, "p").unwrap()).unwrap();
        assert!(hol(&point, &pq_flag, 2).unwrap().levelwise.is_empty());
        assert!(hol(&x, &Flag::parse(&p, "p,p").unwrap(), 1).is_err());
    }

    #[test]
    fn link_of_simplices() {
        let p = pq();
        let x = strat_simplex(&p, &Flag::parse(&p, "p,p,q").unwrap()).unwrap();
        let l = link_geo(&x, &Flag::parse(&p, "p,q").unwrap()).unwrap();
        assert!(l.sset.is_isomorphic(&sset::simplex(1)));
        let y = strat_simplex(&p, &Flag::parse(&p, "p,q").unwrap()).unwrap();
        let l = link_geo(&y, &Flag::parse(&p, "q").unwrap()).unwrap();
        assert_eq!(l.sset.counts(), vec![1]);
    }

    #[test]
    fn link_of_horns() {
        let p = pq();
        let j = Flag::parse(&p, "p,q").unwrap();
        let horn = strat_horn(&p, &j, 0).unwrap();
        assert!(link_geo(&horn, &Flag::parse(&p, "q").unwrap()).unwrap().sset.is_empty());

        let j = Flag::parse(&p, "p,p,q").unwrap();
        let i = Flag::parse(&p, "p,q").unwrap();
        let horn = strat_horn(&p, &j, 0).unwrap();
        let full = strat_simplex(&p, &j).unwrap();
        let (lh, lf) = (link_geo(&horn, &i).unwrap(), link_geo(&full, &i).unwrap());
        assert_eq!(lh.sset.counts(), vec![1]);
        let map = link_geo_map(&standard_inclusion(&horn, &full), &lh, &lf).unwrap();
        // only the edge {0,2} of the horn meets both strata
        let v = map.apply_vertex(0);
        assert_eq!(lf.vertex_chain(0, v), vec![vec![0, 2]]);
    }

    #[test]
    fn link_to_hol_on_simplices() {
        let p = pq();
        let i = Flag::parse(&p, "p,q").unwrap();
        for j in ["p,q", "p,p,q", "p,q,q"] {
            let x = strat_simplex(&p, &Flag::parse(&p, j).unwrap()).unwrap();
            let l = link_geo(&x, &i).unwrap();
            let h = hol(&x, &i, 2).unwrap();
            let m = link_to_hol(&l, &x, &h);
            for (k, level) in m.iter().enumerate() {
                let mut seen = level.clone();
                seen.sort();
                seen.dedup();
                assert_eq!(seen.len(), h.levelwise.count(k), "{j} level {k}");
                assert_eq!(level.len(), h.levelwise.count(k));
            }
        }
    }

    #[test]
    fn probe_examples() {
        let p = pq();
        let j = Flag::parse(&p, "p,q").unwrap();
        let full = strat_simplex(&p, &j).unwrap();
        let horn = strat_horn(&p, &j, 0).unwrap();
        let v = diag_equiv_probe(&StratMap::identity(&full), 1, 1, 2).unwrap();
        assert!(v.passed());
        let v = diag_equiv_probe(&standard_inclusion(&horn, &full), 1, 1, 2).unwrap();
        assert!(!v.passed());
        let w = v.witness.unwrap();
        assert_eq!((w.location.as_str(), w.invariant.as_str()), ("q", "pi0"));

        let j = Flag::parse(&p, "p,p,q").unwrap();
        let full = strat_simplex(&p, &j).unwrap();
        let horn = strat_horn(&p, &j, 0).unwrap();
        assert!(diag_equiv_probe(&standard_inclusion(&horn, &full), 2, 2, 3).unwrap().passed());
        assert!(matches!(diag_equiv_probe(&StratMap::identity(&full), 2, 1, 2), Err(Error::LevelBound { .. })));
    }

    #[test]
    fn refined_poset_from_link_components() {
        let p = pq();
        let x = strat_simplex(&p, &Flag::parse(&p, "p,p,q").unwrap()).unwrap();
        let (elements, rel) = refined_poset_from_links(&x).unwrap();
        assert_eq!(elements, vec![0, 0, 1]);
        assert!(rel[0][1] && !rel[1][0]);
    }
}
