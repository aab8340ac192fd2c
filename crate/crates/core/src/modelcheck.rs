//! Cofibration tests, lifting probes, cartesian-closure constructions and the
//! layered probe for the model structures on stratified simplicial sets.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::links::{ProbeVerdict, Witness};
use crate::poset::{exponential_poset, flags_of_length, monotone_maps, poset_pushout, posetify, Flag, Poset, PosetMap};
use crate::refine::refined_poset;
use crate::sset::{Assignment, MapSearch, Nerve, SimplexRef, SimplicialMap, SimplicialSet};
use crate::strat::{
    classify_horn, lstr, restricted_exponential, standard_inclusion, strat_boundary, strat_horn, strat_maps_over,
    strat_product, strat_pushout, strat_simplex, trivial, StratLevelwise, StratMap, StratSet,
};

pub use crate::strat::strat_mapping_space as strat_exponential;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModelStructure {
    D,
    C,
    DR,
    CR,
}

impl FromStr for ModelStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D" => Ok(ModelStructure::D),
            "C" => Ok(ModelStructure::C),
            "DR" => Ok(ModelStructure::DR),
            "CR" => Ok(ModelStructure::CR),
            _ => Err(Error::invalid(format!("unknown model structure {s}; expected D, C, DR or CR"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofibrationReport {
    pub structure: ModelStructure,
    pub cofibration: bool,
    pub reason: Option<String>,
}

/// The map `rP(A) -> rP(B)` induced by `f`.
fn refined_map(f: &StratMap) -> Result<PosetMap> {
    let (ra, rb) = (refined_poset(&f.source)?, refined_poset(&f.target)?);
    let mut assignment = vec![0; ra.poset.len()];
    for v in 0..f.source.space.count(0) {
        assignment[ra.component_of[v]] = rb.component_of[f.space_map.apply_vertex(v)];
    }
    PosetMap::new(ra.poset, rb.poset, assignment)
}

/// Cofibrations of D and C are the monomorphisms; in DR and CR the square of
/// refined posets must moreover be a pushout.
pub fn is_cofibration(f: &StratMap, structure: ModelStructure) -> Result<CofibrationReport> {
    let report = |cofibration, reason| CofibrationReport { structure, cofibration, reason };
    if let Some(w) = f.space_map.non_injective_witness() {
        return Ok(report(false, Some(w)));
    }
    if matches!(structure, ModelStructure::D | ModelStructure::C) {
        return Ok(report(true, None));
    }
    let ra = refined_poset(&f.source)?;
    let rb = refined_poset(&f.target)?;
    let top = refined_map(f)?;
    let left = PosetMap::new(ra.poset.clone(), f.source.poset.clone(), ra.stratum_of.clone())?;
    let (q, into_q_from_rb, into_q_from_pa) = poset_pushout(&top, &left);
    let mut induced = vec![usize::MAX; q.len()];
    let mut consistent = true;
    let mut assign = |slot: usize, value: usize| {
        if induced[slot] != usize::MAX && induced[slot] != value {
            consistent = false;
        }
        induced[slot] = value;
    };
    for (c, &s) in into_q_from_rb.assignment.iter().enumerate() {
        assign(s, rb.stratum_of[c]);
    }
    for (a, &s) in into_q_from_pa.assignment.iter().enumerate() {
        assign(s, f.poset_map.apply(a));
    }
    if !consistent || induced.contains(&usize::MAX) {
        return Err(Error::internal("refinement square does not commute"));
    }
    let gap = PosetMap::new(q.clone(), f.target.poset.clone(), induced)?;
    if gap.is_isomorphism() {
        Ok(report(true, None))
    } else {
        Ok(report(
            false,
            Some(format!(
                "pushout of refined posets has {} elements, the target poset {}",
                q.len(),
                f.target.poset.len()
            )),
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSet {
    CofDGlobal,
    AcofDGlobal,
    InnerHorns,
    BoundariesRefined,
}

impl FromStr for GeneratorSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cof_D_global" => Ok(GeneratorSet::CofDGlobal),
            "acof_D_global" => Ok(GeneratorSet::AcofDGlobal),
            "inner_horns" => Ok(GeneratorSet::InnerHorns),
            "boundaries_refined" => Ok(GeneratorSet::BoundariesRefined),
            _ => Err(Error::invalid(format!("unknown generator set {s}"))),
        }
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorSet::CofDGlobal => "cof_D_global",
            GeneratorSet::AcofDGlobal => "acof_D_global",
            GeneratorSet::InnerHorns => "inner_horns",
            GeneratorSet::BoundariesRefined => "boundaries_refined",
        })
    }
}

/// A generating morphism with a readable name.
#[derive(Clone, Debug)]
pub struct NamedMap {
    pub name: String,
    pub map: StratMap,
}

fn flag_name(poset: &Poset, flag: &Flag) -> String {
    flag.entries().iter().map(|&e| poset.id(e)).join(",")
}

/// Horns `Λ^J_k -> Δ^J` over `[m]` with `J` onto `[m]`, `len(J) <= dim`.
fn horns(dim: usize, keep: impl Fn(&Flag, usize) -> bool) -> Vec<NamedMap> {
    let mut out = Vec::new();
    for n in 1..=dim {
        for m in 0..=n {
            let poset = Poset::chain(m);
            for flag in flags_of_length(&poset, n) {
                if flag.support().entries().len() != m + 1 {
                    continue;
                }
                for k in 0..=n {
                    if !keep(&flag, k) {
                        continue;
                    }
                    let horn = strat_horn(&poset, &flag, k).expect("valid horn");
                    let full = strat_simplex(&poset, &flag).expect("valid flag");
                    out.push(NamedMap {
                        name: format!("horn[{}]_{k}", flag_name(&poset, &flag)),
                        map: standard_inclusion(&horn, &full),
                    });
                }
            }
        }
    }
    out
}

/// Members of a generating set up to dimension `dim`.
pub fn generators(set: GeneratorSet, dim: usize) -> Vec<NamedMap> {
    match set {
        GeneratorSet::CofDGlobal => {
            let mut out: Vec<NamedMap> = (0..=dim)
                .map(|n| {
                    let poset = Poset::chain(n);
                    let flag = Flag::new(&poset, (0..=n).collect()).expect("identity flag");
                    NamedMap {
                        name: format!("boundary[{n}]"),
                        map: standard_inclusion(&strat_boundary(&poset, &flag).unwrap(), &strat_simplex(&poset, &flag).unwrap()),
                    }
                })
                .collect();
            let empty = StratSet::empty(Poset::empty());
            let point = StratSet::empty(Poset::chain(0));
            out.push(NamedMap {
                name: "empty->empty[0]".into(),
                map: StratMap::from_parts(&empty, &point, vec![], vec![]),
            });
            let two = StratSet::empty(Poset::discrete(vec!["0".into(), "1".into()]));
            let edge = StratSet::empty(Poset::chain(1));
            out.push(NamedMap {
                name: "empty[0+0]->empty[1]".into(),
                map: StratMap::from_parts(&two, &edge, vec![], vec![0, 1]),
            });
            out
        }
        GeneratorSet::AcofDGlobal => horns(dim, |j, k| classify_horn(j, k).is_ok_and(|c| c.admissible)),
        GeneratorSet::InnerHorns => horns(dim, |j, k| classify_horn(j, k).is_ok_and(|c| c.inner)),
        GeneratorSet::BoundariesRefined => {
            let mut out: Vec<NamedMap> = (0..=dim)
                .map(|n| NamedMap {
                    name: format!("lstr boundary[{n}]"),
                    map: lstr_inclusion(&crate::sset::boundary(n), &crate::sset::simplex(n)),
                })
                .collect();
            let source = lstr(&crate::sset::boundary(1));
            let target = trivial(&crate::sset::simplex(1));
            let assignment = vec![vec![SimplexRef::vertex(0), SimplexRef::vertex(1)]];
            out.push(NamedMap {
                name: "lstr boundary[1]->trivial simplex[1]".into(),
                map: StratMap::from_parts(&source, &target, assignment, vec![0; source.poset.len()]),
            });
            out
        }
    }
}

/// `lstr` of the inclusion of a subcomplex matched by generator names.
fn lstr_inclusion(sub: &SimplicialSet, full: &SimplicialSet) -> StratMap {
    let (a, b) = (lstr(sub), lstr(full));
    let space = standard_inclusion(&trivial(sub), &trivial(full)).space_map;
    let mut phi = vec![0; a.poset.len()];
    for v in 0..a.space.count(0) {
        phi[a.labels[v]] = b.labels[space.apply_vertex(v)];
    }
    StratMap::from_parts(&a, &b, space.assignment, phi)
}

fn describe_assignment(space: &SimplicialSet, target: &SimplicialSet, assignment: &Assignment) -> String {
    assignment
        .iter()
        .enumerate()
        .flat_map(|(d, level)| {
            level
                .iter()
                .enumerate()
                .map(move |(g, s)| format!("{}->{}", space.generator(d, g).name, target.describe(s)))
        })
        .join(" ")
}

/// A lifting problem of `i` against `f` without a diagonal filler, if any.
fn unsolvable_square(i: &NamedMap, f: &StratMap) -> Option<Witness> {
    let i_map = &i.map;
    let (a, b) = (&i_map.source, &i_map.target);
    let (x, y) = (&f.source, &f.target);
    for alpha in monotone_maps(&a.poset, &x.poset) {
        let tops = strat_maps_over(a, x, &alpha);
        if tops.is_empty() {
            continue;
        }
        let betas: Vec<Vec<usize>> = monotone_maps(&b.poset, &y.poset)
            .into_iter()
            .filter(|beta| (0..a.poset.len()).all(|p| beta[i_map.poset_map.apply(p)] == f.poset_map.apply(alpha[p])))
            .collect();
        let psis: Vec<Vec<usize>> = monotone_maps(&b.poset, &x.poset)
            .into_iter()
            .filter(|psi| (0..a.poset.len()).all(|p| psi[i_map.poset_map.apply(p)] == alpha[p]))
            .collect();
        for top in &tops {
            // images of A's generators inside B, and where they must go
            let fixed: Vec<(usize, usize, SimplexRef)> = top
                .iter()
                .enumerate()
                .flat_map(|(d, level)| {
                    level.iter().enumerate().map(move |(g, s)| {
                        let image = i_map.space_map.apply(&SimplexRef::gen(d, g));
                        debug_assert!(!image.is_degenerate());
                        (d, image.gen, s.clone())
                    })
                })
                .collect();
            for beta in &betas {
                let mut bottoms = MapSearch::new(&b.space, &y.space)
                    .constraint(|d, g, c| d > 0 || y.labels[c.gen] == beta[b.labels[g]]);
                for (d, g, s) in &fixed {
                    bottoms = bottoms.fix(*d, *g, f.space_map.apply(s));
                }
                let mut witness = None;
                bottoms.for_each(|bottom| {
                    let solvable = psis.iter().filter(|psi| (0..psi.len()).all(|p| f.poset_map.apply(psi[p]) == beta[p])).any(
                        |psi| {
                            let mut lift = MapSearch::new(&b.space, &x.space).constraint(|d, g, c| {
                                (d > 0 || x.labels[c.gen] == psi[b.labels[g]]) && f.space_map.apply(c) == bottom[d][g]
                            });
                            for (d, g, s) in &fixed {
                                lift = lift.fix(*d, *g, s.clone());
                            }
                            lift.first().is_some()
                        },
                    );
                    if !solvable {
                        witness = Some(Witness {
                            location: i.name.clone(),
                            invariant: "lift".into(),
                            source: describe_assignment(&a.space, &x.space, top),
                            target: describe_assignment(&b.space, &y.space, bottom),
                        });
                    }
                    solvable
                });
                if witness.is_some() {
                    return witness;
                }
            }
        }
    }
    None
}

/// Searches every lifting problem of the generators of dimension `<= dim_max`
/// against `f` for a diagonal filler.
pub fn rlp_probe(f: &StratMap, set: &[GeneratorSet], dim_max: usize) -> ProbeVerdict {
    for s in set {
        for g in generators(*s, dim_max) {
            if let Some(w) = unsolvable_square(&g, f) {
                return ProbeVerdict::fail(dim_max, w);
            }
        }
    }
    ProbeVerdict::pass(dim_max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HornClassChoice {
    Admissible,
    AdmissibleAndInner,
}

impl FromStr for HornClassChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "admissible" => Ok(HornClassChoice::Admissible),
            "admissible_and_inner" => Ok(HornClassChoice::AdmissibleAndInner),
            _ => Err(Error::invalid(format!("unknown horn class {s}"))),
        }
    }
}

/// The map `X -> N(P_X)` given by the labels.
pub fn to_terminal(x: &StratSet) -> StratMap {
    let target = crate::strat::nerve_strat(&x.poset);
    let nerve = Nerve::new(&x.poset);
    let assignment = x
        .space
        .levels()
        .iter()
        .enumerate()
        .map(|(d, level)| {
            (0..level.len())
                .map(|g| {
                    let tuple: Vec<usize> = x.space.gen_vertices(d, g).iter().map(|&v| x.labels[v]).collect();
                    nerve.simplex(&tuple)
                })
                .collect()
        })
        .collect();
    StratMap::from_parts(x, &target, assignment, (0..x.poset.len()).collect())
}

pub fn fibrancy_probe(x: &StratSet, dim_max: usize, class: HornClassChoice) -> ProbeVerdict {
    let sets: &[GeneratorSet] = match class {
        HornClassChoice::Admissible => &[GeneratorSet::AcofDGlobal],
        HornClassChoice::AdmissibleAndInner => &[GeneratorSet::AcofDGlobal, GeneratorSet::InnerHorns],
    };
    rlp_probe(&to_terminal(x), sets, dim_max)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicFibrationReport {
    pub refined_iso: bool,
    pub boundary_rlp: ProbeVerdict,
    pub holds: bool,
}

/// Refined acyclic fibrations: an isomorphism on refined posets together with
/// the lifting property against the refined boundary generators.
pub fn acyclic_fibration_check(f: &StratMap, dim_max: usize) -> Result<AcyclicFibrationReport> {
    let refined_iso = refined_map(f)?.is_isomorphism();
    let boundary_rlp = rlp_probe(f, &[GeneratorSet::BoundariesRefined], dim_max);
    let holds = refined_iso && boundary_rlp.passed();
    Ok(AcyclicFibrationReport { refined_iso, boundary_rlp, holds })
}

/// `Path(X, A) = X^{Δ^{[1]}} ×_{ev_0} A` to level `bound`, for a subcomplex
/// `A` of `uX` given by a keep-mask on generators. Returns, per level, the
/// chain in `P^{[1]}` and the map `Δ^1 × Δ^k -> uX` of every element.
#[allow(clippy::type_complexity)]
pub fn path_space(
    x: &StratSet,
    keep: &[Vec<bool>],
    bound: usize,
) -> Result<(StratLevelwise, Vec<Vec<(Vec<usize>, Assignment)>>)> {
    let levels = x.space.levels();
    if keep.len() != levels.len() || keep.iter().zip(levels).any(|(k, l)| k.len() != l.len()) {
        return Err(Error::invalid("subcomplex mask does not match the generators"));
    }
    for (d, level) in levels.iter().enumerate() {
        for (g, gen) in level.iter().enumerate() {
            if keep[d][g] {
                if let Some(f) = gen.faces.iter().find(|f| !keep[f.gen_dim()][f.gen]) {
                    return Err(Error::invalid(format!(
                        "not a subcomplex: {} is kept but its face {} is not",
                        gen.name,
                        x.space.describe(f)
                    )));
                }
            }
        }
    }
    let interval = crate::strat::nerve_strat(&Poset::chain(1));
    Ok(restricted_exponential(x, &interval, bound, &|prod, (d, g), c| {
        let first = &prod.pair(d, g).0;
        first.gen_dim() != 0 || first.gen != 0 || keep[c.gen_dim()][c.gen]
    }))
}

/// The poset of pairs `p <= q`, as it appears in path spaces.
pub fn arrow_poset(p: &Poset) -> Poset {
    exponential_poset(p, &Poset::chain(1)).0
}

/// `f × g: A × A' -> B × B'`.
pub fn product_map(f: &StratMap, g: &StratMap) -> StratMap {
    let (source, ps) = strat_product(&f.source, &g.source);
    let (target, pt) = strat_product(&f.target, &g.target);
    let space = ps.map_into(&pt, &f.space_map, &g.space_map);
    let m = g.target.poset.len();
    let phi = (0..source.poset.len())
        .map(|e| {
            let (a, b) = (e / g.source.poset.len(), e % g.source.poset.len());
            f.poset_map.apply(a) * m + g.poset_map.apply(b)
        })
        .collect();
    StratMap::from_parts(&source, &target, space.assignment, phi)
}

/// The map out of a pushout determined by two maps agreeing on the common source.
fn induced_from_pushout(pushout: &StratSet, left: &StratMap, right: &StratMap, hl: &StratMap, hr: &StratMap) -> StratMap {
    let target = &hl.target;
    let mut assignment: Assignment =
        pushout.space.levels().iter().map(|l| vec![SimplexRef::vertex(0); l.len()]).collect();
    let mut phi = vec![0; pushout.poset.len()];
    for (leg, h) in [(left, hl), (right, hr)] {
        for (d, level) in leg.space_map.assignment.iter().enumerate() {
            for (g, s) in level.iter().enumerate() {
                if !s.is_degenerate() {
                    assignment[d][s.gen] = h.space_map.apply(&SimplexRef::gen(d, g));
                }
            }
        }
        for (a, &q) in leg.poset_map.assignment.iter().enumerate() {
            phi[q] = h.poset_map.apply(a);
        }
    }
    StratMap::from_parts(pushout, target, assignment, phi)
}

/// The pushout-product `A × B' ∪_{A × A'} B × A' -> B × B'` of two cofibrations.
pub fn pushout_product(i: &StratMap, j: &StratMap) -> Result<StratMap> {
    for (name, m) in [("first", i), ("second", j)] {
        if let Some(w) = m.space_map.non_injective_witness() {
            return Err(Error::invalid(format!("{name} factor is not a cofibration: {w}")));
        }
    }
    let id = |x: &StratSet| StratMap::identity(x);
    let a_jprime = product_map(&id(&i.source), j); // A × A' -> A × B'
    let i_aprime = product_map(i, &id(&j.source)); // A × A' -> B × A'
    let (glued, left, right) = strat_pushout(&a_jprime, &i_aprime);
    let to_left = product_map(i, &id(&j.target)); // A × B' -> B × B'
    let to_right = product_map(&id(&i.target), j); // B × A' -> B × B'
    let result = induced_from_pushout(&glued, &left, &right, &to_left, &to_right);
    let result = StratMap::new(result.source, result.target, result.space_map, result.poset_map)?;
    if let Some(w) = result.space_map.non_injective_witness() {
        return Err(Error::internal(format!("pushout-product is not a monomorphism: {w}")));
    }
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LayeredVerdict {
    LayeredWitnessed,
    NotWitnessed { edge: String, missing: String },
}

/// Looks for 2-simplices exhibiting a left and a right inverse of every
/// non-degenerate edge between vertices identified by the posetification.
/// Only the witnessed verdict is conclusive.
pub fn layered_probe(x: &SimplicialSet, dim: usize) -> LayeredVerdict {
    let (_, class) = posetify(x);
    let triangles: Vec<[SimplexRef; 3]> = if dim >= 2 {
        (0..x.count(2))
            .map(|g| {
                let s = SimplexRef::gen(2, g);
                [x.face(&s, 0), x.face(&s, 1), x.face(&s, 2)]
            })
            .collect()
    } else {
        vec![]
    };
    for e in 0..x.count(1) {
        let vs = x.gen_vertices(1, e);
        if class[vs[0]] != class[vs[1]] {
            continue;
        }
        let edge = SimplexRef::gen(1, e);
        let id_source = SimplexRef::vertex(vs[0]);
        let id_target = SimplexRef::vertex(vs[1]);
        let is_identity = |s: &SimplexRef, v: &SimplexRef| s.is_degenerate() && x.face(s, 0) == *v;
        // g ∘ e = id: d2 = e, d1 = id; e ∘ h = id: d0 = e, d1 = id
        let left = triangles.iter().any(|t| t[2] == edge && is_identity(&t[1], &id_source));
        let right = triangles.iter().any(|t| t[0] == edge && is_identity(&t[1], &id_target));
        if !left || !right {
            let missing = match (left, right) {
                (false, false) => "left and right inverse",
                (false, true) => "left inverse",
                _ => "right inverse",
            };
            return LayeredVerdict::NotWitnessed { edge: x.generator(1, e).name.clone(), missing: missing.into() };
        }
    }
    LayeredVerdict::LayeredWitnessed
}

/// The stratified map `X -> Y` between spaces with identical generators that
/// is the identity on spaces, over the given poset map.
pub fn relabelling(x: &StratSet, y: &StratSet, phi: Vec<usize>) -> Result<StratMap> {
    StratMap::new(x.clone(), y.clone(), SimplicialMap::identity(&x.space), PosetMap::new(x.poset.clone(), y.poset.clone(), phi)?)
}
