//! JSON documents of posets, simplicial sets, stratified sets and maps, their
//! canonical serialization, and the batch command runner.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::links::{diag_equiv_probe, ext_hol, hol, link_geo, link_geo_map};
use crate::modelcheck::{
    acyclic_fibration_check, fibrancy_probe, is_cofibration, layered_probe, path_space, pushout_product, rlp_probe,
    strat_exponential, to_terminal, GeneratorSet,
};
use crate::poset::{posetify, unique_names, Flag, Poset, PosetMap};
use crate::refine::{is_refined, refined_poset, refinement};
use crate::sset::{self, betti_numbers, ex_truncated, pi0, subdivision, Generator, SimplexRef, SimplicialMap, SimplicialSet};
use crate::strat::{
    classify_horn, lstr, nerve_strat, spine, standard_inclusion, strat_boundary, strat_horn, strat_join,
    strat_product, strat_pushout, strat_simplex, trivial, StratMap, StratSet,
};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default)]
    pub posets: BTreeMap<String, PosetSpec>,
    #[serde(default)]
    pub ssets: BTreeMap<String, SsetSpec>,
    #[serde(default)]
    pub strats: BTreeMap<String, StratSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SsetSpec {
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub faces: Vec<SimplexSpec>,
}

/// `op^*(gen)`, with `op` the image list of a surjection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexSpec {
    pub op: Vec<usize>,
    pub gen: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratSpec {
    pub sset: String,
    pub poset: String,
    pub labels: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Sset,
    Strat,
    Poset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub kind: MapKind,
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub simplices: BTreeMap<String, SimplexSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub enum LoadedMap {
    Sset(SimplicialMap),
    Strat(StratMap),
    Poset(PosetMap),
}

/// A validated document: every object built, every reference resolved.
#[derive(Clone, Debug)]
pub struct Library {
    pub posets: BTreeMap<String, Poset>,
    pub ssets: BTreeMap<String, SimplicialSet>,
    pub strats: BTreeMap<String, StratSet>,
    pub maps: BTreeMap<String, LoadedMap>,
    canonical: Document,
}

fn in_object(kind: &str, name: &str, e: Error) -> Error {
    Error::invalid(format!("{kind} '{name}': {e}"))
}

fn build_poset(spec: &PosetSpec) -> Result<Poset> {
    let index: HashMap<&str, usize> = spec.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    let find = |id: &str| {
        index.get(id).copied().ok_or_else(|| Error::Unresolved { kind: "poset element", name: id.to_string() })
    };
    let relations = spec.leq.iter().map(|(a, b)| Ok((find(a)?, find(b)?))).collect::<Result<Vec<_>>>()?;
    Poset::from_relations(spec.elements.clone(), &relations)
}

fn build_sset(spec: &SsetSpec) -> Result<SimplicialSet> {
    let top = spec.generators.iter().map(|g| g.dim + 1).max().unwrap_or(0);
    let mut index: HashMap<&str, (usize, usize)> = HashMap::new();
    let mut counts = vec![0; top];
    for g in &spec.generators {
        if index.insert(g.id.as_str(), (g.dim, counts[g.dim])).is_some() {
            return Err(Error::invalid(format!("duplicate generator id '{}'", g.id)));
        }
        counts[g.dim] += 1;
    }
    let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); top];
    for g in &spec.generators {
        let expected = if g.dim == 0 { 0 } else { g.dim + 1 };
        if g.faces.len() != expected {
            return Err(Error::invalid(format!(
                "generator '{}' of dimension {} has {} faces, expected {expected}",
                g.id,
                g.dim,
                g.faces.len()
            )));
        }
        let faces = g
            .faces
            .iter()
            .map(|f| resolve_simplex(&index, f, g.dim - 1).map_err(|e| Error::invalid(format!("generator '{}': {e}", g.id))))
            .collect::<Result<Vec<_>>>()?;
        gens[g.dim].push(Generator { name: g.id.clone(), faces });
    }
    SimplicialSet::new(gens)
}

fn resolve_simplex(index: &HashMap<&str, (usize, usize)>, f: &SimplexSpec, dim: usize) -> Result<SimplexRef> {
    let &(gd, g) = index
        .get(f.gen.as_str())
        .ok_or_else(|| Error::Unresolved { kind: "generator", name: f.gen.clone() })?;
    if f.op.len() != dim + 1 {
        return Err(Error::DimensionMismatch { expected: dim + 1, found: f.op.len() });
    }
    let op = MonotoneMap::new(f.op.clone(), gd)?;
    if !op.is_surjective() {
        return Err(Error::invalid(format!("operator {:?} onto [{gd}] is not surjective", f.op)));
    }
    Ok(SimplexRef { op, gen: g })
}

fn generator_index(x: &SimplicialSet) -> HashMap<&str, (usize, usize)> {
    x.levels()
        .iter()
        .enumerate()
        .flat_map(|(d, l)| l.iter().enumerate().map(move |(g, gen)| (gen.name.as_str(), (d, g))))
        .collect()
}

fn build_labels(x: &SimplicialSet, p: &Poset, labels: &BTreeMap<String, String>) -> Result<Vec<usize>> {
    let mut out = vec![None; x.count(0)];
    for (v, e) in labels {
        let i = x
            .generators(0)
            .iter()
            .position(|g| &g.name == v)
            .ok_or_else(|| Error::Unresolved { kind: "vertex", name: v.clone() })?;
        out[i] = Some(p.index_of(e).ok_or_else(|| Error::Unresolved { kind: "poset element", name: e.clone() })?);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| Error::invalid(format!("vertex '{}' has no label", x.generator(0, i).name))))
        .collect()
}

fn build_space_map(source: &SimplicialSet, target: &SimplicialSet, spec: &MapSpec) -> Result<SimplicialMap> {
    let index = generator_index(target);
    let mut assignment: Vec<Vec<Option<SimplexRef>>> = source.levels().iter().map(|l| vec![None; l.len()]).collect();
    for (name, image) in &spec.simplices {
        let (d, g) = source.find_generator(name).ok_or_else(|| Error::Unresolved { kind: "generator", name: name.clone() })?;
        assignment[d][g] = Some(resolve_simplex(&index, image, d)?);
    }
    let assignment = assignment
        .into_iter()
        .enumerate()
        .map(|(d, l)| {
            l.into_iter()
                .enumerate()
                .map(|(g, s)| s.ok_or_else(|| Error::invalid(format!("generator '{}' has no image", source.generator(d, g).name))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(source.clone(), target.clone(), assignment)
}

fn build_poset_map(source: &Poset, target: &Poset, elements: &BTreeMap<String, String>) -> Result<PosetMap> {
    let mut assignment = vec![None; source.len()];
    for (a, b) in elements {
        let i = source.index_of(a).ok_or_else(|| Error::Unresolved { kind: "poset element", name: a.clone() })?;
        assignment[i] = Some(target.index_of(b).ok_or_else(|| Error::Unresolved { kind: "poset element", name: b.clone() })?);
    }
    let assignment = assignment
        .into_iter()
        .enumerate()
        .map(|(i, e)| e.ok_or_else(|| Error::invalid(format!("element '{}' has no image", source.id(i)))))
        .collect::<Result<Vec<_>>>()?;
    PosetMap::new(source.clone(), target.clone(), assignment)
}

fn lookup<'a, T>(table: &'a BTreeMap<String, T>, kind: &'static str, name: &str) -> Result<&'a T> {
    table.get(name).ok_or_else(|| Error::Unresolved { kind, name: name.to_string() })
}

/// Parses and fully validates a document.
pub fn parse_document(text: &str) -> Result<Library> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Library::load(doc)
}

impl Library {
    pub fn load(doc: Document) -> Result<Self> {
        let mut posets = BTreeMap::new();
        for (name, spec) in &doc.posets {
            posets.insert(name.clone(), build_poset(spec).map_err(|e| in_object("poset", name, e))?);
        }
        let mut ssets = BTreeMap::new();
        for (name, spec) in &doc.ssets {
            ssets.insert(name.clone(), build_sset(spec).map_err(|e| in_object("sset", name, e))?);
        }
        let mut strats = BTreeMap::new();
        for (name, spec) in &doc.strats {
            let build = || -> Result<StratSet> {
                let x = lookup(&ssets, "sset", &spec.sset)?;
                let p = lookup(&posets, "poset", &spec.poset)?;
                StratSet::new(x.clone(), p.clone(), build_labels(x, p, &spec.labels)?)
            };
            strats.insert(name.clone(), build().map_err(|e| in_object("strat", name, e))?);
        }
        let mut maps = BTreeMap::new();
        for (name, spec) in &doc.maps {
            let build = || -> Result<LoadedMap> {
                Ok(match spec.kind {
                    MapKind::Sset => LoadedMap::Sset(build_space_map(
                        lookup(&ssets, "sset", &spec.source)?,
                        lookup(&ssets, "sset", &spec.target)?,
                        spec,
                    )?),
                    MapKind::Poset => LoadedMap::Poset(build_poset_map(
                        lookup(&posets, "poset", &spec.source)?,
                        lookup(&posets, "poset", &spec.target)?,
                        &spec.elements,
                    )?),
                    MapKind::Strat => {
                        let (x, y) = (lookup(&strats, "strat", &spec.source)?, lookup(&strats, "strat", &spec.target)?);
                        let space = build_space_map(&x.space, &y.space, spec)?;
                        let phi = build_poset_map(&x.poset, &y.poset, &spec.elements)?;
                        LoadedMap::Strat(StratMap::new(x.clone(), y.clone(), space, phi)?)
                    }
                })
            };
            maps.insert(name.clone(), build().map_err(|e| in_object("map", name, e))?);
        }
        let canonical = canonical_document(&doc, &posets, &ssets);
        Ok(Library { posets, ssets, strats, maps, canonical })
    }

    pub fn document(&self) -> &Document {
        &self.canonical
    }

    /// Canonical JSON text; a fixed point of parse followed by serialize.
    pub fn serialize(&self) -> String {
        to_text(&self.canonical)
    }
}

pub fn to_text(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn canonical_document(
    doc: &Document,
    posets: &BTreeMap<String, Poset>,
    ssets: &BTreeMap<String, SimplicialSet>,
) -> Document {
    Document {
        posets: posets.iter().map(|(n, p)| (n.clone(), poset_spec(p))).collect(),
        ssets: ssets.iter().map(|(n, x)| (n.clone(), sset_spec(x))).collect(),
        strats: doc.strats.clone(),
        maps: doc.maps.clone(),
    }
}

/// Elements in order; the strict relations, sorted by id.
pub fn poset_spec(p: &Poset) -> PosetSpec {
    let leq = p.strict_pairs().map(|(a, b)| (p.id(a).to_string(), p.id(b).to_string())).sorted().collect();
    PosetSpec { elements: p.ids().to_vec(), leq }
}

fn names_of(x: &SimplicialSet) -> Vec<Vec<String>> {
    let flat: Vec<String> = x.levels().iter().flatten().map(|g| g.name.clone()).collect();
    let mut unique = unique_names(&flat).into_iter();
    x.levels().iter().map(|l| unique.by_ref().take(l.len()).collect()).collect()
}

fn simplex_spec(names: &[Vec<String>], s: &SimplexRef) -> SimplexSpec {
    SimplexSpec { op: s.op.images().to_vec(), gen: names[s.gen_dim()][s.gen].clone() }
}

/// Generators by dimension; repeated names get primes appended.
pub fn sset_spec(x: &SimplicialSet) -> SsetSpec {
    let names = names_of(x);
    let generators = x
        .levels()
        .iter()
        .enumerate()
        .flat_map(|(d, l)| {
            let names = &names;
            l.iter().enumerate().map(move |(g, gen)| GeneratorSpec {
                id: names[d][g].clone(),
                dim: d,
                faces: gen.faces.iter().map(|f| simplex_spec(names, f)).collect(),
            })
        })
        .collect();
    SsetSpec { generators }
}

/// A document holding a single stratified set as `name`, with its space and
/// poset stored as `name.sset` and `name.poset`.
pub fn strat_document(name: &str, x: &StratSet) -> Document {
    let names = names_of(&x.space);
    let labels = (0..x.space.count(0)).map(|v| (names[0][v].clone(), x.poset.id(x.labels[v]).to_string())).collect();
    let mut doc = Document::default();
    doc.posets.insert(format!("{name}.poset"), poset_spec(&x.poset));
    doc.ssets.insert(format!("{name}.sset"), sset_spec(&x.space));
    doc.strats.insert(
        name.to_string(),
        StratSpec { sset: format!("{name}.sset"), poset: format!("{name}.poset"), labels },
    );
    doc
}

/// A document holding a stratified map with its source and target.
pub fn strat_map_document(name: &str, f: &StratMap) -> Document {
    let mut doc = strat_document(&format!("{name}.source"), &f.source);
    let target = strat_document(&format!("{name}.target"), &f.target);
    doc.posets.extend(target.posets);
    doc.ssets.extend(target.ssets);
    doc.strats.extend(target.strats);
    let (sn, tn) = (names_of(&f.source.space), names_of(&f.target.space));
    let simplices = f
        .space_map
        .assignment
        .iter()
        .enumerate()
        .flat_map(|(d, l)| {
            let (sn, tn) = (&sn, &tn);
            l.iter().enumerate().map(move |(g, s)| (sn[d][g].clone(), simplex_spec(tn, s)))
        })
        .collect();
    let elements = (0..f.source.poset.len())
        .map(|a| (f.source.poset.id(a).to_string(), f.target.poset.id(f.poset_map.apply(a)).to_string()))
        .collect();
    doc.maps.insert(
        name.to_string(),
        MapSpec {
            kind: MapKind::Strat,
            source: format!("{name}.source"),
            target: format!("{name}.target"),
            simplices,
            elements,
        },
    );
    doc
}

/// One invocation of the batch interface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Posetify { sset: String },
    Refine { strat: String },
    IsRefined { strat: String },
    RefinedPoset { strat: String },
    Link { of: String, flag: String },
    Hol { of: String, flag: String, levels: usize },
    ExtHol { of: String, n: usize, levels: usize },
    Join { left: String, right: String, i0: String, i1: String },
    Product { left: String, right: String },
    Pushout { f: String, g: String },
    Sd { sset: String },
    Ex { sset: String, levels: usize },
    Exp { target: String, source: String, levels: usize },
    Pathspace { strat: String, subcomplex: Vec<String>, levels: usize },
    Spine { flag: String },
    ClassifyHorn { flag: String, k: usize },
    ProbeFibrant { strat: String, dim: usize, class: String },
    ProbeRlp { map: String, generators: Vec<String>, dim: usize },
    ProbeDiagEquiv { map: String, depth: usize, flaglen: usize, levels: usize },
    CheckCofibration { map: String, structure: String },
    CheckAcyclicFibration { map: String, dim: usize },
    PushoutProduct { left: String, right: String },
    ProbeLayered { sset: String, dim: usize },
    Homology { sset: String, max_degree: usize, char: u64 },
    Pi0 { sset: String },
}

/// Resolves object references: names from the document, or inline
/// descriptions of standard objects.
pub struct Resolver<'a> {
    lib: &'a Library,
    /// Poset for inline flags; defaults to the chain of the flag's ids.
    poset: Option<String>,
}

fn parse_num(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::invalid(format!("expected a number, found '{s}'")))
}

impl<'a> Resolver<'a> {
    pub fn new(lib: &'a Library, poset: Option<String>) -> Self {
        Resolver { lib, poset }
    }

    /// The named poset, or the chain on the distinct ids of `flag` in order.
    pub fn poset_for(&self, flag: &str) -> Result<Poset> {
        match &self.poset {
            Some(name) => Ok(lookup(&self.lib.posets, "poset", name)?.clone()),
            None => {
                let ids: Vec<String> = flag.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).unique().collect();
                Ok(Poset::chain_of(ids))
            }
        }
    }

    /// `name`, `simplex:n`, `boundary:n`, `horn:n:k`, `circle`, `E`, `nerve:P`.
    pub fn sset(&self, spec: &str) -> Result<SimplicialSet> {
        if let Some(x) = self.lib.ssets.get(spec) {
            return Ok(x.clone());
        }
        if let Some(x) = self.lib.strats.get(spec) {
            return Ok(x.space.clone());
        }
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            ["simplex", n] => Ok(sset::simplex(parse_num(n)?)),
            ["boundary", n] => Ok(sset::boundary(parse_num(n)?)),
            ["horn", n, k] => sset::horn(parse_num(n)?, parse_num(k)?),
            ["circle"] => Ok(sset::circle()),
            ["E"] => Ok(sset::e_complex()),
            ["nerve", p] => Ok(sset::Nerve::new(lookup(&self.lib.posets, "poset", p)?).sset),
            _ => Err(Error::Unresolved { kind: "simplicial set", name: spec.to_string() }),
        }
    }

    /// `name`, `simplex:J`, `boundary:J`, `horn:J:k`, `nerve:P`, `lstr:<sset>`, `trivial:<sset>`.
    pub fn strat(&self, spec: &str) -> Result<StratSet> {
        if let Some(x) = self.lib.strats.get(spec) {
            return Ok(x.clone());
        }
        if let Some(rest) = spec.strip_prefix("lstr:") {
            return Ok(lstr(&self.sset(rest)?));
        }
        if let Some(rest) = spec.strip_prefix("trivial:") {
            return Ok(trivial(&self.sset(rest)?));
        }
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            ["simplex", j] => strat_simplex(&self.poset_for(j)?, &self.flag(j)?),
            ["boundary", j] => strat_boundary(&self.poset_for(j)?, &self.flag(j)?),
            ["horn", j, k] => strat_horn(&self.poset_for(j)?, &self.flag(j)?, parse_num(k)?),
            ["nerve", p] => Ok(nerve_strat(lookup(&self.lib.posets, "poset", p)?)),
            _ => Err(Error::Unresolved { kind: "stratified set", name: spec.to_string() }),
        }
    }

    pub fn flag(&self, text: &str) -> Result<Flag> {
        Flag::parse(&self.poset_for(text)?, text)
    }

    /// `name`, `identity:<strat>`, `terminal:<strat>`, `counit:<strat>`, `inclusion:<strat>-><strat>`.
    pub fn strat_map(&self, spec: &str) -> Result<StratMap> {
        if let Some(m) = self.lib.maps.get(spec) {
            return match m {
                LoadedMap::Strat(f) => Ok(f.clone()),
                _ => Err(Error::invalid(format!("map '{spec}' is not a stratified map"))),
            };
        }
        if let Some(rest) = spec.strip_prefix("identity:") {
            return Ok(StratMap::identity(&self.strat(rest)?));
        }
        if let Some(rest) = spec.strip_prefix("terminal:") {
            return Ok(to_terminal(&self.strat(rest)?));
        }
        if let Some(rest) = spec.strip_prefix("counit:") {
            return Ok(refinement(&self.strat(rest)?)?.1);
        }
        if let Some(rest) = spec.strip_prefix("inclusion:") {
            if let Some((a, b)) = rest.split_once("->") {
                let (a, b) = (self.strat(a)?, self.strat(b)?);
                let f = standard_inclusion(&a, &b);
                return StratMap::new(f.source, f.target, f.space_map, f.poset_map);
            }
        }
        Err(Error::Unresolved { kind: "stratified map", name: spec.to_string() })
    }
}

fn strat_value(name: &str, x: &StratSet) -> Value {
    serde_json::to_value(strat_document(name, x)).expect("documents serialize")
}

fn names_value(x: &SimplicialSet) -> Vec<String> {
    names_of(x).into_iter().flatten().collect()
}

/// Runs a command and returns the JSON report: the command echo, its
/// parameters and the result.
pub fn run_command(command: &Command, lib: &Library, poset: Option<String>) -> Result<Value> {
    let r = Resolver::new(lib, poset.clone());
    let result = match command {
        Command::Posetify { sset } => {
            let x = r.sset(sset)?;
            let (p, classes) = posetify(&x);
            let names = names_of(&x);
            let classes: BTreeMap<String, String> =
                (0..x.count(0)).map(|v| (names[0][v].clone(), p.id(classes[v]).to_string())).collect();
            json!({ "poset": poset_spec(&p), "classes": classes })
        }
        Command::Refine { strat } => {
            let (red, _) = refinement(&r.strat(strat)?)?;
            strat_value("refined", &red)
        }
        Command::IsRefined { strat } => json!({ "refined": is_refined(&r.strat(strat)?)? }),
        Command::RefinedPoset { strat } => {
            let x = r.strat(strat)?;
            let rp = refined_poset(&x)?;
            let names = names_of(&x.space);
            let components: BTreeMap<String, String> = (0..x.space.count(0))
                .map(|v| (names[0][v].clone(), rp.poset.id(rp.component_of[v]).to_string()))
                .collect();
            let strata: BTreeMap<String, String> = (0..rp.poset.len())
                .map(|c| (rp.poset.id(c).to_string(), x.poset.id(rp.stratum_of[c]).to_string()))
                .collect();
            json!({ "poset": poset_spec(&rp.poset), "components": components, "strata": strata })
        }
        Command::Link { of, flag } => {
            let x = r.strat(of)?;
            let i = Flag::parse(&x.poset, flag)?;
            let link = link_geo(&x, &i)?;
            let mut out = json!({
                "flag": i.display(&x.poset),
                "counts": link.sset.counts(),
                "link": sset_spec(&link.sset),
            });
            // inline horns and boundaries are compared with the ambient simplex
            let parts: Vec<&str> = of.split(':').collect();
            if matches!(parts.first(), Some(&"horn") | Some(&"boundary")) && !lib.strats.contains_key(of.as_str()) {
                let full = r.strat(&format!("simplex:{}", parts[1]))?;
                let ambient = link_geo(&full, &i)?;
                let map = link_geo_map(&standard_inclusion(&x, &full), &link, &ambient)?;
                out["ambient"] = json!({
                    "counts": ambient.sset.counts(),
                    "link": sset_spec(&ambient.sset),
                    "inclusion_injective": map.is_injective(),
                    "inclusion_isomorphism": map.is_isomorphism(),
                });
            }
            out
        }
        Command::Hol { of, flag, levels } => {
            let x = r.strat(of)?;
            let i = Flag::parse(&x.poset, flag)?;
            let h = hol(&x, &i, *levels)?;
            let betti = if *levels >= 1 { crate::sset::levelwise_betti(&h.levelwise, levels - 1, 2).ok() } else { None };
            json!({
                "flag": i.display(&x.poset),
                "counts": h.levelwise.counts(),
                "pi0": crate::sset::levelwise_pi0(&h.levelwise).ok().map(|c| c.count),
                "betti": betti,
            })
        }
        Command::ExtHol { of, n, levels } => {
            let x = r.strat(of)?;
            let flags: Vec<Value> = ext_hol(&x, *n, *levels)
                .into_iter()
                .map(|(f, m)| json!({ "flag": f.display(&x.poset), "counts": m.levelwise.counts() }))
                .collect();
            json!({ "n": n, "flags": flags })
        }
        Command::Join { left, right, i0, i1 } => {
            let (x, y) = (r.strat(left)?, r.strat(right)?);
            let (j0, j1) = (Flag::parse(&x.poset, i0)?, Flag::parse(&x.poset, i1)?);
            let (join, _) = strat_join(&x, &y, &j0, &j1)?;
            strat_value("join", &join)
        }
        Command::Product { left, right } => strat_value("product", &strat_product(&r.strat(left)?, &r.strat(right)?).0),
        Command::Pushout { f, g } => {
            let (f, g) = (r.strat_map(f)?, r.strat_map(g)?);
            if f.source.space != g.source.space || f.source.poset != g.source.poset {
                return Err(Error::invalid("pushout legs have different sources"));
            }
            strat_value("pushout", &strat_pushout(&f, &g).0)
        }
        Command::Sd { sset } => json!({ "sset": sset_spec(&subdivision(&r.sset(sset)?).sset) }),
        Command::Ex { sset, levels } => {
            let ex = ex_truncated(&r.sset(sset)?, *levels);
            json!({ "counts": ex.levelwise.counts() })
        }
        Command::Exp { target, source, levels } => {
            let (e, _) = strat_exponential(&r.strat(target)?, &r.strat(source)?, *levels);
            let labels: Vec<&str> = e.labels.iter().map(|&l| e.poset.id(l)).collect();
            json!({ "poset": poset_spec(&e.poset), "counts": e.space.counts(), "labels": labels })
        }
        Command::Pathspace { strat, subcomplex, levels } => {
            let x = r.strat(strat)?;
            let seeds = subcomplex
                .iter()
                .map(|n| x.space.find_generator(n).ok_or_else(|| Error::Unresolved { kind: "generator", name: n.clone() }))
                .collect::<Result<Vec<_>>>()?;
            let (_, inc) = x.space.generated_subcomplex(&seeds);
            let mut keep: Vec<Vec<bool>> = x.space.levels().iter().map(|l| vec![false; l.len()]).collect();
            for (d, l) in inc.assignment.iter().enumerate() {
                for s in l {
                    keep[d][s.gen] = true;
                }
            }
            let (ps, elements) = path_space(&x, &keep, *levels)?;
            let vertices: Vec<Value> = elements[0]
                .iter()
                .enumerate()
                .map(|(i, (_, h))| {
                    // Δ^1 × Δ^0 has a single edge
                    let edge = sset::apply_assignment(&x.space, h, &SimplexRef::gen(1, 0));
                    json!({ "path": x.space.describe(&edge), "label": ps.poset.id(ps.labels[i]) })
                })
                .collect();
            json!({ "poset": poset_spec(&ps.poset), "counts": ps.space.counts(), "vertices": vertices })
        }
        Command::Spine { flag } => {
            let (s, _) = spine(&r.poset_for(flag)?, &r.flag(flag)?)?;
            strat_value("spine", &s)
        }
        Command::ClassifyHorn { flag, k } => serde_json::to_value(classify_horn(&r.flag(flag)?, *k)?).expect("serializes"),
        Command::ProbeFibrant { strat, dim, class } => {
            serde_json::to_value(fibrancy_probe(&r.strat(strat)?, *dim, class.parse()?)).expect("serializes")
        }
        Command::ProbeRlp { map, generators, dim } => {
            let sets = generators.iter().map(|g| g.parse()).collect::<Result<Vec<GeneratorSet>>>()?;
            serde_json::to_value(rlp_probe(&r.strat_map(map)?, &sets, *dim)).expect("serializes")
        }
        Command::ProbeDiagEquiv { map, depth, flaglen, levels } => {
            serde_json::to_value(diag_equiv_probe(&r.strat_map(map)?, *depth, *flaglen, *levels)?).expect("serializes")
        }
        Command::CheckCofibration { map, structure } => {
            serde_json::to_value(is_cofibration(&r.strat_map(map)?, structure.parse()?)?).expect("serializes")
        }
        Command::CheckAcyclicFibration { map, dim } => {
            serde_json::to_value(acyclic_fibration_check(&r.strat_map(map)?, *dim)?).expect("serializes")
        }
        Command::PushoutProduct { left, right } => {
            let f = pushout_product(&r.strat_map(left)?, &r.strat_map(right)?)?;
            json!({
                "injective": f.space_map.is_injective(),
                "source_counts": f.source.space.counts(),
                "target_counts": f.target.space.counts(),
                "map": strat_map_document("pushout_product", &f),
            })
        }
        Command::ProbeLayered { sset, dim } => serde_json::to_value(layered_probe(&r.sset(sset)?, *dim)).expect("serializes"),
        Command::Homology { sset, max_degree, char } => json!({ "betti": betti_numbers(&r.sset(sset)?, *max_degree, *char)? }),
        Command::Pi0 { sset } => {
            let x = r.sset(sset)?;
            let c = pi0(&x);
            let names = names_value(&x);
            let of_vertex: BTreeMap<&str, usize> = (0..x.count(0)).map(|v| (names[v].as_str(), c.of_vertex[v])).collect();
            json!({ "components": c.count, "of_vertex": of_vertex })
        }
    };
    let mut params = serde_json::to_value(command).expect("commands serialize");
    let name = params.as_object_mut().and_then(|o| o.remove("command")).unwrap_or(Value::Null);
    if let Some(p) = poset {
        params["poset"] = json!(p);
    }
    Ok(json!({ "command": name, "parameters": params, "result": result }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EDGE: &str = r#"{
  "posets": { "P": { "elements": ["p", "q"], "leq": [["p", "q"]] } },
  "ssets": {
    "I": { "generators": [
      { "id": "a", "dim": 0 },
      { "id": "b", "dim": 0 },
      { "id": "e", "dim": 1, "faces": [ { "op": [0], "gen": "b" }, { "op": [0], "gen": "a" } ] }
    ] }
  },
  "strats": { "X": { "sset": "I", "poset": "P", "labels": { "a": "p", "b": "q" } } }
}"#;

    #[test]
    fn round_trip_is_a_fixed_point() {
        let lib = parse_document(EDGE).unwrap();
        let text = lib.serialize();
        let again = parse_document(&text).unwrap();
        assert_eq!(again.serialize(), text);
        assert_eq!(lib.strats["X"].labels, vec![0, 1]);
    }

    #[test]
    fn errors_are_located() {
        match parse_document("{\n  \"posets\": [\n") {
            Err(Error::Syntax { line, .. }) => assert!(line >= 2),
            other => panic!("{other:?}"),
        }
        let bad = EDGE.replace(r#""a": "p", "b": "q""#, r#""a": "q", "b": "p""#);
        let msg = parse_document(&bad).unwrap_err().to_string();
        assert!(msg.contains("strat 'X'") && msg.contains("edge e"), "{msg}");
        let dangling = EDGE.replace(r#""sset": "I""#, r#""sset": "J""#);
        let msg = parse_document(&dangling).unwrap_err().to_string();
        assert!(msg.contains("unresolved reference to sset 'J'"), "{msg}");
    }

    #[test]
    fn commands_report() {
        let lib = parse_document(EDGE).unwrap();
        let out = run_command(&Command::ClassifyHorn { flag: "p,p,q".into(), k: 0 }, &lib, None).unwrap();
        assert_eq!(out["result"], json!({ "admissible": true, "inner": false }));
        assert_eq!(out["command"], json!("classify-horn"));
        let out = run_command(&Command::IsRefined { strat: "simplex:p,p".into() }, &lib, Some("P".into())).unwrap();
        assert_eq!(out["result"]["refined"], json!(false));
        let out = run_command(&Command::Link { of: "horn:p,q:0".into(), flag: "p,q".into() }, &lib, None).unwrap();
        assert_eq!(out["result"]["counts"], json!([]));
        assert_eq!(out["result"]["ambient"]["counts"], json!([1]));
        let out = run_command(&Command::Homology { sset: "circle".into(), max_degree: 1, char: 2 }, &lib, None).unwrap();
        assert_eq!(out["result"]["betti"], json!([1, 1]));
    }
}
