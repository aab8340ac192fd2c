//! Acceptance suite: one line per criterion, each checked against an
//! independent brute-force oracle written here rather than in the library.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use itertools::Itertools;
use stratset::delta::{monotone_maps, MonotoneMap};
use stratset::links::{diag_equiv_probe, hol, link_geo, link_geo_map, link_to_hol, refined_poset_from_links};
use stratset::modelcheck::{
    fibrancy_probe, generators, is_cofibration, path_space, pushout_product, strat_exponential, GeneratorSet,
    HornClassChoice, ModelStructure,
};
use stratset::poset::{exponential_poset, flags_of_length, regular_flags, Flag, Poset};
use stratset::refine::{is_refined, refined_poset, refinement};
use stratset::sset::{
    self, betti_numbers, enumerate_maps, ex_truncated, levelwise_betti, mapping_space, subdivision, Assignment,
    Generator, LevelwiseSimplicialSet, Product, SimplexRef, SimplicialSet,
};
use stratset::strat::{
    classify_horn, lstr, lstr_boundary, lstr_simplex, nerve_strat, standard_inclusion, strat_boundary, strat_horn,
    strat_join, strat_maps, strat_product, strat_simplex, trivial, StratMap, StratSet,
};

type Outcome = Result<String, String>;

fn ok<T>(r: stratset::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn flag(p: &Poset, entries: &[usize]) -> Flag {
    Flag::new(p, entries.to_vec()).expect("weakly increasing")
}

/// Every partial order on `1..=max` labelled elements, by brute force over
/// relation matrices.
fn small_posets(max: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    for n in 1..=max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
        for mask in 0..(1u32 << pairs.len()) {
            let mut leq = vec![false; n * n];
            for i in 0..n {
                leq[i * n + i] = true;
            }
            for (bit, &(a, b)) in pairs.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    leq[a * n + b] = true;
                }
            }
            let antisymmetric = (0..n).all(|a| (0..n).all(|b| a == b || !(leq[a * n + b] && leq[b * n + a])));
            let transitive = (0..n)
                .all(|a| (0..n).all(|b| (0..n).all(|c| !(leq[a * n + b] && leq[b * n + c]) || leq[a * n + c])));
            if antisymmetric && transitive {
                let ids = (0..n).map(|i| format!("p{i}")).collect();
                out.push(Poset::from_matrix(ids, leq).expect("checked partial order"));
            }
        }
    }
    out
}

fn product_of_simplices(dims: &[usize]) -> SimplicialSet {
    dims.iter()
        .fold(None::<SimplicialSet>, |acc, &d| {
            Some(match acc {
                None => sset::simplex(d),
                Some(a) => Product::new(&a, &sset::simplex(d)).sset,
            })
        })
        .unwrap_or_else(|| sset::simplex(0))
}

fn generator_refs(x: &SimplicialSet) -> Vec<(usize, usize)> {
    x.counts().iter().enumerate().flat_map(|(d, &c)| (0..c).map(move |g| (d, g))).collect()
}

// ---------------------------------------------------------------------------
// 1. link of a simplex

fn criterion_1() -> Outcome {
    let mut cases = 0;
    for p in small_posets(3) {
        for len in 0..=3 {
            for j in flags_of_length(&p, len) {
                let x = ok(strat_simplex(&p, &j))?;
                for i in regular_flags(&p, 2) {
                    let link = ok(link_geo(&x, &i))?;
                    let expected = if i.entries().iter().all(|&q| j.contains(q)) {
                        let dims: Vec<usize> = i.entries().iter().map(|&q| j.multiplicity(q) - 1).collect();
                        product_of_simplices(&dims)
                    } else {
                        SimplicialSet::empty()
                    };
                    ensure(link.sset.is_isomorphic(&expected), || {
                        format!("Link_{} of Δ^{} has counts {:?}", i.display(&p), j.display(&p), link.sset.counts())
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (J, I) pairs over all posets with <= 3 elements"))
}

// ---------------------------------------------------------------------------
// 2. links of horns

fn criterion_2() -> Outcome {
    let mut per_case = [0usize; 4];
    let (mut passes, mut fails) = (0, 0);
    for n in 1..=3 {
        for m in 0..=n {
            let p = Poset::chain(m);
            let onto = flags_of_length(&p, n).into_iter().filter(|j| (0..=m).all(|q| j.contains(q)));
            for j in onto {
                let e = j.entries().to_vec();
                let full = ok(strat_simplex(&p, &j))?;
                let positions = |q: usize| -> BTreeSet<usize> { (0..=n).filter(|&t| e[t] == q).collect() };
                for k in 0..=n {
                    let name = format!("Λ^{}_{k}", j.display(&p));
                    let horn = ok(strat_horn(&p, &j, k))?;
                    let inc = standard_inclusion(&horn, &full);
                    let pk = e[k];
                    let support = j.support();
                    // links are taken over a poset with one element outside J,
                    // so that flags leaving the support occur
                    let big = Poset::chain(m + 1);
                    let jb = flag(&big, &e);
                    let (full_b, horn_b) = (ok(strat_simplex(&big, &jb))?, ok(strat_horn(&big, &jb, k))?);
                    let inc_b = standard_inclusion(&horn_b, &full_b);
                    for i in regular_flags(&big, m + 1) {
                        let (lf, lh) = (ok(link_geo(&full_b, &i))?, ok(link_geo(&horn_b, &i))?);
                        let map = ok(link_geo_map(&inc_b, &lh, &lf))?;
                        ensure(map.is_injective(), || format!("{name}: link map at {} is not mono", i.display(&big)))?;
                        let mut image = HashSet::new();
                        for (d, g) in generator_refs(&lh.sset) {
                            let s = map.apply(&SimplexRef::gen(d, g));
                            ensure(!s.is_degenerate(), || format!("{name}: degenerate image"))?;
                            image.insert((d, s.gen));
                        }
                        let case = if !i.entries().iter().all(|&q| j.contains(q)) {
                            1
                        } else if j.multiplicity(pk) == 1
                            && i.entries().iter().copied().eq(support.entries().iter().copied().filter(|&q| q != pk))
                        {
                            2
                        } else if i.entries() != support.entries() {
                            3
                        } else {
                            4
                        };
                        per_case[case - 1] += 1;
                        if case == 1 {
                            ensure(lf.sset.is_empty() && lh.sset.is_empty(), || format!("{name}: case 1 link not empty"))?;
                        }
                        for (d, g) in generator_refs(&lf.sset) {
                            let chain = lf.vertex_chain(d, g);
                            // oracle: a chain of the polytope lies in the horn iff its
                            // vertices together with k miss some vertex of Δ^J
                            let mut union: BTreeSet<usize> = chain.iter().flatten().copied().collect();
                            union.insert(k);
                            let in_horn = union.len() != n + 1;
                            ensure(image.contains(&(d, g)) == in_horn, || {
                                format!("{name}: link at {} disagrees with the horn oracle on {chain:?}", i.display(&big))
                            })?;
                            let coords: Vec<BTreeSet<usize>> =
                                (0..i.entries().len()).map(|l| chain.iter().map(|t| t[l]).collect()).collect();
                            let non_onto = |l: usize| coords[l] != positions(i.entries()[l]);
                            let predicted = match case {
                                2 => (0..coords.len()).any(non_onto),
                                3 => true,
                                _ => (0..coords.len()).any(|l| {
                                    let q = i.entries()[l];
                                    if q == pk {
                                        let mut with_k = coords[l].clone();
                                        with_k.insert(k);
                                        with_k != positions(q)
                                    } else {
                                        non_onto(l)
                                    }
                                }),
                            };
                            ensure(predicted == in_horn, || {
                                format!("{name}: case {case} law fails at {} on {chain:?}", i.display(&big))
                            })?;
                        }
                    }
                    let class = ok(classify_horn(&j, k))?;
                    let verdict = ok(diag_equiv_probe(&inc, 2, 2, 3))?;
                    ensure(verdict.passed() == class.admissible, || {
                        format!("{name}: probe {:?} but admissible = {}", verdict.status, class.admissible)
                    })?;
                    if verdict.passed() {
                        passes += 1;
                    } else {
                        fails += 1;
                    }
                }
            }
        }
    }
    ensure(per_case.iter().all(|&c| c > 0), || format!("some case never occurred: {per_case:?}"))?;
    Ok(format!(
        "cases 1-4 seen {per_case:?} times; probe PASS on {passes} admissible, FAIL on {fails} non-admissible horns"
    ))
}

// ---------------------------------------------------------------------------
// 3. joins

fn subflags(p: &Poset, f: &Flag) -> Vec<Flag> {
    let e = f.entries();
    (1..1usize << e.len())
        .map(|mask| flag(p, &(0..e.len()).filter(|b| mask >> b & 1 == 1).map(|b| e[b]).collect::<Vec<_>>()))
        .collect()
}

fn criterion_3() -> Outcome {
    let p = Poset::chain(3);
    let (mut joins, mut links) = (0, 0);
    for len0 in 0..=2 {
        for len1 in 0..=(2 - len0) {
            for j0 in flags_of_length(&p, len0) {
                for j1 in flags_of_length(&p, len1) {
                    let (i0, i1) = (j0.support(), j1.support());
                    if i0.entries().iter().any(|&a| i1.contains(a)) {
                        continue;
                    }
                    let mut merged: Vec<usize> = j0.entries().iter().chain(j1.entries()).copied().collect();
                    merged.sort();
                    let expected = ok(strat_simplex(&p, &flag(&p, &merged)))?;
                    let (x, y) = (ok(strat_simplex(&p, &j0))?, ok(strat_simplex(&p, &j1))?);
                    let (join, _) = ok(strat_join(&x, &y, &i0, &i1))?;
                    ensure(join.is_isomorphic_over(&expected), || {
                        format!("Δ^{} * Δ^{} is not Δ^{}", j0.display(&p), j1.display(&p), flag(&p, &merged).display(&p))
                    })?;
                    joins += 1;
                    let (bx, by) = (ok(strat_boundary(&p, &j0))?, ok(strat_boundary(&p, &j1))?);
                    for (a, b) in [(&x, &y), (&bx, &y), (&x, &by), (&bx, &by)] {
                        let (ab, _) = ok(strat_join(a, b, &i0, &i1))?;
                        for s0 in subflags(&p, &i0) {
                            for s1 in subflags(&p, &i1) {
                                let mut whole: Vec<usize> = s0.entries().iter().chain(s1.entries()).copied().collect();
                                whole.sort();
                                let lhs = ok(link_geo(&ab, &flag(&p, &whole)))?.sset;
                                let rhs = Product::new(&ok(link_geo(a, &s0))?.sset, &ok(link_geo(b, &s1))?.sset).sset;
                                ensure(lhs.is_isomorphic(&rhs), || {
                                    format!(
                                        "join link at {}+{} for J0 = {}, J1 = {}: {:?} vs {:?}",
                                        s0.display(&p),
                                        s1.display(&p),
                                        j0.display(&p),
                                        j1.display(&p),
                                        lhs.counts(),
                                        rhs.counts()
                                    )
                                })?;
                                links += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{joins} joins of simplices, {links} join-link comparisons"))
}

// ---------------------------------------------------------------------------
// 4. links against homotopy links

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for p in small_posets(3) {
        for len in 0..=2 {
            for j in flags_of_length(&p, len) {
                let x = ok(strat_simplex(&p, &j))?;
                for i in regular_flags(&p, 2) {
                    let link = ok(link_geo(&x, &i))?;
                    let h = ok(hol(&x, &i, 3))?;
                    let comparison = link_to_hol(&link, &x, &h);
                    for (k, images) in comparison.iter().enumerate() {
                        let distinct: HashSet<&usize> = images.iter().collect();
                        ensure(distinct.len() == images.len() && images.len() == h.levelwise.count(k), || {
                            format!(
                                "Link_{} Δ^{} -> Hol at level {k}: {} simplices onto {} distinct of {}",
                                i.display(&p),
                                j.display(&p),
                                images.len(),
                                distinct.len(),
                                h.levelwise.count(k)
                            )
                        })?;
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} comparisons bijective on levels 0..3"))
}

// ---------------------------------------------------------------------------
// 5. refinement

fn gens(levels: Vec<Vec<(&str, Vec<SimplexRef>)>>) -> SimplicialSet {
    SimplicialSet::new(
        levels
            .into_iter()
            .map(|l| l.into_iter().map(|(name, faces)| Generator { name: name.into(), faces }).collect())
            .collect(),
    )
    .expect("valid presentation")
}

/// Two vertices with an edge in each direction.
fn two_cycle() -> SimplicialSet {
    let v = SimplexRef::vertex;
    gens(vec![vec![("a", vec![]), ("b", vec![])], vec![("ab", vec![v(1), v(0)]), ("ba", vec![v(0), v(1)])]])
}

/// Components of non-empty strata and their order generated by edges, by
/// union-find and Floyd-Warshall.
struct RefinedOracle {
    component: Vec<usize>,
    count: usize,
    leq: Vec<Vec<bool>>,
}

fn refined_oracle(x: &StratSet) -> RefinedOracle {
    let nv = x.space.count(0);
    let edges: Vec<(usize, usize)> = (0..x.space.count(1))
        .map(|g| {
            let v = x.space.gen_vertices(1, g);
            (v[0], v[1])
        })
        .collect();
    let mut parent: Vec<usize> = (0..nv).collect();
    fn root(parent: &mut Vec<usize>, a: usize) -> usize {
        if parent[a] == a {
            a
        } else {
            let r = root(parent, parent[a]);
            parent[a] = r;
            r
        }
    }
    for &(a, b) in &edges {
        if x.labels[a] == x.labels[b] {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let roots: Vec<usize> = (0..nv).map(|v| root(&mut parent, v)).collect();
    let distinct: Vec<usize> = roots.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let component: Vec<usize> = roots.iter().map(|r| distinct.binary_search(r).unwrap()).collect();
    let count = distinct.len();
    let mut leq = vec![vec![false; count]; count];
    for (c, row) in leq.iter_mut().enumerate() {
        row[c] = true;
    }
    for &(a, b) in &edges {
        leq[component[a]][component[b]] = true;
    }
    for m in 0..count {
        for a in 0..count {
            for b in 0..count {
                if leq[a][m] && leq[m][b] {
                    leq[a][b] = true;
                }
            }
        }
    }
    RefinedOracle { component, count, leq }
}

impl RefinedOracle {
    fn is_refined(&self, x: &StratSet) -> bool {
        let mut label_of = vec![None; self.count];
        for (v, &c) in self.component.iter().enumerate() {
            label_of[c] = Some(x.labels[v]);
        }
        let labels: Vec<usize> = label_of.into_iter().map(|l| l.unwrap()).collect();
        self.count == x.poset.len()
            && labels.iter().collect::<HashSet<_>>().len() == self.count
            && (0..self.count).all(|a| (0..self.count).all(|b| self.leq[a][b] == x.poset.leq(labels[a], labels[b])))
    }

    /// Whether `elements` induces the same partition of vertices and `order`
    /// the same relation between the classes.
    fn matches(&self, elements: &[usize], order: impl Fn(usize, usize) -> bool) -> bool {
        let n = self.component.len();
        (0..n).all(|u| {
            (0..n).all(|v| {
                (self.component[u] == self.component[v]) == (elements[u] == elements[v])
                    && self.leq[self.component[u]][self.component[v]] == order(elements[u], elements[v])
            })
        })
    }
}

fn corpus() -> Vec<(String, StratSet)> {
    let spaces: Vec<(&str, SimplicialSet)> = vec![
        ("Δ0", sset::simplex(0)),
        ("Δ1", sset::simplex(1)),
        ("Δ2", sset::simplex(2)),
        ("∂Δ2", sset::boundary(2)),
        ("Λ2_0", sset::horn(2, 0).unwrap()),
        ("Λ2_1", sset::horn(2, 1).unwrap()),
        ("circle", sset::circle()),
        ("E", sset::e_complex()),
        ("two-cycle", two_cycle()),
        ("Δ0+Δ0", sset::simplex(0).disjoint_union(&sset::simplex(0))),
        ("Δ1+Δ0", sset::simplex(1).disjoint_union(&sset::simplex(0))),
    ];
    let posets = vec![
        ("[0]", Poset::chain(0)),
        ("[1]", Poset::chain(1)),
        ("[2]", Poset::chain(2)),
        ("a,b", Poset::discrete(vec!["a".into(), "b".into()])),
        ("a,b<c", Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(0, 2), (1, 2)]).unwrap()),
    ];
    let mut out = Vec::new();
    for (sname, space) in &spaces {
        for (pname, poset) in &posets {
            let nv = space.count(0);
            for labels in (0..nv).map(|_| 0..poset.len()).multi_cartesian_product() {
                if let Ok(x) = StratSet::new(space.clone(), poset.clone(), labels.clone()) {
                    out.push((format!("{sname} over {pname} labelled {labels:?}"), x));
                }
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let corpus = corpus();
    let zs: Vec<StratSet> = vec![
        nerve_strat(&Poset::chain(0)),
        nerve_strat(&Poset::chain(1)),
        ok(strat_simplex(&Poset::chain(1), &flag(&Poset::chain(1), &[0, 0, 1])))?,
        lstr_simplex(1),
        lstr_boundary(1),
    ];
    for z in &zs {
        ensure(refined_oracle(z).is_refined(z), || "a test object Z is not refined".into())?;
    }
    let (mut empty, mut inverses, mut disconnected, mut refined) = (0, 0, 0, 0);
    for (name, x) in &corpus {
        let oracle = refined_oracle(x);
        if (0..x.poset.len()).any(|p| !x.labels.contains(&p)) {
            empty += 1;
        }
        if (0..x.space.count(1)).any(|e| {
            let v = x.space.gen_vertices(1, e);
            (0..x.space.count(1)).any(|f| x.space.gen_vertices(1, f) == [v[1], v[0]] && v[0] != v[1])
                && x.labels[v[0]] == x.labels[v[1]]
        }) || (0..x.space.count(1)).any(|e| {
            let v = x.space.gen_vertices(1, e);
            v[0] == v[1]
        }) {
            inverses += 1;
        }
        if (0..x.poset.len()).any(|p| {
            oracle
                .component
                .iter()
                .enumerate()
                .filter(|&(v, _)| x.labels[v] == p)
                .map(|(_, c)| c)
                .collect::<HashSet<_>>()
                .len()
                > 1
        }) {
            disconnected += 1;
        }
        let rp = ok(refined_poset(x))?;
        ensure(oracle.matches(&rp.component_of, |a, b| rp.poset.leq(a, b)), || format!("{name}: rP differs"))?;
        let refined_here = ok(is_refined(x))?;
        ensure(refined_here == oracle.is_refined(x), || format!("{name}: is_refined = {refined_here}"))?;
        if refined_here {
            refined += 1;
        }
        let (red, counit) = ok(refinement(x))?;
        ensure(counit.poset_map.is_isomorphism() == refined_here, || format!("{name}: counit iso mismatch"))?;
        ensure(ok(is_refined(&red))?, || format!("{name}: X^red is not refined"))?;
        let (twice, _) = ok(refinement(&red))?;
        ensure(twice.is_isomorphic_over(&red), || format!("{name}: refinement is not idempotent"))?;
        for (zi, z) in zs.iter().enumerate() {
            let (a, b) = (strat_maps(z, &red).len(), strat_maps(z, x).len());
            ensure(a == b, || format!("{name}: |Maps(Z{zi}, X^red)| = {a} but |Maps(Z{zi}, X)| = {b}"))?;
        }
        let (elements, rel) = ok(refined_poset_from_links(x))?;
        ensure(oracle.matches(&elements, |a, b| rel[a][b]), || format!("{name}: rP from links differs"))?;
    }
    ensure(corpus.len() >= 20, || format!("corpus has only {} members", corpus.len()))?;
    ensure(empty > 0 && inverses > 0 && disconnected > 0, || "corpus misses a pathology".into())?;
    Ok(format!(
        "{} complexes ({refined} refined; {empty} with empty strata, {inverses} with within-stratum inverses, {disconnected} with disconnected strata)",
        corpus.len()
    ))
}

// ---------------------------------------------------------------------------
// 6. cartesian closure

/// `F: Z × X -> Y` with `Z = Δ^J`, curried and restricted along `α: [m] -> [n]`,
/// as an element of level `m` of `Y^X`.
fn curry(
    f: &StratMap,
    j: &[usize],
    alpha: &MonotoneMap,
    x: &StratSet,
    maps: &[Vec<usize>],
    zx: &Product,
) -> (Vec<usize>, Assignment) {
    let (n, m) = (alpha.target_dim(), alpha.source_dim());
    let px = x.poset.len();
    let chain = (0..=m)
        .map(|t| {
            let phi: Vec<usize> = (0..px).map(|a| f.poset_map.apply(j[alpha.apply(t)] * px + a)).collect();
            maps.iter().position(|g| *g == phi).expect("monotone")
        })
        .collect();
    let delta_m = sset::simplex(m);
    let delta_n = sset::simplex(n);
    let prod = Product::new(&x.space, &delta_m);
    let h = prod
        .sset
        .counts()
        .iter()
        .enumerate()
        .map(|(d, &c)| {
            (0..c)
                .map(|g| {
                    let (xs, js) = prod.pair(d, g);
                    let images = delta_m.simplex_vertices(js).iter().map(|&v| alpha.apply(v)).collect();
                    let u = delta_n.act(&SimplexRef::gen(n, 0), &MonotoneMap::new(images, n).unwrap());
                    f.space_map.apply(&zx.simplex(&u, xs))
                })
                .collect()
        })
        .collect();
    (chain, h)
}

fn grid_chains(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    fn extend(n: usize, m: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        for a in 0..=n {
            for b in 0..=m {
                if cur.last().is_none_or(|&(x, y)| x <= a && y <= b && (x, y) != (a, b)) {
                    cur.push((a, b));
                    out.push(cur.clone());
                    extend(n, m, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    extend(n, m, &mut Vec::new(), &mut out);
    out
}

fn criterion_6() -> Outcome {
    let pt = Poset::chain_of(vec!["p".into()]);
    let pq = Poset::chain_of(vec!["p".into(), "q".into()]);
    let family: Vec<(&str, StratSet, Vec<usize>)> = vec![
        ("Δ^[p]", ok(strat_simplex(&pt, &flag(&pt, &[0])))?, vec![0]),
        ("Δ^[p<q]", ok(strat_simplex(&pq, &flag(&pq, &[0, 1])))?, vec![0, 1]),
        ("Δ^[p,p]", ok(strat_simplex(&pt, &flag(&pt, &[0, 0])))?, vec![0, 0]),
    ];
    let mut triples = 0;
    let mut natural = 0;
    for (zn, z, j) in &family {
        let n = j.len() - 1;
        ensure(z.space == sset::simplex(n), || format!("{zn} is not presented as the standard simplex"))?;
        for (xn, x, _) in &family {
            let (zx_strat, zx) = strat_product(z, x);
            for (yn, y, _) in &family {
                let what = format!("Z = {zn}, X = {xn}, Y = {yn}");
                let (exp, elements) = strat_exponential(y, x, n + 1);
                let (_, maps) = exponential_poset(&y.poset, &x.poset);
                let lhs = strat_maps(&zx_strat, y);
                let rhs = elements[n]
                    .iter()
                    .filter(|(chain, _)| (0..=n).all(|a| (0..=n).all(|b| j[a] != j[b] || chain[a] == chain[b])))
                    .count();
                ensure(lhs.len() == rhs, || format!("{what}: |Maps(Z×X, Y)| = {} but |Maps(Z, Y^X)| = {rhs}", lhs.len()))?;
                let mut seen = HashSet::new();
                for f in &lhs {
                    let element = curry(f, j, &MonotoneMap::identity(n), x, &maps, &zx);
                    let idx = elements[n]
                        .iter()
                        .position(|e| *e == element)
                        .ok_or_else(|| format!("{what}: a curried map is not an element of Y^X"))?;
                    ensure(seen.insert(idx), || format!("{what}: currying is not injective"))?;
                    for m in 0..=n + 1 {
                        for alpha in monotone_maps(m, n) {
                            let restricted = curry(f, j, &alpha, x, &maps, &zx);
                            let acted = exp.space.act(n, idx, &alpha);
                            ensure(elements[m][acted] == restricted, || {
                                format!("{what}: currying is not natural along {:?}", alpha.images())
                            })?;
                            natural += 1;
                        }
                    }
                }
                triples += 1;
            }
        }
    }

    let boundaries = generators(GeneratorSet::BoundariesRefined, 3);
    let boundary = |n: usize| {
        boundaries.iter().find(|g| g.name == format!("lstr boundary[{n}]")).map(|g| g.map.clone()).unwrap()
    };
    let mut pushout_products = 0;
    for n in 0..=3 {
        for m in 0..=(3 - n) {
            let pp = ok(pushout_product(&boundary(n), &boundary(m)))?;
            ensure(pp.space_map.is_injective(), || format!("∂Δ{n} □ ∂Δ{m} is not mono"))?;
            let chains = grid_chains(n, m);
            let count = |pred: &dyn Fn(&Vec<(usize, usize)>) -> bool| {
                let mut c = vec![0usize; n + m + 1];
                for ch in chains.iter().filter(|ch| pred(ch)) {
                    c[ch.len() - 1] += 1;
                }
                while c.last() == Some(&0) {
                    c.pop();
                }
                c
            };
            let on_boundary = |ch: &Vec<(usize, usize)>| {
                ch.iter().map(|t| t.0).collect::<HashSet<_>>().len() <= n
                    || ch.iter().map(|t| t.1).collect::<HashSet<_>>().len() <= m
            };
            ensure(pp.source.space.counts() == count(&on_boundary) && pp.target.space.counts() == count(&|_| true), || {
                format!("∂Δ{n} □ ∂Δ{m}: counts {:?} -> {:?}", pp.source.space.counts(), pp.target.space.counts())
            })?;
            pushout_products += 1;
        }
    }

    let c2 = Poset::chain(2);
    let v = Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(0, 2), (1, 2)]).unwrap();
    let edge01 = |x: &StratSet| (0..x.space.count(1)).find(|&g| x.space.gen_vertices(1, g) == [0, 1]).unwrap();
    let pqq = ok(strat_simplex(&pq, &flag(&pq, &[0, 0, 1])))?;
    let examples: Vec<(&str, StratSet, Vec<(usize, usize)>)> = vec![
        ("Δ^[p<q] from vertex 0", family[1].1.clone(), vec![(0, 0)]),
        ("Δ^[p,p,q] from edge [0,1]", pqq.clone(), vec![(1, edge01(&pqq))]),
        ("trivial circle from everything", trivial(&sset::circle()), vec![(1, 0)]),
        ("Λ^[0,1,2]_1 from vertex 1", ok(strat_horn(&c2, &flag(&c2, &[0, 1, 2]), 1))?, vec![(0, 1)]),
        ("lstr ∂Δ2 from nothing", lstr(&sset::boundary(2)), vec![]),
        ("N(a,b<c) from vertex a", nerve_strat(&v), vec![(0, 0)]),
    ];
    for (name, x, seeds) in &examples {
        let mut keep: Vec<Vec<bool>> = x.space.counts().iter().map(|&c| vec![false; c]).collect();
        if !seeds.is_empty() {
            let (sub, inc) = x.space.generated_subcomplex(seeds);
            for (d, g) in generator_refs(&sub) {
                let s = inc.apply(&SimplexRef::gen(d, g));
                keep[d][s.gen] = true;
            }
        }
        let (_, elements) = ok(path_space(x, &keep, 1))?;
        let got: Vec<SimplexRef> = elements[0].iter().map(|(_, h)| h[1][0].clone()).collect();
        let expected: Vec<SimplexRef> =
            x.space.simplices(1).into_iter().filter(|s| keep[0][x.space.vertex_of(s, 0)]).collect();
        let got_set: HashSet<&SimplexRef> = got.iter().collect();
        ensure(got.len() == expected.len() && expected.iter().all(|s| got_set.contains(s)), || {
            format!("{name}: {} paths but {} edges start in A", got.len(), expected.len())
        })?;
    }
    Ok(format!(
        "{triples} adjunction triples ({natural} naturality squares), {pushout_products} pushout-products, {} path spaces",
        examples.len()
    ))
}

// ---------------------------------------------------------------------------
// 7. generators and probes

fn criterion_7() -> Outcome {
    let cof = generators(GeneratorSet::CofDGlobal, 3);
    for g in &cof {
        let r = ok(is_cofibration(&g.map, ModelStructure::D))?;
        ensure(r.cofibration, || format!("{} is not a D-cofibration: {:?}", g.name, r.reason))?;
    }
    let refined = generators(GeneratorSet::BoundariesRefined, 3);
    for g in &refined {
        let r = ok(is_cofibration(&g.map, ModelStructure::DR))?;
        ensure(r.cofibration, || format!("{} is not a DR-cofibration: {:?}", g.name, r.reason))?;
    }
    let names = |ids: &[&str]| ids.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let posets = vec![
        Poset::chain(0),
        Poset::chain(1),
        Poset::chain(2),
        Poset::discrete(names(&["a", "b"])),
        Poset::from_relations(names(&["a", "b", "c"]), &[(0, 2), (1, 2)]).unwrap(),
        Poset::from_relations(names(&["a", "b", "c"]), &[(0, 1), (0, 2)]).unwrap(),
    ];
    let mut probes = 0;
    for p in &posets {
        for class in [HornClassChoice::Admissible, HornClassChoice::AdmissibleAndInner] {
            let v = fibrancy_probe(&nerve_strat(p), 3, class);
            ensure(v.passed(), || format!("N({:?}) fails the {class:?} probe: {:?}", p.ids(), v.witness))?;
            probes += 1;
        }
    }
    let v = fibrancy_probe(&trivial(&sset::circle()), 3, HornClassChoice::Admissible);
    let witness = v.witness.clone().filter(|w| !v.passed() && !w.source.is_empty() && !w.target.is_empty());
    let witness = witness.ok_or_else(|| "the trivially stratified circle passes the admissible probe".to_string())?;
    Ok(format!(
        "{} D and {} DR generators are cofibrations, {probes} nerve probes pass, circle fails at {}",
        cof.len(),
        refined.len(),
        witness.location
    ))
}

// ---------------------------------------------------------------------------
// 8. simplicial substrate

/// Checks every simplicial identity on levels `0..=top` straight from the
/// face and degeneracy operators.
fn identities(x: &SimplicialSet, top: usize) -> Result<usize, String> {
    let mut checked = 0;
    for n in 0..=top {
        for s in x.simplices(n) {
            let d = |t: &SimplexRef, i| x.face(t, i);
            let sg = |t: &SimplexRef, i| x.degeneracy(t, i);
            let mut check = |lhs: SimplexRef, rhs: SimplexRef, what: &str| {
                checked += 1;
                ensure(lhs == rhs, || format!("{what} fails on {s:?}"))
            };
            for j in 0..=n {
                for i in 0..j {
                    if n >= 2 {
                        check(d(&d(&s, j), i), d(&d(&s, i), j - 1), "d_i d_j = d_{j-1} d_i")?;
                    }
                }
                for i in 0..=j {
                    check(sg(&sg(&s, j), i), sg(&sg(&s, i), j + 1), "s_i s_j = s_{j+1} s_i")?;
                }
                for i in 0..=n + 1 {
                    let lhs = d(&sg(&s, j), i);
                    let rhs = if i < j {
                        sg(&d(&s, i), j - 1)
                    } else if i == j || i == j + 1 {
                        s.clone()
                    } else {
                        sg(&d(&s, i - 1), j)
                    };
                    check(lhs, rhs, "d_i s_j")?;
                }
            }
        }
    }
    Ok(checked)
}

fn criterion_8() -> Outcome {
    let delta1 = sset::simplex(1);
    let finite: Vec<(&str, SimplicialSet)> = vec![
        ("Δ3", sset::simplex(3)),
        ("∂Δ3", sset::boundary(3)),
        ("Λ3_1", sset::horn(3, 1).unwrap()),
        ("circle", sset::circle()),
        ("E", sset::e_complex()),
        ("sd Δ2", subdivision(&sset::simplex(2)).sset),
        ("Δ1×Δ2", Product::new(&delta1, &sset::simplex(2)).sset),
        ("two-cycle", two_cycle()),
    ];
    let mut checked = 0;
    for (name, x) in &finite {
        let top = x.dim().unwrap_or(0) + 1;
        checked += identities(x, top).map_err(|e| format!("{name}: {e}"))?;
        ok(LevelwiseSimplicialSet::from_finite(x, top).check_identities())?;
    }
    ok(ex_truncated(&sset::circle(), 2).levelwise.check_identities())?;
    ok(mapping_space(&delta1, &sset::boundary(2), 2).levelwise.check_identities())?;
    let pq = Poset::chain(1);
    let x = ok(strat_simplex(&pq, &flag(&pq, &[0, 1])))?;
    ok(strat_exponential(&x, &x, 2).0.space.check_identities())?;

    let sources: Vec<(&str, SimplicialSet)> = vec![
        ("Δ0", sset::simplex(0)),
        ("Δ1", sset::simplex(1)),
        ("∂Δ1", sset::boundary(1)),
        ("Δ2", sset::simplex(2)),
    ];
    let targets: Vec<(&str, SimplicialSet)> =
        vec![("Δ0", sset::simplex(0)), ("Δ1", sset::simplex(1)), ("circle", sset::circle())];
    for (tn, t) in &targets {
        let ex = ex_truncated(t, 2);
        for (sn, s) in &sources {
            let left = enumerate_maps(&subdivision(s).sset, t).len();
            let right = match *sn {
                "∂Δ1" => ex.levelwise.count(0).pow(2),
                _ => ex.levelwise.count(s.dim().unwrap()),
            };
            ensure(left == right, || format!("|Hom(sd {sn}, {tn})| = {left} but |Hom({sn}, Ex {tn})| = {right}"))?;
        }
    }
    let ex1 = ex_truncated(&delta1, 1).levelwise.count(1);
    ensure(ex1 == 5, || format!("Ex(Δ1) has {ex1} 1-simplices"))?;

    let binomial = |a: usize, b: usize| (0..b).fold(1usize, |acc, i| acc * (a - i) / (i + 1));
    for m in 0..=3 {
        for n in 0..=3 {
            let prod = Product::new(&sset::simplex(m), &sset::simplex(n)).sset;
            let top = prod.count(m + n);
            ensure(top == binomial(m + n, n), || format!("Δ{m}×Δ{n} has {top} top simplices"))?;
            let mut by_dim = vec![0usize; m + n + 1];
            for ch in grid_chains(m, n) {
                by_dim[ch.len() - 1] += 1;
            }
            ensure(prod.counts() == by_dim, || format!("Δ{m}×Δ{n} counts {:?} vs chains {by_dim:?}", prod.counts()))?;
        }
    }

    let betti: Vec<(&str, SimplicialSet, usize, Vec<usize>)> = vec![
        ("Δ0", sset::simplex(0), 2, vec![1, 0, 0]),
        ("Δ1", sset::simplex(1), 2, vec![1, 0, 0]),
        ("Δ2", sset::simplex(2), 2, vec![1, 0, 0]),
        ("Δ3", sset::simplex(3), 2, vec![1, 0, 0]),
        ("∂Δ2", sset::boundary(2), 1, vec![1, 1]),
        ("circle", sset::circle(), 1, vec![1, 1]),
        ("∂Δ3", sset::boundary(3), 2, vec![1, 0, 1]),
        ("E", sset::e_complex(), 2, vec![1, 1, 0]),
    ];
    for (name, x, d, expected) in &betti {
        let b = ok(betti_numbers(x, *d, 2))?;
        ensure(&b == expected, || format!("Betti numbers of {name}: {b:?}"))?;
    }
    for (name, x) in [("Δ1", sset::simplex(1)), ("∂Δ2", sset::boundary(2)), ("circle", sset::circle())] {
        let ex = ex_truncated(&x, 2);
        let (a, b) = (ok(levelwise_betti(&ex.levelwise, 1, 2))?, ok(betti_numbers(&x, 1, 2))?);
        ensure(a == b, || format!("Betti numbers of Ex {name}: {a:?} vs {b:?}"))?;
    }
    Ok(format!("{checked} identity instances, sd ⊣ Ex on 12 pairs, shuffles for m,n <= 3, {} Betti values", betti.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("link of a simplex is a product of simplices", criterion_1),
        ("horn links follow the case law and the probe matches admissibility", criterion_2),
        ("joins of simplices and links of joins", criterion_3),
        ("links of simplices agree with homotopy links", criterion_4),
        ("refinement", criterion_5),
        ("cartesian closure", criterion_6),
        ("generators and probes", criterion_7),
        ("simplicial substrate", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(summary) => println!("criterion {} PASS  {name}: {summary} [{:.2?}]", i + 1, start.elapsed()),
            Err(why) => {
                failures += 1;
                println!("criterion {} FAIL  {name}: {why} [{:.2?}]", i + 1, start.elapsed());
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
