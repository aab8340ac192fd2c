//! Finite posets stored as dense order matrices, monotone maps between them, and flags.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A finite partially ordered set.
///
/// Elements are addressed by index; each carries a unique string id. The full
/// reflexive-transitive relation is stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    ids: Vec<String>,
    leq: Vec<bool>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .strict_pairs()
            .map(|(a, b)| format!("{}<{}", self.ids[a], self.ids[b]))
            .collect();
        write!(f, "Poset{{{:?}; {}}}", self.ids, rels.join(", "))
    }
}

impl Poset {
    /// Builds a poset from generating relations `a <= b`, taking the
    /// reflexive-transitive closure. Cycles are rejected.
    pub fn from_relations(ids: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = ids.len();
        let mut seen = HashMap::new();
        for (i, id) in ids.iter().enumerate() {
            if seen.insert(id.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate poset element id '{id}'")));
            }
        }
        let mut leq = closure(n, relations)?;
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::NotAntisymmetric(ids[a].clone(), ids[b].clone()));
                }
            }
        }
        Ok(Poset { ids, leq })
    }

    /// Builds a poset from a full relation matrix, validating all axioms.
    pub fn from_matrix(ids: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = ids.len();
        if leq.len() != n * n {
            return Err(Error::invalid("order matrix has the wrong size"));
        }
        for a in 0..n {
            if !leq[a * n + a] {
                return Err(Error::invalid(format!("relation not reflexive at '{}'", ids[a])));
            }
            for b in 0..n {
                if a != b && leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::NotAntisymmetric(ids[a].clone(), ids[b].clone()));
                }
                for c in 0..n {
                    if leq[a * n + b] && leq[b * n + c] && !leq[a * n + c] {
                        return Err(Error::invalid(format!(
                            "relation not transitive at '{}' <= '{}' <= '{}'",
                            ids[a], ids[b], ids[c]
                        )));
                    }
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for id in &ids {
            if !seen.insert(id) {
                return Err(Error::invalid(format!("duplicate poset element id '{id}'")));
            }
        }
        Ok(Poset { ids, leq })
    }

    pub fn empty() -> Self {
        Poset { ids: vec![], leq: vec![] }
    }

    /// The chain `[n] = {0 < 1 < ... < n}` with ids `"0".."n"`.
    pub fn chain(n: usize) -> Self {
        Self::chain_of((0..=n).map(|i| i.to_string()).collect())
    }

    /// A chain on the given ids, in order.
    pub fn chain_of(ids: Vec<String>) -> Self {
        let n = ids.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in a..n {
                leq[a * n + b] = true;
            }
        }
        Poset::from_matrix(ids, leq).expect("chain is a poset")
    }

    pub fn discrete(ids: Vec<String>) -> Self {
        Poset::from_relations(ids, &[]).expect("discrete poset")
    }

    pub fn point() -> Self {
        Self::chain(0)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Pairs `a < b`, row-major in element order.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| self.lt(a, b)).map(move |b| (a, b)))
    }

    /// Cartesian product with the product order; element `(a, b)` sits at `a * other.len() + b`.
    pub fn product(&self, other: &Poset) -> Poset {
        let (n, m) = (self.len(), other.len());
        let ids = (0..n)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.ids[a], other.ids[b]))
            .collect();
        let size = n * m;
        let mut leq = vec![false; size * size];
        for x in 0..size {
            for y in 0..size {
                leq[x * size + y] = self.leq(x / m, y / m) && other.leq(x % m, y % m);
            }
        }
        Poset { ids, leq }
    }

    /// The subposet on the given elements (in the given order).
    pub fn subposet(&self, elements: &[usize]) -> Poset {
        let k = elements.len();
        let ids = elements.iter().map(|&e| self.ids[e].clone()).collect();
        let mut leq = vec![false; k * k];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                leq[i * k + j] = self.leq(a, b);
            }
        }
        Poset { ids, leq }
    }

    /// Whether `self` and `other` are identical as labelled posets.
    pub fn same_as(&self, other: &Poset) -> bool {
        self == other
    }
}

/// Transitive closure of a relation given as pairs, as a dense matrix.
fn closure(n: usize, relations: &[(usize, usize)]) -> Result<Vec<bool>> {
    let mut m = vec![false; n * n];
    for &(a, b) in relations {
        if a >= n || b >= n {
            return Err(Error::invalid(format!("relation ({a},{b}) out of range")));
        }
        m[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i * n + k] {
                for j in 0..n {
                    if m[k * n + j] {
                        m[i * n + j] = true;
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Result of collapsing a preorder to a poset.
#[derive(Clone, Debug)]
pub struct Condensation {
    pub poset: Poset,
    /// For every input node, the element it lands in.
    pub assignment: Vec<usize>,
}

/// Condenses the preorder generated by `arcs` on `names.len()` nodes: nodes that
/// reach each other are identified. Element ids are the lexicographically least
/// member name; elements are ordered by their least member node.
pub fn condense(names: &[String], arcs: &[(usize, usize)]) -> Condensation {
    let n = names.len();
    let mut reach = closure(n, arcs).expect("arcs in range");
    for i in 0..n {
        reach[i * n + i] = true;
    }
    let mut assignment = vec![usize::MAX; n];
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if assignment[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        let members: Vec<usize> =
            (i..n).filter(|&j| reach[i * n + j] && reach[j * n + i]).collect();
        for &j in &members {
            assignment[j] = c;
        }
        reps.push(members);
    }
    let k = reps.len();
    let ids: Vec<String> = reps
        .iter()
        .map(|members| members.iter().map(|&j| names[j].clone()).min().unwrap())
        .collect();
    let mut leq = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            leq[a * k + b] = reach[reps[a][0] * n + reps[b][0]];
        }
    }
    Condensation { poset: Poset { ids, leq }, assignment }
}

/// The poset reflection of a simplicial set: vertices ordered by directed
/// reachability along non-degenerate edges, cycles collapsed. Returns the
/// poset and the element of each vertex.
pub fn posetify(x: &crate::sset::SimplicialSet) -> (Poset, Vec<usize>) {
    let names: Vec<String> = x.generators(0).iter().map(|g| g.name.clone()).collect();
    let arcs: Vec<(usize, usize)> = (0..x.count(1))
        .map(|e| {
            let vs = x.gen_vertices(1, e);
            (vs[0], vs[1])
        })
        .collect();
    let c = condense(&unique_names(&names), &arcs);
    (c.poset, c.assignment)
}

/// Makes names unique by appending primes to later duplicates.
pub(crate) fn unique_names(names: &[String]) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    names
        .iter()
        .map(|n| {
            let mut m = n.clone();
            while !seen.insert(m.clone()) {
                m.push('\'');
            }
            m
        })
        .collect()
}

/// Pushout of posets `B <- A -> C`: generated by both orders and the
/// identifications `f(a) = g(a)`, with cycles collapsed.
pub fn poset_pushout(f: &PosetMap, g: &PosetMap) -> (Poset, PosetMap, PosetMap) {
    let (b, c) = (&f.target, &g.target);
    let nb = b.len();
    let names: Vec<String> = b.ids().iter().chain(c.ids()).cloned().collect();
    let mut arcs: Vec<(usize, usize)> = b.strict_pairs().collect();
    arcs.extend(c.strict_pairs().map(|(x, y)| (x + nb, y + nb)));
    for a in 0..f.source.len() {
        let (x, y) = (f.apply(a), g.apply(a) + nb);
        arcs.push((x, y));
        arcs.push((y, x));
    }
    let cond = condense(&unique_names(&names), &arcs);
    let ids = unique_names(cond.poset.ids());
    let poset = Poset { ids, leq: cond.poset.leq.clone() };
    let left = PosetMap { source: b.clone(), target: poset.clone(), assignment: cond.assignment[..nb].to_vec() };
    let right = PosetMap { source: c.clone(), target: poset.clone(), assignment: cond.assignment[nb..].to_vec() };
    (poset, left, right)
}

/// A monotone map of posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    pub source: Poset,
    pub target: Poset,
    pub assignment: Vec<usize>,
}

impl PosetMap {
    pub fn new(source: Poset, target: Poset, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::invalid("poset map assignment has the wrong length"));
        }
        if assignment.iter().any(|&v| v >= target.len()) {
            return Err(Error::invalid("poset map assignment out of range"));
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.leq(a, b) && !target.leq(assignment[a], assignment[b]) {
                    return Err(Error::invalid(format!(
                        "poset map not monotone: {} <= {} but {} !<= {}",
                        source.id(a),
                        source.id(b),
                        target.id(assignment[a]),
                        target.id(assignment[b])
                    )));
                }
            }
        }
        Ok(PosetMap { source, target, assignment })
    }

    pub fn identity(p: &Poset) -> Self {
        PosetMap { source: p.clone(), target: p.clone(), assignment: (0..p.len()).collect() }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.assignment[a]
    }

    pub fn compose(&self, first: &PosetMap) -> PosetMap {
        PosetMap {
            source: first.source.clone(),
            target: self.target.clone(),
            assignment: first.assignment.iter().map(|&a| self.assignment[a]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &a in &self.assignment {
            if seen[a] {
                return false;
            }
            seen[a] = true;
        }
        seen.iter().all(|&s| s)
    }

    /// Bijective, monotone, and order-reflecting.
    pub fn is_isomorphism(&self) -> bool {
        if !self.is_bijective() {
            return false;
        }
        let n = self.source.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                self.source.leq(a, b) == self.target.leq(self.assignment[a], self.assignment[b])
            })
        })
    }
}

/// All monotone maps `source -> target`, in lexicographic order of assignments.
pub fn monotone_maps(source: &Poset, target: &Poset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(source.len());
    fn rec(s: &Poset, t: &Poset, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let a = cur.len();
        if a == s.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..t.len() {
            let ok = (0..a).all(|b| {
                (!s.leq(b, a) || t.leq(cur[b], v)) && (!s.leq(a, b) || t.leq(v, cur[b]))
            });
            if ok {
                cur.push(v);
                rec(s, t, cur, out);
                cur.pop();
            }
        }
    }
    rec(source, target, &mut cur, &mut out);
    out
}

/// The exponential poset `P^Q`: monotone maps `Q -> P` ordered pointwise.
///
/// Element ids are the bracketed image lists, e.g. `[0,1]`.
pub fn exponential_poset(p: &Poset, q: &Poset) -> (Poset, Vec<Vec<usize>>) {
    let maps = monotone_maps(q, p);
    let k = maps.len();
    let ids = maps
        .iter()
        .map(|f| format!("[{}]", f.iter().map(|&v| p.id(v)).collect::<Vec<_>>().join(",")))
        .collect();
    let mut leq = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            leq[a * k + b] = (0..q.len()).all(|x| p.leq(maps[a][x], maps[b][x]));
        }
    }
    (Poset { ids, leq }, maps)
}

/// A flag `[p_0 <= ... <= p_n]` of a poset, stored by element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    entries: Vec<usize>,
}

impl Flag {
    pub fn new(poset: &Poset, entries: Vec<usize>) -> Result<Self> {
        if entries.iter().any(|&e| e >= poset.len()) {
            return Err(Error::invalid("flag entry out of range"));
        }
        if let Some(w) = entries.windows(2).find(|w| !poset.leq(w[0], w[1])) {
            return Err(Error::invalid(format!(
                "flag not monotone: {} !<= {}",
                poset.id(w[0]),
                poset.id(w[1])
            )));
        }
        Ok(Flag { entries })
    }

    /// Parses comma-separated element ids.
    pub fn parse(poset: &Poset, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Flag::new(poset, vec![]);
        }
        let entries = text
            .split(',')
            .map(|s| {
                poset.index_of(s.trim()).ok_or_else(|| Error::Unresolved {
                    kind: "poset element",
                    name: s.trim().to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Flag::new(poset, entries)
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<usize>) -> Self {
        Flag { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Number of entries minus one; the empty flag has no length.
    pub fn length(&self) -> Option<usize> {
        self.entries.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_regular(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] != w[1])
    }

    /// The regular flag this flag degenerates from.
    pub fn support(&self) -> Flag {
        let mut e = self.entries.clone();
        e.dedup();
        Flag { entries: e }
    }

    pub fn contains(&self, p: usize) -> bool {
        self.entries.contains(&p)
    }

    /// Number of entries equal to `p`.
    pub fn multiplicity(&self, p: usize) -> usize {
        self.entries.iter().filter(|&&e| e == p).count()
    }

    /// Subsequence of entries lying in `subset`.
    pub fn restrict(&self, subset: &[usize]) -> Flag {
        Flag { entries: self.entries.iter().copied().filter(|e| subset.contains(e)).collect() }
    }

    /// Whether every entry of `self` occurs in `other` (as sets).
    pub fn is_subflag_of(&self, other: &Flag) -> bool {
        self.entries.iter().all(|e| other.entries.contains(e))
    }

    pub fn display(&self, poset: &Poset) -> String {
        self.entries.iter().map(|&e| poset.id(e)).collect::<Vec<_>>().join(",")
    }
}

/// Strictly increasing chains with at most `max_len + 1` entries, lexicographic
/// by entry indices.
pub fn regular_flags(poset: &Poset, max_len: usize) -> Vec<Flag> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(p: &Poset, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Flag>) {
        for v in 0..p.len() {
            if cur.last().is_none_or(|&l| p.lt(l, v)) {
                cur.push(v);
                out.push(Flag { entries: cur.clone() });
                if cur.len() < max + 1 {
                    rec(p, max, cur, out);
                }
                cur.pop();
            }
        }
    }
    rec(poset, max_len, &mut cur, &mut out);
    out.sort();
    out
}

/// All flags (weakly increasing) with exactly `len + 1` entries, lexicographic.
pub fn flags_of_length(poset: &Poset, len: usize) -> Vec<Flag> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(p: &Poset, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Flag>) {
        if cur.len() == n {
            out.push(Flag { entries: cur.clone() });
            return;
        }
        for v in 0..p.len() {
            if cur.last().is_none_or(|&l| p.leq(l, v)) {
                cur.push(v);
                rec(p, n, cur, out);
                cur.pop();
            }
        }
    }
    rec(poset, len + 1, &mut cur, &mut out);
    out
}

/// Coproduct of two flags supported on disjoint parts of a regular flag: the
/// entries merged in increasing order.
pub fn flag_join(poset: &Poset, first: &Flag, second: &Flag) -> Result<Flag> {
    if first.entries.iter().any(|e| second.entries.contains(e)) {
        return Err(Error::invalid("flags to join share an element"));
    }
    let mut merged = Vec::with_capacity(first.entries.len() + second.entries.len());
    let (mut i, mut j) = (0, 0);
    let (a, b) = (&first.entries, &second.entries);
    while i < a.len() || j < b.len() {
        let take_first = if i == a.len() {
            false
        } else if j == b.len() {
            true
        } else if poset.lt(a[i], b[j]) {
            true
        } else if poset.lt(b[j], a[i]) {
            false
        } else {
            return Err(Error::invalid(format!(
                "cannot join flags: {} and {} are incomparable",
                poset.id(a[i]),
                poset.id(b[j])
            )));
        };
        if take_first {
            merged.push(a[i]);
            i += 1;
        } else {
            merged.push(b[j]);
            j += 1;
        }
    }
    Flag::new(poset, merged)
}
