//! Backtracking enumeration of simplicial maps between finite simplicial sets.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;

use super::{Assignment, SimplexRef, SimplicialMap, SimplicialSet};

/// All simplices of a target up to some level, indexed by their face tuples.
#[derive(Clone, Debug)]
pub struct SimplexIndex {
    levels: Vec<Vec<SimplexRef>>,
    by_faces: Vec<HashMap<Vec<SimplexRef>, Vec<usize>>>,
}

impl SimplexIndex {
    pub fn new(x: &SimplicialSet, top: usize) -> Self {
        let mut levels = Vec::with_capacity(top + 1);
        let mut by_faces = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let level = x.simplices(n);
            let mut map: HashMap<Vec<SimplexRef>, Vec<usize>> = HashMap::new();
            if n > 0 {
                for (i, s) in level.iter().enumerate() {
                    let key = (0..=n).map(|k| x.face(s, k)).collect();
                    map.entry(key).or_default().push(i);
                }
            }
            levels.push(level);
            by_faces.push(map);
        }
        SimplexIndex { levels, by_faces }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &[SimplexRef] {
        &self.levels[n]
    }

    pub fn with_faces(&self, faces: &[SimplexRef]) -> impl Iterator<Item = &SimplexRef> {
        let n = faces.len() - 1;
        self.by_faces[n].get(faces).into_iter().flatten().map(move |&i| &self.levels[n][i])
    }
}

type Constraint<'a> = dyn Fn(usize, usize, &SimplexRef) -> bool + 'a;

/// A configurable search for maps `source -> target`.
pub struct MapSearch<'a> {
    source: &'a SimplicialSet,
    target: &'a SimplicialSet,
    index: Option<&'a SimplexIndex>,
    owned_index: Option<SimplexIndex>,
    fixed: Vec<Vec<Option<SimplexRef>>>,
    constraint: Option<Box<Constraint<'a>>>,
    injective: bool,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &'a SimplicialSet, target: &'a SimplicialSet) -> Self {
        MapSearch {
            source,
            target,
            index: None,
            owned_index: None,
            fixed: source.levels().iter().map(|l| vec![None; l.len()]).collect(),
            constraint: None,
            injective: false,
        }
    }

    /// Reuse a prebuilt index of the target (must cover the source dimension).
    pub fn with_index(mut self, index: &'a SimplexIndex) -> Self {
        self.index = Some(index);
        self
    }

    /// Only accept candidates `c` for generator `(d, g)` with `pred(d, g, c)`.
    pub fn constraint(mut self, pred: impl Fn(usize, usize, &SimplexRef) -> bool + 'a) -> Self {
        self.constraint = Some(Box::new(pred));
        self
    }

    /// Prescribe the image of a generator.
    pub fn fix(mut self, d: usize, g: usize, image: SimplexRef) -> Self {
        self.fixed[d][g] = Some(image);
        self
    }

    /// Only maps that send generators injectively to generators.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Visits every map in deterministic order until `visit` returns `false`.
    pub fn for_each(mut self, mut visit: impl FnMut(&Assignment) -> bool) {
        let top = match self.source.dim() {
            Some(d) => d,
            None => {
                visit(&vec![]);
                return;
            }
        };
        if self.index.is_none() || self.index.unwrap().top() < top {
            self.owned_index = Some(SimplexIndex::new(self.target, top));
        }
        let index = self.owned_index.as_ref().or(self.index).unwrap();
        // each generator right after its last vertex, so faces prune early
        let source = self.source;
        let order: Vec<(usize, usize)> = (0..=top)
            .flat_map(|d| (0..source.count(d)).map(move |g| (d, g)))
            .sorted_by_key(|&(d, g)| (source.gen_vertices(d, g).iter().max().copied(), d, g))
            .collect();
        let mut current: Assignment =
            self.source.levels().iter().map(|l| vec![SimplexRef::vertex(0); l.len()]).collect();
        let mut used = HashSet::new();
        let mut state = State { search: &self, index, order: &order, visit: &mut visit, stopped: false };
        state.rec(0, &mut current, &mut used);
    }

    pub fn all(self) -> Vec<Assignment> {
        let mut out = Vec::new();
        self.for_each(|a| {
            out.push(a.clone());
            true
        });
        out
    }

    pub fn first(self) -> Option<Assignment> {
        let mut out = None;
        self.for_each(|a| {
            out = Some(a.clone());
            false
        });
        out
    }

    pub fn count(self) -> usize {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            true
        });
        n
    }
}

struct State<'s, 'a, F: FnMut(&Assignment) -> bool> {
    search: &'s MapSearch<'a>,
    index: &'s SimplexIndex,
    order: &'s [(usize, usize)],
    visit: &'s mut F,
    stopped: bool,
}

impl<F: FnMut(&Assignment) -> bool> State<'_, '_, F> {
    fn rec(&mut self, pos: usize, current: &mut Assignment, used: &mut HashSet<SimplexRef>) {
        if self.stopped {
            return;
        }
        if pos == self.order.len() {
            if !(self.visit)(current) {
                self.stopped = true;
            }
            return;
        }
        let (d, g) = self.order[pos];
        let s = self.search;
        let candidates: Vec<SimplexRef> = if d == 0 {
            self.index.level(0).to_vec()
        } else {
            let faces: Vec<SimplexRef> = s
                .source
                .generator(d, g)
                .faces
                .iter()
                .map(|f| s.target.act(&current[f.gen_dim()][f.gen], &f.op))
                .collect();
            self.index.with_faces(&faces).cloned().collect()
        };
        for c in candidates {
            if let Some(fixed) = &s.fixed[d][g] {
                if *fixed != c {
                    continue;
                }
            }
            if let Some(pred) = &s.constraint {
                if !pred(d, g, &c) {
                    continue;
                }
            }
            if s.injective && (c.is_degenerate() || used.contains(&c)) {
                continue;
            }
            current[d][g] = c.clone();
            if s.injective {
                used.insert(c.clone());
            }
            self.rec(pos + 1, current, used);
            if s.injective {
                used.remove(&c);
            }
            if self.stopped {
                return;
            }
        }
    }
}

/// All simplicial maps `source -> target`.
pub fn enumerate_maps(source: &SimplicialSet, target: &SimplicialSet) -> Vec<SimplicialMap> {
    MapSearch::new(source, target)
        .all()
        .into_iter()
        .map(|assignment| SimplicialMap { source: source.clone(), target: target.clone(), assignment })
        .collect()
}

/// Some map `source -> target`, optionally injective on generators.
pub fn find_map(source: &SimplicialSet, target: &SimplicialSet, injective: bool) -> Option<SimplicialMap> {
    let mut search = MapSearch::new(source, target);
    if injective {
        search = search.injective();
    }
    search
        .first()
        .map(|assignment| SimplicialMap { source: source.clone(), target: target.clone(), assignment })
}
