use std::collections::HashMap;
use std::hash::Hash;

use super::SimplicialSet;
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};

/// A simplicial set known through its levels `0..=bound`: finite sets of
/// simplices with explicit face and degeneracy tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelwiseSimplicialSet {
    counts: Vec<usize>,
    /// `faces[n][x][i]` for `n >= 1`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][x][i]` for `n < bound`.
    degens: Vec<Vec<Vec<usize>>>,
}

impl LevelwiseSimplicialSet {
    pub fn bound(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts[n]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn face(&self, n: usize, x: usize, i: usize) -> usize {
        self.faces[n][x][i]
    }

    pub fn degeneracy(&self, n: usize, x: usize, i: usize) -> usize {
        self.degens[n][x][i]
    }

    pub fn is_empty(&self) -> bool {
        self.counts[0] == 0
    }

    /// `x` is degenerate iff `x = s_i(d_i x)` for some `i`. Needs `n <= bound`.
    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        n > 0 && (0..n).any(|i| self.degens[n - 1][self.faces[n][x][i]][i] == x)
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.counts[n]).filter(|&x| !self.is_degenerate(n, x)).collect()
    }

    /// Applies a monotone map `[m] -> [n]` by iterated faces and degeneracies.
    pub fn act(&self, n: usize, x: usize, alpha: &MonotoneMap) -> usize {
        let (epi, mono) = alpha.factor();
        // faces: remove missing indices from the top down
        let mut cur = x;
        let mut level = n;
        for i in (0..=n).rev() {
            if !mono.images().contains(&i) {
                cur = self.faces[level][cur][i];
                level -= 1;
            }
        }
        // degeneracies: repeated positions, from the bottom up
        for j in 0..epi.source_dim() {
            if epi.apply(j) == epi.apply(j + 1) {
                cur = self.degens[level][cur][j];
                level += 1;
            }
        }
        cur
    }

    /// Exhaustive check of all simplicial identities on the computed levels.
    pub fn check_identities(&self) -> Result<()> {
        let fail = |what: String| Err(Error::internal(format!("levelwise identity fails: {what}")));
        let bound = self.bound();
        for n in 0..=bound {
            for x in 0..self.counts[n] {
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            let a = self.face(n - 1, self.face(n, x, j), i);
                            let b = self.face(n - 1, self.face(n, x, i), j - 1);
                            if a != b {
                                return fail(format!("d{i}d{j} at level {n}, element {x}"));
                            }
                        }
                    }
                }
                if n < bound {
                    for j in 0..=n {
                        let y = self.degeneracy(n, x, j);
                        for i in 0..=n + 1 {
                            let lhs = self.face(n + 1, y, i);
                            let ok = if i == j || i == j + 1 {
                                lhs == x
                            } else if i < j {
                                n >= 1 && lhs == self.degeneracy(n - 1, self.face(n, x, i), j - 1)
                            } else {
                                n >= 1 && lhs == self.degeneracy(n - 1, self.face(n, x, i - 1), j)
                            };
                            if !ok {
                                return fail(format!("d{i}s{j} at level {n}, element {x}"));
                            }
                        }
                        if n + 1 < bound {
                            for i in 0..=j {
                                let a = self.degeneracy(n + 1, y, i);
                                let b = self.degeneracy(n + 1, self.degeneracy(n, x, i), j + 1);
                                if a != b {
                                    return fail(format!("s{i}s{j} at level {n}, element {x}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Disjoint union; elements of later parts are shifted past earlier ones.
    pub fn disjoint_union(parts: &[LevelwiseSimplicialSet], bound: usize) -> Self {
        let mut counts = vec![0; bound + 1];
        let mut faces = vec![Vec::new(); bound + 1];
        let mut degens = vec![Vec::new(); bound];
        for part in parts {
            assert!(part.bound() >= bound, "part truncated below the requested bound");
            let offsets = counts.clone();
            for n in 0..=bound {
                if n > 0 {
                    for f in &part.faces[n] {
                        faces[n].push(f.iter().map(|&y| y + offsets[n - 1]).collect());
                    }
                }
                if n < bound {
                    for s in &part.degens[n] {
                        degens[n].push(s.iter().map(|&y| y + offsets[n + 1]).collect());
                    }
                }
                counts[n] += part.counts[n];
            }
        }
        LevelwiseSimplicialSet { counts, faces, degens }
    }

    /// The levels `0..=bound` of a finite simplicial set, simplices in the order
    /// of [`SimplicialSet::simplices`].
    pub fn from_finite(x: &SimplicialSet, bound: usize) -> Self {
        let mut b = LevelwiseBuilder::new(bound);
        for n in 0..=bound {
            b.set_level(n, x.simplices(n));
        }
        b.finish(|_, s, i| x.face(s, i), |_, s, i| x.degeneracy(s, i))
    }
}

/// Builds a levelwise simplicial set from explicitly enumerated elements and
/// face/degeneracy functions on them.
pub struct LevelwiseBuilder<T> {
    bound: usize,
    levels: Vec<Vec<T>>,
}

impl<T: Clone + Eq + Hash> LevelwiseBuilder<T> {
    pub fn new(bound: usize) -> Self {
        LevelwiseBuilder { bound, levels: vec![Vec::new(); bound + 1] }
    }

    pub fn set_level(&mut self, n: usize, elements: Vec<T>) {
        self.levels[n] = elements;
    }

    pub fn elements(&self, n: usize) -> &[T] {
        &self.levels[n]
    }

    /// Computes the structure tables from operators `(level, element, index)`;
    /// panics if an operator leaves the enumerated sets.
    pub fn finish(
        self,
        face: impl Fn(usize, &T, usize) -> T,
        degeneracy: impl Fn(usize, &T, usize) -> T,
    ) -> LevelwiseSimplicialSet {
        self.finish_with_elements(face, degeneracy).0
    }

    pub fn finish_with_elements(
        self,
        face: impl Fn(usize, &T, usize) -> T,
        degeneracy: impl Fn(usize, &T, usize) -> T,
    ) -> (LevelwiseSimplicialSet, Vec<Vec<T>>) {
        let index: Vec<HashMap<&T, usize>> = self
            .levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, t)| (t, i)).collect())
            .collect();
        let look = |n: usize, t: &T| -> usize {
            *index[n].get(t).unwrap_or_else(|| panic!("operator result missing from level {n}"))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=self.bound {
            faces.push(
                self.levels[n].iter().map(|t| (0..=n).map(|i| look(n - 1, &face(n, t, i))).collect()).collect(),
            );
        }
        let mut degens = Vec::new();
        for n in 0..self.bound {
            degens.push(
                self.levels[n]
                    .iter()
                    .map(|t| (0..=n).map(|i| look(n + 1, &degeneracy(n, t, i))).collect())
                    .collect(),
            );
        }
        let counts = self.levels.iter().map(|l| l.len()).collect();
        drop(index);
        (LevelwiseSimplicialSet { counts, faces, degens }, self.levels)
    }
}
