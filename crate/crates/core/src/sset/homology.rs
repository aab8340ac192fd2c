//! Betti numbers over prime fields and path components.

use std::collections::HashMap;

use super::{LevelwiseSimplicialSet, SimplicialSet};
use crate::error::{Error, Result};

/// Rank of a sparse matrix over `F_p`, rows given as `(column, coefficient)` lists.
fn rank_mod_p(rows: Vec<Vec<(usize, u64)>>, columns: usize, p: u64) -> usize {
    if p == 2 {
        return rank_f2(rows, columns);
    }
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut rank = 0;
    for row in rows {
        let mut dense = vec![0u64; columns];
        for (c, v) in row {
            dense[c] = (dense[c] + v) % p;
        }
        let mut col = 0;
        loop {
            while col < columns && dense[col] == 0 {
                col += 1;
            }
            if col == columns {
                break;
            }
            match pivots.get(&col) {
                Some(pivot) => {
                    let factor = dense[col];
                    for k in col..columns {
                        dense[k] = (dense[k] + p * p - factor * pivot[k] % p) % p;
                    }
                }
                None => {
                    let inv = pow_mod(dense[col], p - 2, p);
                    for v in dense.iter_mut() {
                        *v = *v * inv % p;
                    }
                    pivots.insert(col, dense);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rank_f2(rows: Vec<Vec<(usize, u64)>>, columns: usize) -> usize {
    let words = columns.div_ceil(64);
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut rank = 0;
    for row in rows {
        let mut bits = vec![0u64; words];
        for (c, v) in row {
            if v % 2 == 1 {
                bits[c / 64] ^= 1 << (c % 64);
            }
        }
        loop {
            let lead = bits.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize);
            let Some(col) = lead else { break };
            match pivots.get(&col) {
                Some(pivot) => {
                    for (a, b) in bits.iter_mut().zip(pivot) {
                        *a ^= b;
                    }
                }
                None => {
                    pivots.insert(col, bits);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn check_prime(p: u64) -> Result<()> {
    if p < 2 || (2..p).take_while(|k| k * k <= p).any(|k| p.is_multiple_of(k)) {
        return Err(Error::invalid(format!("field characteristic {p} is not prime")));
    }
    Ok(())
}

/// A normalized chain complex: cell counts per degree and boundary rows.
fn betti_from(
    cells: &[usize],
    boundary: impl Fn(usize, usize) -> Vec<(usize, u64)>,
    max_degree: usize,
    p: u64,
) -> Vec<usize> {
    // rank of ∂_n : C_n -> C_{n-1}, for n = 1..=max_degree+1
    let mut ranks = vec![0usize; max_degree + 2];
    for n in 1..=max_degree + 1 {
        if n >= cells.len() || cells[n] == 0 {
            continue;
        }
        let rows = (0..cells[n]).map(|x| boundary(n, x)).collect();
        ranks[n] = rank_mod_p(rows, cells[n - 1], p);
    }
    (0..=max_degree)
        .map(|n| cells.get(n).copied().unwrap_or(0) - ranks[n] - ranks[n + 1])
        .collect()
}

fn sign(i: usize, p: u64) -> u64 {
    if i.is_multiple_of(2) { 1 } else { p - 1 }
}

/// Betti numbers `b_0..=b_max_degree` of a finite simplicial set over `F_p`.
pub fn betti_numbers(x: &SimplicialSet, max_degree: usize, p: u64) -> Result<Vec<usize>> {
    check_prime(p)?;
    let cells: Vec<usize> = (0..=max_degree + 1).map(|n| x.count(n)).collect();
    Ok(
        betti_from(
            &cells,
            |n, g| {
                x.generator(n, g)
                    .faces
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| !f.is_degenerate())
                    .map(|(i, f)| (f.gen, sign(i, p)))
                    .collect()
            },
            max_degree,
            p,
        ))
}

/// Betti numbers of a levelwise simplicial set; needs levels up to `max_degree + 1`.
pub fn levelwise_betti(x: &LevelwiseSimplicialSet, max_degree: usize, p: u64) -> Result<Vec<usize>> {
    check_prime(p)?;
    if x.bound() < max_degree + 1 {
        return Err(Error::LevelBound { bound: x.bound(), needed: max_degree + 1 });
    }
    let nondeg: Vec<Vec<usize>> = (0..=max_degree + 1).map(|n| x.nondegenerate(n)).collect();
    let position: Vec<HashMap<usize, usize>> = nondeg
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &v)| (v, i)).collect())
        .collect();
    let cells: Vec<usize> = nondeg.iter().map(|l| l.len()).collect();
    Ok(
        betti_from(
            &cells,
            |n, k| {
                let s = nondeg[n][k];
                (0..=n)
                    .filter_map(|i| position[n - 1].get(&x.face(n, s, i)).map(|&c| (c, sign(i, p))))
                    .collect()
            },
            max_degree,
            p,
        ))
}

/// Path components: for each vertex its component, components numbered by least vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub of_vertex: Vec<usize>,
    pub count: usize,
}

impl Components {
    fn from_edges(vertices: usize, edges: impl Iterator<Item = (usize, usize)>) -> Self {
        let mut parent: Vec<usize> = (0..vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut number = HashMap::new();
        let of_vertex = (0..vertices)
            .map(|v| {
                let r = find(&mut parent, v);
                let next = number.len();
                *number.entry(r).or_insert(next)
            })
            .collect();
        Components { of_vertex, count: number.len() }
    }

    /// Least vertex of each component.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.count];
        for (v, &c) in self.of_vertex.iter().enumerate() {
            reps[c] = reps[c].min(v);
        }
        reps
    }
}

pub fn pi0(x: &SimplicialSet) -> Components {
    Components::from_edges(
        x.count(0),
        (0..x.count(1)).map(|e| {
            let vs = x.gen_vertices(1, e);
            (vs[0], vs[1])
        }),
    )
}

pub fn levelwise_pi0(x: &LevelwiseSimplicialSet) -> Result<Components> {
    if x.bound() < 1 {
        return Err(Error::LevelBound { bound: x.bound(), needed: 1 });
    }
    Ok(Components::from_edges(x.count(0), (0..x.count(1)).map(|e| (x.face(1, e, 1), x.face(1, e, 0)))))
}
