use std::collections::HashMap;

use super::{strat_coproduct, StratMap, StratSet};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::poset::Flag;
use crate::sset::{Generator, SimplexRef, SimplicialSet};

/// Which factor a vertex position of a join cell comes from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    X,
    Y,
}

/// Positions of a join of two simplices with the given vertex labels,
/// ordered by label. Labels of the two sides are disjoint.
fn merged(lx: &[usize], ly: &[usize], rank: &HashMap<usize, usize>) -> Vec<(Side, usize)> {
    let mut pos: Vec<(Side, usize)> =
        (0..lx.len()).map(|i| (Side::X, i)).chain((0..ly.len()).map(|i| (Side::Y, i))).collect();
    pos.sort_by_key(|&(s, i)| {
        let l = if s == Side::X { lx[i] } else { ly[i] };
        (rank[&l], s == Side::Y, i)
    });
    pos
}

struct JoinBuilder<'a> {
    x: &'a StratSet,
    y: &'a StratSet,
    rank: HashMap<usize, usize>,
    /// `(dim x-gen, x-gen, dim y-gen, y-gen) -> index` within the joined dimension.
    cells: HashMap<(usize, usize, usize, usize), usize>,
    /// generators of `X` keep their index; `Y` generators are shifted by this.
    y_offset: Vec<usize>,
}

impl JoinBuilder<'_> {
    fn labels_x(&self, s: &SimplexRef) -> Vec<usize> {
        self.x.space.simplex_vertices(s).iter().map(|&v| self.x.labels[v]).collect()
    }

    fn labels_y(&self, s: &SimplexRef) -> Vec<usize> {
        self.y.space.simplex_vertices(s).iter().map(|&v| self.y.labels[v]).collect()
    }

    fn embed_x(&self, s: &SimplexRef) -> SimplexRef {
        s.clone()
    }

    fn embed_y(&self, s: &SimplexRef) -> SimplexRef {
        SimplexRef { op: s.op.clone(), gen: s.gen + self.y_offset.get(s.gen_dim()).copied().unwrap_or(0) }
    }

    /// The joined simplex `sx * sy` in normal form.
    fn join(&self, sx: &SimplexRef, sy: &SimplexRef) -> SimplexRef {
        let (lx, ly) = (self.labels_x(sx), self.labels_y(sy));
        let big = merged(&lx, &ly, &self.rank);
        let (gx, gy) = (SimplexRef::gen(sx.gen_dim(), sx.gen), SimplexRef::gen(sy.gen_dim(), sy.gen));
        let small = merged(&self.labels_x(&gx), &self.labels_y(&gy), &self.rank);
        let images = big
            .iter()
            .map(|&(side, i)| {
                let target = if side == Side::X { (Side::X, sx.op.apply(i)) } else { (Side::Y, sy.op.apply(i)) };
                small.iter().position(|&p| p == target).expect("merged positions")
            })
            .collect();
        let dim = sx.gen_dim() + sy.gen_dim() + 1;
        let offset = self.x.space.count(dim) + self.y.space.count(dim);
        let cell = self.cells[&(sx.gen_dim(), sx.gen, sy.gen_dim(), sy.gen)];
        SimplexRef { op: MonotoneMap::from_images_unchecked(images, dim), gen: offset + cell }
    }

    fn cell_faces(&self, a: usize, gx: usize, b: usize, gy: usize) -> Vec<SimplexRef> {
        let (sx, sy) = (SimplexRef::gen(a, gx), SimplexRef::gen(b, gy));
        merged(&self.labels_x(&sx), &self.labels_y(&sy), &self.rank)
            .into_iter()
            .map(|(side, i)| match side {
                Side::X if a == 0 => self.embed_y(&sy),
                Side::X => self.join(&self.x.space.face(&sx, i), &sy),
                Side::Y if b == 0 => self.embed_x(&sx),
                Side::Y => self.join(&sx, &self.y.space.face(&sy, i)),
            })
            .collect()
    }
}

/// The stratified join `X *_P Y` of two stratified sets over the same poset,
/// supported on disjoint parts `i0`, `i1` of a regular flag. Returns the join
/// and the inclusion of `X ⊔ Y`. An empty factor contributes no join cells,
/// so `X * ∅ = X`.
pub fn strat_join(x: &StratSet, y: &StratSet, i0: &Flag, i1: &Flag) -> Result<(StratSet, StratMap)> {
    if x.poset != y.poset {
        return Err(Error::invalid("join factors live over different posets"));
    }
    let poset = &x.poset;
    let mut all: Vec<usize> = i0.entries().iter().chain(i1.entries()).copied().collect();
    all.sort_by(|&a, &b| if poset.lt(a, b) { std::cmp::Ordering::Less } else if poset.lt(b, a) { std::cmp::Ordering::Greater } else { a.cmp(&b) });
    let whole = Flag::from_entries_unchecked(all.clone());
    if !i0.is_regular() || !i1.is_regular() || i0.is_empty() || i1.is_empty() || all.windows(2).any(|w| !poset.lt(w[0], w[1])) {
        return Err(Error::invalid(format!(
            "{} and {} are not disjoint non-empty parts of a regular flag",
            i0.display(poset),
            i1.display(poset)
        )));
    }
    for (side, z, part) in [("first", x, i0), ("second", y, i1)] {
        if let Some(&l) = z.labels.iter().find(|&&l| !part.contains(l)) {
            return Err(Error::invalid(format!(
                "{side} factor has a vertex in stratum {} outside {}",
                poset.id(l),
                part.display(poset)
            )));
        }
    }
    let rank: HashMap<usize, usize> = whole.entries().iter().enumerate().map(|(r, &p)| (p, r)).collect();
    let (dx, dy) = (x.space.levels().len(), y.space.levels().len());
    let top = if dx == 0 || dy == 0 { dx.max(dy) } else { dx + dy };
    let y_offset: Vec<usize> = (0..top).map(|d| x.space.count(d)).collect();
    let mut cells = HashMap::new();
    let mut cell_list: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); top];
    for a in 0..dx {
        for gx in 0..x.space.count(a) {
            for b in 0..dy {
                for gy in 0..y.space.count(b) {
                    let d = a + b + 1;
                    cells.insert((a, gx, b, gy), cell_list[d].len());
                    cell_list[d].push((a, gx, b, gy));
                }
            }
        }
    }
    let builder = JoinBuilder { x, y, rank, cells, y_offset };
    let mut gens: Vec<Vec<Generator>> = Vec::with_capacity(top);
    for d in 0..top {
        let mut level = Vec::new();
        if d < dx {
            level.extend(x.space.generators(d).iter().cloned());
        }
        if d < dy {
            level.extend(y.space.generators(d).iter().map(|g| Generator {
                name: g.name.clone(),
                faces: g.faces.iter().map(|f| builder.embed_y(f)).collect(),
            }));
        }
        for &(a, gx, b, gy) in &cell_list[d] {
            level.push(Generator {
                name: format!("{}*{}", x.space.generator(a, gx).name, y.space.generator(b, gy).name),
                faces: builder.cell_faces(a, gx, b, gy),
            });
        }
        gens.push(level);
    }
    let space = SimplicialSet::new_unchecked(gens);
    let labels = x.labels.iter().chain(&y.labels).copied().collect();
    let join = StratSet::new_unchecked(space, poset.clone(), labels);
    let sum = strat_coproduct(x, y);
    let assignment = sum
        .space
        .levels()
        .iter()
        .enumerate()
        .map(|(d, l)| {
            (0..l.len())
                .map(|g| {
                    if g < x.space.count(d) {
                        SimplexRef::gen(d, g)
                    } else {
                        builder.embed_y(&SimplexRef::gen(d, g - x.space.count(d)))
                    }
                })
                .collect()
        })
        .collect();
    let inclusion = StratMap::from_parts(&sum, &join, assignment, (0..poset.len()).collect());
    Ok((join, inclusion))
}
