//! Morphisms of the simplex category: weakly monotone maps `[n] -> [m]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly monotone map `[source_dim] -> [target_dim]`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonotoneMap {
    target_dim: usize,
    images: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(images: Vec<usize>, target_dim: usize) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::invalid("monotone map needs a non-empty source"));
        }
        if images.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invalid(format!("images {images:?} are not weakly increasing")));
        }
        if images.iter().any(|&v| v > target_dim) {
            return Err(Error::invalid(format!("images {images:?} exceed target [{target_dim}]")));
        }
        Ok(MonotoneMap { target_dim, images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>, target_dim: usize) -> Self {
        debug_assert!(images.windows(2).all(|w| w[0] <= w[1]));
        MonotoneMap { target_dim, images }
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { target_dim: n, images: (0..=n).collect() }
    }

    /// The coface `δ^i : [n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        MonotoneMap { target_dim: n, images: (0..=n).filter(|&j| j != i).collect() }
    }

    /// The codegeneracy `σ^i : [n+1] -> [n]` hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        let images = (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
        MonotoneMap { target_dim: n, images }
    }

    /// The map `[0] -> [n]` picking `v`.
    pub fn vertex(n: usize, v: usize) -> Self {
        assert!(v <= n);
        MonotoneMap { target_dim: n, images: vec![v] }
    }

    pub fn source_dim(&self) -> usize {
        self.images.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_injective(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.images[0] == 0
            && *self.images.last().unwrap() == self.target_dim
            && self.images.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.target_dim == self.source_dim() && self.is_injective()
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &MonotoneMap) -> MonotoneMap {
        assert_eq!(other.target_dim, self.source_dim(), "composition dimension mismatch");
        MonotoneMap {
            target_dim: self.target_dim,
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// Epi-mono factorization `self = mono ∘ epi`.
    pub fn factor(&self) -> (MonotoneMap, MonotoneMap) {
        let mut image: Vec<usize> = self.images.clone();
        image.dedup();
        let r = image.len() - 1;
        let mut epi = Vec::with_capacity(self.images.len());
        let mut k = 0;
        for &v in &self.images {
            while image[k] != v {
                k += 1;
            }
            epi.push(k);
        }
        (
            MonotoneMap { target_dim: r, images: epi },
            MonotoneMap { target_dim: self.target_dim, images: image },
        )
    }
}

/// All surjections `[n] ->> [m]`, in lexicographic order of image lists.
pub fn surjections(n: usize, m: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    let mut cur = vec![0usize];
    fn rec(n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        let last = *cur.last().unwrap();
        if cur.len() == n + 1 {
            if last == m {
                out.push(MonotoneMap { target_dim: m, images: cur.clone() });
            }
            return;
        }
        let remaining = n + 1 - cur.len();
        for next in [last, last + 1] {
            if next <= m && m - next < remaining {
                cur.push(next);
                rec(n, m, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, m, &mut cur, &mut out);
    out
}

/// All weakly monotone maps `[n] -> [m]`, lexicographic.
pub fn monotone_maps(n: usize, m: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 1);
    fn rec(n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        if cur.len() == n + 1 {
            out.push(MonotoneMap { target_dim: m, images: cur.clone() });
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=m {
            cur.push(v);
            rec(n, m, cur, out);
            cur.pop();
        }
    }
    rec(n, m, &mut cur, &mut out);
    out
}
