//! Echelon forms over `F_p`, built one vector at a time.

use crate::field::modp::{inv_mod, mul_mod};

/// Row echelon basis of a subspace of `F_p^n`. Every stored row has a one
/// in its pivot column and zeros in the pivot columns of earlier rows.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    p: u64,
    ncols: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new(p: u64, ncols: usize) -> Self {
        ModEchelon {
            p,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds `v` to the span. Returns whether the rank went up.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let p = self.p;
        if self.rows.len() == self.ncols {
            return false;
        }
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c == 0 {
                continue;
            }
            let f = p - c;
            for (x, &y) in v[*pc..].iter_mut().zip(&row[*pc..]) {
                if y != 0 {
                    *x = (*x + f * y) % p;
                }
            }
        }
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[pc], p);
        for x in v[pc..].iter_mut() {
            if *x != 0 {
                *x = mul_mod(*x, inv, p);
            }
        }
        self.rows.push((pc, v));
        true
    }
}

/// Rank of a list of vectors over `F_p`.
pub fn rank_mod(p: u64, ncols: usize, vectors: impl IntoIterator<Item = Vec<u64>>) -> usize {
    let mut e = ModEchelon::new(p, ncols);
    for v in vectors {
        e.insert(v);
        if e.rank() == ncols {
            break;
        }
    }
    e.rank()
}
