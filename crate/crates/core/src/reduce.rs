//! Gaussian elimination on chain complexes.
//!
//! An invertible entry `phi: b1 -> b2` of the differential splits off the
//! contractible pair `b1 -> b2`; the rest of the complex is homotopy
//! equivalent to the one with `b1`, `b2` removed and the block between the
//! remaining generators replaced by `eps - gamma phi^-1 delta`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::arith::Coefficient;
use crate::complex::ChainComplex;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EliminationStats {
    pub pivots: usize,
    /// Entries of the differential written during the updates.
    pub touched: usize,
}

/// A complex being simplified in place; removed generators stay as holes
/// until `finish`.
pub struct Eliminator<R> {
    complex: ChainComplex<R>,
    alive: Vec<Vec<bool>>,
    queue: BTreeSet<(usize, usize, usize, usize)>,
    pub stats: EliminationStats,
}

impl<R: Coefficient> Eliminator<R> {
    pub fn new(complex: ChainComplex<R>) -> Self {
        let alive = complex.gens.iter().map(|g| alloc::vec![true; g.len()]).collect();
        let mut e = Eliminator { complex, alive, queue: BTreeSet::new(), stats: EliminationStats::default() };
        for k in 0..e.complex.diffs.len() {
            let cands: Vec<(usize, usize)> = e.complex.diffs[k]
                .entries()
                .filter(|(_, _, v)| v.pivot_inverse().is_some())
                .map(|(r, c, _)| (r, c))
                .collect();
            for (r, c) in cands {
                e.push(k, r, c);
            }
        }
        e
    }

    fn cost(&self, k: usize, r: usize, c: usize) -> usize {
        let m = &self.complex.diffs[k];
        (m.row(r).len() - 1) * (m.col(c).len() - 1)
    }

    fn push(&mut self, k: usize, r: usize, c: usize) {
        let cost = self.cost(k, r, c);
        self.queue.insert((cost, k, r, c));
    }

    /// Eliminates the pair `(row r, col c)` of the differential leaving
    /// degree index `k`. Returns the number of entries updated.
    pub fn eliminate(&mut self, k: usize, r: usize, c: usize) -> usize {
        let diffs = &mut self.complex.diffs;
        let phi_inv = diffs[k].get(r, c).pivot_inverse().expect("pivot must be invertible");
        let gamma: Vec<(usize, R)> =
            diffs[k].col(c).iter().filter(|(x, _)| **x != r).map(|(x, v)| (*x, v.clone())).collect();
        let delta: Vec<(usize, R)> = diffs[k]
            .row(r)
            .iter()
            .filter(|(y, _)| **y != c)
            .map(|(y, v)| (*y, phi_inv.mul(v)))
            .collect();
        let mut fresh = Vec::new();
        for (x, g) in &gamma {
            for (y, dl) in &delta {
                let cur = diffs[k].get(*x, *y);
                let new = cur.sub(&g.mul(dl));
                debug_assert!(new.internal_degree().is_some(), "elimination broke homogeneity");
                if !new.is_zero() && new.pivot_inverse().is_some() {
                    fresh.push((*x, *y));
                }
                diffs[k].set(*x, *y, new);
            }
        }
        diffs[k].clear_row(r);
        diffs[k].clear_col(c);
        if k > 0 {
            diffs[k - 1].clear_row(c);
        }
        if k + 1 < diffs.len() {
            diffs[k + 1].clear_col(r);
        }
        self.alive[k][c] = false;
        self.alive[k + 1][r] = false;
        for (x, y) in fresh {
            self.push(k, x, y);
        }
        let touched = gamma.len() * delta.len();
        self.stats.pivots += 1;
        self.stats.touched += touched;
        touched
    }

    /// Eliminates until no invertible entry remains.
    pub fn run(&mut self) {
        while let Some(entry) = self.queue.pop_first() {
            let (cost, k, r, c) = entry;
            if !self.alive[k][c] || !self.alive[k + 1][r] {
                continue;
            }
            let v = self.complex.diffs[k].get(r, c);
            if v.is_zero() || v.pivot_inverse().is_none() {
                continue;
            }
            let now = self.cost(k, r, c);
            if now != cost {
                self.queue.insert((now, k, r, c));
                continue;
            }
            self.eliminate(k, r, c);
        }
    }

    pub fn finish(self) -> (ChainComplex<R>, EliminationStats) {
        let ChainComplex { min_h, gens, diffs, .. } = self.complex;
        let keep: Vec<Vec<usize>> =
            self.alive.iter().map(|a| (0..a.len()).filter(|&i| a[i]).collect()).collect();
        let new_gens = gens.iter().zip(&keep).map(|(g, idx)| idx.iter().map(|&i| g[i]).collect()).collect();
        let new_diffs = diffs.iter().enumerate().map(|(k, m)| m.restrict(&keep[k + 1], &keep[k])).collect();
        (ChainComplex::new(min_h, new_gens, new_diffs), self.stats)
    }
}

/// Performs one elimination at the given pivot and compacts the result.
pub fn gaussian_eliminate_once<R: Coefficient>(
    c: ChainComplex<R>,
    h: i64,
    row: usize,
    col: usize,
) -> (ChainComplex<R>, EliminationStats) {
    let k = (h - c.min_h) as usize;
    let alive = c.gens.iter().map(|g| alloc::vec![true; g.len()]).collect();
    let mut e = Eliminator { complex: c, alive, queue: BTreeSet::new(), stats: EliminationStats::default() };
    e.eliminate(k, row, col);
    e.finish()
}

/// Eliminates every invertible entry, cheapest fill-in first.
pub fn simplify<R: Coefficient>(c: ChainComplex<R>) -> (ChainComplex<R>, EliminationStats) {
    let mut e = Eliminator::new(c);
    e.run();
    e.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaussianPolynomial;
    use crate::complex::{build_complex, euler_characteristic, Mode};
    use crate::diagram::LinkDiagram;

    #[test]
    fn kink_reduces_to_two_generators() {
        for pd in ["PD[X[1,1,2,2]]", "PD[X[1,2,2,1]]"] {
            let c = build_complex(&LinkDiagram::parse(pd).unwrap(), Mode::Faithful).unwrap();
            let chi = euler_characteristic(&c);
            let (r, stats) = simplify(c);
            assert_eq!(r.rank(), 2, "{}", pd);
            assert_eq!(euler_characteristic(&r), chi);
            assert_eq!(r.verify_d_squared(), Ok(()));
            assert!(stats.pivots >= 1);
        }
    }

    #[test]
    fn single_step_touches_only_the_block() {
        let d = LinkDiagram::parse("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        let c: ChainComplex<GaussianPolynomial> = build_complex(&d, Mode::Faithful).unwrap();
        let k = 0;
        let (r, col, _) = c.diffs[k].entries().find(|(_, _, v)| v.is_unit()).unwrap();
        let expect = (c.diffs[k].col(col).len() - 1) * (c.diffs[k].row(r).len() - 1);
        let (before, h) = (c.rank(), c.min_h);
        let (out, stats) = gaussian_eliminate_once(c, h, r, col);
        assert_eq!(stats.touched, expect);
        assert_eq!(out.rank(), before - 2);
        assert_eq!(out.verify_d_squared(), Ok(()));
        assert_eq!(out.verify_homogeneous(), Ok(()));
    }
}
