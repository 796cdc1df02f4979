//! Homology of the specialised complexes.
//!
//! At `a = 0` the complex is bigraded and is computed per quantum slice,
//! over `Z[i]` (free rank and torsion) or `Q(i)`. At `a = 1` only the
//! homological grading survives and the computation is over `Q(i)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::arith::{Coefficient, GaussianInt, GaussianPolynomial, GaussianRational, TwoVarLaurent};
use crate::complex::ChainComplex;
use crate::matrix::SparseMatrix;
use crate::reduce::simplify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    GaussianIntegers,
    GaussianRationals,
}

/// How the specialised complex is turned into homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Eliminate invertible entries first, then take normal forms of what remains.
    Eliminate,
    /// Normal forms of the full slices, no elimination.
    Direct,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("a must be 0 or 1, got {0}")]
    BadSpecialisation(i64),
    #[error("at a = 1 homology is computed over Q(i) only")]
    IntegralAtOne,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Group {
    pub free: usize,
    /// Non-unit invariant factors, canonical associates, in divisibility order.
    pub torsion: Vec<GaussianInt>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

/// Nonzero homology groups keyed by `(h, q)`; ungraded results use `q = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Homology {
    pub quantum_graded: bool,
    pub groups: BTreeMap<(i64, i64), Group>,
}

impl Homology {
    pub fn get(&self, h: i64, q: i64) -> Group {
        self.groups.get(&(h, q)).cloned().unwrap_or_default()
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.free).sum()
    }

    pub fn rank_at(&self, h: i64) -> usize {
        self.groups.iter().filter(|((i, _), _)| *i == h).map(|(_, g)| g.free).sum()
    }
}

/// Smith normal form `U * M * V = D` over `Z[i]`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<GaussianInt>,
    pub u: Vec<Vec<GaussianInt>>,
    pub v: Vec<Vec<GaussianInt>>,
}

pub fn smith_normal_form(m: &[Vec<GaussianInt>], ncols: usize) -> SmithForm {
    snf(m, ncols, true)
}

/// Invariant factors only.
pub fn invariant_factors(m: &[Vec<GaussianInt>], ncols: usize) -> Vec<GaussianInt> {
    snf(m, ncols, false).diagonal
}

fn identity(n: usize) -> Vec<Vec<GaussianInt>> {
    (0..n).map(|i| (0..n).map(|j| GaussianInt::from_int((i == j) as i64)).collect()).collect()
}

fn snf(m: &[Vec<GaussianInt>], ncols: usize, track: bool) -> SmithForm {
    let nrows = m.len();
    let mut a: Vec<Vec<GaussianInt>> = m.to_vec();
    let mut u = if track { identity(nrows) } else { Vec::new() };
    let mut v = if track { identity(ncols) } else { Vec::new() };
    let mut diagonal = Vec::new();

    let row_op = |a: &mut Vec<Vec<GaussianInt>>, u: &mut Vec<Vec<GaussianInt>>, dst: usize, src: usize, q: &GaussianInt| {
        // row_dst -= q * row_src
        let (s, d) = if src < dst {
            let (lo, hi) = a.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = a.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x -= &(q * y);
            }
        }
        if track {
            let srow = u[src].clone();
            for (x, y) in u[dst].iter_mut().zip(srow.iter()) {
                *x -= &(q * y);
            }
        }
    };
    let col_op = |a: &mut Vec<Vec<GaussianInt>>, v: &mut Vec<Vec<GaussianInt>>, dst: usize, src: usize, q: &GaussianInt| {
        for row in a.iter_mut() {
            if !row[src].is_zero() {
                let t = q * &row[src];
                row[dst] -= &t;
            }
        }
        if track {
            for row in v.iter_mut() {
                let t = q * &row[src];
                row[dst] -= &t;
            }
        }
    };

    for t in 0..nrows.min(ncols) {
        // Smallest-norm pivot in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.map(|(bi, bj)| x.norm() < a[bi][bj].norm()).unwrap_or(true) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, &mut u, t, pi, track);
        swap_cols(&mut a, &mut v, t, pj, track);
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if !a[i][t].is_zero() {
                    let (q, _) = a[i][t].div_rem(&a[t][t]).unwrap();
                    row_op(&mut a, &mut u, i, t, &q);
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..ncols {
                if !a[t][j].is_zero() {
                    let (q, _) = a[t][j].div_rem(&a[t][t]).unwrap();
                    col_op(&mut a, &mut v, j, t, &q);
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                let mut best = (t, t);
                for i in t..nrows {
                    if !a[i][t].is_zero() && a[i][t].norm() < a[best.0][best.1].norm() {
                        best = (i, t);
                    }
                }
                for j in t..ncols {
                    if !a[t][j].is_zero() && a[t][j].norm() < a[best.0][best.1].norm() {
                        best = (t, j);
                    }
                }
                swap_rows(&mut a, &mut u, t, best.0, track);
                swap_cols(&mut a, &mut v, t, best.1, track);
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !a[t][t].divides(&a[i][j])));
            match bad {
                Some(i) => {
                    let minus_one = GaussianInt::from_int(-1);
                    row_op(&mut a, &mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        // Normalise the pivot to its canonical associate.
        let unit = a[t][t].canonical_unit();
        if !unit.is_one() {
            for x in a[t].iter_mut() {
                *x = &*x * &unit;
            }
            if track {
                for x in u[t].iter_mut() {
                    *x = &*x * &unit;
                }
            }
        }
        diagonal.push(a[t][t].clone());
    }
    SmithForm { diagonal, u, v }
}

fn swap_rows(a: &mut [Vec<GaussianInt>], u: &mut [Vec<GaussianInt>], i: usize, j: usize, track: bool) {
    if i != j {
        a.swap(i, j);
        if track {
            u.swap(i, j);
        }
    }
}

fn swap_cols(a: &mut [Vec<GaussianInt>], v: &mut [Vec<GaussianInt>], i: usize, j: usize, track: bool) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        if track {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }
}

/// Rank over a field (every nonzero entry is invertible).
pub fn field_rank<R: Coefficient>(m: &SparseMatrix<R>) -> usize {
    let mut a = m.to_dense();
    let ncols = m.ncols();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][col].pivot_inverse().expect("field element");
        for r in rank + 1..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for c in col..ncols {
                if !a[rank][c].is_zero() {
                    let t = f.mul(&a[rank][c]);
                    a[r][c] = a[r][c].sub(&t);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn slice<R: Coefficient>(c: &ChainComplex<R>, k: usize, q: Option<i64>) -> (Vec<usize>, Vec<usize>) {
    let pick = |gens: &[crate::complex::Generator]| -> Vec<usize> {
        (0..gens.len()).filter(|&i| q.map(|q| gens[i].q == q).unwrap_or(true)).collect()
    };
    let src = pick(&c.gens[k]);
    let tgt = if k + 1 < c.gens.len() { pick(&c.gens[k + 1]) } else { Vec::new() };
    (tgt, src)
}

fn block<R: Coefficient>(c: &ChainComplex<R>, k: usize, q: Option<i64>) -> SparseMatrix<R> {
    let (rows, cols) = slice(c, k, q);
    match c.diffs.get(k) {
        Some(m) => m.restrict(&rows, &cols),
        None => SparseMatrix::new(rows.len(), cols.len()),
    }
}

fn quantum_degrees<R>(c: &ChainComplex<R>) -> Vec<i64> {
    let mut qs: Vec<i64> = c.gens.iter().flatten().map(|g| g.q).collect();
    qs.sort_unstable();
    qs.dedup();
    qs
}

fn homology_over_field<R: Coefficient>(c: &ChainComplex<R>, graded: bool) -> Homology {
    let mut out = Homology { quantum_graded: graded, groups: BTreeMap::new() };
    let slices: Vec<Option<i64>> = if graded { quantum_degrees(c).into_iter().map(Some).collect() } else { vec![None] };
    for q in slices {
        let ranks: Vec<usize> = (0..c.gens.len()).map(|k| field_rank(&block(c, k, q))).collect();
        for k in 0..c.gens.len() {
            let n = slice(c, k, q).1.len();
            let incoming = if k > 0 { ranks[k - 1] } else { 0 };
            let free = n - ranks[k] - incoming;
            if free > 0 {
                out.groups.insert((c.min_h + k as i64, q.unwrap_or(0)), Group { free, torsion: Vec::new() });
            }
        }
    }
    out
}

fn homology_over_zi(c: &ChainComplex<GaussianInt>) -> Homology {
    let mut out = Homology { quantum_graded: true, groups: BTreeMap::new() };
    for q in quantum_degrees(c) {
        let mut factors: Vec<Vec<GaussianInt>> = Vec::new();
        for k in 0..c.gens.len() {
            let m = block(c, k, Some(q));
            factors.push(invariant_factors(&m.to_dense(), m.ncols()));
        }
        for k in 0..c.gens.len() {
            let n = slice(c, k, Some(q)).1.len();
            let incoming: &[GaussianInt] = if k > 0 { &factors[k - 1] } else { &[] };
            let free = n - factors[k].len() - incoming.len();
            let torsion: Vec<GaussianInt> = incoming.iter().filter(|x| !x.is_unit()).cloned().collect();
            let g = Group { free, torsion };
            if !g.is_zero() {
                out.groups.insert((c.min_h + k as i64, q), g);
            }
        }
    }
    out
}

/// Homology of the complex specialised at `a`.
pub fn homology_at(
    c: &ChainComplex<GaussianPolynomial>,
    a: i64,
    coeffs: Coefficients,
    strategy: Strategy,
) -> Result<Homology, HomologyError> {
    let value = match a {
        0 | 1 => GaussianInt::from_int(a),
        _ => return Err(HomologyError::BadSpecialisation(a)),
    };
    let eliminate = strategy == Strategy::Eliminate;
    match (a, coeffs) {
        (1, Coefficients::GaussianIntegers) => Err(HomologyError::IntegralAtOne),
        (_, Coefficients::GaussianRationals) => {
            let s: ChainComplex<GaussianRational> = c.map_coefficients(|p| GaussianRational::from(p.eval(&value)));
            let s = if eliminate { simplify(s).0 } else { s };
            Ok(homology_over_field(&s, a == 0))
        }
        (_, Coefficients::GaussianIntegers) => {
            let s: ChainComplex<GaussianInt> = c.map_coefficients(|p| p.eval(&value));
            let s = if eliminate { simplify(s).0 } else { s };
            Ok(homology_over_zi(&s))
        }
    }
}

/// `sum rank H^{i,j} t^i q^j` over the free parts.
pub fn poincare_polynomial(h: &Homology) -> TwoVarLaurent {
    let mut p = TwoVarLaurent::zero();
    for ((i, j), g) in &h.groups {
        p.add_term(*i, *j, g.free as i64);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, euler_characteristic, Mode};
    use crate::diagram::LinkDiagram;

    fn g(a: i64, b: i64) -> GaussianInt {
        GaussianInt::new(a, b)
    }

    #[test]
    fn smith_form_of_small_matrix() {
        let m = vec![vec![g(2, 0), g(0, 0)], vec![g(0, 0), g(1, 1)]];
        let s = smith_normal_form(&m, 2);
        assert_eq!(s.diagonal, vec![g(1, 1), g(2, 0)]);
    }

    #[test]
    fn figure_eight_at_zero_over_qi() {
        let d = LinkDiagram::parse("PD[X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]]").unwrap();
        let c = build_complex(&d, Mode::Faithful).unwrap();
        let h = homology_at(&c, 0, Coefficients::GaussianRationals, Strategy::Eliminate).unwrap();
        let keys: Vec<(i64, i64)> = h.groups.keys().copied().collect();
        assert_eq!(keys, vec![(-2, 5), (-1, 1), (0, -1), (0, 1), (1, -1), (2, -5)]);
        assert!(h.groups.values().all(|g| g.free == 1));
        assert_eq!(poincare_polynomial(&h).at_t_minus_one(), euler_characteristic(&c));
    }

    #[test]
    fn integral_at_one_is_rejected() {
        let d = LinkDiagram::parse("PD[X[1,1,2,2]]").unwrap();
        let c = build_complex(&d, Mode::Faithful).unwrap();
        assert_eq!(
            homology_at(&c, 1, Coefficients::GaussianIntegers, Strategy::Eliminate),
            Err(HomologyError::IntegralAtOne)
        );
        assert_eq!(
            homology_at(&c, 2, Coefficients::GaussianRationals, Strategy::Eliminate),
            Err(HomologyError::BadSpecialisation(2))
        );
    }
}
