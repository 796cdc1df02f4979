//! Evaluation of closed seamed foams.
//!
//! A closed foam is recorded combinatorially: each facet is a connected
//! surface with a genus and a number of dots, and each seam is a circle
//! along which exactly two facet boundaries are glued, one of them marked
//! as the preferred side.

use alloc::vec::Vec;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{Coefficient, GaussianInt, GaussianPolynomial};
use crate::frobenius::{self, AlgElem};

type P = GaussianPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub genus: u32,
    pub dots: u32,
}

/// A singular circle with its two attached facets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Seam {
    pub preferred: usize,
    pub other: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Preferred,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FoamError {
    #[error("seam {seam} has {count} attachments, expected 2")]
    Attachments { seam: usize, count: usize },
    #[error("seam {seam} refers to missing facet {facet}")]
    MissingFacet { seam: usize, facet: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFoam {
    facets: Vec<Facet>,
    seams: Vec<Seam>,
}

impl ClosedFoam {
    /// Builds a foam from facets and, per seam, its ordered attachment list
    /// (preferred facet first).
    pub fn new(facets: Vec<Facet>, attachments: &[Vec<usize>]) -> Result<Self, FoamError> {
        let mut seams = Vec::with_capacity(attachments.len());
        for (s, att) in attachments.iter().enumerate() {
            if att.len() != 2 {
                return Err(FoamError::Attachments { seam: s, count: att.len() });
            }
            seams.push(Seam { preferred: att[0], other: att[1] });
        }
        Self::from_seams(facets, seams)
    }

    pub fn from_seams(facets: Vec<Facet>, seams: Vec<Seam>) -> Result<Self, FoamError> {
        for (s, seam) in seams.iter().enumerate() {
            for f in [seam.preferred, seam.other] {
                if f >= facets.len() {
                    return Err(FoamError::MissingFacet { seam: s, facet: f });
                }
            }
        }
        Ok(ClosedFoam { facets, seams })
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn seams(&self) -> &[Seam] {
        &self.seams
    }

    pub fn boundary_seams(&self, facet: usize) -> Vec<(usize, Side)> {
        let mut out = Vec::new();
        for (s, seam) in self.seams.iter().enumerate() {
            if seam.preferred == facet {
                out.push((s, Side::Preferred));
            }
            if seam.other == facet {
                out.push((s, Side::Other));
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (f, facet) in self.facets.iter().enumerate() {
            let b = self.boundary_seams(f).len() as i64;
            chi += 2 - 2 * facet.genus as i64 - b;
        }
        chi
    }

    pub fn total_dots(&self) -> u64 {
        self.facets.iter().map(|f| f.dots as u64).sum()
    }

    /// Quantum degree `-chi + 2 * dots`.
    pub fn degree(&self) -> i64 {
        -self.euler_characteristic() + 2 * self.total_dots() as i64
    }

    /// The same foam with the preferred side of `seam` swapped.
    pub fn reversed(&self, seam: usize) -> Self {
        let mut out = self.clone();
        let s = &mut out.seams[seam];
        core::mem::swap(&mut s.preferred, &mut s.other);
        out
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.facets.len();
        let mut facets = self.facets.clone();
        facets.extend_from_slice(&other.facets);
        let mut seams = self.seams.clone();
        seams.extend(other.seams.iter().map(|s| Seam { preferred: s.preferred + shift, other: s.other + shift }));
        ClosedFoam { facets, seams }
    }

    pub fn add_dot(&mut self, facet: usize) {
        self.facets[facet].dots += 1;
    }
}

/// Value of a closed connected surface of the given genus carrying `dots` dots.
pub fn evaluate_surface(genus: u32, dots: u32) -> P {
    if (genus + dots) % 2 == 0 {
        return P::zero();
    }
    let two_g = GaussianInt::from(BigInt::from(2u8).pow(genus));
    P::monomial(two_g, (genus + dots - 1) / 2)
}

/// Value of the ufo foam: two disks glued along one seam.
pub fn evaluate_ufo(pref_dots: u32, other_dots: u32) -> P {
    let x = AlgElem::basis(frobenius::X);
    let mut power = frobenius::unit();
    for _ in 0..pref_dots + other_dots {
        power = frobenius::multiply(&power, &x);
    }
    let sign = if other_dots % 2 == 0 { 1 } else { -1 };
    frobenius::counit(&power).mul(&P::constant(GaussianInt::new(0, sign)))
}

/// Evaluates a closed foam.
///
/// Cutting every seam and capping both sides expands the foam into a signed
/// sum of dotted closed surfaces. All surviving terms carry the same power
/// of `a`, so only the signed count of admissible cut choices is needed,
/// and that count is governed by a linear system over `GF(2)`.
pub fn evaluate_foam(foam: &ClosedFoam) -> P {
    let nf = foam.facets.len();
    let ns = foam.seams.len();
    let sum_g: u64 = foam.facets.iter().map(|f| f.genus as u64).sum();
    let parity_total = sum_g + foam.total_dots() + ns as u64 + nf as u64;
    if parity_total % 2 == 1 {
        return P::zero();
    }
    let a_exp = (sum_g + foam.total_dots() + ns as u64 - nf as u64) / 2;

    // x_s = 1 means the dot goes to the preferred side (factor -i),
    // x_s = 0 means it goes to the other side (factor i).
    let mut rows: Vec<BitRow> = (0..nf).map(|_| BitRow::new(ns + 1)).collect();
    for (f, facet) in foam.facets.iter().enumerate() {
        let mut rhs = 1 + facet.genus as u64 + facet.dots as u64;
        for seam in &foam.seams {
            if seam.other == f {
                rhs += 1;
            }
        }
        if rhs % 2 == 1 {
            rows[f].flip(ns);
        }
    }
    for (s, seam) in foam.seams.iter().enumerate() {
        rows[seam.preferred].flip(s);
        rows[seam.other].flip(s);
    }
    let ones = {
        let mut r = BitRow::new(ns + 1);
        for s in 0..ns {
            r.flip(s);
        }
        r
    };
    let Some(solved) = solve_gf2(rows, ns) else {
        return P::zero();
    };
    if !solved.in_row_space(&ones) {
        return P::zero();
    }
    let kernel_dim = (ns - solved.rank) as u32;
    let sign = if solved.particular_weight % 2 == 0 { 1i64 } else { -1 };
    let scalar = BigInt::from(2u8).pow(sum_g as u32 + kernel_dim) * BigInt::from(sign);
    let unit = GaussianInt::i_pow(ns as i64);
    P::monomial(&unit * &GaussianInt::from(scalar), a_exp as u32)
}

/// Reference evaluator: removes seams one at a time in the given order,
/// then reduces each closed surface by trading handles for `2X` and
/// contracting dots in the algebra.
pub fn evaluate_foam_by_surgery(foam: &ClosedFoam, order: &[usize]) -> P {
    let mut facets: Vec<(u32, u32)> = foam.facets.iter().map(|f| (f.genus, f.dots)).collect();
    surgery_step(&mut facets, &foam.seams, order, P::one())
}

fn surgery_step(facets: &mut Vec<(u32, u32)>, seams: &[Seam], order: &[usize], coeff: P) -> P {
    let Some((&s, rest)) = order.split_first() else {
        let mut value = coeff;
        for &(g, d) in facets.iter() {
            value = value.mul(&reduce_surface(g, d));
            if value.is_zero() {
                break;
            }
        }
        return value;
    };
    let seam = seams[s];
    let mut total = P::zero();
    for (target, unit) in [(seam.other, GaussianInt::new(0, 1)), (seam.preferred, GaussianInt::new(0, -1))] {
        facets[target].1 += 1;
        let c = coeff.mul(&P::constant(unit));
        total = total.add(&surgery_step(facets, seams, rest, c));
        facets[target].1 -= 1;
    }
    total
}

fn reduce_surface(genus: u32, dots: u32) -> P {
    let mut elem = frobenius::unit();
    let x = AlgElem::basis(frobenius::X);
    let two = P::from(2);
    for _ in 0..genus {
        elem = frobenius::multiply(&elem, &x).scale(&two);
    }
    for _ in 0..dots {
        elem = frobenius::multiply(&elem, &x);
    }
    frobenius::counit(&elem)
}

#[derive(Clone, Debug)]
struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    fn new(bits: usize) -> Self {
        BitRow { words: alloc::vec![0; bits.div_ceil(64)] }
    }
    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }
    fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }
    fn xor(&mut self, o: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= b;
        }
    }
}

struct Gf2Solution {
    rank: usize,
    pivots: Vec<(usize, BitRow)>,
    particular_weight: usize,
}

impl Gf2Solution {
    fn in_row_space(&self, v: &BitRow) -> bool {
        let mut v = v.clone();
        for (col, row) in &self.pivots {
            if v.get(*col) {
                v.xor(row);
            }
        }
        v.words.iter().all(|w| *w == 0)
    }
}

/// Row-reduces `[A | b]` with `ncols` variables; `None` if inconsistent.
fn solve_gf2(mut rows: Vec<BitRow>, ncols: usize) -> Option<Gf2Solution> {
    let mut pivots: Vec<(usize, BitRow)> = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor(&pivot);
            }
        }
        next += 1;
    }
    for row in &rows[next..] {
        if row.get(ncols) {
            return None;
        }
    }
    let mut weight = 0;
    for row in &rows[..next] {
        let col = (0..ncols).find(|&c| row.get(c)).unwrap();
        if row.get(ncols) {
            weight += 1;
        }
        let mut coeffs = row.clone();
        if coeffs.get(ncols) {
            coeffs.flip(ncols);
        }
        pivots.push((col, coeffs));
    }
    Some(Gf2Solution { rank: next, pivots, particular_weight: weight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn facet(genus: u32, dots: u32) -> Facet {
        Facet { genus, dots }
    }

    fn ufo(p: u32, o: u32) -> ClosedFoam {
        ClosedFoam::new(vec![facet(0, p), facet(0, o)], &[vec![0, 1]]).unwrap()
    }

    fn c(re: i64, im: i64, exp: u32) -> P {
        P::monomial(GaussianInt::new(re, im), exp)
    }

    #[test]
    fn closed_surfaces() {
        assert!(evaluate_surface(0, 0).is_zero());
        assert_eq!(evaluate_surface(0, 1), P::one());
        assert_eq!(evaluate_surface(1, 0), P::from(2));
        assert_eq!(evaluate_surface(3, 0), c(8, 0, 1));
        assert_eq!(evaluate_surface(0, 3), P::a());
        for g in 0..5 {
            for d in 0..6 {
                assert_eq!(evaluate_surface(g, d), reduce_surface(g, d));
            }
        }
    }

    #[test]
    fn ufo_values() {
        assert_eq!(evaluate_foam(&ufo(0, 0)), P::zero());
        assert_eq!(evaluate_foam(&ufo(1, 0)), c(0, 1, 0));
        assert_eq!(evaluate_foam(&ufo(0, 1)), c(0, -1, 0));
        for p in 0..5 {
            for o in 0..5 {
                assert_eq!(evaluate_foam(&ufo(p, o)), evaluate_ufo(p, o), "ufo {} {}", p, o);
            }
        }
    }

    #[test]
    fn ufo_with_swapped_preference() {
        let f = ufo(1, 0).reversed(0);
        assert_eq!(evaluate_foam(&f), c(0, -1, 0));
    }

    #[test]
    fn malformed_seams() {
        let err = ClosedFoam::new(vec![facet(0, 0)], &[vec![0]]).unwrap_err();
        assert_eq!(err, FoamError::Attachments { seam: 0, count: 1 });
        let err = ClosedFoam::new(vec![facet(0, 0)], &[vec![0, 3]]).unwrap_err();
        assert_eq!(err, FoamError::MissingFacet { seam: 0, facet: 3 });
    }

    #[test]
    fn self_glued_seam_vanishes() {
        let f = ClosedFoam::new(vec![facet(0, 1)], &[vec![0, 0]]).unwrap();
        assert!(evaluate_foam(&f).is_zero());
        assert!(evaluate_foam_by_surgery(&f, &[0]).is_zero());
    }

    #[test]
    fn theta_like_foam_matches_surgery() {
        // Three disks meeting along three seams in a chain of spheres.
        let f = ClosedFoam::new(
            vec![facet(0, 0), facet(1, 1), facet(0, 2)],
            &[vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        assert_eq!(evaluate_foam(&f), evaluate_foam_by_surgery(&f, &[0, 1, 2]));
    }
}
