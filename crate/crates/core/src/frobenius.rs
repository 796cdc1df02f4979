//! The rank-two Frobenius algebra `A = R[X]/(X^2 - a)` over `R = Z[i][a]`.
//!
//! Basis elements are encoded as bits: `0` is `1`, `1` is `X`.

use alloc::vec::Vec;

use crate::arith::{Coefficient, GaussianPolynomial};

type P = GaussianPolynomial;

pub const ONE: u8 = 0;
pub const X: u8 = 1;

/// Quantum degree of a basis element.
pub fn degree(b: u8) -> i64 {
    if b == X {
        1
    } else {
        -1
    }
}

/// An element `c0 * 1 + c1 * X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem {
    pub c: [P; 2],
}

impl AlgElem {
    pub fn basis(b: u8) -> Self {
        let mut c = [P::zero(), P::zero()];
        c[b as usize] = P::one();
        AlgElem { c }
    }

    pub fn zero() -> Self {
        AlgElem { c: [P::zero(), P::zero()] }
    }

    pub fn add(&self, o: &Self) -> Self {
        AlgElem { c: [self.c[0].add(&o.c[0]), self.c[1].add(&o.c[1])] }
    }

    pub fn scale(&self, s: &P) -> Self {
        AlgElem { c: [self.c[0].mul(s), self.c[1].mul(s)] }
    }
}

/// Product of two basis elements.
pub fn merge_basis(b1: u8, b2: u8) -> (u8, P) {
    match (b1, b2) {
        (ONE, ONE) => (ONE, P::one()),
        (ONE, X) | (X, ONE) => (X, P::one()),
        _ => (ONE, P::a()),
    }
}

/// Coproduct of a basis element as a list of `((left, right), coefficient)`.
pub fn split_basis(b: u8) -> Vec<((u8, u8), P)> {
    if b == ONE {
        alloc::vec![((ONE, X), P::one()), ((X, ONE), P::one())]
    } else {
        alloc::vec![((X, X), P::one()), ((ONE, ONE), P::a())]
    }
}

pub fn unit() -> AlgElem {
    AlgElem::basis(ONE)
}

pub fn counit(x: &AlgElem) -> P {
    x.c[1].clone()
}

pub fn multiply(x: &AlgElem, y: &AlgElem) -> AlgElem {
    let mut out = AlgElem::zero();
    for b1 in [ONE, X] {
        for b2 in [ONE, X] {
            let (b, k) = merge_basis(b1, b2);
            let coeff = x.c[b1 as usize].mul(&y.c[b2 as usize]).mul(&k);
            out.c[b as usize] = out.c[b as usize].add(&coeff);
        }
    }
    out
}

/// Multiplication by `X`, the effect of a dot.
pub fn dot_action(x: &AlgElem) -> AlgElem {
    multiply(&AlgElem::basis(X), x)
}

/// Coproduct; result indexed `[left][right]`.
pub fn comultiply(x: &AlgElem) -> [[P; 2]; 2] {
    let mut out = [[P::zero(), P::zero()], [P::zero(), P::zero()]];
    for b in [ONE, X] {
        for ((l, r), k) in split_basis(b) {
            let v = out[l as usize][r as usize].add(&x.c[b as usize].mul(&k));
            out[l as usize][r as usize] = v;
        }
    }
    out
}
