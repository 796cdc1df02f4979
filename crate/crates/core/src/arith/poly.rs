use alloc::collections::BTreeMap;
use core::fmt;

use num_bigint::BigInt;

use super::{Coefficient, GaussianInt};

/// Internal degree carried by one power of `a`.
pub const A_DEGREE: i64 = 4;

/// A polynomial in `a` with Gaussian integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianPolynomial {
    terms: BTreeMap<u32, GaussianInt>,
}

impl GaussianPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianInt::one())
    }

    pub fn constant(c: GaussianInt) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: GaussianInt, exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        GaussianPolynomial { terms }
    }

    /// The variable `a`.
    pub fn a() -> Self {
        Self::monomial(GaussianInt::one(), 1)
    }

    pub fn a_pow(exp: u32) -> Self {
        Self::monomial(GaussianInt::one(), exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussianInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, exp: u32) -> GaussianInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// The exponent of `a` when the polynomial is a single monomial.
    pub fn monomial_exponent(&self) -> Option<u32> {
        if self.terms.len() == 1 {
            self.terms.keys().next().copied()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<GaussianInt> {
        match self.terms.len() {
            0 => Some(GaussianInt::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_constant().map(|c| c.is_unit()).unwrap_or(false)
    }

    pub fn scale(&self, c: &GaussianInt) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }

    pub fn add_term(&mut self, exp: u32, c: &GaussianInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn eval(&self, x: &GaussianInt) -> GaussianInt {
        let mut out = GaussianInt::zero();
        for (k, c) in &self.terms {
            out += &(c * &x.pow(*k));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = Coefficient::mul(&acc, self);
        }
        acc
    }
}

impl From<GaussianInt> for GaussianPolynomial {
    fn from(c: GaussianInt) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for GaussianPolynomial {
    fn from(n: i64) -> Self {
        Self::constant(GaussianInt::from_int(n))
    }
}

impl Coefficient for GaussianPolynomial {
    fn zero() -> Self {
        Self::zero()
    }
    fn one() -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, &-c);
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                out.add_term(k1 + k2, &(c1 * c2));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        GaussianPolynomial { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
    fn pivot_inverse(&self) -> Option<Self> {
        self.as_constant().and_then(|c| c.unit_inverse()).map(Self::constant)
    }
    fn internal_degree(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        self.monomial_exponent().map(|k| A_DEGREE * k as i64)
    }
    fn from_i64(n: i64) -> Self {
        n.into()
    }
}

impl fmt::Display for GaussianPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let negative_real = c.im == BigInt::from(0) && c.re < BigInt::from(0);
            let negative_imag = c.re == BigInt::from(0) && c.im < BigInt::from(0);
            let (sep, shown) = if idx > 0 && (negative_real || negative_imag) {
                (" - ", -c)
            } else if idx > 0 {
                (" + ", c.clone())
            } else {
                ("", c.clone())
            };
            write!(f, "{}", sep)?;
            if *k == 0 {
                write!(f, "{}", fmt_coeff(&shown))?;
                continue;
            }
            let var = if *k == 1 { alloc::string::String::from("a") } else { alloc::format!("a^{}", k) };
            if shown.is_one() {
                write!(f, "{}", var)?;
            } else if shown == -GaussianInt::one() {
                write!(f, "-{}", var)?;
            } else if shown.is_compound() {
                write!(f, "({})*{}", shown, var)?;
            } else {
                write!(f, "{}*{}", shown, var)?;
            }
        }
        Ok(())
    }
}

fn fmt_coeff(c: &GaussianInt) -> alloc::string::String {
    alloc::format!("{}", c)
}
