use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A Gaussian integer `re + im*i` with arbitrary precision parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt { re: re.into(), im: im.into() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(n, 0)
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::new(1, 0),
            1 => Self::new(0, 1),
            2 => Self::new(-1, 0),
            _ => Self::new(0, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianInt { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Exponent `k` with `self == i^k`, if `self` is a unit.
    pub fn unit_exponent(&self) -> Option<u8> {
        if !self.is_unit() {
            return None;
        }
        Some(if self.re.is_one() {
            0
        } else if self.im.is_one() {
            1
        } else if self.re.is_negative() {
            2
        } else {
            3
        })
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.unit_exponent().map(|k| Self::i_pow(-(k as i64)))
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        GaussianInt { re: &self.re * n, im: &self.im * n }
    }

    /// Euclidean division: `self = q*d + r` with `N(r) < N(d)`.
    ///
    /// Each coordinate of the exact quotient is rounded to the nearest
    /// integer, ties broken toward zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let num = self * &d.conj();
        let q = GaussianInt { re: round_div(&num.re, &n), im: round_div(&num.im, &n) };
        let r = self - &(&q * d);
        Some((q, r))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, x: &Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// The associate `u * self` lying in `re > 0, im >= 0` (zero maps to zero).
    pub fn canonical_associate(&self) -> Self {
        let mut x = self.clone();
        if x.is_zero() {
            return x;
        }
        while !(x.re.is_positive() && !x.im.is_negative()) {
            x = x.mul_i();
        }
        x
    }

    /// Unit `u` with `u * self == self.canonical_associate()`.
    pub fn canonical_unit(&self) -> Self {
        let mut u = Self::one();
        let mut x = self.clone();
        if x.is_zero() {
            return u;
        }
        while !(x.re.is_positive() && !x.im.is_negative()) {
            x = x.mul_i();
            u = u.mul_i();
        }
        u
    }

    pub fn mul_i(&self) -> Self {
        GaussianInt { re: -&self.im, im: self.re.clone() }
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).unwrap();
            x = y;
            y = r;
        }
        x.canonical_associate()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_plain_string(&self) -> String {
        alloc::format!("{}", self)
    }

    /// True when the value has both a real and an imaginary part.
    pub fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

fn round_div(a: &BigInt, n: &BigInt) -> BigInt {
    let (q, r) = a.abs().div_rem(n);
    let q = if (&r + &r) > *n { q + 1 } else { q };
    if a.is_negative() {
        -q
    } else {
        q
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |f: &mut fmt::Formatter<'_>, im: &BigInt, lead: bool| {
            let sign = if im.is_negative() { "-" } else if lead { "" } else { "+" };
            let mag = im.abs();
            if mag.is_one() {
                write!(f, "{}i", sign)
            } else {
                write!(f, "{}{}i", sign, mag)
            }
        };
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            im_part(f, &self.im, true)
        } else {
            write!(f, "{}", self.re)?;
            im_part(f, &self.im, false)
        }
    }
}

impl From<i64> for GaussianInt {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for GaussianInt {
    fn from(n: BigInt) -> Self {
        GaussianInt { re: n, im: BigInt::zero() }
    }
}

impl<'a> Add<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn add(self, o: &GaussianInt) -> GaussianInt {
        GaussianInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn sub(self, o: &GaussianInt) -> GaussianInt {
        GaussianInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn mul(self, o: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, o: GaussianInt) -> GaussianInt {
        &self + &o
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, o: GaussianInt) -> GaussianInt {
        &self - &o
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, o: GaussianInt) -> GaussianInt {
        &self * &o
    }
}

impl AddAssign<&GaussianInt> for GaussianInt {
    fn add_assign(&mut self, o: &GaussianInt) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianInt> for GaussianInt {
    fn sub_assign(&mut self, o: &GaussianInt) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -&self.re, im: -&self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn g(a: i64, b: i64) -> GaussianInt {
        GaussianInt::new(a, b)
    }

    #[test]
    fn division_example() {
        let (q, r) = g(5, 0).div_rem(&g(1, 1)).unwrap();
        assert_eq!(q, g(2, -2));
        assert_eq!(r, g(1, 0));
    }

    #[test]
    fn division_by_zero() {
        assert!(g(3, 1).div_rem(&g(0, 0)).is_none());
    }

    #[test]
    fn two_is_i_power_times_square() {
        let t = g(1, 1).pow(2);
        assert_eq!(&g(0, -1) * &t, g(2, 0));
        assert_eq!(GaussianInt::gcd(&g(2, 0), &g(1, 1)), g(1, 1));
    }

    #[test]
    fn display() {
        assert_eq!(g(0, 0).to_string(), "0");
        assert_eq!(g(1, 1).to_string(), "1+i");
        assert_eq!(g(1, -1).to_string(), "1-i");
        assert_eq!(g(0, -1).to_string(), "-i");
        assert_eq!(g(-3, 2).to_string(), "-3+2i");
        assert_eq!(g(0, 5).to_string(), "5i");
    }

    #[test]
    fn canonical_associates() {
        for z in [g(1, 1), g(-1, 1), g(-1, -1), g(1, -1)] {
            assert_eq!(z.canonical_associate(), g(1, 1));
            assert_eq!(&z.canonical_unit() * &z, g(1, 1));
        }
        assert_eq!(g(0, 3).canonical_associate(), g(3, 0));
    }

    #[test]
    fn unit_exponents() {
        for k in 0..4 {
            let u = GaussianInt::i_pow(k);
            assert_eq!(u.unit_exponent(), Some(k as u8));
            assert!((&u * &u.unit_inverse().unwrap()).is_one());
        }
        assert_eq!(g(2, 0).unit_exponent(), None);
    }
}
