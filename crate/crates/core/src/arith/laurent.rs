use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// Laurent polynomial in `q` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    /// `q + q^-1`.
    pub fn quantum_two() -> Self {
        Self::monomial(1, 1) + Self::monomial(1, -1)
    }

    pub fn add_term(&mut self, exp: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(exp).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; `None` unless `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (&dlead, &dc) = d.terms.iter().next_back()?;
        let dlow = *d.terms.keys().next()?;
        let floor = self.terms.keys().next().copied().unwrap_or(0) - dlow;
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some((&lead, &c)) = rem.terms.iter().next_back() {
            if c % dc != 0 || lead - dlead < floor {
                return None;
            }
            let t = Self::monomial(c / dc, lead - dlead);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Substitute `q -> q^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (-k, *c)).collect() }
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, *c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, -*c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

fn write_terms<K>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (K, i64)>,
    mono: impl Fn(&K) -> String,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        let m = mono(&k);
        let mag = c.unsigned_abs();
        let sep = match (first, c < 0) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        write!(f, "{}", sep)?;
        if m.is_empty() {
            write!(f, "{}", mag)?;
        } else if mag == 1 {
            write!(f, "{}", m)?;
        } else {
            write!(f, "{}*{}", mag, m)?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => String::from(var),
        _ => alloc::format!("{}^{}", var, e),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms(), |e| power("q", *e))
    }
}

/// Integer polynomial in `t^{±1}` and `q^{±1}`, used for Poincaré series.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwoVarLaurent {
    terms: BTreeMap<(i64, i64), i64>,
}

impl TwoVarLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, t_exp: i64, q_exp: i64, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((t_exp, q_exp)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(t_exp, q_exp));
        }
    }

    pub fn coeff(&self, t_exp: i64, q_exp: i64) -> i64 {
        self.terms.get(&(t_exp, q_exp)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, *c))
    }

    /// Specialise `t = -1`.
    pub fn at_t_minus_one(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((t, q), c) in self.terms() {
            out.add_term(q, if t.rem_euclid(2) == 0 { c } else { -c });
        }
        out
    }
}

impl fmt::Display for TwoVarLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms(), |(t, q)| {
            let (a, b) = (power("t", *t), power("q", *q));
            match (a.is_empty(), b.is_empty()) {
                (true, _) => b,
                (_, true) => a,
                _ => alloc::format!("{}*{}", a, b),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display_matches_examples() {
        let two = LaurentPoly::quantum_two();
        assert_eq!(two.to_string(), "q^-1 + q");
        assert_eq!(two.pow(2).to_string(), "q^-2 + 2 + q^2");
        assert_eq!((-LaurentPoly::monomial(3, -4)).to_string(), "-3*q^-4");
    }

    #[test]
    fn exact_division() {
        let two = LaurentPoly::quantum_two();
        let p = &two.pow(3) * &LaurentPoly::monomial(-1, 5);
        assert_eq!(p.div_exact(&two), Some(&two.pow(2) * &LaurentPoly::monomial(-1, 5)));
        assert_eq!(LaurentPoly::one().div_exact(&two), None);
    }

    #[test]
    fn poincare_specialisation() {
        let mut p = TwoVarLaurent::zero();
        p.add_term(0, 1, 1);
        p.add_term(1, 3, 2);
        assert_eq!(p.at_t_minus_one(), LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(-2, 3));
        assert_eq!(p.to_string(), "q + 2*t*q^3");
    }
}
