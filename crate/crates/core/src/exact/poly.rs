use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;

/// Sparse polynomial in `alpha` and `beta` with rational coefficients.
///
/// Terms are keyed by the exponent pair `(i, j)` of `alpha^i beta^j`; zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<(u64, u64), Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u64, j: u64) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn alpha() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn beta() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `alpha^i beta^j`.
    pub fn alpha_beta(i: u64, j: u64) -> Self {
        Self::monomial(Rational::one(), i, j)
    }

    /// `1 - alpha^k`, or `1` when `k` is `None` (`alpha^inf = 0`).
    pub fn one_minus_alpha_pow(k: Option<u64>) -> Self {
        match k {
            Some(k) => Self::one() - Self::alpha_beta(k, 0),
            None => Self::one(),
        }
    }

    /// `1 - beta^l`, or `1` when `l` is `None`.
    pub fn one_minus_beta_pow(l: Option<u64>) -> Self {
        match l {
            Some(l) => Self::one() - Self::alpha_beta(0, l),
            None => Self::one(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = ((u64, u64), Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u64, j: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, i: u64, j: u64) -> Rational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u64, u64), &Rational)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree `i + j`, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `alpha^i beta^j`.
    pub fn shift(&self, i: u64, j: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + i, b + j), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    pub fn eval(&self, alpha: &Rational, beta: &Rational) -> Rational {
        // Exponents may be huge and sparse, so powers are taken per term.
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * rpow(alpha, i) * rpow(beta, j);
        }
        acc
    }
}

fn rpow(x: &Rational, e: u64) -> Rational {
    num_traits::pow::Pow::pow(x, num_bigint::BigUint::from(e))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_integral() && rhs.is_integral() {
            let mut acc: BTreeMap<(u64, u64), BigInt> = BTreeMap::new();
            for (&(a, b), x) in &self.terms {
                for (&(c, d), y) in &rhs.terms {
                    *acc.entry((a + c, b + d)).or_default() += x.numer() * y.numer();
                }
            }
            return Poly {
                terms: acc
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| (k, Rational::from_integer(v)))
                    .collect(),
            };
        }
        let mut out = Poly::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term(a + c, b + d, x * y);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if i > 0 {
                write!(f, "*a^{i}")?;
            }
            if j > 0 {
                write!(f, "*b^{j}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn arithmetic() {
        let a = Poly::alpha();
        let b = Poly::beta();
        let p = &(&Poly::one() - &a) * &(&Poly::one() + &a);
        assert_eq!(p, &Poly::one() - &Poly::alpha_beta(2, 0));
        let q = (&a + &b).pow(3);
        assert_eq!(q.coeff(2, 1), rat(3, 1));
        assert_eq!(q.n_terms(), 4);
        assert!((&q - &q).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = &Poly::one() - &(&Poly::alpha() + &Poly::beta());
        let h = rat(-1, 2);
        assert_eq!(p.eval(&h, &h), rat(2, 1));
        let big = Poly::alpha_beta(1_000_000, 0);
        assert_eq!(big.eval(&rat(1, 1), &rat(0, 1)), rat(1, 1));
    }
}
