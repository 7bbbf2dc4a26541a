use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{pow2, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Alpha,
    Beta,
}

/// Which coefficients `(i, j)` a weighted sum runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    All,
    /// `i - j >= a`
    AtLeast(i64),
    /// `i - j == m`
    Exactly(i64),
}

impl Region {
    fn contains(self, i: usize, j: usize) -> bool {
        let d = i as i64 - j as i64;
        match self {
            Region::All => true,
            Region::AtLeast(a) => d >= a,
            Region::Exactly(m) => d == m,
        }
    }
}

/// Bivariate power series in `alpha`, `beta`, truncated to the box
/// `i <= order`, `j <= order`. Coefficients outside the box are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

impl BiSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![Rational::zero(); (order + 1) * (order + 1)],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Truncation of a polynomial.
    pub fn from_poly(p: &Poly, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (&(i, j), c) in p.terms() {
            if i <= order as u64 && j <= order as u64 {
                let idx = s.index(i as usize, j as usize);
                s.coeffs[idx] += c;
            }
        }
        s
    }

    /// `1 / (1 - var)` truncated to `order`.
    pub fn geom_inv(var: Var, order: usize) -> Self {
        let mut s = Self::zero(order);
        for k in 0..=order {
            let idx = match var {
                Var::Alpha => s.index(k, 0),
                Var::Beta => s.index(0, k),
            };
            s.coeffs[idx] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn index(&self, i: usize, j: usize) -> usize {
        i * (self.order + 1) + j
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rational {
        assert!(
            i <= self.order && j <= self.order,
            "coefficient outside truncation box"
        );
        &self.coeffs[self.index(i, j)]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: Rational) {
        let idx = self.index(i, j);
        self.coeffs[idx] = c;
    }

    /// Nonzero coefficients in row-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        let w = self.order + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (k / w, k % w, c))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut s = Self::zero(order);
        for i in 0..=order {
            for j in 0..=order {
                s.set_coeff(i, j, self.coeff(i, j).clone());
            }
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let (a, b) = (self.truncate(order), other.truncate(order));
        Self {
            order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        let lhs: Vec<_> = self
            .nonzero()
            .filter(|&(i, j, _)| i <= order && j <= order)
            .collect();
        let rhs: Vec<_> = other
            .nonzero()
            .filter(|&(i, j, _)| i <= order && j <= order)
            .collect();
        for &(i, j, x) in &lhs {
            for &(k, l, y) in &rhs {
                if i + k <= order && j + l <= order {
                    let idx = out.index(i + k, j + l);
                    out.coeffs[idx] += x * y;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.order), |acc, _| acc.mul(self))
    }

    /// `sum 2^{-(i+j)} [alpha^i beta^j]` over the stored coefficients in
    /// `region`. For a series whose full weighted sum is 1 the truncation
    /// residual is `1 - weighted_partial_mass(Region::All)`.
    pub fn weighted_partial_mass(&self, region: Region) -> Rational {
        let mut acc = Rational::zero();
        for (i, j, c) in self.nonzero() {
            if region.contains(i, j) {
                acc += c * pow2(-((i + j) as i64));
            }
        }
        acc
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| *c >= Rational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn identities() {
        assert_eq!(BiSeries::one(4).mul(&BiSeries::one(4)), BiSeries::one(4));
        let one_minus_alpha = BiSeries::from_poly(&(&Poly::one() - &Poly::alpha()), 3);
        assert_eq!(
            BiSeries::geom_inv(Var::Alpha, 3).mul(&one_minus_alpha),
            BiSeries::one(3)
        );
        let ab = BiSeries::from_poly(&Poly::alpha_beta(1, 1), 2);
        assert_eq!(ab.nonzero().count(), 1);
        assert_eq!(*ab.coeff(1, 1), rat(1, 1));
    }

    #[test]
    fn geometric() {
        let g = BiSeries::geom_inv(Var::Alpha, 2);
        assert_eq!(
            g,
            BiSeries::from_poly(
                &Poly::from_terms([
                    ((0, 0), rat(1, 1)),
                    ((1, 0), rat(1, 1)),
                    ((2, 0), rat(1, 1))
                ]),
                2
            )
        );
        assert_eq!(BiSeries::geom_inv(Var::Beta, 0), BiSeries::one(0));
        assert_eq!(*BiSeries::geom_inv(Var::Alpha, 8).coeff(5, 0), rat(1, 1));
    }

    #[test]
    fn weighted_masses() {
        // alpha / (1 - beta) truncated at 10
        let s = BiSeries::from_poly(&Poly::alpha(), 10).mul(&BiSeries::geom_inv(Var::Beta, 10));
        let upper = s.weighted_partial_mass(Region::AtLeast(0));
        // 1/2 (alpha^1 beta^0) + 1/4 (alpha^1 beta^1); i - j >= 0 keeps j <= 1
        assert_eq!(upper, rat(3, 4));
        let all = s.weighted_partial_mass(Region::All);
        assert!(rat(1, 1) - all < pow2(-10));
        assert_eq!(
            BiSeries::one(3).weighted_partial_mass(Region::Exactly(0)),
            rat(1, 1)
        );
        let ab = BiSeries::from_poly(&Poly::alpha_beta(1, 1), 4);
        assert_eq!(ab.weighted_partial_mass(Region::Exactly(0)), rat(1, 4));
    }
}
