use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::poly::Poly;
use super::rational::{pow2, Rational};

/// Finite sum `sum_j c_j e(j theta)` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FourierPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl FourierPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (j, c) in terms {
            p.add_term(j, c);
        }
        p
    }

    /// Substitutes `alpha = e(theta)/2`, `beta = e(-theta)/2`, which sends
    /// `alpha^i beta^j` to `2^{-(i+j)} e((i-j) theta)`.
    pub fn from_poly(p: &Poly) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in p.terms() {
            let freq = i as i64 - j as i64;
            out.add_term(freq, c * pow2(-((i + j) as i64)));
        }
        out
    }

    pub fn add_term(&mut self, freq: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(freq).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&freq);
        }
    }

    pub fn coeff(&self, freq: i64) -> Rational {
        self.coeffs
            .get(&freq)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients by increasing frequency.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(j, c)| (*j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `theta = pi`: `sum_j c_j (-1)^j`.
    pub fn eval_at_pi(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, (j, c)| {
            if j.rem_euclid(2) == 0 {
                acc + c
            } else {
                acc - c
            }
        })
    }

    /// Floating point value `(re, im)` at `theta`, for plotting.
    pub fn eval_f64(&self, theta: f64) -> (f64, f64) {
        self.coeffs.iter().fold((0.0, 0.0), |(re, im), (j, c)| {
            let c = super::rational::to_f64(c);
            let x = *j as f64 * theta;
            (re + c * x.cos(), im + c * x.sin())
        })
    }
}

impl fmt::Display for FourierPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (j, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) e({j}t)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn evaluation_at_pi() {
        assert_eq!(
            FourierPoly::from_terms([(0, rat(1, 1))]).eval_at_pi(),
            rat(1, 1)
        );
        let cos = FourierPoly::from_terms([(1, rat(1, 2)), (-1, rat(1, 2))]);
        assert_eq!(cos.eval_at_pi(), rat(-1, 1));
        assert_eq!(
            FourierPoly::from_terms([(4, rat(-1, 16))]).eval_at_pi(),
            rat(-1, 16)
        );
    }

    #[test]
    fn substitution() {
        let p = Poly::from_terms([((1, 0), rat(1, 1)), ((0, 1), rat(1, 1))]);
        let f = FourierPoly::from_poly(&p);
        assert_eq!(f.coeff(1), rat(1, 2));
        assert_eq!(f.coeff(-1), rat(1, 2));
        let (re, im) = f.eval_f64(0.0);
        assert!((re - 1.0).abs() < 1e-15 && im.abs() < 1e-15);
        let h = rat(-1, 2);
        assert_eq!(f.eval_at_pi(), p.eval(&h, &h));
    }
}
