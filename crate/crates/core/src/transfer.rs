//! Transfer matrices `A_0`, `A_1`, their finite and infinite powers, and the
//! characteristic function `gamma_t` as an exact bivariate rational function.
//!
//! With `alpha = e(theta)/2` and `beta = e(-theta)/2` the digit recurrence
//! `gamma_{2t} = gamma_t`, `gamma_{2t+1} = alpha gamma_t + beta gamma_{t+1}`
//! becomes a product of the matrices
//!
//! ```text
//! A_0 = [[1, 0], [alpha, beta]]      A_1 = [[alpha, beta], [0, 1]]
//! ```
//!
//! and `gamma_t` is the top left entry of
//! `M(t) = A_1^{k_0} A_0^{l_0} ... A_1^{k_{N-1}} A_0^{l_{N-1}}`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::exact::{BiSeries, Poly, Rational};
use crate::expansion::{to_blocks, BlockExpansion, ExtNat};

/// `numer / ((1 - alpha)^k (1 - beta)^l)`.
///
/// The representation is not canonical: common factors of the numerator
/// and the denominator are never cancelled. Equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFun2 {
    numer: Poly,
    k: u32,
    l: u32,
}

fn one_minus_alpha_pow(n: u32) -> Poly {
    (&Poly::one() - &Poly::alpha()).pow(n)
}

fn one_minus_beta_pow(n: u32) -> Poly {
    (&Poly::one() - &Poly::beta()).pow(n)
}

impl RatFun2 {
    pub fn new(numer: Poly, k: u32, l: u32) -> Self {
        Self { numer, k, l }
    }

    pub fn zero() -> Self {
        Self::poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::poly(Poly::one())
    }

    pub fn poly(p: Poly) -> Self {
        Self::new(p, 0, 0)
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    /// Exponent of `(1 - alpha)` in the denominator.
    pub fn denom_k(&self) -> u32 {
        self.k
    }

    /// Exponent of `(1 - beta)` in the denominator.
    pub fn denom_l(&self) -> u32 {
        self.l
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// Same value with denominator exponents raised to `(k, l)`.
    fn lift(&self, k: u32, l: u32) -> Poly {
        debug_assert!(k >= self.k && l >= self.l);
        let mut p = self.numer.clone();
        if k > self.k {
            p = &p * &one_minus_alpha_pow(k - self.k);
        }
        if l > self.l {
            p = &p * &one_minus_beta_pow(l - self.l);
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (k, l) = (self.k.max(other.k), self.l.max(other.l));
        Self::new(&self.lift(k, l) + &other.lift(k, l), k, l)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.numer, self.k, self.l)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(
            &self.numer * &other.numer,
            self.k + other.k,
            self.l + other.l,
        )
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::new(&self.numer * p, self.k, self.l)
    }

    /// Divides by `(1 - alpha)^dk (1 - beta)^dl`.
    pub fn div_denoms(&self, dk: u32, dl: u32) -> Self {
        Self::new(self.numer.clone(), self.k + dk, self.l + dl)
    }

    /// Taylor coefficients up to `(order, order)`.
    pub fn series(&self, order: usize) -> BiSeries {
        let mut s = BiSeries::from_poly(&self.numer, order);
        // Division by (1 - x) is a running sum along that index.
        for _ in 0..self.k {
            for j in 0..=order {
                let mut acc = Rational::zero();
                for i in 0..=order {
                    acc += s.coeff(i, j);
                    s.set_coeff(i, j, acc.clone());
                }
            }
        }
        for _ in 0..self.l {
            for i in 0..=order {
                let mut acc = Rational::zero();
                for j in 0..=order {
                    acc += s.coeff(i, j);
                    s.set_coeff(i, j, acc.clone());
                }
            }
        }
        s
    }

    /// Value at a point with `alpha != 1`, `beta != 1`.
    pub fn eval(&self, alpha: &Rational, beta: &Rational) -> Rational {
        let one = Rational::one();
        let den = num_traits::pow(&one - alpha, self.k as usize)
            * num_traits::pow(&one - beta, self.l as usize);
        self.numer.eval(alpha, beta) / den
    }
}

impl PartialEq for RatFun2 {
    fn eq(&self, other: &Self) -> bool {
        let (k, l) = (self.k.max(other.k), self.l.max(other.l));
        self.lift(k, l) == other.lift(k, l)
    }
}

impl Eq for RatFun2 {}

impl fmt::Display for RatFun2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / ((1-a)^{} (1-b)^{})", self.numer, self.k, self.l)
    }
}

/// A 2x2 matrix of rational functions, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub entries: [[RatFun2; 2]; 2],
}

impl TransferMatrix {
    pub fn identity() -> Self {
        Self {
            entries: [
                [RatFun2::one(), RatFun2::zero()],
                [RatFun2::zero(), RatFun2::one()],
            ],
        }
    }

    pub fn get(&self, row: usize, col: usize) -> &RatFun2 {
        &self.entries[row][col]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let e = |r: usize, c: usize| {
            self.entries[r][0]
                .mul(&rhs.entries[0][c])
                .add(&self.entries[r][1].mul(&rhs.entries[1][c]))
        };
        Self {
            entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
        }
    }
}

/// `alpha (1 - beta^l) / (1 - beta)`, with `beta^inf = 0`.
fn zeros_block_entry(l: ExtNat) -> RatFun2 {
    RatFun2::new(&Poly::alpha() * &Poly::one_minus_beta_pow(l.value()), 0, 1)
}

/// `beta (1 - alpha^k) / (1 - alpha)`, with `alpha^inf = 0`.
fn ones_block_entry(k: ExtNat) -> RatFun2 {
    RatFun2::new(&Poly::beta() * &Poly::one_minus_alpha_pow(k.value()), 1, 0)
}

fn beta_pow(l: ExtNat) -> Poly {
    l.value()
        .map_or_else(Poly::zero, |l| Poly::alpha_beta(0, l))
}

fn alpha_pow(k: ExtNat) -> Poly {
    k.value()
        .map_or_else(Poly::zero, |k| Poly::alpha_beta(k, 0))
}

/// `A_0^l`, including `A_0^inf = [[1, 0], [alpha/(1-beta), 0]]`.
pub fn a0_pow(l: ExtNat) -> TransferMatrix {
    TransferMatrix {
        entries: [
            [RatFun2::one(), RatFun2::zero()],
            [zeros_block_entry(l), RatFun2::poly(beta_pow(l))],
        ],
    }
}

/// `A_1^k`, including `A_1^inf = [[0, beta/(1-alpha)], [0, 1]]`.
pub fn a1_pow(k: ExtNat) -> TransferMatrix {
    TransferMatrix {
        entries: [
            [RatFun2::poly(alpha_pow(k)), ones_block_entry(k)],
            [RatFun2::zero(), RatFun2::one()],
        ],
    }
}

/// The full product `M(t)`; the identity for the empty expansion.
pub fn product_matrix(t: &BlockExpansion) -> TransferMatrix {
    t.entries()
        .chunks(2)
        .fold(TransferMatrix::identity(), |m, pair| {
            m.mul(&a1_pow(pair[0])).mul(&a0_pow(pair[1]))
        })
}

/// Top row of `M(t)`, computed by pushing a row vector through the factors.
fn top_row(t: &BlockExpansion) -> [RatFun2; 2] {
    let mut row = [RatFun2::one(), RatFun2::zero()];
    for pair in t.entries().chunks(2) {
        let (k, l) = (pair[0], pair[1]);
        // row * A_1^k
        let second = row[0].mul(&ones_block_entry(k)).add(&row[1]);
        let first = row[0].mul_poly(&alpha_pow(k));
        // row * A_0^l
        let new_first = first.add(&second.mul(&zeros_block_entry(l)));
        let new_second = second.mul_poly(&beta_pow(l));
        row = [new_first, new_second];
    }
    row
}

/// `gamma_t(alpha, beta)`: the top left entry of `M(t)`.
pub fn gamma_ratfun(t: &BlockExpansion) -> RatFun2 {
    let [first, _] = top_row(t);
    first
}

/// Both entries `(a, b)` of the top row of `M(t)`.
pub fn gamma_top_row(t: &BlockExpansion) -> (RatFun2, RatFun2) {
    let [a, b] = top_row(t);
    (a, b)
}

/// Taylor coefficients of `gamma_t` up to `(order, order)`.
pub fn gamma_series(t: &BlockExpansion, order: usize) -> BiSeries {
    gamma_ratfun(t).series(order)
}

/// `(1 - alpha - beta) / (1 - alpha) * gamma_t` for odd `t`.
pub fn breve_gamma(t: u64) -> Result<RatFun2> {
    let g = gamma_ratfun(&to_blocks(t)?);
    let factor = &(&Poly::one() - &Poly::alpha()) - &Poly::beta();
    Ok(g.mul_poly(&factor).div_denoms(1, 0))
}

/// `gamma_t * beta / (1 - alpha)`, the limit of `gamma_{2^K t - 1}`.
pub fn append_ones_limit(t: u64) -> Result<RatFun2> {
    let g = gamma_ratfun(&to_blocks(t)?);
    Ok(g.mul_poly(&Poly::beta()).div_denoms(1, 0))
}
