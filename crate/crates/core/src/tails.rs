//! Weighted coefficient sums of `gamma_t`: the measure `mu_t`, its tails
//! `Delta_t(a)`, Cusick densities `c_t = Delta_t(0)`, and the base-case
//! tails `B_m(a)`.
//!
//! Everything here is exact. A rational function
//! `P(alpha, beta) / ((1-alpha)^K (1-beta)^L)` is reduced monomial by
//! monomial to the tails
//!
//! ```text
//! T(K, L, a) = sum_{i - j >= a} 2^{-(i+j)} C(i+K-1, K-1) C(j+L-1, L-1)
//! ```
//!
//! of `1 / ((1-alpha)^K (1-beta)^L)`, since multiplying by
//! `alpha^p beta^q` scales by `2^{-(p+q)}` and shifts `a` by `q - p`. For
//! `a >= 0` (and `K >= 1`) the tail has the shape `2^{-a} P_{K,L}(a)` with a
//! polynomial `P_{K,L}` of degree below `K`; negative `a` is handled by the
//! reflection `T(K, L, a) = 2^{K+L} - T(L, K, 1 - a)`. The polynomials are
//! computed once per `(K, L)` and shared between threads.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, pow2, Rational};
use crate::expansion::{reduce_to_odd, to_blocks, BlockExpansion, Word};
use crate::transfer::{breve_gamma, gamma_ratfun, gamma_top_row, RatFun2};

/// Newton coefficients of `P_{K,L}` over a common denominator:
/// `P(a) = sum_k c_k C(a, k) / den`.
#[derive(Debug)]
struct NewtonPoly {
    coeffs: Vec<BigInt>,
    den: BigInt,
}

type TailPoly = Arc<NewtonPoly>;

fn tail_cache() -> &'static RwLock<HashMap<(u32, u32), TailPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<(u32, u32), TailPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn tail_poly(k: u32, l: u32) -> TailPoly {
    if let Some(p) = tail_cache()
        .read()
        .expect("tail cache poisoned")
        .get(&(k, l))
    {
        return Arc::clone(p);
    }
    let p = Arc::new(compute_tail_poly(k, l));
    let mut w = tail_cache().write().expect("tail cache poisoned");
    Arc::clone(w.entry((k, l)).or_insert(p))
}

/// `sum_{r < K} C(n + K - 1, r)`, so that the one-variable tail is
/// `sum_{i >= n} C(i+K-1, K-1) 2^{-i} = 2^{1-n} ones_tail_poly(K, n)` for `n >= 0`.
fn ones_tail_poly(k: u32, n: u64) -> BigInt {
    let top = n + u64::from(k) - 1;
    (0..u64::from(k)).map(|r| binomial(top, r)).sum()
}

/// Forward differences `Delta^k f(0)` of the values `f(0), f(1), ...`.
fn forward_differences(mut values: Vec<Rational>) -> Vec<Rational> {
    let mut out = Vec::with_capacity(values.len());
    while !values.is_empty() {
        out.push(values[0].clone());
        values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

fn compute_tail_poly(k: u32, l: u32) -> NewtonPoly {
    assert!(k >= 1);
    // 2^a T(K, L, a) = 2 sum_j C(j+L-1, L-1) 4^{-j} ones_tail_poly(K, j + a)
    let value_at = |a: u64| -> Rational {
        if l == 0 {
            return Rational::from_integer(ones_tail_poly(k, a) * 2);
        }
        // sum_j R(j) x^j = sum_d Delta^d R(0) x^d / (1-x)^{d+1}, x = 1/4
        let degree = (k - 1 + l - 1) as u64;
        let samples: Vec<Rational> = (0..=degree)
            .map(|j| {
                Rational::from_integer(
                    binomial(j + u64::from(l) - 1, u64::from(l) - 1) * ones_tail_poly(k, j + a),
                )
            })
            .collect();
        let mut sum = Rational::zero();
        let mut third_pow = Rational::one();
        let third = Rational::new(1.into(), 3.into());
        for d in forward_differences(samples) {
            sum += d * &third_pow;
            third_pow *= &third;
        }
        sum * Rational::new(8.into(), 3.into())
    };
    let coeffs = forward_differences((0..u64::from(k)).map(value_at).collect());
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| {
        num_integer::Integer::lcm(&acc, c.denom())
    });
    NewtonPoly {
        coeffs: coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect(),
        den,
    }
}

/// `P(a)` for `a >= 0`; the Newton basis `C(a, k)` stays integral.
fn eval_newton(p: &NewtonPoly, a: i64) -> Rational {
    let a = BigInt::from(a);
    let mut acc = BigInt::zero();
    let mut basis = BigInt::one();
    for (k, c) in p.coeffs.iter().enumerate() {
        if k > 0 {
            basis = basis * (&a - (k as i64 - 1)) / k;
        }
        if basis.is_zero() {
            break;
        }
        acc += c * &basis;
    }
    Rational::new(acc, p.den.clone())
}

/// `T(K, L, a)`: the weighted tail over `i - j >= a` of
/// `1 / ((1-alpha)^K (1-beta)^L)`.
pub fn tail_bkl(k: u32, l: u32, a: i64) -> Rational {
    if a >= 1 || (a == 0 && k >= 1) {
        if k == 0 {
            return Rational::zero();
        }
        return pow2(-a) * eval_newton(&tail_poly(k, l), a);
    }
    pow2(i64::from(k + l)) - tail_bkl(l, k, 1 - a)
}

/// `B_m(a) = sum_{i-j >= a} 2^{-(i+j)} [alpha^i beta^j] b_m` with
/// `b_m = (alpha beta / ((1-alpha)(1-beta)))^m`.
pub fn frak_b(m: u32, a: i64) -> Rational {
    pow2(-2 * i64::from(m)) * tail_bkl(m, m, a)
}

/// What a [`TailQuery`] sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailKind {
    /// `sum_{m >= a} mu(m)`
    AtLeast(i64),
    /// `mu(m)`
    Exactly(i64),
    /// `sum_m mu(m)`
    All,
}

#[derive(Clone, Debug)]
pub struct TailQuery {
    pub kind: TailKind,
    pub target: RatFun2,
}

impl TailQuery {
    pub fn new(kind: TailKind, target: RatFun2) -> Self {
        Self { kind, target }
    }

    pub fn evaluate(&self) -> Rational {
        let weights = diagonal_weights(&self.target);
        let (k, l) = (self.target.denom_k(), self.target.denom_l());
        let tail =
            |a: i64| -> Rational { weights.iter().map(|(d, w)| w * tail_bkl(k, l, a - d)).sum() };
        match self.kind {
            TailKind::AtLeast(a) => tail(a),
            TailKind::Exactly(m) => tail(m) - tail(m + 1),
            TailKind::All => weights.values().sum::<Rational>() * pow2(i64::from(k + l)),
        }
    }
}

/// Numerator coefficients weighted by `2^{-(p+q)}` and grouped by `p - q`.
fn diagonal_weights(f: &RatFun2) -> BTreeMap<i64, Rational> {
    let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
    for (&(p, q), c) in f.numer().terms() {
        let d = p as i64 - q as i64;
        *out.entry(d).or_insert_with(Rational::zero) += c * pow2(-((p + q) as i64));
    }
    out.retain(|_, w| !w.is_zero());
    out
}

/// `sum_{i-j >= a} 2^{-(i+j)} [alpha^i beta^j] f`.
pub fn ratfun_tail(f: &RatFun2, a: i64) -> Rational {
    TailQuery::new(TailKind::AtLeast(a), f.clone()).evaluate()
}

/// `mu_t(m)`.
pub fn mu(t: &BlockExpansion, m: i64) -> Rational {
    TailQuery::new(TailKind::Exactly(m), gamma_ratfun(t)).evaluate()
}

/// `Delta_t(a) = sum_{m >= a} mu_t(m)`.
pub fn delta(t: &BlockExpansion, a: i64) -> Rational {
    ratfun_tail(&gamma_ratfun(t), a)
}

/// Cusick density `c_t = Delta_t(0)`.
pub fn cusick(t: &BlockExpansion) -> Rational {
    delta(t, 0)
}

/// `c_t` for a nonnegative integer; `c_0 = 1`.
pub fn cusick_t(t: u64) -> Rational {
    if t == 0 {
        return Rational::one();
    }
    let (odd, _) = reduce_to_odd(t).expect("t > 0");
    cusick(&to_blocks(odd).expect("odd t"))
}

/// `sum_m mu_t(m)`; equal to 1 exactly when the last block of zeros is
/// infinite.
pub fn total_mass(t: &BlockExpansion) -> Rational {
    TailQuery::new(TailKind::All, gamma_ratfun(t)).evaluate()
}

/// Weighted mass of the top right entry of `M(t)`; together with
/// [`total_mass`] it sums to 1.
pub fn top_right_mass(t: &BlockExpansion) -> Rational {
    let (_, b) = gamma_top_row(t);
    TailQuery::new(TailKind::All, b).evaluate()
}

/// `D_l(r) = sum_{j <= l} C(l, j) (-1)^j B_{N-j}(r)`.
pub fn script_d(l: u32, r: i64, n: u32) -> Result<Rational> {
    if l > n {
        return Err(Error::Precondition(format!("D_{l} needs l <= N = {n}")));
    }
    let mut acc = Rational::zero();
    for j in 0..=l {
        let term = Rational::from_integer(binomial(u64::from(l), u64::from(j))) * frak_b(n - j, r);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Largest `N` accepted by the word enumeration (`4^N` words).
pub const MAX_ENUMERATION_PAIRS: usize = 16;

pub(crate) fn check_enumerable(t: &BlockExpansion) -> Result<()> {
    if t.n_pairs() > MAX_ENUMERATION_PAIRS {
        return Err(Error::TooLarge {
            what: "word enumeration (block pairs)",
            max: MAX_ENUMERATION_PAIRS as u64,
            got: t.n_pairs() as u64,
        });
    }
    Ok(())
}

/// `c_t` via the explicit reduction to the base cases `B_m`:
/// a signed sum over all words `tau` that avoid infinite blocks of
/// `2^{-tau.t} D_{|tau|_10}(tau.(t_o - t_e))`.
pub fn cusick_via_corollary(t: &BlockExpansion) -> Result<Rational> {
    check_enumerable(t)?;
    let n = t.n_pairs() as u32;
    let len = 2 * n;
    let inf = t.infinite_mask();
    // Words sharing (|tau|_10, r, tau.t) contribute identical terms up to sign.
    let mut counts: HashMap<(u32, i64, u64), i64> = HashMap::new();
    for bits in 0..(1u64 << len) {
        if bits & inf != 0 {
            continue;
        }
        let word = Word::new(bits, len);
        let (e, o) = t.select(&word).expect("finite selection");
        let sign = if word.ones().is_multiple_of(2) { 1 } else { -1 };
        *counts
            .entry((word.one_zero(), o as i64 - e as i64, e + o))
            .or_insert(0) += sign;
    }
    let mut d_cache: HashMap<(u32, i64), Rational> = HashMap::new();
    let mut acc = Rational::zero();
    for ((one_zero, r, weight), count) in counts {
        if count != 0 {
            let d = d_cache
                .entry((one_zero, r))
                .or_insert_with(|| script_d(one_zero, r, n).expect("|tau|_10 <= N"));
            acc += &*d * pow2(-(weight as i64)) * Rational::from_integer(count.into());
        }
    }
    Ok(acc)
}

/// `sum_{0 <= j <= i} 2^{-(i+j)} [alpha^i beta^j] breve_gamma_t`.
pub fn breve_c(t: u64) -> Result<Rational> {
    Ok(ratfun_tail(&breve_gamma(t)?, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, BiSeries, Poly, Region, Var};

    fn blocks(s: &str) -> BlockExpansion {
        s.parse().unwrap()
    }

    /// Truncated expansion of `1/((1-a)^K (1-b)^L)`; all coefficients are
    /// nonnegative so the exact tail lies in `[partial, partial + residual]`.
    fn truncated_tail(k: u32, l: u32, a: i64, order: usize) -> (Rational, Rational) {
        let s = BiSeries::geom_inv(Var::Alpha, order)
            .pow(k)
            .mul(&BiSeries::geom_inv(Var::Beta, order).pow(l));
        let partial = s.weighted_partial_mass(Region::AtLeast(a));
        let residual = pow2(i64::from(k + l)) - s.weighted_partial_mass(Region::All);
        (partial, residual)
    }

    #[test]
    fn tail_examples() {
        assert_eq!(tail_bkl(0, 0, 0), rat(1, 1));
        assert_eq!(tail_bkl(0, 0, 1), rat(0, 1));
        assert_eq!(tail_bkl(0, 0, -3), rat(1, 1));
        assert_eq!(tail_bkl(1, 1, 0), rat(8, 3));
        for a in 1..6 {
            assert_eq!(tail_bkl(1, 1, a), rat(8, 3) * pow2(-a));
        }
    }

    #[test]
    fn tails_against_truncated_series() {
        for k in 0..4u32 {
            for l in 0..4u32 {
                for a in -6..=6i64 {
                    let exact = tail_bkl(k, l, a);
                    let (partial, residual) = truncated_tail(k, l, a, 40);
                    assert!(exact >= partial, "K={k} L={l} a={a}");
                    assert!(&exact - &partial <= residual, "K={k} L={l} a={a}");
                }
            }
        }
    }

    #[test]
    fn tail_reflection() {
        for k in 0..5u32 {
            for l in 0..5u32 {
                for a in -10..=10i64 {
                    assert_eq!(
                        tail_bkl(k, l, a) + tail_bkl(l, k, 1 - a),
                        pow2(i64::from(k + l)),
                    );
                }
            }
        }
    }

    #[test]
    fn frak_b_examples() {
        assert_eq!(frak_b(1, 0), rat(2, 3));
        assert_eq!(frak_b(3, 0), rat(138, 243));
        assert_eq!(frak_b(2, 1), rat(11, 27));
        assert_eq!(frak_b(0, 0), rat(1, 1));
        assert_eq!(frak_b(0, 1), rat(0, 1));
    }

    #[test]
    fn mu_examples() {
        let t = blocks("1,inf");
        assert_eq!(mu(&t, 1), rat(1, 2));
        assert_eq!(mu(&t, 0), rat(1, 4));
        assert_eq!(mu(&t, -1), rat(1, 8));
        assert_eq!(mu(&t, 2), rat(0, 1));
        assert_eq!(mu(&BlockExpansion::empty(), 0), rat(1, 1));
        assert_eq!(mu(&BlockExpansion::empty(), 1), rat(0, 1));
    }

    #[test]
    fn mu_of_19_is_consistent_with_thue_morse() {
        let t = to_blocks(19).unwrap();
        let masses: Vec<_> = (-40..=40).map(|m| (m, mu(&t, m))).collect();
        let lo = rat(1, 1) - delta(&t, -40);
        let hi = delta(&t, 41);
        let total: Rational = masses.iter().map(|(_, v)| v.clone()).sum::<Rational>() + &lo + &hi;
        assert_eq!(total, rat(1, 1));
        // e(m pi) = (-1)^m; the tails are far below 1e-6
        let at_pi: Rational = masses
            .iter()
            .map(|(m, v)| if m % 2 == 0 { v.clone() } else { -v.clone() })
            .sum();
        let err = &at_pi - rat(-1, 12);
        assert!(err.clone() * err < rat(1, 1_000_000_000_000));
    }

    #[test]
    fn delta_and_cusick_examples() {
        let t = blocks("1,inf");
        assert_eq!(delta(&t, 0), rat(3, 4));
        assert_eq!(delta(&t, 1), rat(1, 2));
        assert_eq!(delta(&BlockExpansion::empty(), 0), rat(1, 1));
        assert_eq!(cusick(&blocks("inf,1,inf,inf")), rat(5, 9));
        assert_eq!(
            cusick(&blocks("inf,1,inf,2,inf,1,inf,inf")),
            rat(2737, 5184)
        );
        assert_eq!(cusick(&blocks("inf,inf")), rat(2, 3));
    }

    #[test]
    fn cusick_of_integers() {
        assert_eq!(cusick_t(0), rat(1, 1));
        assert_eq!(cusick_t(1), rat(3, 4));
        assert_eq!(cusick_t(2), rat(3, 4));
        // brute force count over n < 2^7 gives 44/64
        assert_eq!(cusick_t(3), rat(11, 16));
        for k in 1..=10u32 {
            let t = (1u64 << k) - 1;
            let expect = rat(2, 3) + Rational::new(1.into(), BigInt::from(3) << (2 * k));
            assert_eq!(cusick_t(t), expect, "k={k}");
        }
    }

    #[test]
    fn masses() {
        assert_eq!(total_mass(&blocks("1,inf")), rat(1, 1));
        assert_eq!(total_mass(&BlockExpansion::empty()), rat(1, 1));
        let m = total_mass(&blocks("inf,1"));
        assert!(m < rat(1, 1));
        assert_eq!(m + top_right_mass(&blocks("inf,1")), rat(1, 1));
    }

    #[test]
    fn script_d_examples() {
        assert_eq!(script_d(0, 0, 2).unwrap(), rat(16, 27));
        assert_eq!(script_d(1, 1, 2).unwrap(), rat(2, 27));
        for r in -3..=3 {
            assert_eq!(
                script_d(2, r, 2).unwrap(),
                frak_b(2, r) - frak_b(1, r) * rat(2, 1) + frak_b(0, r)
            );
        }
        assert!(script_d(3, 0, 2).is_err());
    }

    #[test]
    fn corollary_examples() {
        for k in 1..=6u64 {
            let t = BlockExpansion::from_lengths(&[Some(k), None]).unwrap();
            let expect = rat(2, 3) + Rational::new(1.into(), BigInt::from(3) << (2 * k));
            assert_eq!(cusick_via_corollary(&t).unwrap(), expect);
        }
        assert_eq!(
            cusick_via_corollary(&blocks("inf,1,inf,inf")).unwrap(),
            rat(5, 9)
        );
        let t = blocks("2,3,1,inf");
        assert_eq!(cusick_via_corollary(&t).unwrap(), cusick(&t));
        let big = BlockExpansion::new(vec![crate::expansion::ExtNat::ONE; 34]).unwrap();
        assert!(cusick_via_corollary(&big).is_err());
    }

    #[test]
    fn breve_examples() {
        assert_eq!(breve_c(5).unwrap(), rat(0, 1));
        assert_eq!(breve_c(107).unwrap(), rat(0, 1));
        assert_eq!(breve_c(1).unwrap(), rat(1, 12));
        assert!(breve_c(6).is_err());
    }

    #[test]
    fn query_on_plain_polynomial() {
        let q = TailQuery::new(TailKind::Exactly(0), RatFun2::poly(Poly::alpha_beta(1, 1)));
        assert_eq!(q.evaluate(), rat(1, 4));
    }

    #[test]
    fn concurrent_tails_agree() {
        let serial: Vec<_> = (0..8u32).map(|k| tail_bkl(k, 7 - k, 3)).collect();
        let handles: Vec<_> = (0..8u32)
            .map(|k| std::thread::spawn(move || tail_bkl(k, 7 - k, 3)))
            .collect();
        let parallel: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(serial, parallel);
    }
}
