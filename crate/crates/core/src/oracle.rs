//! Brute-force counting over `0 <= n < 2^lambda`.
//!
//! `v(t, lambda, j)` is the fraction of such `n` with `s(n+t) - s(n) >= j`.
//! It is nonincreasing in `lambda` and equals `c_t` once
//! `lambda >= s(t) + floor(log2 t) + 2` (for `j = 0`).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{pow2, Rational};
use crate::expansion::{carry_count, digit_sum};

pub const MAX_LAMBDA: u32 = 34;

const CHUNK: u64 = 1 << 16;

fn count_where<F>(lambda: u32, pred: F) -> Result<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    if lambda > MAX_LAMBDA {
        return Err(Error::TooLarge {
            what: "lambda",
            max: u64::from(MAX_LAMBDA),
            got: u64::from(lambda),
        });
    }
    let total = 1u64 << lambda;
    let chunks = total.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .map(|c| {
            let hi = ((c + 1) * CHUNK).min(total);
            (c * CHUNK..hi).filter(|&n| pred(n)).count() as u64
        })
        .sum())
}

fn diff(n: u64, t: u64) -> i64 {
    let sum = u128::from(n) + u128::from(t);
    sum.count_ones() as i64 - i64::from(n.count_ones())
}

fn fraction(count: u64, lambda: u32) -> Rational {
    Rational::from_integer(count.into()) * pow2(-i64::from(lambda))
}

/// Fraction of `n < 2^lambda` with `s(n+t) - s(n) >= j`.
pub fn brute_v(t: u64, lambda: u32, j: i64) -> Result<Rational> {
    let count = count_where(lambda, |n| diff(n, t) >= j)?;
    Ok(fraction(count, lambda))
}

/// Fraction of `n < 2^lambda` with `s(n+t) - s(n) = j`.
pub fn brute_mu(t: u64, j: i64, lambda: u32) -> Result<Rational> {
    let count = count_where(lambda, |n| diff(n, t) == j)?;
    Ok(fraction(count, lambda))
}

/// A `lambda` at which `brute_v(t, lambda, 0)` has reached `c_t`.
pub fn stable_lambda(t: u64) -> u32 {
    if t == 0 {
        return 0;
    }
    digit_sum(t) + (63 - t.leading_zeros()) + 2
}

/// `c_t` by exhaustive counting at [`stable_lambda`].
pub fn brute_ct(t: u64) -> Result<Rational> {
    brute_v(t, stable_lambda(t), 0)
}

/// `s(n) - s(n+t) = nu_2(C(n+t, t)) - s(t)` for all `n < n_max`, `t < t_max`,
/// with the 2-adic valuation taken as the number of carries.
pub fn legendre_identity_check(n_max: u64, t_max: u64) -> bool {
    (0..t_max).into_par_iter().all(|t| {
        let st = i64::from(digit_sum(t));
        (0..n_max).all(|n| -diff(n, t) == i64::from(carry_count(n, t)) - st)
    })
}
