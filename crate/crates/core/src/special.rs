//! Special values and closed forms.
//!
//! Thue–Morse correlations `gamma_t(pi)`, the extreme expansions
//! `t_N = (inf,1,inf,1,...,inf,inf)` and `(1)^N * (inf)^N`, the array whose
//! diagonal reproduces `B_m(0)`, binomial identities, the central binomial
//! bounds, and the sequence `a_{N,q}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, pow2, rat, Rational};
use crate::expansion::{interleave, reduce_to_odd, to_blocks, BlockExpansion, ExtNat, Word};
use crate::tails::{check_enumerable, frak_b};
use crate::transfer::gamma_ratfun;

fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

fn rpow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// `gamma_t(pi)`, the correlation of the Thue–Morse sequence at shift `t`.
///
/// Uses `gamma_0 = 1`, `gamma_1 = -1/3`, `gamma_{2t} = gamma_t` and
/// `gamma_{2t+1} = -(gamma_t + gamma_{t+1})/2`, carrying the pair
/// `(gamma_u, gamma_{u+1})` along the binary digits of `t`.
pub fn tm_gamma(t: u64) -> Rational {
    let mut pair = (Rational::one(), rat(-1, 3));
    for d in (0..64 - t.leading_zeros()).rev() {
        let mid = -(&pair.0 + &pair.1) / Rational::from_integer(2.into());
        pair = if (t >> d) & 1 == 0 {
            (pair.0, mid)
        } else {
            (mid, pair.1)
        };
    }
    pair.0
}

/// `gamma_t(pi)` through the transfer matrices, as a cross-check.
pub fn tm_gamma_via_transfer(t: u64) -> Rational {
    if t == 0 {
        return Rational::one();
    }
    let (odd, _) = reduce_to_odd(t).expect("t > 0");
    let h = rat(-1, 2);
    gamma_ratfun(&to_blocks(odd).expect("odd")).eval(&h, &h)
}

/// `9^{-N} sum_n (-8)^n C_{N,n}` where `C_{N,n}` runs over words ending in
/// `0` with weight `(-1)^{|tau|_1} (-1/2)^{tau.t}`.
pub fn tm_components(t: u64) -> Result<Rational> {
    let blocks = to_blocks(t)?;
    check_enumerable(&blocks)?;
    let n_pairs = blocks.n_pairs() as u32;
    let len = 2 * n_pairs;
    let inf = blocks.infinite_mask();
    let mut by_n = vec![Rational::zero(); n_pairs as usize + 1];
    for bits in 0..(1u64 << len) {
        if bits & inf != 0 || (bits >> (len - 1)) & 1 == 1 {
            continue;
        }
        let word = Word::new(bits, len);
        let (e, o) = blocks.select(&word).expect("finite");
        let mut w = pow2(-((e + o) as i64));
        if (word.ones() as u64 + e + o) % 2 == 1 {
            w = -w;
        }
        by_n[word.one_zero() as usize] += w;
    }
    let mut acc = Rational::zero();
    for (n, c) in by_n.iter().enumerate() {
        acc += rpow(&rat(-8, 1), n as u32) * c;
    }
    Ok(acc / rpow(&rat(9, 1), n_pairs))
}

pub fn tm_component_check(t: u64) -> Result<bool> {
    Ok(tm_components(t)? == tm_gamma(t))
}

/// Rows of `-3 gamma_t`; row `r` covers `2^r <= t <= 2^{r+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TmTable {
    pub rows: Vec<Vec<Rational>>,
}

pub const MAX_TM_ROWS: u32 = 20;

pub fn tm_table(rows: u32) -> Result<TmTable> {
    if rows > MAX_TM_ROWS {
        return Err(Error::TooLarge {
            what: "Thue-Morse table rows",
            max: u64::from(MAX_TM_ROWS),
            got: u64::from(rows),
        });
    }
    let three = rat(-3, 1);
    let rows = (0..rows)
        .map(|r| {
            ((1u64 << r)..=(1u64 << (r + 1)))
                .map(|t| &three * tm_gamma(t))
                .collect()
        })
        .collect();
    Ok(TmTable { rows })
}

/// Density of `n` with `(-1)^{s(n+t)} != (-1)^{s(n)}`.
pub fn sign_change_density(t: u64) -> Rational {
    (Rational::one() - tm_gamma(t)) / Rational::from_integer(2.into())
}

/// `t_N = (inf)^N * (1, ..., 1, inf)`.
pub fn t_n_blocks(n: u32) -> Result<BlockExpansion> {
    if n == 0 {
        return Err(Error::Precondition("N >= 1".into()));
    }
    let ones = vec![ExtNat::INF; n as usize];
    let mut zeros = vec![ExtNat::ONE; n as usize];
    zeros[n as usize - 1] = ExtNat::INF;
    interleave(&ones, &zeros)
}

/// `(1)^N * (inf)^N`.
pub fn ones_over_zeros_blocks(n: u32) -> Result<BlockExpansion> {
    if n == 0 {
        return Err(Error::Precondition("N >= 1".into()));
    }
    interleave(
        &vec![ExtNat::ONE; n as usize],
        &vec![ExtNat::INF; n as usize],
    )
}

/// `c_{t_N} = 1/2 + 4^{-N} C(2N-2, N-1) - 12^{-N} sum_{j<N} C(2N-1, j) 3^j`.
pub fn c_tn_closed(n: u32) -> Rational {
    assert!(n >= 1, "N >= 1");
    let n = u64::from(n);
    let sum: BigInt = (0..n)
        .map(|j| binomial(2 * n - 1, j) * BigInt::from(3).pow(j as u32))
        .sum();
    rat(1, 2) + big(binomial(2 * n - 2, n - 1)) / big(BigInt::from(4).pow(n as u32))
        - big(sum) / big(BigInt::from(12).pow(n as u32))
}

/// `(c_{t_N} - 1/2)^2 N^3 > (141/1000)^2`, where `141/1000 < 1/(4 sqrt(pi))`.
pub fn c_tn_lower_bound_check(n: u32) -> bool {
    let excess = c_tn_closed(n) - rat(1, 2);
    let n3 = big(BigInt::from(n).pow(3));
    excess.is_positive() && &excess * &excess * n3 > rat(141 * 141, 1_000_000)
}

/// `c_{t_N} > 1/2 + N^{-3/2} / (4 sqrt(pi))`, squared and using
/// `pi > 333/106`.
pub fn c_tn_lower_bound_check_pi(n: u32) -> bool {
    let excess = c_tn_closed(n) - rat(1, 2);
    let n3 = big(BigInt::from(n).pow(3));
    excess.is_positive() && &excess * &excess * n3 * rat(16 * 333, 106) > Rational::one()
}

/// `c_{(1)^N * (inf)^N} = 1/2 + 4^{-N} C(2N-1, N)`.
pub fn c_ones_over_zeros(n: u32) -> Rational {
    assert!(n >= 1, "N >= 1");
    let n = u64::from(n);
    rat(1, 2) + big(binomial(2 * n - 1, n)) / big(BigInt::from(4).pow(n as u32))
}

/// `c_{t_N} > c_{t_{N+1}}` for `N < N_max`, with every value above `1/2`.
pub fn tn_monotone_check(n_max: u32) -> bool {
    let values: Vec<_> = (1..=n_max).map(c_tn_closed).collect();
    values.windows(2).all(|w| w[0] > w[1]) && values.iter().all(|c| *c > rat(1, 2))
}

/// `A_{k,0} = 1`, `A_{0,l} = 0` for `l >= 1`, and
/// `A_{k,l} = (A_{k-1,l} + A_{k,l-1} + A_{k-1,l-1}) / 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OeisArray {
    entries: Vec<Vec<Rational>>,
}

impl OeisArray {
    pub fn new(k_max: usize, l_max: usize) -> Self {
        let mut entries = vec![vec![Rational::zero(); l_max + 1]; k_max + 1];
        let third = rat(1, 3);
        for k in 0..=k_max {
            for l in 0..=l_max {
                entries[k][l] = match (k, l) {
                    (_, 0) => Rational::one(),
                    (0, _) => Rational::zero(),
                    _ => {
                        (&entries[k - 1][l] + &entries[k][l - 1] + &entries[k - 1][l - 1]) * &third
                    }
                };
            }
        }
        Self { entries }
    }

    pub fn get(&self, k: usize, l: usize) -> &Rational {
        &self.entries[k][l]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }
}

/// Diagonal entries `A_{m,m}` next to `B_m(0)`.
#[derive(Clone, Debug)]
pub struct DiagonalReport {
    pub rows: Vec<(u32, Rational, Rational)>,
    pub first_mismatch: Option<u32>,
}

impl DiagonalReport {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn oeis_diagonal_check(m_max: u32) -> DiagonalReport {
    let array = OeisArray::new(m_max as usize, m_max as usize);
    let rows: Vec<_> = (0..=m_max)
        .map(|m| (m, array.get(m as usize, m as usize).clone(), frak_b(m, 0)))
        .collect();
    let first_mismatch = rows.iter().find(|(_, a, b)| a != b).map(|(m, _, _)| *m);
    DiagonalReport {
        rows,
        first_mismatch,
    }
}

/// `sum_{k<=n} C(m+k, k) x^k = (1-x)^{-m-1}
/// - x^{n+1}/(1-x) sum_{j<=m} C(m+n+1, m-j) (x/(1-x))^j`.
pub fn binom_identity_check(m: u32, n: u32, x: &Rational) -> Result<bool> {
    if x.is_one() {
        return Err(Error::Precondition("x must differ from 1".into()));
    }
    let (m, n) = (u64::from(m), u64::from(n));
    let lhs: Rational = (0..=n)
        .map(|k| big(binomial(m + k, k)) * rpow(x, k as u32))
        .sum();
    let one_minus = Rational::one() - x;
    let ratio = x / &one_minus;
    let tail: Rational = (0..=m)
        .map(|j| big(binomial(m + n + 1, m - j)) * rpow(&ratio, j as u32))
        .sum();
    let rhs = Rational::one() / rpow(&one_minus, (m + 1) as u32)
        - rpow(x, (n + 1) as u32) / &one_minus * tail;
    Ok(lhs == rhs)
}

/// `sum_{k<=m} C(m+k, k) 2^{-k} = 2^m`.
pub fn binom_half_check(m: u32) -> bool {
    let m = u64::from(m);
    let lhs: Rational = (0..=m)
        .map(|k| big(binomial(m + k, k)) * pow2(-(k as i64)))
        .sum();
    lhs == pow2(m as i64)
}

/// `sum_{k<=m} C(m+k, k) 4^{-k}
/// = (4/3)^{m+1} - 12^{-m}/3 sum_{j<=m} C(2m+1, j) 3^j`.
pub fn binom_quarter_check(m: u32) -> bool {
    let m = u64::from(m);
    let lhs: Rational = (0..=m)
        .map(|k| big(binomial(m + k, k)) * pow2(-2 * k as i64))
        .sum();
    let sum: BigInt = (0..=m)
        .map(|j| binomial(2 * m + 1, j) * BigInt::from(3).pow(j as u32))
        .sum();
    let rhs = rpow(&rat(4, 3), (m + 1) as u32) - big(sum) / big(BigInt::from(12).pow(m as u32) * 3);
    lhs == rhs
}

/// `pi n < (4^n / C(2n, n))^2 < pi (n + 1/2)` for `1 <= n <= n_max`, with
/// `333/106 < pi < 355/113`.
pub fn wallis_bound_check(n_max: u32) -> bool {
    (1..=u64::from(n_max)).all(|n| {
        let r = big(BigInt::from(4).pow(n as u32)) / big(binomial(2 * n, n));
        let r2 = &r * &r;
        let nn = Rational::from_integer(n.into());
        r2 > rat(355, 113) * &nn && r2 < rat(333, 106) * (nn + rat(1, 2))
    })
}

/// `a_{N,q} = 3^{-N} sum_{j<N} 3^j C(N+q-1, j) - C(N+q-2, q-1)`.
pub fn a_nq(n: u32, q: u32) -> Rational {
    assert!(n >= 1 && q >= 1, "N, q >= 1");
    let (n, q) = (u64::from(n), u64::from(q));
    let sum: BigInt = (0..n)
        .map(|j| BigInt::from(3).pow(j as u32) * binomial(n + q - 1, j))
        .sum();
    big(sum) / big(BigInt::from(3).pow(n as u32)) - big(binomial(n + q - 2, q - 1))
}

/// `a_{N,q}` for `1 <= N <= n_max`, `1 <= q <= q_max` from
/// `a_{N,q} = a_{N,q-1} + a_{N-1,q}`, `a_{N,1} = (4/3)^N - 2`,
/// `a_{1,q} = -2/3`. Entry `[N-1][q-1]`.
pub fn a_nq_table(n_max: u32, q_max: u32) -> Vec<Vec<Rational>> {
    let (nm, qm) = (n_max as usize, q_max as usize);
    let mut table = vec![vec![Rational::zero(); qm]; nm];
    for n in 1..=nm {
        for q in 1..=qm {
            table[n - 1][q - 1] = if q == 1 {
                rpow(&rat(4, 3), n as u32) - rat(2, 1)
            } else if n == 1 {
                rat(-2, 3)
            } else {
                &table[n - 1][q - 2] + &table[n - 2][q - 1]
            };
        }
    }
    table
}

#[derive(Clone, Debug, Default)]
pub struct ProblemReport {
    pub checked: usize,
    /// `(N, q)` with `a_{N,q} <= 0` and `1 <= q <= N-3`.
    pub failures: Vec<(u32, u32)>,
    /// `N` with `a_{N,N-3} < 0`.
    pub diagonal_failures: Vec<u32>,
}

impl ProblemReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.diagonal_failures.is_empty()
    }
}

/// Checks `a_{N,N-3} >= 0` and `a_{N,q} > 0` for `1 <= q <= N-3`,
/// `4 <= N <= n_max`.
pub fn problem_scan(n_max: u32) -> ProblemReport {
    let mut report = ProblemReport::default();
    if n_max < 4 {
        return report;
    }
    let table = a_nq_table(n_max, n_max - 3);
    for n in 4..=n_max {
        for q in 1..=n - 3 {
            let a = &table[n as usize - 1][q as usize - 1];
            report.checked += 1;
            if !a.is_positive() {
                report.failures.push((n, q));
            }
            if q == n - 3 && a.is_negative() {
                report.diagonal_failures.push(n);
            }
        }
    }
    report
}

/// `c_{(m,l,k,inf)} - c_{(m,l,inf,inf)}` by the three-case closed form.
pub fn n2_difference_formula(k: u32, l: u32, m: u32) -> Rational {
    assert!(k >= 1 && l >= 1 && m >= 1, "k, l, m >= 1");
    let q = |e: u32| pow2(-2 * i64::from(e));
    let r = |v: i64| Rational::from_integer(v.into());
    let (ki, li, mi) = (i64::from(k), i64::from(l), i64::from(m));
    let four_m = big(BigInt::from(4).pow(m));
    let value = if k < l && k + m < l {
        q(k + m) * (r(3 * ki) * (&four_m - r(1)) + r(2) * &four_m - r(3 * mi) + r(7))
            + q(l) * r(6 * mi)
    } else if k < l {
        q(k + m) * (&four_m * r(3 * ki + 2) - r(3 * li) + r(9))
            + r(2) * q(l) * r(3 * li - 3 * ki - 1)
    } else {
        r(3) * q(k + m) * (r(li) * (&four_m - r(1)) + r(3))
    };
    value / r(27)
}

/// The two expansions compared by [`n2_difference_formula`].
pub fn n2_blocks(k: u32, l: u32, m: u32) -> Result<(BlockExpansion, BlockExpansion)> {
    let e = |v: u32| ExtNat::finite(u64::from(v));
    let a = BlockExpansion::new(vec![e(m)?, e(l)?, e(k)?, ExtNat::INF])?;
    let b = BlockExpansion::new(vec![e(m)?, e(l)?, ExtNat::INF, ExtNat::INF])?;
    Ok((a, b))
}
