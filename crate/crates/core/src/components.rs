//! Decomposition of `gamma_t` into components
//!
//! ```text
//! gamma_t = sum_{n=0}^{N} (-1)^n g_{N,n} C_{N,n},
//! g_{N,n} = (alpha beta)^{N-n} (1 - alpha - beta)^n / ((1-alpha)(1-beta))^N,
//! C_{N,n} = sum_{|tau|_10 = n} (-1)^{|tau|_1} alpha^{tau.t_e} beta^{tau.t_o},
//! ```
//!
//! and the algebra of the matrices `T_ab` behind it. Writing
//! `A_1^k A_0^l = (T_00 + alpha^k T_10 + beta^l T_01 + alpha^k beta^l T_11)
//! / ((1-alpha)(1-beta))`, any product `T_{u_0} ... T_{u_{N-1}}` collapses to
//! `(-1)^s (alpha+beta-1)^lambda (alpha beta)^{N-1-lambda} T_nu`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{binomial, FourierPoly, Poly, Rational};
use crate::expansion::{interleave, BlockExpansion, ExtNat, Word};
use crate::tails::check_enumerable;
use crate::transfer::{gamma_ratfun, RatFun2};

/// `g_{N,n}`.
pub fn frak_g(n_pairs: u32, n: u32) -> Result<RatFun2> {
    if n > n_pairs {
        return Err(Error::OutOfRange {
            index: n as usize,
            max: n_pairs as usize,
        });
    }
    let numer = &Poly::alpha_beta(1, 1).pow(n_pairs - n) * &one_minus_alpha_beta().pow(n);
    Ok(RatFun2::new(numer, n_pairs, n_pairs))
}

/// `b_m = (alpha beta / ((1-alpha)(1-beta)))^m`.
pub fn frak_b_ratfun(m: u32) -> RatFun2 {
    RatFun2::new(Poly::alpha_beta(1, 1).pow(m), m, m)
}

fn one_minus_alpha_beta() -> Poly {
    &(&Poly::one() - &Poly::alpha()) - &Poly::beta()
}

/// The polynomials `C_{N,n}` for `n = 0..=N`, in one pass over all words.
fn component_polys(t: &BlockExpansion) -> Result<Vec<Poly>> {
    check_enumerable(t)?;
    let n_pairs = t.n_pairs();
    let len = 2 * n_pairs as u32;
    let inf = t.infinite_mask();
    let mut out = vec![Poly::zero(); n_pairs + 1];
    for bits in 0..(1u64 << len) {
        if bits & inf != 0 {
            continue;
        }
        let word = Word::new(bits, len);
        let (e, o) = t.select(&word).expect("finite selection");
        let sign = if word.ones().is_multiple_of(2) { 1 } else { -1 };
        out[word.one_zero() as usize].add_term(e, o, Rational::from_integer(sign.into()));
    }
    Ok(out)
}

/// `C_{N,n}` as a polynomial in `alpha`, `beta` and as a Laurent
/// polynomial in `e(theta)`.
pub fn frak_c(t: &BlockExpansion, n: u32) -> Result<(Poly, FourierPoly)> {
    let n_pairs = t.n_pairs() as u32;
    if n > n_pairs {
        return Err(Error::OutOfRange {
            index: n as usize,
            max: n_pairs as usize,
        });
    }
    let poly = component_polys(t)?.swap_remove(n as usize);
    let fourier = FourierPoly::from_poly(&poly);
    Ok((poly, fourier))
}

#[derive(Clone, Debug)]
pub struct ComponentSet {
    pub n_pairs: usize,
    /// `(-1)^n g_{N,n} C_{N,n}`
    pub parts: Vec<RatFun2>,
    /// `C_{N,n}(theta)`
    pub fourier_parts: Vec<FourierPoly>,
    /// `C_{N,n}(alpha, beta)`
    pub polys: Vec<Poly>,
}

impl ComponentSet {
    pub fn sum(&self) -> RatFun2 {
        self.parts.iter().fold(RatFun2::zero(), |acc, p| acc.add(p))
    }
}

pub fn decompose(t: &BlockExpansion) -> Result<ComponentSet> {
    let polys = component_polys(t)?;
    let n_pairs = t.n_pairs();
    let parts = polys
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let g = frak_g(n_pairs as u32, n as u32).expect("n <= N");
            let part = g.mul_poly(c);
            if n % 2 == 0 {
                part
            } else {
                part.neg()
            }
        })
        .collect();
    let fourier_parts = polys.iter().map(FourierPoly::from_poly).collect();
    Ok(ComponentSet {
        n_pairs,
        parts,
        fourier_parts,
        polys,
    })
}

/// `sum_tau (-1)^{|tau|_1} alpha^{tau.t_e} beta^{tau.t_o}
/// sum_j C(|tau|_10, j) (-1)^j b_{N-j}`.
pub fn alt_decompose(t: &BlockExpansion) -> Result<RatFun2> {
    let polys = component_polys(t)?;
    let n_pairs = t.n_pairs() as u32;
    let mut acc = RatFun2::new(Poly::zero(), n_pairs, n_pairs);
    for (n, c) in polys.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut inner = RatFun2::zero();
        for j in 0..=n as u64 {
            let b = frak_b_ratfun(n_pairs - j as u32).mul_poly(&Poly::constant(
                Rational::from_integer(binomial(n as u64, j)),
            ));
            inner = if j % 2 == 0 {
                inner.add(&b)
            } else {
                inner.sub(&b)
            };
        }
        acc = acc.add(&inner.mul_poly(c));
    }
    Ok(acc)
}

/// Value of `g_{N,n}` at `alpha = e(theta)/2`, `beta = e(-theta)/2`:
/// `(4 - 4 cos theta)^n / (5 - 4 cos theta)^N`.
pub fn frak_g_at(n_pairs: u32, n: u32, theta: f64) -> f64 {
    // 4 - 4 cos = 8 sin^2(theta/2) keeps precision near 0
    let s = (theta / 2.0).sin();
    let num = 8.0 * s * s;
    num.powi(n as i32) / (1.0 + num).powi(n_pairs as i32)
}

/// Labels `ab` of the matrices `T_ab`; `a` marks `alpha^k`, `b` marks `beta^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TLabel {
    T00,
    T10,
    T01,
    T11,
}

impl TLabel {
    pub const ALL: [TLabel; 4] = [TLabel::T00, TLabel::T10, TLabel::T01, TLabel::T11];

    pub fn from_digits(a: u8, b: u8) -> Self {
        match (a & 1, b & 1) {
            (0, 0) => TLabel::T00,
            (1, 0) => TLabel::T10,
            (0, 1) => TLabel::T01,
            _ => TLabel::T11,
        }
    }

    pub fn digits(self) -> (u8, u8) {
        match self {
            TLabel::T00 => (0, 0),
            TLabel::T10 => (1, 0),
            TLabel::T01 => (0, 1),
            TLabel::T11 => (1, 1),
        }
    }

    pub fn word(self) -> Word {
        let (a, b) = self.digits();
        Word::from_symbols(&[a, b])
    }
}

impl fmt::Display for TLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.digits();
        write!(f, "T{a}{b}")
    }
}

pub type PolyMatrix = [[Poly; 2]; 2];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TMatrixSymbol {
    pub label: TLabel,
    pub matrix: PolyMatrix,
}

impl TMatrixSymbol {
    pub fn new(label: TLabel) -> Self {
        Self {
            label,
            matrix: t_matrix(label),
        }
    }
}

fn poly_terms(terms: &[(i64, u64, u64)]) -> Poly {
    Poly::from_terms(
        terms
            .iter()
            .map(|&(c, i, j)| ((i, j), Rational::from_integer(c.into()))),
    )
}

pub fn t_matrix(label: TLabel) -> PolyMatrix {
    let ab = poly_terms(&[(1, 1, 1)]);
    let alpha_one_minus_alpha = poly_terms(&[(1, 1, 0), (-1, 2, 0)]);
    let beta_one_minus_beta = poly_terms(&[(1, 0, 1), (-1, 0, 2)]);
    match label {
        TLabel::T00 => [[ab, Poly::zero()], [alpha_one_minus_alpha, Poly::zero()]],
        TLabel::T10 => [
            [one_minus_alpha_beta(), Poly::zero()],
            [Poly::zero(), Poly::zero()],
        ],
        TLabel::T01 => [
            [-&ab, beta_one_minus_beta],
            [
                -&alpha_one_minus_alpha,
                &(&Poly::one() - &Poly::alpha()) * &(&Poly::one() - &Poly::beta()),
            ],
        ],
        TLabel::T11 => [[ab, -&beta_one_minus_beta], [Poly::zero(), Poly::zero()]],
    }
}

pub fn poly_matrix_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let entry = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

fn poly_matrix_scale(m: &PolyMatrix, c: &Poly) -> PolyMatrix {
    [[&m[0][0] * c, &m[0][1] * c], [&m[1][0] * c, &m[1][1] * c]]
}

/// Result of collapsing a product of `T` matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TReduction {
    /// Parity of `|tau|_1 - |nu|_1`.
    pub sign: u8,
    pub lambda: u32,
    pub nu: TLabel,
}

/// Sign, exponent of `alpha + beta - 1` and surviving label for the product
/// `T_{tau_0 tau_1} T_{tau_2 tau_3} ...`.
pub fn t_reduce(tau: &Word) -> Result<TReduction> {
    let len = tau.len();
    if len == 0 || !len.is_multiple_of(2) {
        return Err(Error::BadWord(len));
    }
    let nu = TLabel::from_digits(tau.symbol(0), tau.symbol(len - 1));
    let nu_word = nu.word();
    Ok(TReduction {
        sign: ((tau.ones() + nu_word.ones()) % 2) as u8,
        lambda: tau.one_zero() - nu_word.one_zero(),
        nu,
    })
}

/// Multiplies out the `T` matrices of `tau` and compares with the
/// collapsed form predicted by [`t_reduce`].
pub fn t_product_check(tau: &Word) -> Result<bool> {
    let red = t_reduce(tau)?;
    let n_pairs = (tau.len() / 2) as u32;
    let product = (0..n_pairs as usize)
        .map(|j| {
            t_matrix(TLabel::from_digits(
                tau.symbol(2 * j),
                tau.symbol(2 * j + 1),
            ))
        })
        .reduce(|acc, m| poly_matrix_mul(&acc, &m))
        .expect("nonempty word");
    let apb1 = poly_terms(&[(1, 1, 0), (1, 0, 1), (-1, 0, 0)]);
    let mut scalar = &apb1.pow(red.lambda) * &Poly::alpha_beta(1, 1).pow(n_pairs - 1 - red.lambda);
    if red.sign == 1 {
        scalar = -&scalar;
    }
    Ok(product == poly_matrix_scale(&t_matrix(red.nu), &scalar))
}

/// Scalar in an entry of the multiplication table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TScalar {
    AlphaBeta,
    NegAlphaBeta,
    /// `alpha + beta - 1`
    Apb1,
    NegApb1,
}

impl TScalar {
    pub const ALL: [TScalar; 4] = [
        TScalar::AlphaBeta,
        TScalar::NegAlphaBeta,
        TScalar::Apb1,
        TScalar::NegApb1,
    ];

    pub fn poly(self) -> Poly {
        let ab = poly_terms(&[(1, 1, 1)]);
        let apb1 = poly_terms(&[(1, 1, 0), (1, 0, 1), (-1, 0, 0)]);
        match self {
            TScalar::AlphaBeta => ab,
            TScalar::NegAlphaBeta => -&ab,
            TScalar::Apb1 => apb1,
            TScalar::NegApb1 => -&apb1,
        }
    }
}

impl fmt::Display for TScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TScalar::AlphaBeta => "ab",
            TScalar::NegAlphaBeta => "-ab",
            TScalar::Apb1 => "(a+b-1)",
            TScalar::NegApb1 => "-(a+b-1)",
        })
    }
}

/// `T_x T_y` written as `scalar * T_z`, found by searching all candidates.
/// Rows are indexed by `x`, columns by `y`, both in the order of
/// [`TLabel::ALL`].
pub fn multiplication_table() -> [[(TScalar, TLabel); 4]; 4] {
    let entry = |x: TLabel, y: TLabel| {
        let product = poly_matrix_mul(&t_matrix(x), &t_matrix(y));
        TScalar::ALL
            .iter()
            .flat_map(|&s| TLabel::ALL.iter().map(move |&z| (s, z)))
            .find(|(s, z)| poly_matrix_scale(&t_matrix(*z), &s.poly()) == product)
            .expect("every product of two T matrices is a multiple of one")
    };
    let row = |x: TLabel| TLabel::ALL.map(|y| entry(x, y));
    TLabel::ALL.map(row)
}

/// Compares `gamma` before and after permuting blocks separated by
/// infinite blocks: the ones blocks when every zeros block is infinite, or
/// the zeros blocks (keeping the last in place) when every ones block is.
pub fn swap_blocks_check(ones: &[ExtNat], zeros: &[ExtNat], perm: &[usize]) -> Result<bool> {
    let n = ones.len();
    if zeros.len() != n {
        return Err(Error::LengthMismatch(n, zeros.len()));
    }
    let mut seen = vec![false; n];
    if perm.len() != n
        || perm
            .iter()
            .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::Precondition(
            "not a permutation of the blocks".into(),
        ));
    }
    let permuted = |v: &[ExtNat]| perm.iter().map(|&p| v[p]).collect::<Vec<_>>();
    let original = gamma_ratfun(&interleave(ones, zeros)?);
    let swapped = if zeros.iter().all(|z| z.is_infinite()) {
        interleave(&permuted(ones), zeros)?
    } else if ones.iter().all(|k| k.is_infinite()) && (n == 0 || perm[n - 1] == n - 1) {
        interleave(ones, &permuted(zeros))?
    } else {
        return Err(Error::Precondition(
            "need all zeros blocks infinite, or all ones blocks infinite and the last block fixed"
                .into(),
        ));
    };
    Ok(original == gamma_ratfun(&swapped))
}

/// Real part of `(-1)^n g_{N,n}(theta) C_{N,n}(theta)` on a grid.
pub fn component_real_parts(set: &ComponentSet, thetas: &[f64]) -> Vec<Vec<f64>> {
    let n_pairs = set.n_pairs as u32;
    set.fourier_parts
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            thetas
                .iter()
                .map(|&th| sign * frak_g_at(n_pairs, n as u32, th) * c.eval_f64(th).0)
                .collect()
        })
        .collect()
}

/// `true` when `C_{N,0} = 1`, as happens whenever the last zeros block is
/// infinite.
pub fn base_component_is_one(set: &ComponentSet) -> bool {
    set.polys[0] == Poly::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::expansion::to_blocks;

    fn blocks(s: &str) -> BlockExpansion {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn g_examples() {
        assert_eq!(frak_g(1, 0).unwrap(), frak_b_ratfun(1));
        assert_eq!(
            frak_g(1, 1).unwrap(),
            RatFun2::new(one_minus_alpha_beta(), 1, 1)
        );
        assert_eq!(
            frak_g(2, 1).unwrap(),
            RatFun2::new(&Poly::alpha_beta(1, 1) * &one_minus_alpha_beta(), 2, 2)
        );
        assert!(frak_g(2, 3).is_err());
    }

    #[test]
    fn components_of_153() {
        let t = to_blocks(153).unwrap();
        let set = decompose(&t).unwrap();
        assert_eq!(set.n_pairs, 3);
        let expect: [&[(i64, Rational)]; 4] = [
            &[(0, rat(1, 1))],
            &[
                (-2, rat(-33, 64)),
                (-1, rat(17, 64)),
                (0, rat(31, 256)),
                (1, rat(-17, 16)),
                (2, rat(-1, 4)),
            ],
            &[
                (-4, rat(1, 16)),
                (-3, rat(-1, 16)),
                (-2, rat(1, 64)),
                (-1, rat(1, 4)),
                (0, rat(-1, 8)),
                (1, rat(-1, 16)),
                (2, rat(9, 32)),
                (3, rat(1, 4)),
            ],
            &[(4, rat(-1, 16))],
        ];
        for (n, terms) in expect.iter().enumerate() {
            assert_eq!(
                set.fourier_parts[n],
                FourierPoly::from_terms(terms.iter().cloned()),
                "n = {n}"
            );
        }
        assert_eq!(set.sum(), gamma_ratfun(&t));
        assert_eq!(frak_c(&t, 3).unwrap().1, set.fourier_parts[3]);
    }

    #[test]
    fn small_decompositions() {
        let all_inf = blocks("inf,inf,inf,inf");
        let set = decompose(&all_inf).unwrap();
        assert!(set.parts[1..].iter().all(RatFun2::is_zero));
        assert_eq!(set.parts[0], frak_b_ratfun(2));

        let t = blocks("1,inf");
        let set = decompose(&t).unwrap();
        let expect = RatFun2::new(Poly::alpha(), 0, 1);
        assert_eq!(set.sum(), expect);
        assert_eq!(alt_decompose(&t).unwrap(), expect);
        assert_eq!(alt_decompose(&blocks("inf,inf")).unwrap(), frak_b_ratfun(1));
        assert!(base_component_is_one(&set));
    }

    #[test]
    fn decomposition_matches_transfer_product() {
        for s in [
            "2,3,5,inf",
            "1,1,1,1,1,inf",
            "3,inf,2,1",
            "inf,2,inf,inf",
            "1,2,3,1",
        ] {
            let t = blocks(s);
            assert_eq!(decompose(&t).unwrap().sum(), gamma_ratfun(&t), "{s}");
            assert_eq!(alt_decompose(&t).unwrap(), gamma_ratfun(&t), "{s}");
        }
    }

    #[test]
    fn fourier_matches_polynomial_at_pi() {
        let t = to_blocks(723).unwrap();
        let set = decompose(&t).unwrap();
        let h = rat(-1, 2);
        for (p, f) in set.polys.iter().zip(&set.fourier_parts) {
            assert_eq!(f.eval_at_pi(), p.eval(&h, &h));
        }
    }

    #[test]
    fn graduation() {
        for n_pairs in 1..=4u32 {
            for n in 0..=n_pairs {
                let ratio = |th: f64| frak_g_at(n_pairs, n, th) / th.powi(2 * n as i32);
                let (r2, r3) = (ratio(1e-2), ratio(1e-3));
                let limit = 2f64.powi(n as i32);
                assert!((r2 / r3 - 1.0).abs() < 0.1);
                assert!((r3 / limit - 1.0).abs() < 0.1);
            }
        }
    }

    #[test]
    fn reductions() {
        let r = t_reduce(&w("10")).unwrap();
        assert_eq!((r.sign, r.lambda, r.nu), (0, 0, TLabel::T10));
        let r = t_reduce(&w("0010")).unwrap();
        assert_eq!((r.sign, r.lambda, r.nu), (1, 1, TLabel::T00));
        let r = t_reduce(&w("1100")).unwrap();
        assert_eq!((r.sign, r.lambda, r.nu), (1, 0, TLabel::T10));
        let r = t_reduce(&w("101010")).unwrap();
        assert_eq!(r.lambda, 2);
        assert!(t_reduce(&w("101")).is_err());
        assert!(t_reduce(&w("")).is_err());
    }

    #[test]
    fn products_collapse() {
        for len in [2u32, 4, 6, 8] {
            for bits in 0..(1u64 << len) {
                assert!(t_product_check(&Word::new(bits, len)).unwrap(), "{bits:b}");
            }
        }
    }

    #[test]
    fn table_matches_published_layout() {
        use TLabel::*;
        use TScalar::*;
        let expect = [
            [
                (AlphaBeta, T00),
                (NegApb1, T00),
                (AlphaBeta, T01),
                (NegAlphaBeta, T01),
            ],
            [
                (AlphaBeta, T10),
                (NegApb1, T10),
                (Apb1, T11),
                (NegApb1, T11),
            ],
            [
                (NegApb1, T00),
                (Apb1, T00),
                (NegApb1, T01),
                (AlphaBeta, T01),
            ],
            [
                (NegAlphaBeta, T10),
                (AlphaBeta, T10),
                (NegApb1, T11),
                (AlphaBeta, T11),
            ],
        ];
        assert_eq!(multiplication_table(), expect);
    }

    #[test]
    fn t_matrices_rebuild_the_block_factor() {
        // (1-a)(1-b) A_1 A_0 = T00 + a T10 + b T01 + ab T11 at k = l = 1
        let t = blocks("1,1");
        let m = crate::transfer::product_matrix(&t);
        let weights = [
            Poly::one(),
            Poly::alpha(),
            Poly::beta(),
            Poly::alpha_beta(1, 1),
        ];
        for i in 0..2 {
            for j in 0..2 {
                let mut numer = Poly::zero();
                for (label, wt) in TLabel::ALL.iter().zip(&weights) {
                    numer = &numer + &(&t_matrix(*label)[i][j] * wt);
                }
                assert_eq!(*m.get(i, j), RatFun2::new(numer, 1, 1));
            }
        }
    }

    #[test]
    fn block_swaps() {
        let e = |s: &str| s.parse::<ExtNat>().unwrap();
        let ones = [e("1"), e("2")];
        let zeros = [ExtNat::INF, ExtNat::INF];
        assert!(swap_blocks_check(&ones, &zeros, &[1, 0]).unwrap());
        assert!(swap_blocks_check(&ones, &zeros, &[0, 1]).unwrap());
        let ones = [ExtNat::INF; 3];
        let zeros = [e("2"), e("1"), ExtNat::INF];
        assert!(swap_blocks_check(&ones, &zeros, &[1, 0, 2]).unwrap());
        assert!(swap_blocks_check(&ones, &zeros, &[2, 1, 0]).is_err());
        assert!(swap_blocks_check(&[e("1"), e("2")], &[e("1"), ExtNat::INF], &[1, 0]).is_err());
    }

    #[test]
    fn swapped_pair_density() {
        use crate::tails::cusick;
        let a = blocks("inf,1,inf,2,inf,1,inf,inf");
        let b = blocks("inf,1,inf,1,inf,2,inf,inf");
        assert_eq!(cusick(&a), rat(2737, 5184));
        assert_eq!(cusick(&b), rat(2737, 5184));
    }

    #[test]
    fn real_parts_sum_to_gamma() {
        let t = to_blocks(153).unwrap();
        let set = decompose(&t).unwrap();
        let rows = component_real_parts(&set, &[std::f64::consts::PI]);
        let total: f64 = rows.iter().map(|r| r[0]).sum();
        let h = rat(-1, 2);
        let exact = crate::exact::to_f64(&gamma_ratfun(&t).eval(&h, &h));
        assert!((total - exact).abs() < 1e-12);
    }
}
