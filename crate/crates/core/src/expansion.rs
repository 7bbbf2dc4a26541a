//! Binary digits, carries and extended binary expansions.
//!
//! An extended binary expansion lists block lengths **least significant
//! block first**: `(k_0, l_0, k_1, l_1, ..., k_{N-1}, l_{N-1})`, where `k_j`
//! is the length of the `j`-th block of ones counted from the right and
//! `l_j` the length of the block of zeros to its left. The integer
//! `995 = 0b1111100011` therefore has blocks `(2, 3, 5, inf)`. This is the
//! reverse of the order in which the digits are usually written, and it is
//! the order in which the transfer matrices are multiplied.

use std::fmt;
use std::num::NonZeroU32;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A positive integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Finite(NonZeroU32),
    Infinite,
}

impl ExtNat {
    pub const INF: ExtNat = ExtNat::Infinite;
    pub const ONE: ExtNat = ExtNat::Finite(NonZeroU32::MIN);

    pub fn finite(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyBlock);
        }
        let n = u32::try_from(n).map_err(|_| Error::BlockTooLong(n))?;
        Ok(ExtNat::Finite(NonZeroU32::new(n).expect("checked above")))
    }

    /// The finite value, or `None` for infinity.
    pub fn value(self) -> Option<u64> {
        match self {
            ExtNat::Finite(n) => Some(u64::from(n.get())),
            ExtNat::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtNat::Infinite)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inf" | "Inf" | "INF" | "∞" | "infinity" => Ok(ExtNat::Infinite),
            _ => {
                let n: u64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid block length {s:?}")))?;
                ExtNat::finite(n)
            }
        }
    }
}

/// A tuple `(k_0, l_0, ..., k_{N-1}, l_{N-1})` of block lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BlockExpansion {
    entries: Vec<ExtNat>,
}

impl BlockExpansion {
    pub fn new(entries: Vec<ExtNat>) -> Result<Self> {
        if !entries.len().is_multiple_of(2) {
            return Err(Error::OddLength(entries.len()));
        }
        Ok(Self { entries })
    }

    /// The empty expansion, standing for `t = 0`.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds an expansion from plain numbers, with `None` meaning infinity.
    pub fn from_lengths(lengths: &[Option<u64>]) -> Result<Self> {
        let entries = lengths
            .iter()
            .map(|l| match l {
                Some(n) => ExtNat::finite(*n),
                None => Ok(ExtNat::INF),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[ExtNat] {
        &self.entries
    }

    /// Number of (ones, zeros) block pairs.
    pub fn n_pairs(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lengths of the blocks of ones, `k_0..k_{N-1}`.
    pub fn ones_blocks(&self) -> Vec<ExtNat> {
        self.entries.iter().step_by(2).copied().collect()
    }

    /// Lengths of the blocks of zeros, `l_0..l_{N-1}`.
    pub fn zeros_blocks(&self) -> Vec<ExtNat> {
        self.entries.iter().skip(1).step_by(2).copied().collect()
    }

    /// True iff the expansion is that of a positive odd integer: the last
    /// entry is infinite and all others are finite.
    pub fn is_integer(&self) -> bool {
        match self.entries.split_last() {
            Some((last, rest)) => last.is_infinite() && rest.iter().all(|e| !e.is_infinite()),
            None => false,
        }
    }

    /// Bit mask of the positions holding an infinite entry.
    pub fn infinite_mask(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_infinite())
            .fold(0u64, |m, (j, _)| m | (1 << j))
    }

    /// `(tau . t_e, tau . t_o)`: the summed lengths of the selected blocks of
    /// ones and of zeros. `None` if the word selects an infinite block.
    pub fn select(&self, word: &Word) -> Option<(u64, u64)> {
        debug_assert_eq!(word.len(), self.entries.len());
        let mut even = 0u64;
        let mut odd = 0u64;
        let mut bits = word.bits;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let v = self.entries[j].value()?;
            if j.is_multiple_of(2) {
                even += v;
            } else {
                odd += v;
            }
        }
        Some((even, odd))
    }

    /// Returns a copy with entry `index` replaced.
    pub fn with_entry(&self, index: usize, value: ExtNat) -> Self {
        let mut entries = self.entries.clone();
        entries[index] = value;
        Self { entries }
    }
}

impl fmt::Display for BlockExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for BlockExpansion {
    type Err = Error;

    /// Parses `"(2,3,5,inf)"`, `"2,3,5,inf"` or `"()"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let entries = inner
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<ExtNat>>>()?;
        Self::new(entries)
    }
}

/// A selection word `tau` in `{0,1}^{2N}`; symbol `j` is bit `j` of `bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    bits: u64,
    len: u32,
}

impl Word {
    pub fn new(bits: u64, len: u32) -> Self {
        assert!(len <= 64, "words are limited to 64 symbols");
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        Self {
            bits: bits & mask,
            len,
        }
    }

    pub fn from_symbols(symbols: &[u8]) -> Self {
        let bits = symbols
            .iter()
            .enumerate()
            .fold(0u64, |b, (j, &s)| b | (u64::from(s & 1) << j));
        Self::new(bits, symbols.len() as u32)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn symbol(&self, j: usize) -> u8 {
        ((self.bits >> j) & 1) as u8
    }

    pub fn ones(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Occurrences of the factor `10`, i.e. positions `j` with
    /// `tau_j = 1` and `tau_{j+1} = 0`.
    pub fn one_zero(&self) -> u32 {
        if self.len < 2 {
            return 0;
        }
        let inner = (1u64 << (self.len - 1)) - 1;
        (self.bits & !(self.bits >> 1) & inner).count_ones()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len() {
            write!(f, "{}", self.symbol(j))?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '.' && *c != '·')
            .map(|c| match c {
                '0' | '𝟶' => Ok(0u8),
                '1' | '𝟷' => Ok(1u8),
                _ => Err(Error::Parse(format!("invalid word symbol {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if symbols.len() > 64 {
            return Err(Error::Parse("words are limited to 64 symbols".into()));
        }
        Ok(Word::from_symbols(&symbols))
    }
}

/// Binary sum of digits.
pub fn digit_sum(n: u64) -> u32 {
    n.count_ones()
}

/// Number of carries when adding `n` and `t` in binary, which by Kummer's
/// theorem is the 2-adic valuation of `C(n + t, t)`.
pub fn carry_count(n: u64, t: u64) -> u32 {
    let (mut a, mut b) = (u128::from(n), u128::from(t));
    let mut carry = 0u128;
    let mut count = 0;
    while a != 0 || b != 0 || carry != 0 {
        let sum = (a & 1) + (b & 1) + carry;
        carry = sum >> 1;
        count += carry as u32;
        a >>= 1;
        b >>= 1;
    }
    count
}

/// Splits `t = odd * 2^shift`.
pub fn reduce_to_odd(t: u64) -> Result<(u64, u32)> {
    if t == 0 {
        return Err(Error::Zero);
    }
    let shift = t.trailing_zeros();
    Ok((t >> shift, shift))
}

/// Block lengths of a positive odd integer, least significant block first,
/// closed by an infinite block of leading zeros.
pub fn to_blocks(t: u64) -> Result<BlockExpansion> {
    if t == 0 {
        return Err(Error::Zero);
    }
    if t.is_multiple_of(2) {
        return Err(Error::NotOdd(t));
    }
    let mut entries = Vec::new();
    let mut rest = t;
    while rest != 0 {
        let ones = rest.trailing_ones();
        entries.push(ExtNat::finite(u64::from(ones))?);
        rest = if ones == 64 { 0 } else { rest >> ones };
        if rest == 0 {
            entries.push(ExtNat::INF);
        } else {
            let zeros = rest.trailing_zeros();
            entries.push(ExtNat::finite(u64::from(zeros))?);
            rest >>= zeros;
        }
    }
    BlockExpansion::new(entries)
}

/// Inverse of [`to_blocks`].
pub fn from_blocks(t: &BlockExpansion) -> Result<u64> {
    if !t.is_integer() {
        return Err(Error::NotAnInteger(t.to_string()));
    }
    let mut value: u128 = 0;
    let mut pos: u64 = 0;
    for (j, e) in t.entries().iter().enumerate() {
        let Some(len) = e.value() else { break };
        if j % 2 == 0 {
            if pos + len > 64 {
                return Err(Error::Overflow);
            }
            value |= ((1u128 << len) - 1) << pos;
        }
        pos += len;
        if pos > 64 {
            return Err(Error::Overflow);
        }
    }
    u64::try_from(value).map_err(|_| Error::Overflow)
}

/// Reverses the binary expansion of a positive odd integer.
pub fn reverse_binary(t: u64) -> Result<u64> {
    if t == 0 {
        return Err(Error::Zero);
    }
    if t.is_multiple_of(2) {
        return Err(Error::NotOdd(t));
    }
    let width = 64 - t.leading_zeros();
    Ok(t.reverse_bits() >> (64 - width))
}

/// `(k_0..k_{N-1}) * (l_0..l_{N-1}) = (k_0, l_0, ..., k_{N-1}, l_{N-1})`.
pub fn interleave(ones: &[ExtNat], zeros: &[ExtNat]) -> Result<BlockExpansion> {
    if ones.len() != zeros.len() {
        return Err(Error::LengthMismatch(ones.len(), zeros.len()));
    }
    let entries = ones.iter().zip(zeros).flat_map(|(k, l)| [*k, *l]).collect();
    BlockExpansion::new(entries)
}

/// `(inf, 1, k_0, l_0, ...)`: the expansion of `t` with `01^inf` appended
/// below it.
pub fn append_zero_ones(t: &BlockExpansion) -> BlockExpansion {
    let mut entries = vec![ExtNat::INF, ExtNat::ONE];
    entries.extend_from_slice(t.entries());
    BlockExpansion { entries }
}

/// Limit of the expansions of `2^K t - 1` as `K -> inf`: the lowest one of
/// `t` becomes a zero followed by infinitely many ones.
pub fn append_ones_limit_blocks(t: &BlockExpansion) -> Result<BlockExpansion> {
    let e = t.entries();
    let Some(k0) = e.first().copied() else {
        return Err(Error::Precondition("empty expansion".into()));
    };
    let mut entries = vec![ExtNat::INF];
    match k0.value() {
        None => {
            return Err(Error::Precondition(
                "first block of ones is infinite".into(),
            ))
        }
        Some(1) => {
            let l0 = match e[1].value() {
                Some(l) => ExtNat::finite(l + 1)?,
                None => ExtNat::INF,
            };
            entries.push(l0);
            entries.extend_from_slice(&e[2..]);
        }
        Some(k) => {
            entries.push(ExtNat::ONE);
            entries.push(ExtNat::finite(k - 1)?);
            entries.extend_from_slice(&e[1..]);
        }
    }
    BlockExpansion::new(entries)
}

/// `(|tau|_1, |tau|_10)`.
pub fn word_stats(word: &Word) -> (u32, u32) {
    (word.ones(), word.one_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks(s: &str) -> BlockExpansion {
        s.parse().unwrap()
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(0), 0);
        assert_eq!(digit_sum(995), 7);
        assert_eq!(digit_sum(7), 3);
    }

    #[test]
    fn carries() {
        assert_eq!(carry_count(1, 1), 1);
        assert_eq!(carry_count(3, 1), 2);
        assert_eq!(carry_count(5, 3), 3);
        assert_eq!(carry_count(u64::MAX, 1), 64);
    }

    #[test]
    fn blocks_roundtrip_examples() {
        assert_eq!(to_blocks(995).unwrap(), blocks("2,3,5,inf"));
        assert_eq!(to_blocks(1).unwrap(), blocks("1,inf"));
        assert_eq!(to_blocks(153).unwrap(), blocks("1,2,2,2,1,inf"));
        assert_eq!(from_blocks(&blocks("2,3,5,inf")).unwrap(), 995);
        assert_eq!(from_blocks(&blocks("1,inf")).unwrap(), 1);
        assert_eq!(from_blocks(&blocks("1,2,2,2,1,inf")).unwrap(), 153);
        assert_eq!(to_blocks(u64::MAX).unwrap(), blocks("64,inf"));
    }

    #[test]
    fn blocks_errors() {
        assert_eq!(to_blocks(0), Err(Error::Zero));
        assert_eq!(to_blocks(12), Err(Error::NotOdd(12)));
        assert!(from_blocks(&blocks("2,3,5,2")).is_err());
        assert!(from_blocks(&blocks("inf,1,1,inf")).is_err());
        assert!(from_blocks(&blocks("40,1,40,inf")).is_err());
        assert_eq!(ExtNat::finite(0), Err(Error::EmptyBlock));
        assert!(matches!(
            ExtNat::finite(1 << 32),
            Err(Error::BlockTooLong(_))
        ));
        assert!(matches!(
            "1,2,3".parse::<BlockExpansion>(),
            Err(Error::OddLength(3))
        ));
    }

    #[test]
    fn odd_reduction() {
        assert_eq!(reduce_to_odd(12).unwrap(), (3, 2));
        assert_eq!(reduce_to_odd(995).unwrap(), (995, 0));
        assert_eq!(reduce_to_odd(2).unwrap(), (1, 1));
        assert_eq!(reduce_to_odd(0), Err(Error::Zero));
    }

    #[test]
    fn reversal() {
        assert_eq!(reverse_binary(19).unwrap(), 25);
        assert_eq!(reverse_binary(5).unwrap(), 5);
        assert_eq!(reverse_binary(723).unwrap(), 813);
        assert_eq!(reverse_binary(4), Err(Error::NotOdd(4)));
    }

    #[test]
    fn interleaving() {
        let f = |v: &[Option<u64>]| {
            v.iter()
                .map(|x| x.map_or(ExtNat::INF, |n| ExtNat::finite(n).unwrap()))
                .collect::<Vec<_>>()
        };
        assert_eq!(
            interleave(&f(&[Some(2), Some(5)]), &f(&[Some(3), None])).unwrap(),
            blocks("2,3,5,inf")
        );
        assert_eq!(
            interleave(&f(&[Some(1)]), &f(&[None])).unwrap(),
            blocks("1,inf")
        );
        assert_eq!(
            interleave(&f(&[None, None]), &f(&[Some(1), None])).unwrap(),
            blocks("inf,1,inf,inf")
        );
        assert_eq!(
            interleave(&f(&[None]), &f(&[])),
            Err(Error::LengthMismatch(1, 0))
        );
    }

    #[test]
    fn words() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(word_stats(&w("0000")), (0, 0));
        assert_eq!(word_stats(&w("1010")), (2, 2));
        assert_eq!(word_stats(&w("1101")), (3, 1));
        assert_eq!(w("𝟶𝟶·𝟷𝟶").to_string(), "0010");
    }

    #[test]
    fn selection() {
        let t = blocks("1,2,2,2,1,inf");
        let w: Word = "101010".parse().unwrap();
        assert_eq!(t.select(&w), Some((4, 0)));
        let w: Word = "010101".parse().unwrap();
        assert_eq!(t.select(&w), None);
        let w: Word = "010100".parse().unwrap();
        assert_eq!(t.select(&w), Some((0, 4)));
        assert_eq!(t.infinite_mask(), 0b100000);
    }

    #[test]
    fn from_blocks_inverts_to_blocks() {
        for t in (1..1u64 << 16).step_by(2) {
            assert_eq!(from_blocks(&to_blocks(t).unwrap()).unwrap(), t);
        }
    }

    #[test]
    fn reversal_is_involution() {
        for t in (1..1u64 << 16).step_by(2) {
            let r = reverse_binary(t).unwrap();
            assert_eq!(reverse_binary(r).unwrap(), t);
        }
    }

    #[test]
    fn appended_blocks() {
        assert_eq!(append_zero_ones(&blocks("1,inf")), blocks("inf,1,1,inf"));
        assert_eq!(
            append_ones_limit_blocks(&blocks("1,inf")).unwrap(),
            blocks("inf,inf")
        );
        assert_eq!(
            append_ones_limit_blocks(&blocks("1,2,1,inf")).unwrap(),
            blocks("inf,3,1,inf")
        );
        assert_eq!(
            append_ones_limit_blocks(&blocks("3,inf")).unwrap(),
            blocks("inf,1,2,inf")
        );
        // 2^K * 11 - 1 = 1010 followed by K ones
        for k in 1..10u32 {
            let t = to_blocks((11u64 << k) - 1).unwrap();
            assert_eq!(
                t.with_entry(0, ExtNat::INF),
                append_ones_limit_blocks(&to_blocks(11).unwrap()).unwrap()
            );
        }
        assert!(append_ones_limit_blocks(&blocks("inf,1")).is_err());
    }

    #[test]
    fn one_zero_bounded_by_ones() {
        for len in 0..=12u32 {
            for bits in 0..1u64 << len {
                let w = Word::new(bits, len);
                assert!(w.one_zero() <= w.ones());
            }
        }
    }
}
