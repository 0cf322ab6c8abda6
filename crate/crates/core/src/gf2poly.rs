//! Polynomials over GF(2) stored as little-endian packed bit-vectors.
//!
//! Bit `j` of the coefficient vector is the coefficient of `x^j`. Values are
//! kept canonical: the last word is never zero, so the zero polynomial is the
//! empty vector and equality is structural.
//!
//! Every nonzero polynomial over GF(2) is monic, which is why [`Poly::gcd`]
//! never needs a normalization step.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD_BITS: usize = u64::BITS as usize;

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which orders strictly below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    words: Vec<u64>,
}

fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

fn top_bit(words: &[u64]) -> Option<usize> {
    let last = *words.last()?;
    Some((words.len() - 1) * WORD_BITS + (WORD_BITS - 1 - last.leading_zeros() as usize))
}

/// `dst ^= src << shift`, growing `dst` as needed. Does not trim.
fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    let need = src.len() + ws + usize::from(bs > 0);
    if dst.len() < need {
        dst.resize(need, 0);
    }
    if bs == 0 {
        for (i, &w) in src.iter().enumerate() {
            dst[i + ws] ^= w;
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            dst[i + ws] ^= w << bs;
            dst[i + ws + 1] ^= w >> (WORD_BITS - bs);
        }
    }
}

/// Spreads the low 32 bits of `w` into the even bit positions.
fn spread32(w: u64) -> u64 {
    let mut x = w & 0xFFFF_FFFF;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// Inverse of [`spread32`]: gathers the even bits of `w` into the low half.
fn gather32(w: u64) -> u64 {
    let mut x = w & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF;
    x
}

/// Reduces `r` modulo `m` in place; if `quot` is given, records quotient bits.
fn reduce_in_place(r: &mut Vec<u64>, m: &[u64], mut quot: Option<&mut Vec<u64>>) {
    let dm = top_bit(m).expect("modulus is nonzero");
    trim(r);
    while let Some(dr) = top_bit(r) {
        if dr < dm {
            break;
        }
        let s = dr - dm;
        xor_shifted(r, m, s);
        if let Some(q) = quot.as_deref_mut() {
            let (w, b) = (s / WORD_BITS, s % WORD_BITS);
            if q.len() <= w {
                q.resize(w + 1, 0);
            }
            q[w] |= 1 << b;
        }
        trim(r);
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { words: vec![1] }
    }

    pub fn x() -> Self {
        Poly { words: vec![2] }
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0; k / WORD_BITS + 1];
        words[k / WORD_BITS] = 1 << (k % WORD_BITS);
        Poly { words }
    }

    pub fn from_u64(bits: u64) -> Self {
        Self::from_words(vec![bits])
    }

    pub fn from_u128(bits: u128) -> Self {
        Self::from_words(vec![bits as u64, (bits >> 64) as u64])
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        trim(&mut words);
        Poly { words }
    }

    /// Builds a polynomial from the coefficient positions that are set.
    /// Repeated exponents cancel in pairs.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut words = Vec::new();
        for e in exps {
            let w = e / WORD_BITS;
            if words.len() <= w {
                words.resize(w + 1, 0);
            }
            words[w] ^= 1 << (e % WORD_BITS);
        }
        Self::from_words(words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The coefficient vector as a `u64`, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Degree {
        match top_bit(&self.words) {
            None => Degree::NegInfinity,
            Some(d) => Degree::Finite(d),
        }
    }

    /// Degree when it is at least one; constants and zero are rejected.
    pub fn positive_degree(&self) -> Result<usize> {
        match self.degree() {
            Degree::Finite(d) if d >= 1 => Ok(d),
            _ => Err(Error::NonPositiveDegree(self.to_string())),
        }
    }

    pub fn coeff(&self, j: usize) -> bool {
        self.words
            .get(j / WORD_BITS)
            .is_some_and(|w| (w >> (j % WORD_BITS)) & 1 == 1)
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD_BITS + b)
            })
        })
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (d, s) in words.iter_mut().zip(&short.words) {
            *d ^= s;
        }
        Poly::from_words(words)
    }

    /// Multiplication by `x^k`.
    pub fn shl(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut words = Vec::new();
        xor_shifted(&mut words, &self.words, k);
        Poly::from_words(words)
    }

    /// Carry-less product: one shifted XOR of `other` per set bit of `self`.
    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![0u64; sparse.words.len() + dense.words.len()];
        for e in sparse.exponents() {
            xor_shifted(&mut out, &dense.words, e);
        }
        Poly::from_words(out)
    }

    pub fn square(&self) -> Poly {
        let mut out = Vec::with_capacity(2 * self.words.len());
        for &w in &self.words {
            out.push(spread32(w));
            out.push(spread32(w >> 32));
        }
        Poly::from_words(out)
    }

    /// Returns `(q, r)` with `self = q·b + r` and `deg r < deg b`.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.words.clone();
        let mut q = Vec::new();
        reduce_in_place(&mut r, &b.words, Some(&mut q));
        Ok((Poly::from_words(q), Poly::from_words(r)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.words.clone();
        reduce_in_place(&mut r, &b.words, None);
        Ok(Poly::from_words(r))
    }

    /// Exact quotient; panics in debug builds if `b` does not divide `self`.
    pub(crate) fn div_exact(&self, b: &Poly) -> Poly {
        let (q, r) = self.divrem(b).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "{b} does not divide {self}");
        q
    }

    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.words.clone();
        let mut b = other.words.clone();
        while !b.is_empty() {
            reduce_in_place(&mut a, &b, None);
            std::mem::swap(&mut a, &mut b);
        }
        Ok(Poly::from_words(a))
    }

    /// Formal derivative: only odd exponents survive, shifted down by one.
    pub fn derivative(&self) -> Poly {
        const ODD: u64 = 0xAAAA_AAAA_AAAA_AAAA;
        let mut words: Vec<u64> = self.words.iter().map(|w| w & ODD).collect();
        // shift right by one across words
        for i in 0..words.len() {
            let carry = words.get(i + 1).map_or(0, |w| w << 63);
            words[i] = (words[i] >> 1) | carry;
        }
        Poly::from_words(words)
    }

    /// Square root of a polynomial whose odd coefficients all vanish;
    /// `None` otherwise.
    pub fn sqrt_even(&self) -> Option<Poly> {
        const ODD: u64 = 0xAAAA_AAAA_AAAA_AAAA;
        if self.words.iter().any(|w| w & ODD != 0) {
            return None;
        }
        let mut out = vec![0u64; self.words.len().div_ceil(2)];
        for (i, &w) in self.words.iter().enumerate() {
            out[i / 2] |= gather32(w) << (32 * (i % 2));
        }
        Some(Poly::from_words(out))
    }

    pub fn mul_mod(&self, other: &Poly, f: &Poly) -> Result<Poly> {
        f.positive_degree()?;
        self.mul(other).rem(f)
    }

    /// `self^2 mod f`.
    pub fn square_mod(&self, f: &Poly) -> Result<Poly> {
        f.positive_degree()?;
        self.square().rem(f)
    }

    /// `x^(2^k) mod f`, by `k` repeated squarings of `x mod f`.
    pub fn pow2k_mod(k: u64, f: &Poly) -> Result<Poly> {
        f.positive_degree()?;
        let mut acc = Poly::x().rem(f)?;
        for _ in 0..k {
            acc = acc.square().rem(f)?;
        }
        Ok(acc)
    }

    /// `gcd(f, f') = 1`. A zero derivative means `f` is a perfect square.
    pub fn is_squarefree(&self) -> Result<bool> {
        self.positive_degree()?;
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&d)?.is_one())
    }

    /// Lowercase `0x` prefix followed by uppercase hex digits.
    pub fn to_hex(&self) -> String {
        let Some((last, rest)) = self.words.split_last() else {
            return "0x0".to_owned();
        };
        let mut s = format!("0x{last:X}");
        for w in rest.iter().rev() {
            s.push_str(&format!("{w:016X}"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Poly> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse {
                token: text.to_owned(),
                reason: "empty input",
            });
        }
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            return parse_hex(hex);
        }
        if s == "0" {
            return Ok(Poly::zero());
        }
        let mut seen = BTreeSet::new();
        for term in s.split('+') {
            let exp = parse_term(term)?;
            if !seen.insert(exp) {
                return Err(Error::Parse {
                    token: term.to_owned(),
                    reason: "duplicate monomial",
                });
            }
        }
        Ok(Poly::from_exponents(seen))
    }
}

fn parse_term(term: &str) -> Result<usize> {
    let bad = |reason| Error::Parse {
        token: term.to_owned(),
        reason,
    };
    match term {
        "" => Err(bad("empty term")),
        "1" => Ok(0),
        "x" => Ok(1),
        _ => {
            let digits = term.strip_prefix("x^").ok_or(bad("malformed term"))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("malformed exponent"));
            }
            digits.parse().map_err(|_| bad("exponent out of range"))
        }
    }
}

fn parse_hex(hex: &str) -> Result<Poly> {
    if hex.is_empty() {
        return Err(Error::Parse {
            token: "0x".to_owned(),
            reason: "missing hex digits",
        });
    }
    let mut words = vec![0u64; hex.len().div_ceil(16)];
    for (pos, c) in hex.chars().rev().enumerate() {
        let nibble = c.to_digit(16).ok_or_else(|| Error::Parse {
            token: c.to_string(),
            reason: "invalid hex digit",
        })? as u64;
        words[pos / 16] |= nibble << (4 * (pos % 16));
    }
    Ok(Poly::from_words(words))
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Poly::parse(s)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exps: Vec<usize> = self.exponents().collect();
        for (i, &e) in exps.iter().rev().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Numeric order of the coefficient vectors, which is also (degree, value).
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        Poly::add(&self, &rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        Poly::mul(&self, &rhs)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Poly::parse(&s).map_err(serde::de::Error::custom)
    }
}
