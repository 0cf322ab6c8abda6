//! Dense square matrices over GF(2), one packed bit-row per matrix row.
//!
//! Vectors act on the left: `v·A` is the XOR of the rows of `A` selected by
//! the set bits of `v`. The Berlekamp matrix is defined row-wise, so this is
//! the convention that keeps its contracts untransposed.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const WORD_BITS: usize = u64::BITS as usize;

/// A fixed-length bit-vector, bit `j` stored at word `j / 64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// Takes the low `len` bits of `words`; higher bits are dropped.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(len.div_ceil(WORD_BITS), 0);
        if !len.is_multiple_of(WORD_BITS) {
            if let Some(last) = words.last_mut() {
                *last &= (1 << (len % WORD_BITS)) - 1;
            }
        }
        BitVector { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, j: usize) -> bool {
        j < self.len && (self.words[j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, j: usize, value: bool) {
        assert!(j < self.len, "bit {j} out of range for length {}", self.len);
        let mask = 1 << (j % WORD_BITS);
        if value {
            self.words[j / WORD_BITS] |= mask;
        } else {
            self.words[j / WORD_BITS] &= !mask;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
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

    /// Characters '0'/'1', position `j` holding bit `j`.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|j| if self.get(j) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bit_string())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    stride: usize,
    data: Vec<u64>,
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let stride = n.div_ceil(WORD_BITS);
        Ok(BitMatrix {
            n,
            stride,
            data: vec![0; n * stride],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// Builds a matrix from `n` rows of `n` bits each.
    pub fn from_rows(rows: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len())?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != m.n {
                return Err(Error::DimensionMismatch {
                    left: m.n,
                    right: r.len(),
                });
            }
            m.row_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    pub fn from_bools(rows: &[Vec<bool>]) -> Result<Self> {
        let rows: Vec<BitVector> = rows
            .iter()
            .map(|r| {
                let mut v = BitVector::zeros(r.len());
                for (j, &b) in r.iter().enumerate() {
                    v.set(j, b);
                }
                v
            })
            .collect();
        Self::from_rows(&rows)
    }

    /// Parses rows written as '0'/'1' strings (bit `j` at character `j`).
    pub fn from_bit_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let bools = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::InvalidArgument(format!("bad matrix entry `{c}`"))),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bools(&bools)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_vector(&self, i: usize) -> BitVector {
        BitVector {
            len: self.n,
            words: self.row(i).to_vec(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.row(i)[j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range");
        let mask = 1 << (j % WORD_BITS);
        let w = &mut self.row_mut(i)[j / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            self.row(i).iter().enumerate().all(|(w, &bits)| {
                bits == if w == i / WORD_BITS {
                    1 << (i % WORD_BITS)
                } else {
                    0
                }
            })
        })
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        self.check_dim(other)?;
        let mut out = self.clone();
        xor_into(&mut out.data, &other.data);
        Ok(out)
    }

    /// `A + I`, which over GF(2) is also `A - I`.
    pub fn add_identity(&self) -> BitMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.row_mut(i)[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
        }
        out
    }

    fn check_dim(&self, other: &BitMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Row-vector product `v·A`.
    pub fn vec_mul(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.n);
        for i in v.ones() {
            xor_into(&mut out.words, self.row(i));
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        self.check_dim(other)?;
        let mut out = BitMatrix::zeros(self.n)?;
        let stride = self.stride;
        for i in 0..self.n {
            let (dst, src) = (i * stride, self.row(i));
            for (w, &bits) in src.iter().enumerate() {
                let mut rest = bits;
                while rest != 0 {
                    let k = w * WORD_BITS + rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    xor_into(&mut out.data[dst..dst + stride], other.row(k));
                }
            }
        }
        Ok(out)
    }

    /// `A^e` by square-and-multiply; `A^0 = I`.
    pub fn matpow(&self, mut e: u64) -> BitMatrix {
        let mut result = BitMatrix::identity(self.n).expect("n >= 1");
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base).expect("same dimension");
            }
        }
        result
    }

    /// Forward elimination in column order. Each pivot is taken from the
    /// lowest-indexed remaining row with a set bit, and is cleared from every
    /// other row. Returns the rank; `companion` rows receive the same row
    /// operations when present.
    fn eliminate(rows: &mut [Vec<u64>], mut companion: Option<&mut [Vec<u64>]>, n: usize) -> usize {
        let mut rank = 0;
        for col in 0..n {
            let (w, mask) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
                continue;
            };
            rows.swap(rank, p);
            if let Some(c) = companion.as_deref_mut() {
                c.swap(rank, p);
            }
            let pivot = rows[rank].clone();
            let pivot_c = companion.as_deref().map(|c| c[rank].clone());
            for r in 0..rows.len() {
                if r != rank && rows[r][w] & mask != 0 {
                    xor_into(&mut rows[r], &pivot);
                    if let (Some(c), Some(pc)) = (companion.as_deref_mut(), pivot_c.as_ref()) {
                        xor_into(&mut c[r], pc);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn rows_vec(&self) -> Vec<Vec<u64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        Self::eliminate(&mut self.rows_vec(), None, self.n)
    }

    /// Basis of the left nullspace `{v : v·A = 0}`, of size `n - rank(A)`.
    ///
    /// Elimination is tracked on an identity companion; rows of `A` that
    /// reduce to zero leave their companion row as a kernel vector. Pivot
    /// choice is deterministic, so the basis is reproducible.
    pub fn nullspace(&self) -> Vec<BitVector> {
        let mut rows = self.rows_vec();
        let mut comp = BitMatrix::identity(self.n).expect("n >= 1").rows_vec();
        let rank = Self::eliminate(&mut rows, Some(&mut comp), self.n);
        comp.into_iter()
            .skip(rank)
            .map(|words| BitVector { len: self.n, words })
            .collect()
    }

    /// Least `k >= 1` with `A^k = I`, searching `k <= bound` by stepping
    /// through successive powers.
    pub fn multiplicative_order(&self, bound: u64) -> Result<u64> {
        if bound == 0 {
            return Err(Error::InvalidArgument(
                "order bound must be positive".into(),
            ));
        }
        if self.rank() < self.n {
            return Err(Error::Singular);
        }
        let mut power = self.clone();
        for k in 1..=bound {
            if power.is_identity() {
                return Ok(k);
            }
            if k < bound {
                power = power.matmul(self)?;
            }
        }
        Err(Error::OrderBoundExceeded { bound })
    }

    pub fn to_bit_strings(&self) -> Vec<String> {
        (0..self.n)
            .map(|i| self.row_vector(i).to_bit_string())
            .collect()
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_bit_strings() {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_bit_strings()).finish()
    }
}

impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_bit_strings().serialize(s)
    }
}
