//! Irreducibility testing, the count `N(l)` of irreducible polynomials of
//! degree `l`, and ascending enumeration of them.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{divisors, factorize};
use crate::error::{Error, Result};
use crate::gf2poly::Poly;

/// Exact number of irreducible polynomials of a given degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibleCount {
    pub degree: u64,
    #[serde(serialize_with = "serialize_decimal")]
    pub count: BigUint,
}

fn serialize_decimal<S: serde::Serializer>(
    n: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_str_radix(10))
}

/// Rabin's test: `x^(2^m) ≡ x (mod f)` and, for each prime `r | m`,
/// `gcd(x^(2^(m/r)) - x, f) = 1`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let m = f.positive_degree()? as u64;
    let x = Poly::x().rem(f)?;
    if Poly::pow2k_mod(m, f)? != x {
        return Ok(false);
    }
    for (r, _) in factorize(m) {
        let h = Poly::pow2k_mod(m / r, f)?.add(&x);
        if !f.gcd(&h)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1, "mobius(0)");
    let fs = factorize(n);
    if fs.iter().any(|&(_, e)| e > 1) {
        0
    } else if fs.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `N(l) = (1/l) Σ_{d|l} μ(d) 2^(l/d)`, in arbitrary precision.
pub fn count_irreducible(degree: u64) -> IrreducibleCount {
    assert!(degree >= 1, "degree must be positive");
    let mut sum = BigInt::zero();
    for d in divisors(degree) {
        let term = BigInt::one() << (degree / d);
        match mobius(d) {
            1 => sum += term,
            -1 => sum -= term,
            _ => {}
        }
    }
    debug_assert!(!sum.is_negative());
    let count = (sum / BigInt::from(degree))
        .to_biguint()
        .expect("count is nonnegative");
    IrreducibleCount { degree, count }
}

/// `min(N(l), cap)` without big integers. Exact arithmetic in `i128` up to
/// degree 120; beyond that `N(l) > 2^(l-1)/l > 2^63`, so any `u64` cap is met.
pub fn count_at_most(degree: u64, cap: u64) -> u64 {
    assert!(degree >= 1, "degree must be positive");
    if degree > 120 {
        return cap;
    }
    let sum: i128 = divisors(degree)
        .into_iter()
        .map(|d| i128::from(mobius(d)) << (degree / d))
        .sum();
    let n = (sum / i128::from(degree)) as u128;
    n.min(u128::from(cap)) as u64
}

/// The `k` numerically smallest irreducible polynomials of degree `l`.
pub fn first_k_irreducibles(degree: u64, k: u64) -> Result<Vec<Poly>> {
    if degree == 0 || k == 0 {
        return Err(Error::InvalidArgument(
            "degree and count must both be positive".into(),
        ));
    }
    if count_at_most(degree, k) < k {
        return Err(Error::NotEnoughIrreducibles {
            degree,
            requested: k,
            available: count_irreducible(degree).count.to_string(),
        });
    }
    let degree = usize::try_from(degree)
        .map_err(|_| Error::InvalidArgument(format!("degree {degree} too large")))?;
    let mut out = Vec::with_capacity(k as usize);
    let mut low = LowBits::new(degree);
    while out.len() < k as usize {
        let f = low.poly();
        if is_irreducible(&f)? {
            out.push(f);
        }
        if !low.increment() {
            break;
        }
    }
    debug_assert_eq!(out.len(), k as usize);
    Ok(out)
}

/// Counter over the degree-`l` polynomials `x^l + (low bits)` in ascending
/// numeric order.
struct LowBits {
    degree: usize,
    words: Vec<u64>,
}

impl LowBits {
    fn new(degree: usize) -> Self {
        let mut words = vec![0u64; degree / 64 + 1];
        words[degree / 64] |= 1 << (degree % 64);
        LowBits { degree, words }
    }

    fn poly(&self) -> Poly {
        Poly::from_words(self.words.clone())
    }

    /// Adds one to the low bits; false once they wrap around.
    fn increment(&mut self) -> bool {
        for w in self.words.iter_mut() {
            let (v, carry) = w.overflowing_add(1);
            *w = v;
            if !carry {
                break;
            }
        }
        // a carry into bit `degree` means the low bits overflowed
        let top = self.degree / 64;
        let top_mask = 1u64 << (self.degree % 64);
        let above = if self.degree % 64 == 63 {
            0
        } else {
            !((top_mask << 1) - 1)
        };
        if self.words[top] & top_mask == 0 || self.words[top] & above != 0 {
            return false;
        }
        true
    }
}

/// `N(l)` as a `u64` when it fits.
pub fn count_u64(degree: u64) -> Option<u64> {
    count_irreducible(degree).count.to_u64()
}
