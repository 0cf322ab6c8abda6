//! The Berlekamp matrix `Q` of a binary polynomial, its order, squarefree
//! decomposition and complete factorization by the nullspace of `Q - I`.
//!
//! `Q` is only invertible when `f` is squarefree, and the order `o(f)` is
//! defined only in that case. Note that `Q^m = I` (with `m = deg f`) is a
//! strictly stronger condition than squarefreeness: it holds exactly when `f`
//! divides `x^(2^m) - x`. `(x^2+x+1)(x^3+x+1)` is squarefree with order 6,
//! so `Q^5 != I`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2poly::Poly;
use crate::linalg2::{BitMatrix, BitVector};

/// Largest degree for which an `m x m` matrix is built unless overridden.
pub const DEFAULT_MAX_DEGREE: usize = 4096;

/// Irreducible factors with multiplicities, ascending by (degree, value).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Multiplies the factors back together.
    pub fn product(&self) -> Poly {
        self.factors.iter().fold(Poly::one(), |acc, (p, e)| {
            (0..*e).fold(acc, |acc, _| acc.mul(p))
        })
    }

    /// Degrees of the distinct factors, in factor order.
    pub fn degrees(&self) -> Vec<u64> {
        self.factors
            .iter()
            .map(|(p, _)| p.degree().finite().expect("factors are nonconstant") as u64)
            .collect()
    }

    /// `o(f)` when the factored polynomial is squarefree.
    pub fn order(&self) -> Option<PolyOrder> {
        if !self.is_squarefree() {
            return None;
        }
        lcm_all(&self.degrees()).ok().map(PolyOrder)
    }

    pub fn report(&self, input: &Poly) -> FactorizationReport {
        FactorizationReport {
            input: input.clone(),
            factors: self
                .factors
                .iter()
                .map(|(p, e)| FactorEntry {
                    poly: p.clone(),
                    text: p.to_string(),
                    multiplicity: *e,
                })
                .collect(),
            order: self.order().map(|o| o.value()),
        }
    }
}

/// JSON shape of a factorization.
#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    pub input: Poly,
    pub factors: Vec<FactorEntry>,
    pub order: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorEntry {
    pub poly: Poly,
    pub text: String,
    pub multiplicity: u32,
}

/// Least `k >= 1` with `Q^k = I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PolyOrder(u64);

impl PolyOrder {
    pub fn value(self) -> u64 {
        self.0
    }
}

pub fn build_q(f: &Poly) -> Result<BitMatrix> {
    build_q_with_cap(f, DEFAULT_MAX_DEGREE)
}

/// Row `i` (0-based) holds `x^(2i) mod f`. Successive rows differ by a factor
/// of `x^2`, so each row costs two shift-and-reduce steps.
pub fn build_q_with_cap(f: &Poly, max_degree: usize) -> Result<BitMatrix> {
    let m = f.positive_degree()?;
    if m > max_degree {
        return Err(Error::DegreeCapExceeded {
            degree: m,
            cap: max_degree,
        });
    }
    let times_x = |p: &Poly| {
        let s = p.shl(1);
        if s.coeff(m) {
            s.add(f)
        } else {
            s
        }
    };
    let mut rows = Vec::with_capacity(m);
    let mut power = Poly::one();
    for _ in 0..m {
        rows.push(BitVector::from_words(m, power.words().to_vec()));
        power = times_x(&times_x(&power));
    }
    BitMatrix::from_rows(&rows)
}

/// Applies squaring mod `f` through `Q`: the coefficient row-vector of `a`
/// times `Q`.
pub fn frobenius_apply(q: &BitMatrix, a: &Poly, f: &Poly) -> Result<Poly> {
    let m = f.positive_degree()?;
    if a.degree() >= f.degree() {
        return Err(Error::InvalidArgument(format!(
            "deg({a}) must be below deg(f) = {m}"
        )));
    }
    if q.dim() != m {
        return Err(Error::DimensionMismatch {
            left: q.dim(),
            right: m,
        });
    }
    let v = BitVector::from_words(m, a.words().to_vec());
    Ok(Poly::from_words(q.vec_mul(&v)?.words().to_vec()))
}

/// Splits `f` into pairwise coprime squarefree parts with exponents,
/// `f = ∏ part^exponent`, ascending by exponent.
pub fn squarefree_decompose(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    f.positive_degree()?;
    let mut parts = squarefree_rec(f);
    parts.sort_by_key(|&(_, e)| e);
    Ok(parts)
}

fn squarefree_rec(f: &Poly) -> Vec<(Poly, u32)> {
    let d = f.derivative();
    if d.is_zero() {
        let root = f.sqrt_even().expect("zero derivative means a square");
        return doubled(squarefree_rec(&root));
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&d).expect("f nonzero");
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c).expect("w nonzero");
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        i += 1;
        c = c.div_exact(&y);
        w = y;
    }
    // what is left in c has only exponents divisible by two
    if !c.is_one() {
        let root = c.sqrt_even().expect("remaining cofactor is a square");
        out.extend(doubled(squarefree_rec(&root)));
    }
    out
}

fn doubled(parts: Vec<(Poly, u32)>) -> Vec<(Poly, u32)> {
    parts.into_iter().map(|(p, e)| (p, 2 * e)).collect()
}

/// Number of distinct irreducible factors of a squarefree `g`, read off as
/// the nullity of `Q_g - I`.
pub fn berlekamp_nullity(g: &Poly) -> Result<usize> {
    Ok(build_q(g)?.add_identity().nullspace().len())
}

/// Berlekamp splitting of a squarefree polynomial. The nullspace of `Q - I`
/// holds the polynomials `v` with `v^2 ≡ v (mod g)`; every factor `h` of `g`
/// divides `v(v+1)`, so `gcd(h, v)` and `gcd(h, v+1)` split `h` whenever `v`
/// separates two of its irreducible factors. Basis vectors are tried in
/// order until the count matches the nullity.
fn split_squarefree(g: &Poly, max_degree: usize) -> Result<Vec<Poly>> {
    if g.positive_degree()? == 1 {
        return Ok(vec![g.clone()]);
    }
    let basis = build_q_with_cap(g, max_degree)?.add_identity().nullspace();
    let target = basis.len();
    let mut factors = vec![g.clone()];
    for v in &basis {
        if factors.len() == target {
            break;
        }
        let v = Poly::from_words(v.words().to_vec());
        if v.degree() <= Poly::one().degree() {
            continue;
        }
        let v1 = v.add(&Poly::one());
        let mut next = Vec::with_capacity(target);
        for h in factors {
            let a = h.gcd(&v)?;
            if a.is_one() || a == h {
                next.push(h);
                continue;
            }
            let b = h.gcd(&v1)?;
            debug_assert_eq!(a.mul(&b), h);
            next.push(a);
            next.push(b);
        }
        factors = next;
    }
    assert_eq!(factors.len(), target, "Berlekamp split incomplete for {g}");
    Ok(factors)
}

pub fn factor(f: &Poly) -> Result<Factorization> {
    factor_with_cap(f, DEFAULT_MAX_DEGREE)
}

pub fn factor_with_cap(f: &Poly, max_degree: usize) -> Result<Factorization> {
    let m = f.positive_degree()?;
    if m > max_degree {
        return Err(Error::DegreeCapExceeded {
            degree: m,
            cap: max_degree,
        });
    }
    let mut factors = Vec::new();
    for (part, e) in squarefree_decompose(f)? {
        for g in split_squarefree(&part, max_degree)? {
            factors.push((g, e));
        }
    }
    factors.sort();
    Ok(Factorization { factors })
}

/// `o(f)`: the lcm of the degrees of the distinct irreducible factors.
pub fn poly_order(f: &Poly) -> Result<PolyOrder> {
    poly_order_with_cap(f, DEFAULT_MAX_DEGREE)
}

pub fn poly_order_with_cap(f: &Poly, max_degree: usize) -> Result<PolyOrder> {
    if !f.is_squarefree()? {
        return Err(Error::OrderUndefined(f.to_string()));
    }
    Ok(PolyOrder(lcm_all(
        &factor_with_cap(f, max_degree)?.degrees(),
    )?))
}

/// Whether `f | x^(2^m) - x` for `m = deg f`, by `m` repeated squarings.
pub fn divides_x2m_minus_x(f: &Poly) -> Result<bool> {
    let m = f.positive_degree()?;
    if m > DEFAULT_MAX_DEGREE {
        return Err(Error::DegreeCapExceeded {
            degree: m,
            cap: DEFAULT_MAX_DEGREE,
        });
    }
    Ok(Poly::pow2k_mod(m as u64, f)? == Poly::x().rem(f)?)
}

/// Matrix route for the same predicate: `Q^m = I`.
pub fn q_power_degree_is_identity(f: &Poly) -> Result<bool> {
    let q = build_q(f)?;
    Ok(q.matpow(q.dim() as u64).is_identity())
}

/// `Q` has some finite order, i.e. is invertible. Holds exactly for
/// squarefree `f`.
pub fn q_is_invertible(f: &Poly) -> Result<bool> {
    let q = build_q(f)?;
    Ok(q.rank() == q.dim())
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Overflow-checked lcm. `lcm(0, n) = 0`.
pub fn lcm_u64(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd_u64(a, b)).checked_mul(b).ok_or(Error::LcmOverflow)
}

/// lcm of a list; the empty list gives 1.
pub fn lcm_all(values: &[u64]) -> Result<u64> {
    values.iter().try_fold(1, |acc, &v| lcm_u64(acc, v))
}

/// `lcm(1, 2, ..., n)`.
pub fn lcm_up_to(n: u64) -> Result<u64> {
    (1..=n).try_fold(1, lcm_u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irreducible::is_irreducible;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn prod(ps: &[&str]) -> Poly {
        ps.iter().fold(Poly::one(), |acc, s| acc.mul(&p(s)))
    }

    fn rows(q: &BitMatrix) -> Vec<String> {
        q.to_bit_strings()
    }

    #[test]
    fn build_q_examples() {
        assert_eq!(rows(&build_q(&p("x")).unwrap()), vec!["1"]);
        assert_eq!(
            rows(&build_q(&p("x^3+x+1")).unwrap()),
            vec!["100", "001", "011"]
        );
        assert!(build_q(&p("x^2+x")).unwrap().is_identity());
        assert!(matches!(
            build_q(&Poly::one()),
            Err(Error::NonPositiveDegree(_))
        ));
        assert!(matches!(
            build_q(&Poly::zero()),
            Err(Error::NonPositiveDegree(_))
        ));
        assert_eq!(
            build_q_with_cap(&Poly::monomial(10), 8),
            Err(Error::DegreeCapExceeded { degree: 10, cap: 8 })
        );
    }

    #[test]
    fn build_q_rows_are_even_powers() {
        let f = p("x^13+x^4+x^3+x+1");
        let q = build_q(&f).unwrap();
        for i in 0..13 {
            let row = Poly::from_words(q.row(i).to_vec());
            assert_eq!(row, Poly::monomial(2 * i).rem(&f).unwrap());
        }
    }

    #[test]
    fn frobenius_apply_examples() {
        let f = p("x^3+x+1");
        let q = build_q(&f).unwrap();
        assert_eq!(frobenius_apply(&q, &Poly::one(), &f).unwrap(), Poly::one());
        assert_eq!(frobenius_apply(&q, &p("x^2"), &f).unwrap(), p("x^2+x"));
        assert_eq!(
            frobenius_apply(&q, &Poly::zero(), &f).unwrap(),
            Poly::zero()
        );
        assert!(frobenius_apply(&q, &p("x^3"), &f).is_err());
    }

    #[test]
    fn squarefree_decompose_examples() {
        assert_eq!(
            squarefree_decompose(&p("x^2+1")).unwrap(),
            vec![(p("x+1"), 2)]
        );
        assert_eq!(
            squarefree_decompose(&p("x^3+x+1")).unwrap(),
            vec![(p("x^3+x+1"), 1)]
        );
        assert_eq!(
            squarefree_decompose(&p("x^4+x^2+1")).unwrap(),
            vec![(p("x^2+x+1"), 2)]
        );
        // x·(x+1)^2·(x^2+x+1)^3·(x^3+x+1)^4
        let f = prod(&["x", "x+1", "x+1", "x^2+x+1", "x^2+x+1", "x^2+x+1"])
            .mul(&p("x^3+x+1").square().square());
        assert_eq!(
            squarefree_decompose(&f).unwrap(),
            vec![
                (p("x"), 1),
                (p("x+1"), 2),
                (p("x^2+x+1"), 3),
                (p("x^3+x+1"), 4)
            ]
        );
        assert!(squarefree_decompose(&Poly::one()).is_err());
    }

    #[test]
    fn factor_examples() {
        let f = factor(&p("x^2+x")).unwrap();
        assert_eq!(f.factors(), &[(p("x"), 1), (p("x+1"), 1)]);

        let g = prod(&["x", "x^2+x+1", "x^3+x+1"]);
        assert_eq!(
            factor(&g).unwrap().factors(),
            &[(p("x"), 1), (p("x^2+x+1"), 1), (p("x^3+x+1"), 1)]
        );

        let h = prod(&["x^3+x+1", "x^3+x^2+1", "x", "x+1"]);
        assert_eq!(h.degree().finite(), Some(8));
        assert_eq!(
            factor(&h).unwrap().factors(),
            &[
                (p("x"), 1),
                (p("x+1"), 1),
                (p("x^3+x+1"), 1),
                (p("x^3+x^2+1"), 1)
            ]
        );
        assert!(factor(&Poly::one()).is_err());
    }

    #[test]
    fn factor_with_multiplicities() {
        let f = p("x^5+x^2+1")
            .square()
            .mul(&p("x^2+x+1"))
            .mul(&p("x").square().square());
        let fac = factor(&f).unwrap();
        assert_eq!(
            fac.factors(),
            &[(p("x"), 4), (p("x^2+x+1"), 1), (p("x^5+x^2+1"), 2)]
        );
        assert_eq!(fac.product(), f);
        assert_eq!(fac.order(), None);
    }

    #[test]
    fn poly_order_examples() {
        assert_eq!(
            poly_order(&prod(&["x", "x^2+x+1", "x^3+x+1"]))
                .unwrap()
                .value(),
            6
        );
        assert_eq!(poly_order(&p("x^3+x+1")).unwrap().value(), 3);
        assert_eq!(poly_order(&p("x^2+x")).unwrap().value(), 1);
        assert!(matches!(
            poly_order(&p("x^2+1")),
            Err(Error::OrderUndefined(_))
        ));
    }

    #[test]
    fn divides_examples() {
        assert!(divides_x2m_minus_x(&p("x^3+x+1")).unwrap());
        assert!(!divides_x2m_minus_x(&p("x^2+1")).unwrap());
        assert!(divides_x2m_minus_x(&prod(&["x", "x+1", "x^2+x+1"])).unwrap());
        assert!(divides_x2m_minus_x(&p("x")).unwrap());
        assert!(divides_x2m_minus_x(&p("x+1")).unwrap());
    }

    #[test]
    fn squarefree_is_not_enough_for_q_to_the_m() {
        let f = prod(&["x^2+x+1", "x^3+x+1"]);
        assert!(f.is_squarefree().unwrap());
        assert!(q_is_invertible(&f).unwrap());
        assert!(!q_power_degree_is_identity(&f).unwrap());
        assert_eq!(poly_order(&f).unwrap().value(), 6);
    }

    #[test]
    fn integer_helpers() {
        assert_eq!(gcd_u64(12, 18), 6);
        assert_eq!(lcm_u64(4, 6), Ok(12));
        assert_eq!(lcm_all(&[]), Ok(1));
        assert_eq!(lcm_up_to(20), Ok(232_792_560));
        assert_eq!(lcm_u64(u64::MAX, u64::MAX - 1), Err(Error::LcmOverflow));
    }

    #[test]
    fn exhaustive_small_degrees() {
        for m in 1..=10usize {
            for low in 0..(1u64 << m) {
                let f = Poly::from_u64((1 << m) | low);
                let q = build_q(&f).unwrap();
                let sf = f.is_squarefree().unwrap();
                assert_eq!(q.rank() == m, sf, "{f}");
                assert_eq!(
                    q.matpow(m as u64).is_identity(),
                    divides_x2m_minus_x(&f).unwrap()
                );
                let fac = factor(&f).unwrap();
                assert_eq!(fac.product(), f);
                assert!(fac
                    .factors()
                    .iter()
                    .all(|(g, _)| is_irreducible(g).unwrap()));
                if sf {
                    let o = poly_order(&f).unwrap().value();
                    assert_eq!(q.multiplicative_order(lcm_up_to(m as u64).unwrap()), Ok(o));
                    assert_eq!(berlekamp_nullity(&f).unwrap(), fac.len());
                }
            }
        }
    }

    fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(any::<bool>(), 0..=max_deg + 1).prop_map(|bits| {
            Poly::from_exponents(bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
        })
    }

    proptest! {
        #[test]
        fn frobenius_matches_square_mod(a in poly_strategy(80), f in poly_strategy(64)) {
            prop_assume!(f.positive_degree().is_ok());
            let q = build_q(&f).unwrap();
            let a = a.rem(&f).unwrap();
            prop_assert_eq!(frobenius_apply(&q, &a, &f).unwrap(), a.square_mod(&f).unwrap());
        }

        #[test]
        fn lcm_scales(k in 1u64..1000, ns in proptest::collection::vec(1u64..=1_000_000, 1..5)) {
            let scaled: Vec<u64> = ns.iter().map(|n| k * n).collect();
            if let (Ok(a), Ok(b)) = (lcm_all(&scaled), lcm_all(&ns)) {
                prop_assert_eq!(Some(a), b.checked_mul(k));
            }
        }

        #[test]
        fn squarefree_parts_multiply_back(f in poly_strategy(40), g in poly_strategy(12)) {
            let f = f.mul(&g.square());
            prop_assume!(f.positive_degree().is_ok());
            let parts = squarefree_decompose(&f).unwrap();
            let back = parts.iter().fold(Poly::one(), |acc, (p, e)| {
                (0..*e).fold(acc, |acc, _| acc.mul(p))
            });
            prop_assert_eq!(back, f);
            for (i, (a, _)) in parts.iter().enumerate() {
                prop_assert!(a.is_squarefree().unwrap());
                for (b, _) in &parts[i + 1..] {
                    prop_assert!(a.gcd(b).unwrap().is_one());
                }
            }
        }
    }
}
