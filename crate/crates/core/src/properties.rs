//! Deciding, per degree `m`, whether every degree-`m` polynomial satisfies
//!
//! * **P1**: `Q^m = I` exactly when `f` is irreducible, or
//! * **P2**: `o(Q) = m` exactly when `f` is irreducible.
//!
//! Irreducible `f` always satisfy both sides, so a property fails exactly
//! when some *reducible* `f` satisfies the left side. `Q^m = I` holds iff
//! `f | x^(2^m) - x`, i.e. `f` is a product of distinct irreducibles whose
//! degrees divide `m`; `o(Q) = m` needs `f` squarefree with the lcm of its
//! factor degrees equal to `m`. Either way a counterexample is determined by
//! its multiset of factor degrees, so both properties reduce to a search for
//! a [`DegreePartition`] of `m` with at least two parts and at most `N(d)`
//! parts of each degree `d`.
//!
//! The search is exact. The theorem and corollary classifiers reproduce the
//! closed-form criteria and are checked against it.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, is_prime, pow2_sat};
use crate::berlekamp::{build_q, factor, gcd_u64, lcm_all, poly_order};
use crate::error::{Error, Result};
use crate::gf2poly::Poly;
use crate::irreducible::{count_at_most, first_k_irreducibles, is_irreducible};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    P1,
    P2,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::P1 => "P1",
            Property::P2 => "P2",
        })
    }
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Search,
    Theorem,
    Corollary,
    Brute,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Search => "search",
            Method::Theorem => "theorem",
            Method::Corollary => "corollary",
            Method::Brute => "brute",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Part {
    pub degree: u64,
    pub count: u64,
}

/// A multiset of factor degrees: `count` distinct irreducibles of each
/// `degree`. Parts are kept sorted by ascending degree with no repeats.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreePartition {
    parts: Vec<Part>,
}

impl DegreePartition {
    /// Merges repeated degrees and drops empty parts.
    pub fn new<I: IntoIterator<Item = (u64, u64)>>(parts: I) -> Self {
        let mut v: Vec<Part> = Vec::new();
        let mut raw: Vec<(u64, u64)> = parts.into_iter().filter(|&(_, c)| c > 0).collect();
        raw.sort_unstable();
        for (degree, count) in raw {
            match v.last_mut() {
                Some(last) if last.degree == degree => last.count += count,
                _ => v.push(Part { degree, count }),
            }
        }
        DegreePartition { parts: v }
    }

    /// Degree shape of a factorization; multiplicities count as repeats.
    pub fn from_factor_degrees(degrees: &[u64]) -> Self {
        Self::new(degrees.iter().map(|&d| (d, 1)))
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn total_degree(&self) -> u64 {
        self.parts.iter().map(|p| p.degree * p.count).sum()
    }

    /// Number of irreducible factors, `Σ c`.
    pub fn factor_count(&self) -> u64 {
        self.parts.iter().map(|p| p.count).sum()
    }

    pub fn lcm(&self) -> Result<u64> {
        lcm_all(&self.parts.iter().map(|p| p.degree).collect::<Vec<_>>())
    }

    /// Every part can be filled with distinct irreducibles.
    pub fn is_realizable(&self) -> bool {
        self.parts
            .iter()
            .all(|p| p.degree >= 1 && count_at_most(p.degree, p.count) >= p.count)
    }

    /// Whether this partition describes a reducible degree-`m` polynomial
    /// violating `property`.
    pub fn certifies(&self, property: Property, m: u64) -> bool {
        if self.total_degree() != m || self.factor_count() < 2 || !self.is_realizable() {
            return false;
        }
        match property {
            Property::P1 => self.parts.iter().all(|p| m.is_multiple_of(p.degree)),
            Property::P2 => self.lcm().is_ok_and(|l| l == m),
        }
    }
}

impl fmt::Display for DegreePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", p.degree, p.count)?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub property: Property,
    pub m: u64,
    pub holds: bool,
    pub method: Method,
    pub witness: Option<DegreePartition>,
    pub witness_poly: Option<Poly>,
}

impl PropertyVerdict {
    fn holds(property: Property, m: u64, method: Method) -> Self {
        PropertyVerdict {
            property,
            m,
            holds: true,
            method,
            witness: None,
            witness_poly: None,
        }
    }

    fn fails(property: Property, m: u64, method: Method, witness: DegreePartition) -> Self {
        debug_assert!(
            witness.certifies(property, m),
            "{witness} for {property} m={m}"
        );
        PropertyVerdict {
            property,
            m,
            holds: false,
            method,
            witness: Some(witness),
            witness_poly: None,
        }
    }

    /// Fills in `witness_poly` from the partition, if there is one.
    pub fn materialized(mut self) -> Result<Self> {
        if let (Some(w), None) = (&self.witness, &self.witness_poly) {
            self.witness_poly = Some(materialize_witness(w)?);
        }
        Ok(self)
    }
}

fn check_m(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "degree m must be at least 2, got {m}"
        )));
    }
    Ok(())
}

/// Depth-first search over the proper divisors of `m` in ascending order,
/// trying counts `1..=cap` before skipping a divisor. Listing parts as
/// ascending `(degree, count)` pairs, the first hit is therefore the
/// lexicographically smallest witness. Dead states
/// `(divisor index, remaining degree, lcm so far)` are memoized.
struct PartitionSearch {
    m: u64,
    need_lcm: bool,
    proper: Vec<u64>,
    caps: Vec<u64>,
    lattice: Vec<u64>,
    dead: HashSet<(usize, u64, usize)>,
}

impl PartitionSearch {
    fn new(m: u64, property: Property) -> Self {
        let lattice = divisors(m);
        let proper: Vec<u64> = lattice[..lattice.len() - 1].to_vec();
        let caps = proper.iter().map(|&d| count_at_most(d, m / d)).collect();
        PartitionSearch {
            m,
            need_lcm: property == Property::P2,
            proper,
            caps,
            lattice,
            dead: HashSet::new(),
        }
    }

    fn lattice_index(&self, d: u64) -> usize {
        self.lattice
            .binary_search(&d)
            .expect("lcm of divisors divides m")
    }

    fn run(mut self) -> Option<DegreePartition> {
        let mut chosen = Vec::new();
        self.dfs(0, self.m, 0, &mut chosen)
            .then(|| DegreePartition::new(chosen.iter().map(|p: &Part| (p.degree, p.count))))
    }

    fn dfs(&mut self, idx: usize, remaining: u64, lcm_idx: usize, chosen: &mut Vec<Part>) -> bool {
        if remaining == 0 {
            return !self.need_lcm || self.lattice[lcm_idx] == self.m;
        }
        if idx == self.proper.len() {
            return false;
        }
        let key = (idx, remaining, lcm_idx);
        if self.dead.contains(&key) {
            return false;
        }
        let d = self.proper[idx];
        let max_c = self.caps[idx].min(remaining / d);
        let next_lcm = if self.need_lcm {
            let l = self.lattice[lcm_idx];
            self.lattice_index(l / gcd_u64(l, d) * d)
        } else {
            lcm_idx
        };
        for c in 1..=max_c {
            chosen.push(Part {
                degree: d,
                count: c,
            });
            if self.dfs(idx + 1, remaining - c * d, next_lcm, chosen) {
                return true;
            }
            chosen.pop();
        }
        if self.dfs(idx + 1, remaining, lcm_idx, chosen) {
            return true;
        }
        self.dead.insert(key);
        false
    }
}

/// Smallest counterexample shape for `property` at degree `m`, if any.
pub fn search_witness(property: Property, m: u64) -> Result<Option<DegreePartition>> {
    check_m(m)?;
    Ok(PartitionSearch::new(m, property).run())
}

fn search_verdict(property: Property, m: u64) -> Result<PropertyVerdict> {
    Ok(match search_witness(property, m)? {
        None => PropertyVerdict::holds(property, m, Method::Search),
        Some(w) => PropertyVerdict::fails(property, m, Method::Search, w),
    })
}

pub fn decide_p1_search(m: u64) -> Result<PropertyVerdict> {
    search_verdict(Property::P1, m)
}

pub fn decide_p2_search(m: u64) -> Result<PropertyVerdict> {
    search_verdict(Property::P2, m)
}

/// P1 holds iff `m` is an odd prime or 9.
pub fn decide_p1_theorem(m: u64) -> Result<bool> {
    check_m(m)?;
    Ok(m == 9 || (m % 2 == 1 && is_prime(m)))
}

/// Witness following the P1 argument: `m = n·l` with `n` the smallest prime
/// factor and `n` distinct irreducibles of degree `l`; 2 and 4 use
/// `x(x+1)` and `x(x+1)(x^2+x+1)`.
pub fn p1_theorem_witness(m: u64) -> Result<Option<DegreePartition>> {
    if decide_p1_theorem(m)? {
        return Ok(None);
    }
    let w = match m {
        2 => DegreePartition::new([(1, 2)]),
        4 => DegreePartition::new([(1, 2), (2, 1)]),
        _ => {
            let n = factorize(m)[0].0;
            DegreePartition::new([(m / n, n)])
        }
    };
    Ok(Some(w))
}

/// `m = p^i` for a prime `p`: returns `(p, i)`.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    match factorize(m).as_slice() {
        &[(p, i)] => Some((p, i)),
        _ => None,
    }
}

/// `m = p^i·q` with primes `p < q` and `q` to the first power: `(p, i, q)`.
pub fn prime_power_times_prime(m: u64) -> Option<(u64, u32, u64)> {
    match factorize(m).as_slice() {
        &[(p, i), (q, 1)] => Some((p, i, q)),
        _ => None,
    }
}

/// Necessary shape for P2: `m = p^i` or `m = p^i·q` with primes `p < q`.
pub fn decide_p2_necessary(m: u64) -> Result<bool> {
    check_m(m)?;
    Ok(prime_power(m).is_some() || prime_power_times_prime(m).is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorollaryVerdict {
    Holds,
    Fails,
    Unknown,
}

/// `2^(p^i) - 2^(p^(i-1)) + 1`, saturating.
fn pigeonhole_bound(p: u64, i: u32) -> u128 {
    let pi = p.pow(i);
    let lower = p.pow(i - 1);
    pow2_sat(pi)
        .saturating_sub(pow2_sat(lower))
        .saturating_add(1)
}

fn branch_large_q(pi: u64, q: u64, p: u64, i: u32) -> bool {
    q > pi && pi > 2 && u128::from(pi - 2) * u128::from(q) <= pigeonhole_bound(p, i)
}

fn branch_small_q(pi: u64, q: u64) -> bool {
    q < pi && u128::from(q - 2) * u128::from(pi) <= pow2_sat(q)
}

/// Closed-form criteria, applied in order:
/// prime power ⇒ holds; not of shape `p^i` / `p^i·q` ⇒ fails;
/// `q > 2^(p^i)` ⇒ holds; `p^i = 2` ⇒ holds iff `q > 4`;
/// `q > p^i > 2` with `(p^i-2)q <= 2^(p^i) - 2^(p^(i-1)) + 1` ⇒ fails;
/// `q < p^i` with `(q-2)p^i <= 2^q` ⇒ fails; otherwise unknown.
pub fn decide_p2_corollary(m: u64) -> Result<CorollaryVerdict> {
    check_m(m)?;
    if prime_power(m).is_some() {
        return Ok(CorollaryVerdict::Holds);
    }
    let Some((p, i, q)) = prime_power_times_prime(m) else {
        return Ok(CorollaryVerdict::Fails);
    };
    let pi = p.pow(i);
    if u128::from(q) > pow2_sat(pi) {
        return Ok(CorollaryVerdict::Holds);
    }
    if pi == 2 {
        return Ok(if q > 4 {
            CorollaryVerdict::Holds
        } else {
            CorollaryVerdict::Fails
        });
    }
    if branch_large_q(pi, q, p, i) || branch_small_q(pi, q) {
        return Ok(CorollaryVerdict::Fails);
    }
    Ok(CorollaryVerdict::Unknown)
}

/// Degree shape `x(x^2+x+1)(x^3+x+1)` of order 6.
fn six_witness() -> DegreePartition {
    DegreePartition::new([(1, 1), (2, 1), (3, 1)])
}

/// Counterexample from the corollary's failure inequality for `m = p^i·q`.
///
/// Writing `(a, b) = (p^i, q)` when `q > p^i`, or `(q, p^i)` when `q < p^i`:
/// `gcd(a, b) = 1`, so `u·b mod a` runs over `1..a` for `u = 1..a-1` and some
/// `û <= a-2` has `û·b ≡ r (mod a)` with `r ∈ {1, 2}`. With
/// `l = (û·b - r)/a`, the shape `{1: r, a: l, b: a - û}` has degree
/// `r + l·a + (a-û)·b = a·b` and lcm `a·b`.
pub fn construct_pigeonhole_witness(p: u64, i: u32, q: u64) -> Result<DegreePartition> {
    if !is_prime(p) || !is_prime(q) || p >= q || i == 0 {
        return Err(Error::InvalidArgument(format!(
            "need primes p < q and i >= 1, got p={p}, i={i}, q={q}"
        )));
    }
    let pi = p
        .checked_pow(i)
        .filter(|pi| pi.checked_mul(q).is_some())
        .ok_or_else(|| Error::InvalidArgument("p^i·q overflows".into()))?;
    if pi == 2 && q == 3 {
        return Ok(six_witness());
    }
    let (a, b) = if branch_large_q(pi, q, p, i) {
        (pi, q)
    } else if branch_small_q(pi, q) {
        (q, pi)
    } else {
        return Err(Error::NoCorollaryWitness(format!(
            "m = {p}^{i}·{q} satisfies neither failure inequality"
        )));
    };
    let (u, r) = (1..=a - 2)
        .find_map(|u| match (u * b) % a {
            r @ (1 | 2) => Some((u, r)),
            _ => None,
        })
        .expect("pigeonhole: residues 1 and 2 both occur among u = 1..a-1");
    let l = (u * b - r) / a;
    let w = DegreePartition::new([(1, r), (a, l), (b, a - u)]);
    if count_at_most(a, l) < l {
        debug_assert!(false, "inequality should guarantee l <= N({a})");
        return Err(Error::NotEnoughIrreducibles {
            degree: a,
            requested: l,
            available: count_at_most(a, u64::MAX).to_string(),
        });
    }
    debug_assert!(w.certifies(Property::P2, pi * q), "{w}");
    Ok(w)
}

/// For `m = p^i·q^j` with primes `p < q` and `j >= 2`:
/// `m = (p-1)·p^(i-1)q^j + 1·p^i q^(j-1) + (q-p)·p^(i-1)q^(j-1)`, with lcm `m`.
pub fn p2_square_cofactor_witness(p: u64, i: u32, q: u64, j: u32) -> Result<DegreePartition> {
    if !is_prime(p) || !is_prime(q) || p >= q || i == 0 || j < 2 {
        return Err(Error::InvalidArgument(format!(
            "need primes p < q, i >= 1, j >= 2; got p={p}, i={i}, q={q}, j={j}"
        )));
    }
    let base = p.pow(i - 1) * q.pow(j - 1);
    Ok(DegreePartition::new([
        (base * q, p - 1),
        (base * p, 1),
        (base, q - p),
    ]))
}

/// Witness for an `m` that is neither `p^i` nor `p^i·q`. The two-prime case
/// `p^i q^j` uses the explicit decomposition; three or more distinct primes
/// fall back to the search.
fn theorem2_witness(m: u64) -> Result<DegreePartition> {
    if let &[(p, i), (q, j)] = factorize(m).as_slice() {
        if j >= 2 {
            let w = p2_square_cofactor_witness(p, i, q, j)?;
            if w.certifies(Property::P2, m) {
                return Ok(w);
            }
        }
    }
    search_witness(Property::P2, m)?
        .ok_or_else(|| Error::Undecided(format!("no P2 witness found for m = {m}")))
}

/// Witness accompanying a `Fails` from [`decide_p2_corollary`].
pub fn corollary_witness(m: u64) -> Result<Option<DegreePartition>> {
    if decide_p2_corollary(m)? != CorollaryVerdict::Fails {
        return Ok(None);
    }
    match prime_power_times_prime(m) {
        None => theorem2_witness(m).map(Some),
        Some((p, i, q)) => construct_pigeonhole_witness(p, i, q).map(Some),
    }
}

/// Product of the `c` smallest irreducibles of degree `d` over all parts.
pub fn materialize_witness(w: &DegreePartition) -> Result<Poly> {
    let mut out = Poly::one();
    for part in w.parts() {
        for g in first_k_irreducibles(part.degree, part.count)? {
            out = out.mul(&g);
        }
    }
    Ok(out)
}

/// Evaluates the property directly on all `2^m` polynomials of degree `m`.
/// P1 compares `Q^m = I` with irreducibility; P2 compares `o(f) = m`
/// (false when the order is undefined) with irreducibility.
pub fn brute_force_property(property: Property, m: u64) -> Result<PropertyVerdict> {
    if !(2..=12).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "brute force supports 2 <= m <= 12, got {m}"
        )));
    }
    for low in 0..(1u64 << m) {
        let f = Poly::from_u64((1 << m) | low);
        let irreducible = is_irreducible(&f)?;
        let lhs = match property {
            Property::P1 => build_q(&f)?.matpow(m).is_identity(),
            Property::P2 => match poly_order(&f) {
                Ok(o) => o.value() == m,
                Err(Error::OrderUndefined(_)) => false,
                Err(e) => return Err(e),
            },
        };
        if lhs != irreducible {
            let shape = DegreePartition::from_factor_degrees(
                &factor(&f)?
                    .factors()
                    .iter()
                    .flat_map(|(g, e)| {
                        std::iter::repeat_n(g.degree().finite().unwrap() as u64, *e as usize)
                    })
                    .collect::<Vec<_>>(),
            );
            let mut v = PropertyVerdict::fails(property, m, Method::Brute, shape);
            v.witness_poly = Some(f);
            return Ok(v);
        }
    }
    Ok(PropertyVerdict::holds(property, m, Method::Brute))
}

/// Single entry point used by the CLI. Theorem and corollary methods report
/// [`Error::Undecided`] where their criteria give no verdict.
pub fn classify(property: Property, m: u64, method: Method) -> Result<PropertyVerdict> {
    check_m(m)?;
    match (property, method) {
        (_, Method::Search) => search_verdict(property, m),
        (_, Method::Brute) => brute_force_property(property, m),
        (Property::P1, Method::Theorem) => Ok(match p1_theorem_witness(m)? {
            None => PropertyVerdict::holds(property, m, method),
            Some(w) => PropertyVerdict::fails(property, m, method, w),
        }),
        (Property::P1, Method::Corollary) => Err(Error::InvalidArgument(
            "the corollary method applies to P2 only".into(),
        )),
        (Property::P2, Method::Theorem) => {
            if prime_power(m).is_some() {
                Ok(PropertyVerdict::holds(property, m, method))
            } else if !decide_p2_necessary(m)? {
                Ok(PropertyVerdict::fails(
                    property,
                    m,
                    method,
                    theorem2_witness(m)?,
                ))
            } else {
                Err(Error::Undecided(format!(
                    "m = {m} has shape p^i·q; the necessary condition alone does not decide P2"
                )))
            }
        }
        (Property::P2, Method::Corollary) => match decide_p2_corollary(m)? {
            CorollaryVerdict::Holds => Ok(PropertyVerdict::holds(property, m, method)),
            CorollaryVerdict::Fails => {
                let w = corollary_witness(m)?.expect("fails carries a witness");
                Ok(PropertyVerdict::fails(property, m, method, w))
            }
            CorollaryVerdict::Unknown => Err(Error::Undecided(format!(
                "the corollary does not decide P2 for m = {m}; use the search method"
            ))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berlekamp::divides_x2m_minus_x;

    fn part(pairs: &[(u64, u64)]) -> DegreePartition {
        DegreePartition::new(pairs.iter().copied())
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn p1_search_examples() {
        let v = decide_p1_search(2).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(part(&[(1, 2)])));
        assert!(decide_p1_search(7).unwrap().holds);
        assert!(decide_p1_search(9).unwrap().holds);
        let v = decide_p1_search(25).unwrap();
        assert_eq!(v.witness, Some(part(&[(5, 5)])));
        assert!(decide_p1_search(1).is_err());
    }

    #[test]
    fn p1_theorem_examples() {
        assert!(decide_p1_theorem(3).unwrap());
        assert!(decide_p1_theorem(9).unwrap());
        assert!(!decide_p1_theorem(4).unwrap());
        assert!(!decide_p1_theorem(2).unwrap());
        assert!(!decide_p1_theorem(27).unwrap());
        assert!(decide_p1_theorem(0).is_err());
    }

    #[test]
    fn p1_theorem_witnesses_certify() {
        for m in 2..=600 {
            if let Some(w) = p1_theorem_witness(m).unwrap() {
                assert!(w.certifies(Property::P1, m), "m={m} {w}");
            }
        }
        assert_eq!(
            p1_theorem_witness(4).unwrap(),
            Some(part(&[(1, 2), (2, 1)]))
        );
    }

    #[test]
    fn p2_search_examples() {
        let v = decide_p2_search(6).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(part(&[(1, 1), (2, 1), (3, 1)])));
        assert!(decide_p2_search(8).unwrap().holds);
        let v = decide_p2_search(12).unwrap();
        assert_eq!(v.witness, Some(part(&[(1, 1), (3, 1), (4, 2)])));
    }

    #[test]
    fn p2_necessary_examples() {
        assert!(decide_p2_necessary(12).unwrap());
        assert!(!decide_p2_necessary(18).unwrap());
        assert!(!decide_p2_necessary(30).unwrap());
        assert!(decide_p2_necessary(8).unwrap());
        assert!(decide_p2_necessary(7).unwrap());
        assert!(decide_p2_necessary(1).is_err());
    }

    #[test]
    fn p2_corollary_examples() {
        assert_eq!(decide_p2_corollary(10).unwrap(), CorollaryVerdict::Holds);
        assert_eq!(decide_p2_corollary(6).unwrap(), CorollaryVerdict::Fails);
        assert_eq!(decide_p2_corollary(24).unwrap(), CorollaryVerdict::Fails);
        assert_eq!(decide_p2_corollary(33).unwrap(), CorollaryVerdict::Holds);
        assert_eq!(decide_p2_corollary(16).unwrap(), CorollaryVerdict::Holds);
        assert_eq!(decide_p2_corollary(30).unwrap(), CorollaryVerdict::Fails);
    }

    #[test]
    fn materialize_examples() {
        assert_eq!(materialize_witness(&part(&[(1, 2)])).unwrap(), p("x^2+x"));
        let six = materialize_witness(&part(&[(1, 1), (2, 1), (3, 1)])).unwrap();
        assert_eq!(six, p("x").mul(&p("x^2+x+1")).mul(&p("x^3+x+1")));
        let cubics = materialize_witness(&part(&[(3, 2)])).unwrap();
        assert_eq!(cubics, p("x^3+x+1").mul(&p("x^3+x^2+1")));
        let back = factor(&cubics).unwrap();
        assert_eq!(back.factors(), &[(p("x^3+x+1"), 1), (p("x^3+x^2+1"), 1)]);
        assert!(matches!(
            materialize_witness(&part(&[(2, 2)])),
            Err(Error::NotEnoughIrreducibles { .. })
        ));
    }

    #[test]
    fn pigeonhole_examples() {
        assert_eq!(
            construct_pigeonhole_witness(2, 1, 3).unwrap(),
            six_witness()
        );
        let w = construct_pigeonhole_witness(3, 1, 5).unwrap();
        assert_eq!(w, part(&[(1, 2), (3, 1), (5, 2)]));
        assert!(w.certifies(Property::P2, 15));
        // m = 24 = 2^3·3, small-q branch
        let w = construct_pigeonhole_witness(2, 3, 3).unwrap();
        assert_eq!(w, part(&[(1, 2), (3, 2), (8, 2)]));
        assert!(w.certifies(Property::P2, 24));
        // m = 10: corollary says P2 holds, so there is nothing to build
        assert!(matches!(
            construct_pigeonhole_witness(2, 1, 5),
            Err(Error::NoCorollaryWitness(_))
        ));
        assert!(construct_pigeonhole_witness(4, 1, 5).is_err());
        assert!(construct_pigeonhole_witness(5, 1, 3).is_err());
    }

    #[test]
    fn pigeonhole_output_always_certifies() {
        for m in 2..=3000 {
            if let Some((p, i, q)) = prime_power_times_prime(m) {
                if let Ok(w) = construct_pigeonhole_witness(p, i, q) {
                    assert!(w.certifies(Property::P2, m), "m={m} {w}");
                }
            }
        }
    }

    #[test]
    fn prime_power_count_formula() {
        // N(p^i) = (2^(p^i) - 2^(p^(i-1))) / p^i
        for (p, i) in [
            (2u64, 1u32),
            (2, 2),
            (2, 3),
            (3, 1),
            (3, 2),
            (5, 1),
            (7, 1),
            (2, 5),
        ] {
            let pi = p.pow(i);
            let formula = ((1u128 << pi) - (1u128 << p.pow(i - 1))) / u128::from(pi);
            assert_eq!(u128::from(count_at_most(pi, u64::MAX)), formula);
        }
    }

    #[test]
    fn square_cofactor_decomposition() {
        let w = p2_square_cofactor_witness(2, 1, 3, 2).unwrap();
        assert_eq!(w, part(&[(3, 1), (6, 1), (9, 1)]));
        assert!(w.certifies(Property::P2, 18));
        for (p, i, q, j) in [
            (2u64, 2u32, 3u64, 2u32),
            (2, 1, 5, 2),
            (3, 1, 5, 2),
            (2, 1, 3, 3),
            (3, 2, 7, 2),
        ] {
            let m = p.pow(i) * q.pow(j);
            assert!(p2_square_cofactor_witness(p, i, q, j)
                .unwrap()
                .certifies(Property::P2, m));
        }
    }

    #[test]
    fn brute_force_examples() {
        assert!(brute_force_property(Property::P1, 5).unwrap().holds);
        let v = brute_force_property(Property::P1, 4).unwrap();
        assert!(!v.holds);
        let f = v.witness_poly.unwrap();
        assert!(divides_x2m_minus_x(&f).unwrap());
        assert!(!is_irreducible(&f).unwrap());
        assert!(!brute_force_property(Property::P2, 6).unwrap().holds);
        assert!(brute_force_property(Property::P2, 13).is_err());
    }

    #[test]
    fn classify_methods() {
        let v = classify(Property::P1, 9, Method::Search).unwrap();
        assert!(v.holds);
        assert_eq!(v.method, Method::Search);
        assert!(!classify(Property::P1, 15, Method::Theorem).unwrap().holds);
        assert!(classify(Property::P2, 8, Method::Theorem).unwrap().holds);
        assert!(matches!(
            classify(Property::P2, 12, Method::Theorem),
            Err(Error::Undecided(_))
        ));
        assert!(classify(Property::P1, 9, Method::Corollary).is_err());
        let v = classify(Property::P2, 30, Method::Corollary).unwrap();
        assert!(v.witness.unwrap().certifies(Property::P2, 30));
    }

    #[test]
    fn verdict_json_shape() {
        let v = decide_p2_search(6).unwrap().materialized().unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "property": "P2",
                "m": 6,
                "holds": false,
                "method": "search",
                "witness": {"parts": [
                    {"degree": 1, "count": 1},
                    {"degree": 2, "count": 1},
                    {"degree": 3, "count": 1}
                ]},
                "witness_poly": "0x62"
            })
        );
    }
}
