//! A desk-scale invariant suite that the CLI can run against its own build.

use crate::berlekamp::{
    berlekamp_nullity, build_q, divides_x2m_minus_x, factor, lcm_all, lcm_up_to, poly_order,
};
use crate::error::Result;
use crate::gf2poly::Poly;
use crate::irreducible::{count_irreducible, is_irreducible};
use crate::properties::{
    brute_force_property, decide_p1_search, decide_p1_theorem, decide_p2_corollary,
    decide_p2_necessary, decide_p2_search, materialize_witness, CorollaryVerdict, Property,
};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, body: impl FnOnce() -> Result<Option<String>>) -> CheckResult {
    match body() {
        Ok(None) => CheckResult {
            name,
            passed: true,
            detail: String::new(),
        },
        Ok(Some(msg)) => CheckResult {
            name,
            passed: false,
            detail: msg,
        },
        Err(e) => CheckResult {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn all_of_degree(m: u32) -> impl Iterator<Item = Poly> {
    (0..(1u64 << m)).map(move |low| Poly::from_u64((1 << m) | low))
}

pub fn run() -> Vec<CheckResult> {
    vec![
        check("p1 search matches odd-prime-or-9 rule (m <= 300)", || {
            for m in 2..=300 {
                if decide_p1_search(m)?.holds != decide_p1_theorem(m)? {
                    return Ok(Some(format!("disagreement at m = {m}")));
                }
            }
            Ok(None)
        }),
        check("brute force agrees with search (m <= 9)", || {
            for m in 2..=9 {
                for prop in [Property::P1, Property::P2] {
                    let brute = brute_force_property(prop, m)?.holds;
                    let search = match prop {
                        Property::P1 => decide_p1_search(m)?.holds,
                        Property::P2 => decide_p2_search(m)?.holds,
                    };
                    if brute != search {
                        return Ok(Some(format!("{prop} disagrees at m = {m}")));
                    }
                }
            }
            Ok(None)
        }),
        check("Q^m = I iff f divides x^(2^m) - x (deg <= 9)", || {
            for m in 1..=9 {
                for f in all_of_degree(m) {
                    let q = build_q(&f)?;
                    if q.matpow(u64::from(m)).is_identity() != divides_x2m_minus_x(&f)? {
                        return Ok(Some(format!("mismatch for {f}")));
                    }
                }
            }
            Ok(None)
        }),
        check(
            "order is lcm of factor degrees (squarefree, deg <= 9)",
            || {
                for m in 1..=9 {
                    let bound = lcm_up_to(u64::from(m))?;
                    for f in all_of_degree(m) {
                        if !f.is_squarefree()? {
                            continue;
                        }
                        let o = poly_order(&f)?.value();
                        let by_matrix = build_q(&f)?.multiplicative_order(bound)?;
                        let by_degrees = lcm_all(&factor(&f)?.degrees())?;
                        if o != by_matrix || o != by_degrees {
                            return Ok(Some(format!("order mismatch for {f}")));
                        }
                    }
                }
                Ok(None)
            },
        ),
        check("factorization round trip (deg <= 10)", || {
            for m in 1..=10 {
                for f in all_of_degree(m) {
                    let fac = factor(&f)?;
                    if fac.product() != f {
                        return Ok(Some(format!("product mismatch for {f}")));
                    }
                    for (g, _) in fac.factors() {
                        if !is_irreducible(g)? {
                            return Ok(Some(format!("reducible factor {g} of {f}")));
                        }
                    }
                    if fac.is_squarefree() && berlekamp_nullity(&f)? != fac.len() {
                        return Ok(Some(format!("nullity mismatch for {f}")));
                    }
                }
            }
            Ok(None)
        }),
        check("irreducible counts match enumeration (deg <= 10)", || {
            for m in 1..=10u32 {
                let mut brute = 0u64;
                for f in all_of_degree(m) {
                    brute += u64::from(is_irreducible(&f)?);
                }
                if count_irreducible(u64::from(m)).count != brute.into() {
                    return Ok(Some(format!("count mismatch at degree {m}")));
                }
            }
            Ok(None)
        }),
        check("P2 search respects the necessary shape (m <= 200)", || {
            for m in 2..=200 {
                if decide_p2_search(m)?.holds && !decide_p2_necessary(m)? {
                    return Ok(Some(format!("m = {m} holds but has the wrong shape")));
                }
            }
            Ok(None)
        }),
        check(
            "corollary agrees with search where decided (m <= 200)",
            || {
                for m in 2..=200 {
                    let search = decide_p2_search(m)?.holds;
                    let verdict = match decide_p2_corollary(m)? {
                        CorollaryVerdict::Holds => true,
                        CorollaryVerdict::Fails => false,
                        CorollaryVerdict::Unknown => continue,
                    };
                    if verdict != search {
                        return Ok(Some(format!("disagreement at m = {m}")));
                    }
                }
                Ok(None)
            },
        ),
        check("materialized P2 witnesses have order m (m <= 60)", || {
            for m in 2..=60 {
                if let Some(w) = decide_p2_search(m)?.witness {
                    let f = materialize_witness(&w)?;
                    if is_irreducible(&f)? || poly_order(&f)?.value() != m {
                        return Ok(Some(format!("bad witness {w} at m = {m}")));
                    }
                }
            }
            Ok(None)
        }),
        check("squarefree does not imply Q^m = I", || {
            let f = Poly::from_u64(0b111).mul(&Poly::from_u64(0b1011));
            let q = build_q(&f)?;
            let invertible = q.rank() == q.dim();
            if f.is_squarefree()? && invertible && !q.matpow(5).is_identity() {
                Ok(None)
            } else {
                Ok(Some("expected an invertible Q with Q^5 != I".into()))
            }
        }),
    ]
}
