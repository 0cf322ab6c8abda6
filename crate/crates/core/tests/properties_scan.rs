//! Range checks of the P1/P2 deciders against each other and against the
//! polynomials their witnesses describe.

use gf2q_core::properties::{prime_power, prime_power_times_prime};
use gf2q_core::{
    decide_p1_search, decide_p2_search, divides_x2m_minus_x, is_irreducible, poly_order, Poly,
};

const SCAN: u64 = 500;

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn degree(f: &Poly) -> u64 {
    f.degree().finite().unwrap() as u64
}

#[test]
fn holds_for_p_i_q_propagates_to_smaller_i() {
    let mut checked = 0;
    for m in 2..=SCAN {
        let Some((p, i, q)) = prime_power_times_prime(m) else {
            continue;
        };
        if !decide_p2_search(m).unwrap().holds {
            continue;
        }
        for j in 1..i {
            let smaller = p.pow(j) * q;
            assert!(
                decide_p2_search(smaller).unwrap().holds,
                "{m} holds but {smaller} fails"
            );
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn fails_for_p_i_q_propagates_to_larger_i() {
    for m in 2..=SCAN {
        let Some((p, i, q)) = prime_power_times_prime(m) else {
            continue;
        };
        if decide_p2_search(m).unwrap().holds {
            continue;
        }
        let larger = p.pow(i + 1) * q;
        if larger <= SCAN {
            assert!(
                !decide_p2_search(larger).unwrap().holds,
                "{m} fails but {larger} holds"
            );
        }
    }
}

#[test]
fn prime_powers_hold_p2() {
    let mut count = 0;
    for m in 2..=SCAN {
        let by_oracle = (2..=m).any(|p| {
            is_prime(p) && {
                let mut x = p;
                while x < m {
                    x *= p;
                }
                x == m
            }
        });
        assert_eq!(prime_power(m).is_some(), by_oracle, "m = {m}");
        if by_oracle {
            assert!(decide_p2_search(m).unwrap().holds, "m = {m}");
            count += 1;
        }
    }
    // 95 primes, plus 4..256 (7), 9..243 (4), 25 and 125, 49 and 343, 121, 169, 289, 361
    assert_eq!(count, 95 + 7 + 4 + 2 + 2 + 4);
}

#[test]
fn p1_witnesses_divide_x_2m_minus_x() {
    for m in 2..=40 {
        let v = decide_p1_search(m).unwrap().materialized().unwrap();
        if let Some(f) = v.witness_poly {
            assert!(!v.holds);
            assert_eq!(degree(&f), m);
            assert!(!is_irreducible(&f).unwrap(), "m = {m}");
            assert!(divides_x2m_minus_x(&f).unwrap(), "m = {m}");
        } else {
            assert!(v.holds, "m = {m}");
        }
    }
}

#[test]
fn p2_witnesses_have_order_m() {
    for m in 2..=80 {
        let v = decide_p2_search(m).unwrap().materialized().unwrap();
        if let Some(f) = v.witness_poly {
            assert!(!v.holds);
            assert_eq!(degree(&f), m);
            assert!(!is_irreducible(&f).unwrap(), "m = {m}");
            assert_eq!(poly_order(&f).unwrap().value(), m, "m = {m}");
        } else {
            assert!(v.holds, "m = {m}");
        }
    }
}
