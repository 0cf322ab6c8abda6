//! Polynomials over GF(2) and their Berlekamp matrices.
//!
//! The crate covers bit-packed polynomial arithmetic ([`gf2poly`]), dense
//! GF(2) linear algebra ([`linalg2`]), the Berlekamp matrix with order
//! computation and factorization ([`berlekamp`]), irreducibility and counting
//! ([`irreducible`]), and exact decisions of the degree properties P1 and P2
//! with counterexample witnesses ([`properties`]).

mod arith;
pub mod berlekamp;
pub mod error;
pub mod gf2poly;
pub mod irreducible;
pub mod linalg2;
pub mod properties;
pub mod selfcheck;

pub use arith::{divisors, factorize, is_prime};
pub use berlekamp::{
    build_q, build_q_with_cap, divides_x2m_minus_x, factor, factor_with_cap, frobenius_apply,
    lcm_all, lcm_up_to, poly_order, poly_order_with_cap, squarefree_decompose, Factorization,
    FactorizationReport, PolyOrder, DEFAULT_MAX_DEGREE,
};
pub use error::{Error, Result};
pub use gf2poly::{Degree, Poly};
pub use irreducible::{
    count_at_most, count_irreducible, first_k_irreducibles, is_irreducible, mobius,
    IrreducibleCount,
};
pub use linalg2::{BitMatrix, BitVector};
pub use properties::{
    brute_force_property, classify, construct_pigeonhole_witness, decide_p1_search,
    decide_p1_theorem, decide_p2_corollary, decide_p2_necessary, decide_p2_search,
    materialize_witness, CorollaryVerdict, DegreePartition, Method, Part, Property,
    PropertyVerdict,
};
