//! Polynomials, rational functions and localized rings `F_q[t][1/d_i]`.

mod aut;
mod factor;
mod frac;
mod poly;
mod ring;

pub use aut::{
    aut_group_enumerate, aut_group_enumerate_capped, fixed_element_s, ring_aut_apply,
    ring_aut_make, RingAut, DEFAULT_AUT_CAP,
};
pub use factor::{
    factorize, irreducible_support, is_irreducible, Factorization, MAX_FACTOR_DEGREE,
};
pub use frac::RatFrac;
pub use poly::{poly_arith, Poly, PolyOp, PolyResult, POLY_SYMBOL};
pub use ring::{is_unit, RingDesc};
