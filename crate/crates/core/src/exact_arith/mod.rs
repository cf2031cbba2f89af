//! Exact coefficient domains: finite fields, polynomials and rational
//! functions over them, and big rationals.

mod coeff;
mod field;
mod lucas;
mod poly;
mod ratfunc;

pub use coeff::{big_uint_to_rational, parse_rational, rat, rational_to_latex, render_rational, Coeff, Rationals};
pub use field::{is_prime, FFElement, FfOp, FieldParams, MAX_EXTENSION_SIZE, MAX_PRIME};
pub use lucas::{binomial_big, binomial_mod_p, multinomial_big, multinomial_mod_p};
pub use num_rational::BigRational;
pub use poly::{Poly, PolyOp, PolyResult};
pub use ratfunc::{RatFunc, RatOp};

use std::sync::Arc;

use crate::error::Result;

/// Validated, shareable field handle. See [`FieldParams::new`].
pub fn make_field(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Arc<FieldParams>> {
    FieldParams::new(p, e, modulus).map(Arc::new)
}

/// Parses a field modulus written in `a` or `x`, e.g. `x^2 + x + 1`.
pub fn parse_modulus(s: &str, p: u64) -> Result<Vec<u64>> {
    field::parse_fp_poly(s, p, &['a', 'x'])
}
