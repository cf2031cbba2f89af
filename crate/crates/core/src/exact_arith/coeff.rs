//! The exact coefficient domains a power series can live over.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::FieldParams;
use super::lucas::{binomial_big, binomial_mod_p, multinomial_big, multinomial_mod_p};
use super::ratfunc::RatFunc;

/// An exact field usable as a series coefficient domain.
///
/// `Ctx` is whatever is needed to manufacture constants: the finite field for
/// `F_r(T)`, nothing for `Q`. Integer constants (binomials, multinomials) are
/// mapped through the characteristic of the domain.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    /// `C(m, n)` in this domain.
    fn binomial(ctx: &Self::Ctx, m: u64, n: u64) -> Self;
    /// `(sum parts)! / prod(parts!)` in this domain.
    fn multinomial(ctx: &Self::Ctx, parts: &[u64]) -> Self;

    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn sign(ctx: &Self::Ctx, k: u64) -> Self {
        if k.is_multiple_of(2) {
            Self::one(ctx)
        } else {
            Self::one(ctx).negated()
        }
    }
}

impl Coeff for RatFunc {
    type Ctx = Arc<FieldParams>;

    fn ctx(&self) -> Self::Ctx {
        self.field().clone()
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        RatFunc::zero(ctx)
    }
    fn one(ctx: &Self::Ctx) -> Self {
        RatFunc::one(ctx)
    }
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self {
        RatFunc::from_int(ctx, n)
    }
    fn binomial(ctx: &Self::Ctx, m: u64, n: u64) -> Self {
        RatFunc::constant(ctx, ctx.from_u64(binomial_mod_p(m, n, ctx.p())))
    }
    fn multinomial(ctx: &Self::Ctx, parts: &[u64]) -> Self {
        RatFunc::constant(ctx, ctx.from_u64(multinomial_mod_p(parts, ctx.p())))
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Context marker for the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Coeff for BigRational {
    type Ctx = Rationals;

    fn ctx(&self) -> Self::Ctx {
        Rationals
    }
    fn zero(_: &Self::Ctx) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one(_: &Self::Ctx) -> Self {
        <BigRational as One>::one()
    }
    fn from_int(_: &Self::Ctx, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn binomial(_: &Self::Ctx, m: u64, n: u64) -> Self {
        big_uint_to_rational(binomial_big(m, n))
    }
    fn multinomial(_: &Self::Ctx, parts: &[u64]) -> Self {
        big_uint_to_rational(multinomial_big(parts))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

pub fn big_uint_to_rational(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `num/den` rendering, integers without the `/1`.
pub fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let bad = || crate::Error::Parse(format!("malformed rational `{s}`"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(crate::Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

pub fn rational_to_latex(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -q.numer(), q.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}
