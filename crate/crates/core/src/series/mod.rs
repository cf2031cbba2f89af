//! Truncated formal power series over an exact coefficient domain.
//!
//! A [`Series`] stores the coefficients of `z^0 .. z^{prec-1}`; every binary
//! operation truncates to the smaller precision of its operands and nothing
//! ever extends precision implicitly.

mod carlitz;
mod ht;
mod linear;

pub use carlitz::{
    carlitz_exp_linear, carlitz_exp_over_z, carlitz_exp_series, carlitz_log_linear, carlitz_log_over_z,
    carlitz_log_series,
};
pub use ht::{ht_product_rule, ht_quotient_check, QuotientRule};
pub use linear::LinearSeries;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact_arith::Coeff;

#[derive(Clone, PartialEq)]
pub struct Series<C: Coeff> {
    ctx: C::Ctx,
    coeffs: Vec<C>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

impl<C: Coeff> Series<C> {
    /// Series whose precision is `coeffs.len()`.
    pub fn new(ctx: C::Ctx, coeffs: Vec<C>) -> Self {
        Series { ctx, coeffs }
    }

    pub fn zero(ctx: &C::Ctx, prec: usize) -> Self {
        Series {
            ctx: ctx.clone(),
            coeffs: vec![C::zero(ctx); prec],
        }
    }

    pub fn one(ctx: &C::Ctx, prec: usize) -> Self {
        Self::monomial(ctx, C::one(ctx), 0, prec)
    }

    /// The series `z`.
    pub fn z(ctx: &C::Ctx, prec: usize) -> Self {
        Self::monomial(ctx, C::one(ctx), 1, prec)
    }

    /// `c z^exp`, truncated at `prec`.
    pub fn monomial(ctx: &C::Ctx, c: C, exp: usize, prec: usize) -> Self {
        let mut s = Self::zero(ctx, prec);
        if exp < prec {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `z^n`; panics when `n >= prec` since that coefficient is unknown.
    pub fn coeff(&self, n: usize) -> &C {
        assert!(
            n < self.prec(),
            "coefficient z^{n} requested beyond precision {}",
            self.prec()
        );
        &self.coeffs[n]
    }

    pub fn set_coeff(&mut self, n: usize, c: C) {
        self.coeffs[n] = c;
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Series {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs[..prec.min(self.prec())].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn nonzero_terms(&self) -> Vec<(usize, &C)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn scale(&self, c: &C) -> Self {
        Series {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|x| x.times(c)).collect(),
        }
    }

    /// `f(c z)`: the coefficient of `z^n` is multiplied by `c^n`.
    pub fn scale_argument(&self, c: &C) -> Self {
        let mut pow = C::one(&self.ctx);
        let mut coeffs = Vec::with_capacity(self.prec());
        for x in &self.coeffs {
            coeffs.push(x.times(&pow));
            pow = pow.times(c);
        }
        Series {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Checked binary arithmetic; fails on operands from different domains.
    pub fn arith(&self, other: &Self, op: SeriesOp) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::MixedFields);
        }
        Ok(match op {
            SeriesOp::Add => self + other,
            SeriesOp::Sub => self - other,
            SeriesOp::Mul => self * other,
        })
    }

    fn check(&self, other: &Self) {
        assert!(self.ctx == other.ctx, "series over different coefficient domains");
    }

    /// `1/a` by the coefficient recurrence `b_n = -a_0^{-1} sum_{k=1}^{n} a_k b_{n-k}`.
    pub fn reciprocal(&self) -> Result<Self> {
        let prec = self.prec();
        if prec == 0 {
            return Ok(self.clone());
        }
        let inv0 = self.coeffs[0].inverse().ok_or(Error::ZeroConstantTerm)?;
        let neg_inv0 = inv0.negated();
        let terms: Vec<(usize, &C)> = self.nonzero_terms().into_iter().filter(|(k, _)| *k > 0).collect();
        let mut out: Vec<C> = Vec::with_capacity(prec);
        out.push(inv0);
        for n in 1..prec {
            let mut acc = C::zero(&self.ctx);
            for &(k, ak) in &terms {
                if k > n {
                    break;
                }
                let b = &out[n - k];
                if !b.is_zero() {
                    acc = acc.plus(&ak.times(b));
                }
            }
            out.push(if acc.is_zero() { acc } else { neg_inv0.times(&acc) });
        }
        Ok(Series {
            ctx: self.ctx.clone(),
            coeffs: out,
        })
    }

    /// `a^k` by binary exponentiation, truncating after every product.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::one(&self.ctx, self.prec());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `outer(inner(z))`; `inner` must have zero constant term.
    ///
    /// Only the nonzero terms of `outer` are visited, stepping the running
    /// power of `inner` between consecutive exponents.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.ctx != inner.ctx {
            return Err(Error::MixedFields);
        }
        if inner.prec() > 0 && !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroInnerConstant);
        }
        let prec = self.prec().min(inner.prec());
        let inner = inner.truncate(prec);
        let mut acc = Self::zero(&self.ctx, prec);
        let mut power = Self::one(&self.ctx, prec);
        let mut power_exp = 0usize;
        for (e, c) in self.nonzero_terms() {
            // inner^e = O(z^e)
            if e >= prec {
                break;
            }
            power = &power * &inner.pow((e - power_exp) as u64);
            power_exp = e;
            acc = &acc + &power.scale(c);
        }
        Ok(acc)
    }

    /// Hasse-Teichmüller derivative `H^(n)`: `z^m -> C(m, n) z^{m-n}`, with
    /// the binomial taken in the characteristic of the coefficient domain.
    /// The result has precision `prec - n`.
    pub fn ht_derivative(&self, n: usize) -> Result<Self> {
        let prec = self.prec();
        if n >= prec {
            return Err(Error::OrderExceedsPrecision { order: n, prec });
        }
        let coeffs = (n..prec)
            .map(|m| {
                let c = &self.coeffs[m];
                if c.is_zero() {
                    c.clone()
                } else {
                    c.times(&C::binomial(&self.ctx, m as u64, n as u64))
                }
            })
            .collect();
        Ok(Series {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[prec={}](", self.prec())?;
        let mut first = true;
        for (n, c) in self.nonzero_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*z^{n}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl<C: Coeff> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: &Series<C>) -> Series<C> {
        self.check(rhs);
        let prec = self.prec().min(rhs.prec());
        Series {
            ctx: self.ctx.clone(),
            coeffs: (0..prec).map(|i| self.coeffs[i].plus(&rhs.coeffs[i])).collect(),
        }
    }
}

impl<C: Coeff> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: &Series<C>) -> Series<C> {
        self.check(rhs);
        let prec = self.prec().min(rhs.prec());
        Series {
            ctx: self.ctx.clone(),
            coeffs: (0..prec).map(|i| self.coeffs[i].minus(&rhs.coeffs[i])).collect(),
        }
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c.negated()).collect(),
        }
    }
}

impl<C: Coeff> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &Series<C>) -> Series<C> {
        self.check(rhs);
        let prec = self.prec().min(rhs.prec());
        let mut out: Vec<Option<C>> = vec![None; prec];
        let b_terms = rhs.nonzero_terms();
        for (i, a) in self.nonzero_terms() {
            if i >= prec {
                break;
            }
            for &(j, b) in &b_terms {
                if i + j >= prec {
                    break;
                }
                let t = a.times(b);
                out[i + j] = Some(match out[i + j].take() {
                    None => t,
                    Some(acc) => acc.plus(&t),
                });
            }
        }
        Series {
            ctx: self.ctx.clone(),
            coeffs: out
                .into_iter()
                .map(|c| c.unwrap_or_else(|| C::zero(&self.ctx)))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<C: Coeff> $tr for Series<C> {
            type Output = Series<C>;
            fn $m(self, rhs: Series<C>) -> Series<C> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
