//! Elements of `F_r(T)` kept in lowest terms with a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{FFElement, FieldParams};
use super::poly::{same_field, Poly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

impl RatFunc {
    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !same_field(num.field(), den.field()) {
            return Err(Error::MixedFields);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let f = den.field().clone();
            return RatFunc {
                num: Poly::zero(&f),
                den: Poly::one(&f),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        Self::make_monic(num, den)
    }

    fn make_monic(num: Poly, den: Poly) -> Self {
        if den.is_monic() {
            return RatFunc { num, den };
        }
        let inv = den.field().inv(den.leading()).expect("nonzero");
        RatFunc {
            num: num.scale(inv),
            den: den.scale(inv),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let f = p.field().clone();
        RatFunc {
            num: p,
            den: Poly::one(&f),
        }
    }

    pub fn zero(field: &Arc<FieldParams>) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Arc<FieldParams>) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn constant(field: &Arc<FieldParams>, c: FFElement) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn from_int(field: &Arc<FieldParams>, n: i64) -> Self {
        Self::constant(field, field.from_int(n))
    }

    pub fn field(&self) -> &Arc<FieldParams> {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Re-normalizes; a no-op on values built through the public API.
    pub fn normalized(&self) -> Self {
        Self::reduce(self.num.clone(), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: FFElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.field());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `self^(r^j)`, computed as `T -> T^(r^j)` on numerator and denominator.
    pub fn frobenius(&self, j: u32) -> Self {
        RatFunc {
            num: self.num.frobenius(j),
            den: self.den.frobenius(j),
        }
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        Ok(RatFunc {
            num: self.num.pow(k as u64),
            den: self.den.pow(k as u64),
        })
    }

    pub fn arith(&self, b: &RatFunc, op: RatOp) -> Result<RatFunc> {
        if !same_field(self.field(), b.field()) {
            return Err(Error::MixedFields);
        }
        Ok(match op {
            RatOp::Add => self + b,
            RatOp::Sub => self - b,
            RatOp::Mul => self * b,
            RatOp::Div => self * &b.inv()?,
            RatOp::Neg => -self,
            RatOp::Inv => self.inv()?,
        })
    }

    /// Parses `num`, `num / (den)` or `(num) / (den)`.
    pub fn parse(field: &Arc<FieldParams>, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(Error::Parse(format!("multiple `/` in `{s}`")));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let strip = |t: &str| -> String {
            let t = t.trim();
            t.strip_prefix('(')
                .and_then(|u| u.strip_suffix(')'))
                .unwrap_or(t)
                .to_string()
        };
        match split {
            None => Ok(Self::from_poly(Poly::parse(field, &strip(s))?)),
            Some(i) => {
                let num = Poly::parse(field, &strip(&s[..i]))?;
                let den = Poly::parse(field, &strip(&s[i + 1..]))?;
                RatFunc::new(num, den).map_err(|e| match e {
                    Error::DivisionByZero => Error::Parse(format!("zero denominator in `{s}`")),
                    e => e,
                })
            }
        }
    }

    /// LaTeX form, `\frac{num}{den}` or just the numerator.
    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            self.num.to_latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi_term = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if multi_term {
            write!(f, "({}) / ({})", self.num, self.den)
        } else {
            write!(f, "{} / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num + &rhs.num);
        }
        // gcd(a,b) = gcd(c,d) = 1, so any common factor of the new numerator
        // and denominator divides g = gcd(b, d).
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return RatFunc::make_monic(num, den);
        }
        let b_g = self.den.div_exact(&g);
        let d_g = rhs.den.div_exact(&g);
        let num = &(&self.num * &d_g) + &(&rhs.num * &b_g);
        if num.is_zero() {
            return RatFunc::zero(self.field());
        }
        let h = num.gcd(&g);
        let den = &b_g * &rhs.den;
        if h.is_one() {
            RatFunc::make_monic(num, den)
        } else {
            RatFunc::make_monic(num.div_exact(&h), den.div_exact(&h))
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.field());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_exact(&g1), rhs.den.div_exact(&g1))
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_exact(&g2), self.den.div_exact(&g2))
        };
        RatFunc::make_monic(&a * &c, &b * &d)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::arith`] for a checked form.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Arc<FieldParams> {
        Arc::new(FieldParams::prime(3).unwrap())
    }

    fn q(field: &Arc<FieldParams>, s: &str) -> RatFunc {
        RatFunc::parse(field, s).unwrap()
    }

    #[test]
    fn sum_cancels_to_zero() {
        let f = f3();
        let s = &q(&f, "1 / (T^3 + 2*T)") + &q(&f, "2 / (T^3 + 2*T)");
        assert!(s.is_zero());
        assert_eq!(s.den().to_string(), "1");
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn inverse_of_t() {
        let f = f3();
        let t = RatFunc::from_poly(Poly::t(&f));
        assert_eq!(t.inv().unwrap().to_string(), "1 / (T)");
        assert_eq!(RatFunc::zero(&f).inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn product_expands_monic_denominator() {
        let f = f3();
        let x = &q(&f, "1 / (T^3 + 2*T)") * &q(&f, "1 / (T^9 + 2*T)");
        // (T^3 - T)(T^9 - T) = T^12 - T^10 - T^4 + T^2 over F_3
        assert_eq!(x.to_string(), "1 / (T^12 + 2*T^10 + 2*T^4 + T^2)");
    }

    #[test]
    fn canonical_form() {
        let f = f3();
        let x = RatFunc::new(Poly::parse(&f, "2*T^2 + 2*T").unwrap(), Poly::parse(&f, "2*T").unwrap()).unwrap();
        assert_eq!(x.to_string(), "T + 1");
        let y = q(&f, "(T + 1) / (2*T^2 + 2)");
        assert!(y.den().is_monic());
        assert_eq!(y.to_string(), "(2*T + 2) / (T^2 + 1)");
        assert_eq!(q(&f, "(T + 1) / (2*T^2 + 1)").to_string(), "2 / (T + 2)");
        assert_eq!(y.normalized(), y);
        assert_eq!(q(&f, &y.to_string()), y);
    }

    #[test]
    fn checked_arith() {
        let f = f3();
        let g = Arc::new(FieldParams::prime(5).unwrap());
        assert_eq!(
            RatFunc::one(&f).arith(&RatFunc::zero(&f), RatOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            RatFunc::one(&f).arith(&RatFunc::one(&g), RatOp::Add),
            Err(Error::MixedFields)
        );
        assert!(RatFunc::parse(&f, "1 / (0)").is_err());
    }

    #[test]
    fn frobenius_matches_pow() {
        let f = f3();
        let x = q(&f, "(T + 2) / (T^2 + 1)");
        assert_eq!(x.frobenius(1), x.pow(3).unwrap());
    }
}
