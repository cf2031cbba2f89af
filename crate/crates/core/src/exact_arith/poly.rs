//! Dense univariate polynomials in `T` over a finite field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{FFElement, FieldParams};
use crate::error::{Error, Result};

/// A polynomial in `T` over `F_r`, coefficients indexed by degree. The zero
/// polynomial has no coefficients and no degree.
#[derive(Clone)]
pub struct Poly {
    field: Arc<FieldParams>,
    coeffs: Vec<FFElement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivMod,
    Gcd,
}

/// Result of [`Poly::arith`]: `DivMod` yields a pair, everything else a single polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyResult {
    Single(Poly),
    Pair(Poly, Poly),
}

pub(crate) fn same_field(a: &Arc<FieldParams>, b: &Arc<FieldParams>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Poly {
    pub fn new(field: Arc<FieldParams>, mut coeffs: Vec<FFElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: &Arc<FieldParams>) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Arc<FieldParams>) -> Self {
        Self::constant(field, FFElement::ONE)
    }

    pub fn constant(field: &Arc<FieldParams>, c: FFElement) -> Self {
        Self::new(field.clone(), vec![c])
    }

    /// The indeterminate `T`.
    pub fn t(field: &Arc<FieldParams>) -> Self {
        Self::monomial(field, FFElement::ONE, 1)
    }

    pub fn monomial(field: &Arc<FieldParams>, c: FFElement, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero(field);
        }
        let mut coeffs = vec![FFElement::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<FieldParams> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FFElement] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> FFElement {
        self.coeffs.get(d).copied().unwrap_or(FFElement::ZERO)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FFElement::ONE
    }

    pub fn leading(&self) -> FFElement {
        self.coeffs.last().copied().unwrap_or(FFElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FFElement::ONE
    }

    fn check(&self, other: &Poly) {
        assert!(
            same_field(&self.field, &other.field),
            "polynomials over different fields"
        );
    }

    pub fn scale(&self, c: FFElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FFElement::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
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

    /// `self^(r^j)`. Since every coefficient is fixed by the `r`-power
    /// Frobenius, this is the substitution `T -> T^(r^j)`.
    pub fn frobenius(&self, j: u32) -> Poly {
        if j == 0 || self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let q = (self.field.r() as usize).pow(j);
        let deg = self.degree().unwrap();
        let mut coeffs = vec![FFElement::ZERO; deg * q + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * q] = c;
        }
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check(b);
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let db = b.degree().unwrap();
        let Some(da) = self.degree().filter(|&d| d >= db) else {
            return Ok((Poly::zero(f), self.clone()));
        };
        let lead_inv = f.inv(b.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FFElement::ZERO; da - db + 1];
        for i in (0..=da - db).rev() {
            let c = rem[i + db];
            if c.is_zero() {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[i] = q;
            for (k, &bk) in b.coeffs.iter().enumerate() {
                rem[i + k] = f.sub(rem[i + k], f.mul(q, bk));
            }
        }
        rem.truncate(db);
        Ok((Poly::new(f.clone(), quot), Poly::new(f.clone(), rem)))
    }

    /// Exact division; panics if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Poly {
        let (q, r) = self.divmod(b).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, b: &Poly) -> Poly {
        self.check(b);
        let mut x = self.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.divmod(&y).expect("nonzero");
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*b = g`, `g` monic.
    pub fn ext_gcd(&self, b: &Poly) -> (Poly, Poly, Poly) {
        self.check(b);
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.leading()).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Checked dispatch used by the public contract: field mismatch and
    /// division by zero are reported as errors instead of panics.
    pub fn arith(&self, b: &Poly, op: PolyOp) -> Result<PolyResult> {
        if !same_field(&self.field, &b.field) {
            return Err(Error::MixedFields);
        }
        Ok(match op {
            PolyOp::Add => PolyResult::Single(self + b),
            PolyOp::Sub => PolyResult::Single(self - b),
            PolyOp::Mul => PolyResult::Single(self * b),
            PolyOp::DivMod => {
                let (q, r) = self.divmod(b)?;
                PolyResult::Pair(q, r)
            }
            PolyOp::Gcd => PolyResult::Single(self.gcd(b)),
        })
    }

    /// Descending-degree LaTeX, e.g. `T^{9} + 2 T`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = match self.field.render(c) {
                s if s.starts_with('[') => format!("({})", &s[1..s.len() - 1]),
                s => s,
            };
            let mono = match d {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{{{d}}}"),
            };
            terms.push(match (d, c == FFElement::ONE) {
                (0, _) => cs,
                (_, true) => mono,
                _ => format!("{cs} {mono}"),
            });
        }
        terms.join(" + ")
    }

    /// Parses the canonical syntax produced by `Display`, e.g. `T^9 + 2*T`
    /// or `[a+1]*T^2 + [a]`. Subtraction and a leading minus are accepted.
    pub fn parse(field: &Arc<FieldParams>, s: &str) -> Result<Poly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Poly::zero(field);
        let mut depth = 0usize;
        let mut start = 0usize;
        let mut negative = false;
        let bytes = compact.as_bytes();
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'[' => depth += 1,
                b']' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::Parse(format!("unbalanced `]` in `{s}`")))?
                }
                b'+' | b'-' if depth == 0 => {
                    if i > start {
                        pieces.push((negative, &compact[start..i]));
                    } else if i != 0 {
                        return Err(Error::Parse(format!("malformed polynomial `{s}`")));
                    }
                    negative = b == b'-';
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 || start >= compact.len() {
            return Err(Error::Parse(format!("malformed polynomial `{s}`")));
        }
        pieces.push((negative, &compact[start..]));

        for (neg, term) in pieces {
            let (c, d) = parse_term(field, term)?;
            let c = if neg { field.neg(c) } else { c };
            acc = &acc + &Poly::monomial(field, c, d);
        }
        Ok(acc)
    }
}

fn parse_term(field: &FieldParams, term: &str) -> Result<(FFElement, usize)> {
    let bad = || Error::Parse(format!("malformed term `{term}`"));
    let (coef_str, rest) = if term.starts_with('[') {
        let close = term.find(']').ok_or_else(bad)?;
        (&term[..=close], &term[close + 1..])
    } else {
        let end = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        (&term[..end], &term[end..])
    };
    let coef = if coef_str.is_empty() {
        FFElement::ONE
    } else if coef_str.starts_with('[') {
        field.parse_element(coef_str)?
    } else {
        let v: u64 = coef_str.parse().map_err(|_| bad())?;
        field.from_u64(v)
    };
    let rest = if coef_str.is_empty() {
        rest
    } else {
        rest.strip_prefix('*').unwrap_or(rest)
    };
    if rest.is_empty() {
        if coef_str.is_empty() {
            return Err(bad());
        }
        return Ok((coef, 0));
    }
    let rest = rest.strip_prefix('T').ok_or_else(bad)?;
    let deg = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .ok_or_else(bad)?
            .parse::<usize>()
            .map_err(|_| bad())?
    };
    Ok((coef, deg))
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.field.render(c);
            match d {
                0 => write!(f, "{cs}")?,
                _ => {
                    if c != FFElement::ONE {
                        write!(f, "{cs}*")?;
                    }
                    if d == 1 {
                        write!(f, "T")?;
                    } else {
                        write!(f, "T^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, &s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = f.add(*c, s);
        }
        Poly::new(f.clone(), coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(rhs.coeffs[0]);
        }
        let mut out = vec![FFElement::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = f.add(out[i + j], f.mul(a, b));
                }
            }
        }
        Poly::new(f.clone(), out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
