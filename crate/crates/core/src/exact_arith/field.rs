//! Finite fields `F_r`, `r = p^e`, in a polynomial basis.
//!
//! Elements are packed into a single integer: the element
//! `c_0 + c_1 a + ... + c_{e-1} a^{e-1}` is stored as `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`,
//! where `a` is a root of the field modulus. The prime subfield is therefore the
//! range `0..p`. Extension fields multiply through discrete log tables built
//! once at construction.

use std::fmt;

use crate::error::{Error, Result};

/// Largest prime accepted for a prime field.
pub const MAX_PRIME: u64 = u32::MAX as u64;
/// Largest cardinality accepted for a proper extension field.
pub const MAX_EXTENSION_SIZE: u64 = 1 << 16;

/// An element of some [`FieldParams`]. Carries no reference to its field; the
/// field performs all arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FFElement(u64);

impl FFElement {
    pub const ZERO: FFElement = FFElement(0);
    pub const ONE: FFElement = FFElement(1);

    /// The packed index `sum c_i p^i`.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FfOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
    Inv,
    Neg,
}

#[derive(Clone)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Parameters of the coefficient field `F_r`.
#[derive(Clone)]
pub struct FieldParams {
    p: u64,
    e: u32,
    r: u64,
    /// Monic modulus over `F_p`, low degree first, length `e + 1`. `None` for prime fields.
    modulus: Option<Vec<u64>>,
    tables: Option<LogTables>,
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldParams {}

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldParams")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldParams {
    /// Builds `F_{p^e}`. When `e > 1` and no modulus is given, the
    /// lexicographically smallest monic irreducible of degree `e` is chosen,
    /// comparing coefficient vectors from the constant term upward.
    ///
    /// `modulus` lists coefficients low degree first and must be monic of degree `e`.
    pub fn new(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if e < 1 {
            return Err(Error::BadDegree(e));
        }
        if p > MAX_PRIME {
            return Err(Error::FieldTooLarge(format!("p = {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let r = p
            .checked_pow(e)
            .filter(|&r| e == 1 || r <= MAX_EXTENSION_SIZE)
            .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{e} exceeds {MAX_EXTENSION_SIZE}")))?;

        let modulus = match (e, modulus) {
            (1, None) => None,
            (1, Some(m)) => {
                // A degree-1 modulus is allowed but carries no information.
                let m = normalize_fp(m, p);
                if m.len() != 2 || m[1] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic of degree e".into()));
                }
                None
            }
            (_, Some(m)) => {
                let m = normalize_fp(m, p);
                if m.len() != e as usize + 1 || m[e as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic of degree e".into()));
                }
                if !is_irreducible_fp(&m, p) {
                    return Err(Error::InvalidModulus(format!(
                        "{} is reducible over F_{p}",
                        render_fp_poly(&m, "a")
                    )));
                }
                Some(m)
            }
            (_, None) => Some(smallest_irreducible(p, e)),
        };

        let mut field = FieldParams {
            p,
            e,
            r,
            modulus,
            tables: None,
        };
        if e > 1 {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Field cardinality `p^e`.
    pub fn r(&self) -> u64 {
        self.r
    }

    /// Monic modulus, low degree first; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn zero(&self) -> FFElement {
        FFElement::ZERO
    }

    pub fn one(&self) -> FFElement {
        FFElement::ONE
    }

    /// Element with the given packed index.
    pub fn element(&self, index: u64) -> Result<FFElement> {
        if index >= self.r {
            return Err(Error::ElementOutOfRange {
                value: index,
                size: self.r,
            });
        }
        Ok(FFElement(index))
    }

    /// Element from its coordinates in the basis `1, a, ..., a^{e-1}`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FFElement> {
        if coeffs.len() > self.e as usize {
            return Err(Error::ElementOutOfRange {
                value: coeffs.len() as u64,
                size: self.e as u64,
            });
        }
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            idx = idx * self.p + c % self.p;
        }
        Ok(FFElement(idx))
    }

    /// Coordinates of `x` in the basis `1, a, ..., a^{e-1}` (always length `e`).
    pub fn coeffs(&self, x: FFElement) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut idx = x.0;
        for _ in 0..self.e {
            v.push(idx % self.p);
            idx /= self.p;
        }
        v
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FFElement {
        FFElement(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_u64(&self, n: u64) -> FFElement {
        FFElement(n % self.p)
    }

    pub fn add(&self, a: FFElement, b: FFElement) -> FFElement {
        if self.e == 1 {
            let s = a.0 + b.0;
            return FFElement(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return FFElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FFElement(out)
    }

    pub fn neg(&self, a: FFElement) -> FFElement {
        if self.e == 1 {
            return FFElement(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FFElement(out)
    }

    pub fn sub(&self, a: FFElement, b: FFElement) -> FFElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FFElement, b: FFElement) -> FFElement {
        if a.0 == 0 || b.0 == 0 {
            return FFElement::ZERO;
        }
        match &self.tables {
            None => FFElement(a.0 * b.0 % self.p),
            Some(t) => {
                let order = (self.r - 1) as usize;
                let k = (t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize) % order;
                FFElement(t.exp[k] as u64)
            }
        }
    }

    pub fn pow(&self, a: FFElement, mut k: u64) -> FFElement {
        let mut base = a;
        let mut acc = FFElement::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FFElement) -> Result<FFElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            None => self.pow(a, self.p - 2),
            Some(t) => {
                let order = (self.r - 1) as usize;
                let k = (order - t.log[a.0 as usize] as usize) % order;
                FFElement(t.exp[k] as u64)
            }
        })
    }

    pub fn div(&self, a: FFElement, b: FFElement) -> Result<FFElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Checked dispatch over every element operation. Unary operations ignore `b`.
    pub fn arith(&self, a: FFElement, b: FFElement, op: FfOp) -> Result<FFElement> {
        for x in [a, b] {
            if x.0 >= self.r {
                return Err(Error::MixedFields);
            }
        }
        Ok(match op {
            FfOp::Add => self.add(a, b),
            FfOp::Sub => self.sub(a, b),
            FfOp::Mul => self.mul(a, b),
            FfOp::Div => self.div(a, b)?,
            FfOp::Pow(k) => self.pow(a, k),
            FfOp::Inv => self.inv(a)?,
            FfOp::Neg => self.neg(a),
        })
    }

    /// `(-1)^k` in this field.
    pub fn sign(&self, k: u64) -> FFElement {
        if k.is_multiple_of(2) {
            FFElement::ONE
        } else {
            self.neg(FFElement::ONE)
        }
    }

    /// Iterator over all `r` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FFElement> {
        (0..self.r).map(FFElement)
    }

    /// Canonical rendering: bare integers for the prime subfield, otherwise a
    /// bracketed polynomial in the generator `a`.
    pub fn render(&self, x: FFElement) -> String {
        if x.0 < self.p {
            return x.0.to_string();
        }
        format!("[{}]", render_fp_poly(&self.coeffs(x), "a"))
    }

    /// Inverse of [`FieldParams::render`]; accepts `[...]` with or without brackets.
    pub fn parse_element(&self, s: &str) -> Result<FFElement> {
        let s = s.trim();
        let inner = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s);
        let coeffs = parse_fp_poly(inner, self.p, &['a'])?;
        self.from_coeffs(&coeffs)
            .map_err(|_| Error::Parse(format!("element `{s}` has degree >= e")))
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let m = self.modulus.as_ref().expect("extension field");
        let e = self.e as usize;
        let x = self.coeffs(FFElement(a));
        let y = self.coeffs(FFElement(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        for d in (e..prod.len()).rev() {
            let c = prod[d];
            if c != 0 {
                for (k, &mk) in m.iter().enumerate().take(e) {
                    let t = d - e + k;
                    prod[t] = (prod[t] + (self.p - c) * mk) % self.p;
                }
                prod[d] = 0;
            }
        }
        prod.truncate(e);
        self.from_coeffs(&prod).expect("reduced").0
    }

    fn build_tables(&self) -> LogTables {
        let order = self.r - 1;
        let factors = prime_factors(order);
        let slow_pow = |g: u64, mut k: u64| {
            let (mut base, mut acc) = (g, 1u64);
            while k > 0 {
                if k & 1 == 1 {
                    acc = self.slow_mul(acc, base);
                }
                base = self.slow_mul(base, base);
                k >>= 1;
            }
            acc
        };
        let g = (2..self.r)
            .find(|&g| factors.iter().all(|&q| slow_pow(g, order / q) != 1))
            .unwrap_or(1);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.r as usize];
        let mut x = 1u64;
        for k in 0..order {
            exp.push(x as u32);
            log[x as usize] = k as u32;
            x = self.slow_mul(x, g);
        }
        LogTables { exp, log }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn normalize_fp(m: &[u64], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = m.iter().map(|c| c % p).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p`.
fn rem_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (k, &bk) in b.iter().enumerate() {
                r[shift + k] = (r[shift + k] + (p - c) * bk) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Trial division against every monic polynomial of degree `1..=deg/2`.
fn is_irreducible_fp(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                cand.push(t % p);
                t /= p;
            }
            cand.push(1);
            if rem_fp(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    let e = e as usize;
    let count = p.pow(e as u32);
    for idx in 0..count {
        // Constant term is the most significant digit so that iteration order
        // matches lexicographic order on (c_0, c_1, ..., c_{e-1}).
        let mut coeffs = vec![0u64; e + 1];
        let mut t = idx;
        for slot in (0..e).rev() {
            coeffs[slot] = t % p;
            t /= p;
        }
        coeffs[e] = 1;
        if coeffs[0] != 0 && is_irreducible_fp(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// Descending-degree rendering of a polynomial over `F_p` with no spaces,
/// e.g. `a^2+2*a+1`.
pub(crate) fn render_fp_poly(coeffs: &[u64], var: &str) -> String {
    let mut terms = Vec::new();
    for (d, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match d {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{d}"),
        };
        terms.push(match (c, d) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Parses a sum of terms `c*v^k` over `F_p`, where `v` is any of `vars`.
/// Coefficients are integers (reduced mod `p`); a leading `-` negates a term.
pub(crate) fn parse_fp_poly(s: &str, p: u64, vars: &[char]) -> Result<Vec<u64>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out: Vec<u64> = Vec::new();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if ch == '+' || ch == '-' {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{s}`")));
    }
    terms.push((neg, cur));

    for (neg, term) in terms {
        let (coef, deg) = parse_term(&term, vars)?;
        let mut c = coef % p;
        if neg {
            c = (p - c) % p;
        }
        if out.len() <= deg {
            out.resize(deg + 1, 0);
        }
        out[deg] = (out[deg] + c) % p;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

fn parse_term(term: &str, vars: &[char]) -> Result<(u64, usize)> {
    let bad = || Error::Parse(format!("malformed term `{term}`"));
    let var_pos = term.find(|c: char| vars.contains(&c));
    let Some(pos) = var_pos else {
        return term.parse::<u64>().map(|c| (c, 0)).map_err(|_| bad());
    };
    let (head, tail) = term.split_at(pos);
    let coef = if head.is_empty() {
        1
    } else {
        head.strip_suffix('*')
            .unwrap_or(head)
            .parse::<u64>()
            .map_err(|_| bad())?
    };
    let tail = &tail[1..];
    let deg = if tail.is_empty() {
        1
    } else {
        tail.strip_prefix('^')
            .ok_or_else(bad)?
            .parse::<usize>()
            .map_err(|_| bad())?
    };
    Ok((coef, deg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = FieldParams::new(3, 1, None).unwrap();
        assert_eq!(f.r(), 3);
        assert!(f.modulus().is_none());
        assert_eq!(f.neg(FFElement(1)), FFElement(2));
        assert_eq!(f.inv(FFElement(2)).unwrap(), FFElement(2));
    }

    #[test]
    fn rejects_composite_and_bad_degree() {
        assert_eq!(FieldParams::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldParams::new(1, 1, None).unwrap_err(), Error::NotPrime(1));
        assert_eq!(FieldParams::new(3, 0, None).unwrap_err(), Error::BadDegree(0));
    }

    #[test]
    fn default_modulus_is_smallest_irreducible() {
        // Brute force over all four monic quadratics over F_2: only x^2+x+1 has no root.
        let mut irreducible = Vec::new();
        for c0 in 0..2u64 {
            for c1 in 0..2u64 {
                let has_root = (0..2u64).any(|x| (x * x + c1 * x + c0) % 2 == 0);
                if !has_root {
                    irreducible.push(vec![c0, c1, 1]);
                }
            }
        }
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        let f = FieldParams::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), Some(&[1u64, 1, 1][..]));

        // Over F_3 the candidates in lexicographic order start with x^2+1.
        let f9 = FieldParams::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), Some(&[1u64, 0, 1][..]));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x+1)^2 over F_2
        let err = FieldParams::new(2, 2, Some(&[1, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::InvalidModulus(_)));
        let err = FieldParams::new(2, 3, Some(&[1, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::InvalidModulus(_)));
    }

    #[test]
    fn f4_generator_squares() {
        let f = FieldParams::new(2, 2, None).unwrap();
        let a = f.from_coeffs(&[0, 1]).unwrap();
        let a_plus_1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(a, a), a_plus_1);
        assert_eq!(f.render(a_plus_1), "[a+1]");
        assert_eq!(f.render(a), "[a]");
        assert_eq!(f.parse_element("[a+1]").unwrap(), a_plus_1);
    }

    #[test]
    fn table_mul_matches_slow_mul() {
        for (p, e) in [(2u64, 3u32), (3, 2), (5, 2), (2, 4)] {
            let f = FieldParams::new(p, e, None).unwrap();
            for a in 0..f.r() {
                for b in 0..f.r() {
                    let want = if a == 0 || b == 0 { 0 } else { f.slow_mul(a, b) };
                    assert_eq!(f.mul(FFElement(a), FFElement(b)).0, want);
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for (p, e) in [(2u64, 1u32), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)] {
            let f = FieldParams::new(p, e, None).unwrap();
            let all: Vec<_> = f.elements().collect();
            for &a in &all {
                assert_eq!(f.add(a, f.neg(a)), FFElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FFElement::ONE);
                }
                for &b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &all {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn arith_dispatch_errors() {
        let f = FieldParams::prime(3).unwrap();
        assert_eq!(
            f.arith(FFElement(1), FFElement(0), FfOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(f.arith(FFElement(7), FFElement(1), FfOp::Add), Err(Error::MixedFields));
        assert_eq!(f.arith(FFElement(2), FFElement(0), FfOp::Pow(3)), Ok(FFElement(2)));
    }

    #[test]
    fn parse_fp_poly_forms() {
        assert_eq!(parse_fp_poly("x^2 + x + 1", 2, &['x']).unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_fp_poly("a^2-1", 3, &['a']).unwrap(), vec![2, 0, 1]);
        assert!(parse_fp_poly("a^^2", 3, &['a']).is_err());
    }
}
