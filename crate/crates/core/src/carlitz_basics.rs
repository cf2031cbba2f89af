//! The Carlitz towers `[i] = T^{r^i} - T`, `D_i`, `L_i`, and the Carlitz factorial.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::exact_arith::{FieldParams, Poly, RatFunc};

/// Default largest tower index `i` for which `[i]`, `D_i`, `L_i` may be built.
pub const DEFAULT_TOWER_CAP: usize = 12;

/// Little-endian base-`r` digits of `n`, empty for `n = 0`.
pub fn r_digits(mut n: u64, r: u64) -> Vec<u64> {
    assert!(r >= 2, "radix must be at least 2");
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % r);
        n /= r;
    }
    out
}

/// Sum of base-`r` digits, as an ordinary integer.
pub fn digit_sum(n: u64, r: u64) -> u64 {
    r_digits(n, r).iter().sum()
}

/// `Some(j)` when `n = r^j - 1`.
pub fn as_r_power_minus_one(n: u64, r: u64) -> Option<u32> {
    let mut j = 0u32;
    let mut q = 1u64;
    while q - 1 < n {
        q = q.checked_mul(r)?;
        j += 1;
    }
    (q - 1 == n).then_some(j)
}

#[derive(Default)]
struct Towers {
    brackets: Vec<Poly>,
    d: Vec<Poly>,
    l: Vec<Poly>,
    factorials: HashMap<u64, Poly>,
}

/// Memoized `[i]`, `D_i`, `L_i` and `Π(n)` for one field.
///
/// Extension takes a write lock; already-computed entries are read under a
/// shared lock, so a cache can be shared across threads.
pub struct CarlitzCache {
    field: Arc<FieldParams>,
    cap: usize,
    towers: RwLock<Towers>,
}

impl std::fmt::Debug for CarlitzCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CarlitzCache")
            .field("field", &self.field)
            .field("cap", &self.cap)
            .finish()
    }
}

impl CarlitzCache {
    pub fn new(field: Arc<FieldParams>) -> Self {
        Self::with_cap(field, DEFAULT_TOWER_CAP)
    }

    pub fn with_cap(field: Arc<FieldParams>, cap: usize) -> Self {
        let one = Poly::one(&field);
        let towers = Towers {
            // [0] = T - T = 0 is never used; the slot keeps indices aligned.
            brackets: vec![Poly::zero(&field)],
            d: vec![one.clone()],
            l: vec![one],
            factorials: HashMap::new(),
        };
        CarlitzCache {
            field,
            cap,
            towers: RwLock::new(towers),
        }
    }

    pub fn field(&self) -> &Arc<FieldParams> {
        &self.field
    }

    pub fn r(&self) -> u64 {
        self.field.r()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn ensure(&self, i: usize) -> Result<()> {
        if self.towers.read().unwrap().d.len() > i {
            return Ok(());
        }
        if i > self.cap {
            return Err(Error::TowerCap {
                index: i,
                cap: self.cap,
            });
        }
        let r = self.r();
        let mut t = self.towers.write().unwrap();
        while t.d.len() <= i {
            let k = t.d.len();
            let deg = u32::try_from(k)
                .ok()
                .and_then(|k| r.checked_pow(k))
                .ok_or(Error::TowerCap {
                    index: k,
                    cap: self.cap,
                })? as usize;
            let f = &self.field;
            let bracket = &Poly::monomial(f, f.one(), deg) - &Poly::t(f);
            let d = &bracket * &t.d[k - 1].pow(r);
            let l = &bracket * &t.l[k - 1];
            t.brackets.push(bracket);
            t.d.push(d);
            t.l.push(l);
        }
        Ok(())
    }

    /// `[i] = T^{r^i} - T`, defined for `i >= 1`.
    pub fn bracket(&self, i: usize) -> Result<Poly> {
        if i < 1 {
            return Err(Error::Domain("[i] is defined for i >= 1".into()));
        }
        self.ensure(i)?;
        Ok(self.towers.read().unwrap().brackets[i].clone())
    }

    /// `D_i = [i] D_{i-1}^r`, `D_0 = 1`.
    pub fn d_of(&self, i: usize) -> Result<Poly> {
        self.ensure(i)?;
        Ok(self.towers.read().unwrap().d[i].clone())
    }

    /// `L_i = [i] L_{i-1}`, `L_0 = 1`.
    pub fn l_of(&self, i: usize) -> Result<Poly> {
        self.ensure(i)?;
        Ok(self.towers.read().unwrap().l[i].clone())
    }

    pub fn d_rat(&self, i: usize) -> Result<RatFunc> {
        self.d_of(i).map(RatFunc::from_poly)
    }

    pub fn l_rat(&self, i: usize) -> Result<RatFunc> {
        self.l_of(i).map(RatFunc::from_poly)
    }

    /// `Π(n) = prod_j D_j^{c_j}` over the base-`r` digits `c_j` of `n`.
    pub fn carlitz_factorial(&self, n: u64) -> Result<Poly> {
        if let Some(p) = self.towers.read().unwrap().factorials.get(&n) {
            return Ok(p.clone());
        }
        let mut acc = Poly::one(&self.field);
        for (j, &c) in r_digits(n, self.r()).iter().enumerate() {
            if c > 0 {
                acc = &acc * &self.d_of(j)?.pow(c);
            }
        }
        self.towers.write().unwrap().factorials.insert(n, acc.clone());
        Ok(acc)
    }

    pub fn factorial_rat(&self, n: u64) -> Result<RatFunc> {
        self.carlitz_factorial(n).map(RatFunc::from_poly)
    }

    /// `Π(n) = prod_{k>=1} [k]^{floor(n / r^k)}`; an independent route to the same value.
    pub fn carlitz_factorial_alt(&self, n: u64) -> Result<Poly> {
        let r = self.r();
        let mut acc = Poly::one(&self.field);
        let mut k = 1usize;
        let mut q = r;
        while q <= n {
            acc = &acc * &self.bracket(k)?.pow(n / q);
            k += 1;
            match q.checked_mul(r) {
                Some(next) => q = next,
                None => break,
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::make_field;

    fn cache(p: u64, e: u32) -> CarlitzCache {
        CarlitzCache::new(make_field(p, e, None).unwrap())
    }

    #[test]
    fn brackets() {
        let c3 = cache(3, 1);
        assert_eq!(c3.bracket(1).unwrap().to_string(), "T^3 + 2*T");
        assert_eq!(c3.bracket(2).unwrap().to_string(), "T^9 + 2*T");
        assert_eq!(cache(2, 1).bracket(1).unwrap().to_string(), "T^2 + T");
        assert!(c3.bracket(0).is_err());
    }

    #[test]
    fn towers() {
        let c = cache(3, 1);
        assert!(c.l_of(0).unwrap().is_one());
        assert!(c.d_of(0).unwrap().is_one());
        assert_eq!(c.d_of(1).unwrap(), c.bracket(1).unwrap());
        let l2 = &c.bracket(1).unwrap() * &c.bracket(2).unwrap();
        assert_eq!(c.l_of(2).unwrap(), l2);
        assert_eq!(l2.to_string(), "T^12 + 2*T^10 + 2*T^4 + T^2");
    }

    #[test]
    fn tower_degrees() {
        for (p, e) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let c = cache(p, e);
            let r = c.r() as usize;
            for i in 0..=3usize {
                assert_eq!(c.d_of(i).unwrap().degree(), Some(i * r.pow(i as u32)));
                let l_deg: usize = (1..=i).map(|k| r.pow(k as u32)).sum();
                assert_eq!(c.l_of(i).unwrap().degree(), Some(l_deg));
            }
        }
    }

    #[test]
    fn digits() {
        assert_eq!(r_digits(8, 3), vec![2, 2]);
        assert_eq!(r_digits(0, 3), Vec::<u64>::new());
        assert_eq!(r_digits(4, 3), vec![1, 1]);
        assert_eq!(digit_sum(8, 3), 4);
        assert_eq!(digit_sum(2, 3), 2);
        assert_eq!(digit_sum(0, 3), 0);
        assert_eq!(as_r_power_minus_one(8, 3), Some(2));
        assert_eq!(as_r_power_minus_one(0, 3), Some(0));
        assert_eq!(as_r_power_minus_one(7, 3), None);
    }

    #[test]
    fn factorial_examples() {
        let c = cache(3, 1);
        let b1 = c.bracket(1).unwrap();
        assert_eq!(c.carlitz_factorial(8).unwrap(), b1.pow(2));
        assert_eq!(c.carlitz_factorial_alt(8).unwrap(), b1.pow(2));
        assert!(c.carlitz_factorial(0).unwrap().is_one());
        assert!(c.carlitz_factorial_alt(0).unwrap().is_one());
        assert!(c.carlitz_factorial(2).unwrap().is_one());
        let c2 = cache(2, 1);
        assert_eq!(c2.carlitz_factorial_alt(3).unwrap().to_string(), "T^2 + T");
        assert_eq!(c2.carlitz_factorial(3).unwrap().to_string(), "T^2 + T");
    }

    #[test]
    fn guard_cap() {
        let c = CarlitzCache::with_cap(make_field(2, 1, None).unwrap(), 3);
        assert!(c.d_of(3).is_ok());
        assert_eq!(c.d_of(4).unwrap_err(), Error::TowerCap { index: 4, cap: 3 });
    }
}
