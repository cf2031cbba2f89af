//! Stirling-Carlitz, Cauchy-Carlitz and Bernoulli-Carlitz numbers over `F_r(T)`.
//!
//! Everything is reachable by at least two routes: coefficient extraction from
//! a generating series, and a finite closed sum. The two are kept independent
//! so they can be checked against each other.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::carlitz_basics::{digit_sum, CarlitzCache};
use crate::compositions::{multiplicities, multisets};
use crate::error::{Error, Result};
use crate::exact_arith::{multinomial_mod_p, FieldParams, RatFunc};
use crate::series::{carlitz_exp_over_z, carlitz_exp_series, carlitz_log_over_z, carlitz_log_series, Series};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StirlingKind {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderMethod {
    /// Coefficients of `(z / log_C z)^m`.
    Direct,
    /// Nested composition sums over the coefficients of `(log_C z / z)^m`.
    Compositions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CarlitzKind {
    StirlingFirst,
    StirlingSecond,
    Cauchy,
    Bernoulli,
    CauchyOrder,
}

impl CarlitzKind {
    pub fn name(self) -> &'static str {
        match self {
            CarlitzKind::StirlingFirst => "stf_C",
            CarlitzKind::StirlingSecond => "sts_C",
            CarlitzKind::Cauchy => "CC",
            CarlitzKind::Bernoulli => "BC",
            CarlitzKind::CauchyOrder => "CCm",
        }
    }

    pub fn is_two_index(self) -> bool {
        matches!(self, CarlitzKind::StirlingFirst | CarlitzKind::StirlingSecond)
    }
}

impl fmt::Display for CarlitzKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A computed table. Single-index kinds use `k = None`.
#[derive(Debug, Clone, PartialEq)]
pub struct CarlitzNumberTable {
    pub kind: CarlitzKind,
    pub r: u64,
    pub order: u64,
    pub values: BTreeMap<(u64, Option<u64>), RatFunc>,
}

impl CarlitzNumberTable {
    pub fn get(&self, n: u64, k: Option<u64>) -> Option<&RatFunc> {
        self.values.get(&(n, k))
    }

    /// Zero first column below the corner, unit diagonal, zero upper triangle.
    pub fn boundary_rows_hold(&self) -> bool {
        if !self.kind.is_two_index() {
            return true;
        }
        self.values.iter().all(|(&(n, k), v)| {
            let k = k.unwrap_or(0);
            if n == k {
                v.is_one()
            } else if n < k || k == 0 {
                v.is_zero()
            } else {
                true
            }
        })
    }
}

/// Powers `base^0, base^1, ...` at a common precision.
struct PowerRows {
    prec: usize,
    rows: Vec<Series<RatFunc>>,
}

#[derive(Default)]
struct Memo {
    powers: HashMap<PowerKey, PowerRows>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum PowerKey {
    Log,
    Exp,
    /// `z / log_C z`
    LogRecip,
    /// `z / e_C z`
    ExpRecip,
}

/// Number-theoretic functions over one field, memoizing the generating-series
/// powers they are read off from.
pub struct CarlitzNumbers {
    cache: Arc<CarlitzCache>,
    memo: Mutex<Memo>,
}

impl fmt::Debug for CarlitzNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CarlitzNumbers").field("cache", &self.cache).finish()
    }
}

impl CarlitzNumbers {
    pub fn new(cache: Arc<CarlitzCache>) -> Self {
        CarlitzNumbers {
            cache,
            memo: Mutex::new(Memo::default()),
        }
    }

    pub fn for_field(field: Arc<FieldParams>) -> Self {
        Self::new(Arc::new(CarlitzCache::new(field)))
    }

    pub fn cache(&self) -> &Arc<CarlitzCache> {
        &self.cache
    }

    pub fn field(&self) -> &Arc<FieldParams> {
        self.cache.field()
    }

    pub fn r(&self) -> u64 {
        self.cache.r()
    }

    fn base_series(&self, key: PowerKey, prec: usize) -> Result<Series<RatFunc>> {
        let c = &self.cache;
        match key {
            PowerKey::Log => carlitz_log_series(c, prec),
            PowerKey::Exp => carlitz_exp_series(c, prec),
            PowerKey::LogRecip => carlitz_log_over_z(c, prec)?.reciprocal(),
            PowerKey::ExpRecip => carlitz_exp_over_z(c, prec)?.reciprocal(),
        }
    }

    /// `[z^n] base^k`, extending the memoized rows as needed.
    fn power_coeff(&self, key: PowerKey, k: u64, n: u64) -> Result<RatFunc> {
        let n = n as usize;
        let k = k as usize;
        let mut memo = self.memo.lock().unwrap();
        let stale = match memo.powers.get(&key) {
            Some(rows) => rows.prec <= n,
            None => true,
        };
        if stale {
            let old = memo.powers.get(&key).map_or(0, |r| r.prec);
            let grown = (n + 1).max(old + old / 2);
            let (prec, base) = match self.base_series(key, grown) {
                Ok(base) => (grown, base),
                Err(_) => (n + 1, self.base_series(key, n + 1)?),
            };
            let rows = vec![Series::one(self.field(), prec), base];
            memo.powers.insert(key, PowerRows { prec, rows });
        }
        let rows = memo.powers.get_mut(&key).unwrap();
        while rows.rows.len() <= k {
            let next = &rows.rows[rows.rows.len() - 1] * &rows.rows[1];
            rows.rows.push(next);
        }
        Ok(rows.rows[k].coeff(n).clone())
    }

    /// `⟦n k⟧_C` or `{n k}_C`: `Π(n)/Π(k)` times `[z^n]` of `(log_C z)^k` or `(e_C z)^k`.
    pub fn stirling_carlitz(&self, kind: StirlingKind, n: u64, k: u64) -> Result<RatFunc> {
        if k > n {
            return Ok(RatFunc::zero(self.field()));
        }
        let key = match kind {
            StirlingKind::First => PowerKey::Log,
            StirlingKind::Second => PowerKey::Exp,
        };
        let c = self.power_coeff(key, k, n)?;
        if c.is_zero() {
            return Ok(c);
        }
        let ratio = &self.cache.factorial_rat(n)? * &self.cache.factorial_rat(k)?.inv()?;
        Ok(&c * &ratio)
    }

    /// Closed form at `(r^a, r^b)`:
    /// `⟦r^a r^b⟧_C = (D_a/D_b) (-1)^{a-b} / L_{a-b}^{r^b}` and
    /// `{r^a r^b}_C = (D_a/D_b) / D_{a-b}^{r^b}`.
    pub fn stirling_carlitz_closed_form(&self, kind: StirlingKind, a: u32, b: u32) -> Result<RatFunc> {
        if a < b {
            return Err(Error::Domain(format!("closed form needs a >= b, got a={a}, b={b}")));
        }
        let c = &self.cache;
        let (a_, b_, d) = (a as usize, b as usize, (a - b) as usize);
        let ratio = &c.d_rat(a_)? * &c.d_rat(b_)?.inv()?;
        let tail = match kind {
            StirlingKind::First => c.l_rat(d)?.frobenius(b).inv()?.scale(self.field().sign(d as u64)),
            StirlingKind::Second => c.d_rat(d)?.frobenius(b).inv()?,
        };
        Ok(&ratio * &tail)
    }

    /// `j` with `r^j - 1 <= n`.
    fn levels(&self, n: u64) -> Vec<(usize, u64)> {
        let r = self.r();
        let mut out = Vec::new();
        let mut q = 1u64;
        let mut j = 0usize;
        while q - 1 <= n {
            out.push((j, q - 1));
            match q.checked_mul(r) {
                Some(next) => q = next,
                None => break,
            }
            j += 1;
        }
        out
    }

    /// `CC_n = sum_j ⟦n, r^j - 1⟧_C / L_j`.
    pub fn cauchy_carlitz(&self, n: u64) -> Result<RatFunc> {
        let mut acc = RatFunc::zero(self.field());
        for (j, m) in self.levels(n) {
            let s = self.stirling_carlitz(StirlingKind::First, n, m)?;
            if !s.is_zero() {
                acc = &acc + &(&s * &self.cache.l_rat(j)?.inv()?);
            }
        }
        Ok(acc)
    }

    /// `Π(n) [z^n] z / log_C(z)`.
    pub fn cauchy_carlitz_direct(&self, n: u64) -> Result<RatFunc> {
        let c = self.power_coeff(PowerKey::LogRecip, 1, n)?;
        Ok(&c * &self.cache.factorial_rat(n)?)
    }

    /// Per `k`, the non-increasing exponent multisets `i_1 >= ... >= i_k >= 1`
    /// with `sum r^{i_j} = n + k`. Only nonempty `k` are listed.
    pub fn ht_multisets(&self, n: u64) -> Vec<(usize, Vec<Vec<u64>>)> {
        let r = self.r();
        let size = move |i: u64| r.checked_pow(i as u32).unwrap_or(u64::MAX);
        (1..=n as usize)
            .map(|k| (k, multisets(k, n + k as u64, 1, size)))
            .filter(|(_, ms)| !ms.is_empty())
            .collect()
    }

    /// `CC_n = Π(n) sum_k (-1)^k sum (-1)^{i_1+...+i_k} / (L_{i_1} ... L_{i_k})`
    /// over ordered `(i_1, ..., i_k)`, `i_j >= 1`, with `sum r^{i_j} = n + k`.
    pub fn cauchy_carlitz_ht(&self, n: u64) -> Result<RatFunc> {
        if n < 1 {
            return Err(Error::Domain("composition formula needs n >= 1".into()));
        }
        let f = self.field();
        let p = f.p();
        let mut acc = RatFunc::zero(f);
        for (k, sets) in self.ht_multisets(n) {
            for ms in sets {
                let count = multinomial_mod_p(&multiplicities(&ms), p);
                if count == 0 {
                    continue;
                }
                let mut term = RatFunc::constant(f, f.from_u64(count));
                for &i in &ms {
                    term = &term * &self.cache.l_rat(i as usize)?.inv()?;
                }
                let sign = k as u64 + ms.iter().sum::<u64>();
                acc = &acc + &term.scale(f.sign(sign));
            }
        }
        Ok(&acc * &self.cache.factorial_rat(n)?)
    }

    /// `BC_n = sum_j (-1)^j D_j / L_j^2 {n, r^j - 1}_C`.
    pub fn bernoulli_carlitz(&self, n: u64) -> Result<RatFunc> {
        let f = self.field();
        let mut acc = RatFunc::zero(f);
        for (j, m) in self.levels(n) {
            let s = self.stirling_carlitz(StirlingKind::Second, n, m)?;
            if s.is_zero() {
                continue;
            }
            let l = self.cache.l_rat(j)?;
            let w = (&self.cache.d_rat(j)? * &(&l * &l).inv()?).scale(f.sign(j as u64));
            acc = &acc + &(&s * &w);
        }
        Ok(acc)
    }

    /// `Π(n) [z^n] z / e_C(z)`.
    pub fn bernoulli_carlitz_direct(&self, n: u64) -> Result<RatFunc> {
        let c = self.power_coeff(PowerKey::ExpRecip, 1, n)?;
        Ok(&c * &self.cache.factorial_rat(n)?)
    }

    /// `CC_n^(m) = Π(n) [z^n] (z / log_C z)^m`.
    pub fn cauchy_carlitz_order(&self, n: u64, m: u64, method: OrderMethod) -> Result<RatFunc> {
        if m < 1 {
            return Err(Error::Domain("order m must be at least 1".into()));
        }
        match method {
            OrderMethod::Direct => {
                let c = self.power_coeff(PowerKey::LogRecip, m, n)?;
                Ok(&c * &self.cache.factorial_rat(n)?)
            }
            OrderMethod::Compositions => self.cauchy_order_compositions(n, m),
        }
    }

    /// `[z^i] (log_C z / z)^m`: a sum over `j_1, ..., j_m >= 0` with
    /// `sum r^{j_l} = i + m` of `(-1)^{sum j} / prod L_{j_l}`.
    fn log_power_coeff(&self, i: u64, m: u64) -> Result<RatFunc> {
        let f = self.field();
        let r = self.r();
        let size = move |j: u64| r.checked_pow(j as u32).unwrap_or(u64::MAX);
        let mut acc = RatFunc::zero(f);
        for ms in multisets(m as usize, i + m, 0, size) {
            let count = multinomial_mod_p(&multiplicities(&ms), f.p());
            if count == 0 {
                continue;
            }
            let mut term = RatFunc::constant(f, f.from_u64(count));
            for &j in &ms {
                if j > 0 {
                    term = &term * &self.cache.l_rat(j as usize)?.inv()?;
                }
            }
            acc = &acc + &term.scale(f.sign(ms.iter().sum()));
        }
        Ok(acc)
    }

    fn cauchy_order_compositions(&self, n: u64, m: u64) -> Result<RatFunc> {
        if n < 1 {
            return Err(Error::Domain("composition formula needs n >= 1".into()));
        }
        let f = self.field();
        let coeffs: Vec<RatFunc> = (0..=n).map(|i| self.log_power_coeff(i, m)).collect::<Result<_>>()?;
        let mut acc = RatFunc::zero(f);
        for k in 1..=n as usize {
            for ms in multisets(k, n, 1, |i| i) {
                if ms.iter().any(|&i| coeffs[i as usize].is_zero()) {
                    continue;
                }
                let count = multinomial_mod_p(&multiplicities(&ms), f.p());
                if count == 0 {
                    continue;
                }
                let mut term = RatFunc::constant(f, f.from_u64(count));
                for &i in &ms {
                    term = &term * &coeffs[i as usize];
                }
                acc = &acc + &term.scale(f.sign(k as u64));
            }
        }
        Ok(&acc * &self.cache.factorial_rat(n)?)
    }

    /// When `λ(n) > λ(m)`, both Stirling-Carlitz numbers at `(n, m)` vanish.
    /// Vacuously true otherwise.
    pub fn check_digit_vanishing(&self, n: u64, m: u64) -> Result<bool> {
        let r = self.r();
        if digit_sum(n, r) <= digit_sum(m, r) {
            return Ok(true);
        }
        Ok(self.stirling_carlitz(StirlingKind::First, n, m)?.is_zero()
            && self.stirling_carlitz(StirlingKind::Second, n, m)?.is_zero())
    }

    /// Values for `n = 0..=max_n` (and `k = 0..=n` for the Stirling kinds).
    pub fn table(&self, kind: CarlitzKind, max_n: u64, order: u64) -> Result<CarlitzNumberTable> {
        let mut values = BTreeMap::new();
        for n in 0..=max_n {
            match kind {
                CarlitzKind::StirlingFirst | CarlitzKind::StirlingSecond => {
                    let sk = if kind == CarlitzKind::StirlingFirst {
                        StirlingKind::First
                    } else {
                        StirlingKind::Second
                    };
                    for k in 0..=n {
                        values.insert((n, Some(k)), self.stirling_carlitz(sk, n, k)?);
                    }
                }
                CarlitzKind::Cauchy => {
                    values.insert((n, None), self.cauchy_carlitz(n)?);
                }
                CarlitzKind::Bernoulli => {
                    values.insert((n, None), self.bernoulli_carlitz(n)?);
                }
                CarlitzKind::CauchyOrder => {
                    values.insert((n, None), self.cauchy_carlitz_order(n, order, OrderMethod::Direct)?);
                }
            }
        }
        Ok(CarlitzNumberTable {
            kind,
            r: self.r(),
            order: if kind == CarlitzKind::CauchyOrder { order } else { 1 },
            values,
        })
    }
}
