//! Classical Stirling, Cauchy, higher-order Cauchy and poly-Cauchy numbers,
//! all in exact rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::compositions::{multiplicities, multisets};
use crate::error::{Error, Result};
use crate::exact_arith::{big_uint_to_rational, binomial_big, multinomial_big, rat, BigRational, Rationals};
use crate::series::Series;

pub use crate::carlitz_numbers::StirlingKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CauchyMethod {
    /// Compositions into parts `>= 2` summing to `n + k`.
    PartsAtLeastTwo,
    /// Compositions into positive parts summing to `n + k`, weighted by `C(n+1, k+1)`.
    BinomialWeighted,
    /// A single sum over Stirling numbers `⟦n+k, k⟧`.
    Stirling,
    /// `n! [z^n] z / log(1+z)`.
    Series,
}

impl CauchyMethod {
    pub const ALL: [CauchyMethod; 4] = [
        CauchyMethod::PartsAtLeastTwo,
        CauchyMethod::BinomialWeighted,
        CauchyMethod::Stirling,
        CauchyMethod::Series,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CauchyOrderMethod {
    /// Positive-part compositions of `n` with multinomial and Stirling weights.
    Multinomial,
    /// Nonnegative-part compositions of `n`, additionally weighted by `C(n+1, k+1)`.
    WeightedMultinomial,
    /// A single sum over Stirling numbers `⟦n+mk, mk⟧`.
    Stirling,
    /// `n! [z^n] (z / log(1+z))^m`.
    Series,
}

impl CauchyOrderMethod {
    pub const ALL: [CauchyOrderMethod; 4] = [
        CauchyOrderMethod::Multinomial,
        CauchyOrderMethod::WeightedMultinomial,
        CauchyOrderMethod::Stirling,
        CauchyOrderMethod::Series,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalKind {
    Stirling1,
    Stirling2,
    Cauchy,
    CauchyOrder,
    PolyCauchy,
}

impl ClassicalKind {
    pub fn name(self) -> &'static str {
        match self {
            ClassicalKind::Stirling1 => "stirling1",
            ClassicalKind::Stirling2 => "stirling2",
            ClassicalKind::Cauchy => "cauchy",
            ClassicalKind::CauchyOrder => "cauchy_m",
            ClassicalKind::PolyCauchy => "poly_cauchy",
        }
    }

    pub fn is_two_index(self) -> bool {
        matches!(self, ClassicalKind::Stirling1 | ClassicalKind::Stirling2)
    }
}

impl fmt::Display for ClassicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A computed table. Single-index kinds use `k = None`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalTable {
    pub kind: ClassicalKind,
    pub order: u64,
    pub values: BTreeMap<(u64, Option<u64>), BigRational>,
}

impl ClassicalTable {
    pub fn get(&self, n: u64, k: Option<u64>) -> Option<&BigRational> {
        self.values.get(&(n, k))
    }
}

#[derive(Default)]
struct Triangles {
    first: Vec<Vec<BigInt>>,
    second: Vec<Vec<BigInt>>,
}

fn extend(rows: &mut Vec<Vec<BigInt>>, n: usize, kind: StirlingKind) {
    if rows.is_empty() {
        rows.push(vec![BigInt::one()]);
    }
    while rows.len() <= n {
        let m = rows.len() - 1;
        let prev = &rows[m];
        let mut next = vec![BigInt::zero(); m + 2];
        for (k, slot) in next.iter_mut().enumerate().skip(1) {
            let diag = prev.get(k - 1).cloned().unwrap_or_default();
            let same = prev.get(k).cloned().unwrap_or_default();
            let factor = match kind {
                StirlingKind::First => m,
                StirlingKind::Second => k,
            };
            *slot = diag + same * BigInt::from(factor);
        }
        rows.push(next);
    }
}

/// Memoized classical numbers. Stirling numbers of the first kind are unsigned,
/// `(-log(1-t))^k / k! = sum ⟦n k⟧ t^n / n!`.
#[derive(Default)]
pub struct ClassicalNumbers {
    triangles: Mutex<Triangles>,
}

impl fmt::Debug for ClassicalNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ClassicalNumbers")
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn sign(k: u64) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn binom(m: u64, n: u64) -> BigRational {
    big_uint_to_rational(binomial_big(m, n))
}

fn need_positive(n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain("this formula needs n >= 1".into()));
    }
    Ok(())
}

impl ClassicalNumbers {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stirling_integer(&self, kind: StirlingKind, n: u64, k: u64) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        let mut t = self.triangles.lock().unwrap();
        let rows = match kind {
            StirlingKind::First => &mut t.first,
            StirlingKind::Second => &mut t.second,
        };
        extend(rows, n as usize, kind);
        rows[n as usize][k as usize].clone()
    }

    pub fn stirling_classical(&self, kind: StirlingKind, n: u64, k: u64) -> BigRational {
        BigRational::from_integer(self.stirling_integer(kind, n, k))
    }

    fn s1(&self, n: u64, k: u64) -> BigRational {
        self.stirling_classical(StirlingKind::First, n, k)
    }

    pub fn cauchy_classical(&self, n: u64, method: CauchyMethod) -> Result<BigRational> {
        match method {
            CauchyMethod::PartsAtLeastTwo => {
                need_positive(n)?;
                let mut acc = BigRational::zero();
                for k in 1..=n {
                    acc += sign(k) * weighted_reciprocal_sum(k, n + k, 2);
                }
                Ok(sign(n) * BigRational::from_integer(factorial(n)) * acc)
            }
            CauchyMethod::BinomialWeighted => {
                need_positive(n)?;
                let mut acc = BigRational::zero();
                for k in 1..=n {
                    acc += sign(k) * binom(n + 1, k + 1) * weighted_reciprocal_sum(k, n + k, 1);
                }
                Ok(sign(n) * BigRational::from_integer(factorial(n)) * acc)
            }
            CauchyMethod::Stirling => {
                need_positive(n)?;
                let mut acc = BigRational::zero();
                for k in 1..=n {
                    acc += sign(k) * binom(n + 1, k + 1) / binom(n + k, n) * self.s1(n + k, k);
                }
                Ok(sign(n) * acc)
            }
            CauchyMethod::Series => self.cauchy_order_classical(n, 1, CauchyOrderMethod::Series),
        }
    }

    /// `m! i! / (i+m)! ⟦i+m, m⟧ = [z^i] (-log(1-z)/z)^m`.
    fn log_power_coeff(&self, i: u64, m: u64) -> BigRational {
        self.s1(i + m, m) / binom(i + m, m)
    }

    fn multinomial_sum(&self, n: u64, k: u64, min_part: u64, m: u64) -> BigRational {
        let mut acc = BigRational::zero();
        for ms in multisets(k as usize, n, min_part, |i| i) {
            let orderings = big_uint_to_rational(multinomial_big(&multiplicities(&ms)));
            let mut term = big_uint_to_rational(multinomial_big(&ms));
            for &i in &ms {
                term *= self.log_power_coeff(i, m);
            }
            acc += orderings * term;
        }
        acc
    }

    pub fn cauchy_order_classical(&self, n: u64, m: u64, method: CauchyOrderMethod) -> Result<BigRational> {
        if m < 1 {
            return Err(Error::Domain("order m must be at least 1".into()));
        }
        match method {
            CauchyOrderMethod::Multinomial => {
                need_positive(n)?;
                let mut acc = BigRational::zero();
                for k in 1..=n {
                    acc += sign(k) * self.multinomial_sum(n, k, 1, m);
                }
                Ok(sign(n) * acc)
            }
            CauchyOrderMethod::WeightedMultinomial => {
                need_positive(n)?;
                let mut acc = BigRational::zero();
                for k in 1..=n {
                    acc += sign(k) * binom(n + 1, k + 1) * self.multinomial_sum(n, k, 0, m);
                }
                Ok(sign(n) * acc)
            }
            CauchyOrderMethod::Stirling => {
                need_positive(n)?;
                let mut acc = BigRational::zero();
                for k in 1..=n {
                    acc += sign(k) * binom(n + 1, k + 1) / binom(n + m * k, n) * self.s1(n + m * k, m * k);
                }
                Ok(sign(n) * acc)
            }
            CauchyOrderMethod::Series => {
                let prec = n as usize + 1;
                let h = Series::new(
                    Rationals,
                    (0..prec as i64)
                        .map(|j| rat(if j % 2 == 0 { 1 } else { -1 }, j + 1))
                        .collect(),
                );
                let g = h.reciprocal()?.pow(m);
                Ok(g.coeff(n as usize) * BigRational::from_integer(factorial(n)))
            }
        }
    }

    /// `𝔠_n^(k) = sum_m ⟦n m⟧ (-1)^{n-m} / (m+1)^k`.
    pub fn poly_cauchy(&self, n: u64, k: u64) -> Result<BigRational> {
        if k < 1 {
            return Err(Error::Domain("poly-Cauchy index k must be at least 1".into()));
        }
        let mut acc = BigRational::zero();
        for m in 0..=n {
            let den = BigInt::from(m + 1).pow(k as u32);
            acc += sign(n - m) * self.s1(n, m) / BigRational::from_integer(den);
        }
        Ok(acc)
    }

    /// Both sides of
    /// `sum_{i_1+...+i_k=n, i_j>=0} 1/((i_1+1)...(i_k+1)) = k!/(n+k)! ⟦n+k, k⟧`.
    pub fn stirling_sum_sides(&self, n: u64, k: u64) -> Result<(BigRational, BigRational)> {
        if k < 1 {
            return Err(Error::Domain("k must be at least 1".into()));
        }
        let mut lhs = BigRational::zero();
        for ms in multisets(k as usize, n, 0, |i| i) {
            let orderings = big_uint_to_rational(multinomial_big(&multiplicities(&ms)));
            let prod: BigInt = ms.iter().map(|&i| BigInt::from(i + 1)).product();
            lhs += orderings / BigRational::from_integer(prod);
        }
        let rhs = BigRational::new(factorial(k), factorial(n + k)) * self.s1(n + k, k);
        Ok((lhs, rhs))
    }

    pub fn stirling_sum_identity_check(&self, n: u64, k: u64) -> Result<bool> {
        let (lhs, rhs) = self.stirling_sum_sides(n, k)?;
        Ok(lhs == rhs)
    }

    /// Values for `n = 0..=max_n`; `param` is the order `m` or poly-Cauchy index `k`.
    pub fn table(&self, kind: ClassicalKind, max_n: u64, param: u64) -> Result<ClassicalTable> {
        let mut values = BTreeMap::new();
        for n in 0..=max_n {
            match kind {
                ClassicalKind::Stirling1 | ClassicalKind::Stirling2 => {
                    let sk = if kind == ClassicalKind::Stirling1 {
                        StirlingKind::First
                    } else {
                        StirlingKind::Second
                    };
                    for k in 0..=n {
                        values.insert((n, Some(k)), self.stirling_classical(sk, n, k));
                    }
                }
                ClassicalKind::Cauchy => {
                    values.insert((n, None), self.cauchy_classical(n, CauchyMethod::Series)?);
                }
                ClassicalKind::CauchyOrder => {
                    values.insert(
                        (n, None),
                        self.cauchy_order_classical(n, param, CauchyOrderMethod::Series)?,
                    );
                }
                ClassicalKind::PolyCauchy => {
                    values.insert((n, None), self.poly_cauchy(n, param)?);
                }
            }
        }
        Ok(ClassicalTable {
            kind,
            order: if kind.is_two_index() || kind == ClassicalKind::Cauchy {
                1
            } else {
                param
            },
            values,
        })
    }
}

/// `sum 1/(i_1 ... i_k)` over ordered `k`-tuples of integers `>= min_part` summing to `target`.
fn weighted_reciprocal_sum(k: u64, target: u64, min_part: u64) -> BigRational {
    let mut acc = BigRational::zero();
    for ms in multisets(k as usize, target, min_part, |i| i) {
        let orderings = big_uint_to_rational(multinomial_big(&multiplicities(&ms)));
        let prod: BigInt = ms.iter().map(|&i| BigInt::from(i)).product();
        acc += orderings / BigRational::from_integer(prod);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn stirling_triangles() {
        let c = ClassicalNumbers::new();
        let s1 = |n, k| c.stirling_integer(StirlingKind::First, n, k);
        let s2 = |n, k| c.stirling_integer(StirlingKind::Second, n, k);
        assert_eq!(s1(3, 1), BigInt::from(2));
        assert_eq!(s2(3, 2), BigInt::from(3));
        assert_eq!(s1(5, 2), BigInt::from(50));
        assert_eq!(s2(6, 3), BigInt::from(90));
        for n in 0..8 {
            assert!(s1(n, n).is_one() && s2(n, n).is_one());
            assert!(s1(n, n + 2).is_zero());
            if n > 0 {
                assert!(s1(n, 0).is_zero() && s2(n, 0).is_zero());
            }
        }
    }

    #[test]
    fn cauchy_values_all_methods() {
        let c = ClassicalNumbers::new();
        let want = ["1/2", "-1/6", "1/4", "-19/30", "9/4", "-863/84", "1375/24"];
        for (i, w) in want.iter().enumerate() {
            for m in CauchyMethod::ALL {
                assert_eq!(c.cauchy_classical(i as u64 + 1, m).unwrap(), q(w), "n={} {m:?}", i + 1);
            }
        }
        assert_eq!(c.cauchy_classical(0, CauchyMethod::Series).unwrap(), q("1"));
        assert!(c.cauchy_classical(0, CauchyMethod::Stirling).is_err());
    }

    #[test]
    fn order_three_all_methods() {
        let c = ClassicalNumbers::new();
        let want = ["3/2", "1", "0", "1/10", "-1/4", "16/21", "-11/4", "329/30"];
        for (i, w) in want.iter().enumerate() {
            for m in CauchyOrderMethod::ALL {
                assert_eq!(
                    c.cauchy_order_classical(i as u64 + 1, 3, m).unwrap(),
                    q(w),
                    "n={} {m:?}",
                    i + 1
                );
            }
        }
        assert!(c.cauchy_order_classical(2, 0, CauchyOrderMethod::Series).is_err());
    }

    #[test]
    fn poly_cauchy_examples() {
        let c = ClassicalNumbers::new();
        assert_eq!(c.poly_cauchy(2, 2).unwrap(), q("-5/36"));
        assert_eq!(c.poly_cauchy(0, 5).unwrap(), q("1"));
        for n in 0..=10 {
            assert_eq!(
                c.poly_cauchy(n, 1).unwrap(),
                c.cauchy_classical(n, CauchyMethod::Series).unwrap()
            );
        }
    }

    #[test]
    fn stirling_sum_identity() {
        let c = ClassicalNumbers::new();
        assert_eq!(c.stirling_sum_sides(2, 1).unwrap(), (q("1/3"), q("1/3")));
        assert_eq!(c.stirling_sum_sides(0, 4).unwrap(), (q("1"), q("1")));
        for n in 0..=10 {
            for k in 1..=5 {
                assert!(c.stirling_sum_identity_check(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }
}
