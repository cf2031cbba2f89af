//! Bounded verification of the identities tying the Carlitz and classical
//! number families together, with structured pass/fail reports.

use std::fmt::Display;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::carlitz_basics::{as_r_power_minus_one, CarlitzCache};
use crate::carlitz_numbers::{CarlitzNumbers, OrderMethod, StirlingKind};
use crate::classical::{CauchyMethod, CauchyOrderMethod, ClassicalNumbers};
use crate::error::{Error, Result};
use crate::exact_arith::{make_field, render_rational, BigRational, Coeff, FieldParams, Poly, RatFunc, Rationals};
use crate::series::{
    carlitz_exp_linear, carlitz_exp_series, carlitz_log_linear, carlitz_log_over_z, carlitz_log_series,
    ht_product_rule, ht_quotient_check, LinearSeries, QuotientRule, Series,
};

/// Failures collected per identity before its loop stops.
pub const MAX_FAILURES: usize = 5;

/// Identities checked per field.
pub const FIELD_IDENTITIES: &[&str] = &[
    "orthogonality",
    "cc_annihilation",
    "bc_annihilation",
    "transmutation",
    "closed_forms",
    "digit_vanishing",
    "factorial",
    "functional_equations",
    "h_relations",
    "cauchy_agreement",
    "support",
    "boundary_rows",
    "ht_rules",
    "log_pattern",
];

/// Field-independent identities over the rationals.
pub const CLASSICAL_IDENTITIES: &[&str] = &[
    "classical_cauchy",
    "classical_cauchy_order",
    "classical_orthogonality",
    "stirling_sum",
    "poly_cauchy",
    "ht_rules_rational",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prec: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k_max: Option<u32>,
    /// The series a per-series check ran on.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subject: Option<String>,
}

impl ReportParams {
    fn field(f: &FieldParams) -> Self {
        ReportParams {
            p: Some(f.p()),
            e: Some(f.e()),
            r: Some(f.r()),
            ..Default::default()
        }
    }

    fn with_n(mut self, n: u64) -> Self {
        self.max_n = Some(n);
        self
    }

    fn with_prec(mut self, prec: usize) -> Self {
        self.prec = Some(prec);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub indices: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: ReportParams,
    pub cases_checked: u64,
    pub failures: Vec<Failure>,
    pub elapsed_secs: f64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The same report with the timing zeroed, for run-to-run comparison.
    pub fn without_timing(&self) -> Self {
        IdentityReport {
            elapsed_secs: 0.0,
            ..self.clone()
        }
    }
}

enum Halt {
    Full,
    Failed(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt::Failed(e)
    }
}

type Step = std::result::Result<(), Halt>;

struct Checker {
    report: IdentityReport,
    start: Instant,
}

impl Checker {
    fn new(id: &str, params: ReportParams) -> Self {
        Checker {
            report: IdentityReport {
                identity_id: id.to_string(),
                params,
                cases_checked: 0,
                failures: Vec::new(),
                elapsed_secs: 0.0,
            },
            start: Instant::now(),
        }
    }

    fn check<T: PartialEq + Display>(&mut self, indices: impl FnOnce() -> String, expected: &T, actual: &T) -> Step {
        self.report.cases_checked += 1;
        if expected != actual {
            self.report.failures.push(Failure {
                indices: indices(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
            if self.report.failures.len() >= MAX_FAILURES {
                return Err(Halt::Full);
            }
        }
        Ok(())
    }

    fn check_rational(
        &mut self,
        indices: impl FnOnce() -> String,
        expected: &BigRational,
        actual: &BigRational,
    ) -> Step {
        self.check(
            indices,
            &Rendered(render_rational(expected)),
            &Rendered(render_rational(actual)),
        )
    }

    fn check_true(&mut self, indices: impl FnOnce() -> String, holds: bool) -> Step {
        self.check(indices, &true, &holds)
    }

    fn run(mut self, body: impl FnOnce(&mut Checker) -> Step) -> IdentityReport {
        if let Err(Halt::Failed(e)) = body(&mut self) {
            self.report.failures.push(Failure {
                indices: "computation".into(),
                expected: "a value".into(),
                actual: format!("error: {e}"),
            });
        }
        self.report.elapsed_secs = self.start.elapsed().as_secs_f64();
        self.report
    }
}

#[derive(PartialEq)]
struct Rendered(String);

impl Display for Rendered {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn delta(field: &Arc<FieldParams>, n: u64, k: u64) -> RatFunc {
    if n == k {
        RatFunc::one(field)
    } else {
        RatFunc::zero(field)
    }
}

fn params(c: &CarlitzNumbers) -> ReportParams {
    ReportParams::field(c.field())
}

/// `sum_m ⟦n m⟧_C {m k}_C = δ_{n,k}` and the reverse order, `0 <= k <= n <= max_n`.
pub fn verify_orthogonality(c: &CarlitzNumbers, max_n: u64) -> IdentityReport {
    Checker::new("orthogonality", params(c).with_n(max_n)).run(|ck| {
        let f = c.field();
        for (a, b, label) in [
            (StirlingKind::First, StirlingKind::Second, "first-second"),
            (StirlingKind::Second, StirlingKind::First, "second-first"),
        ] {
            for n in 0..=max_n {
                for k in 0..=n {
                    let mut acc = RatFunc::zero(f);
                    for m in k..=n {
                        acc = &acc + &(&c.stirling_carlitz(a, n, m)? * &c.stirling_carlitz(b, m, k)?);
                    }
                    ck.check(|| format!("{label} n={n} k={k}"), &delta(f, n, k), &acc)?;
                }
            }
        }
        Ok(())
    })
}

/// `sum_m {n m}_C CC_m` is `1/L_j` when `n = r^j - 1`, else 0.
pub fn verify_cc_annihilation(c: &CarlitzNumbers, max_n: u64) -> IdentityReport {
    Checker::new("cc_annihilation", params(c).with_n(max_n)).run(|ck| {
        let f = c.field();
        for n in 0..=max_n {
            let mut acc = RatFunc::zero(f);
            for m in 0..=n {
                acc = &acc + &(&c.stirling_carlitz(StirlingKind::Second, n, m)? * &c.cauchy_carlitz(m)?);
            }
            let want = match as_r_power_minus_one(n, c.r()) {
                Some(j) => c.cache().l_rat(j as usize)?.inv()?,
                None => RatFunc::zero(f),
            };
            ck.check(|| format!("n={n}"), &want, &acc)?;
        }
        Ok(())
    })
}

/// `(-1)^j D_j / L_j^2`.
fn bernoulli_weight(cache: &CarlitzCache, j: usize) -> Result<RatFunc> {
    let l = cache.l_rat(j)?;
    Ok((&cache.d_rat(j)? * &(&l * &l).inv()?).scale(cache.field().sign(j as u64)))
}

/// `sum_m ⟦n m⟧_C BC_m` is `(-1)^j D_j / L_j^2` when `n = r^j - 1`, else 0.
pub fn verify_bc_annihilation(c: &CarlitzNumbers, max_n: u64) -> IdentityReport {
    Checker::new("bc_annihilation", params(c).with_n(max_n)).run(|ck| {
        let f = c.field();
        for n in 0..=max_n {
            let mut acc = RatFunc::zero(f);
            for m in 0..=n {
                acc = &acc + &(&c.stirling_carlitz(StirlingKind::First, n, m)? * &c.bernoulli_carlitz(m)?);
            }
            let want = match as_r_power_minus_one(n, c.r()) {
                Some(j) => bernoulli_weight(c.cache(), j as usize)?,
                None => RatFunc::zero(f),
            };
            ck.check(|| format!("n={n}"), &want, &acc)?;
        }
        Ok(())
    })
}

/// `BC_n = sum_{l} sum_{m = r^j - 1} (-1)^j Π(m) {n m}_C {m l}_C CC_l` and
/// `CC_n = sum_{l} sum_{m = r^j - 1} (-1)^j / Π(m) ⟦n m⟧_C ⟦m l⟧_C BC_l`.
pub fn verify_bc_cc_transmutation(c: &CarlitzNumbers, max_n: u64) -> IdentityReport {
    Checker::new("transmutation", params(c).with_n(max_n)).run(|ck| {
        let f = c.field();
        let r = c.r();
        for n in 0..=max_n {
            let mut bc = RatFunc::zero(f);
            let mut cc = RatFunc::zero(f);
            let mut q = 1u64;
            let mut j = 0u64;
            while q - 1 <= n {
                let m = q - 1;
                let pi = c.cache().factorial_rat(m)?;
                let sign = f.sign(j);
                let s_nm = c.stirling_carlitz(StirlingKind::Second, n, m)?;
                let f_nm = c.stirling_carlitz(StirlingKind::First, n, m)?;
                for l in 0..=m {
                    if !s_nm.is_zero() {
                        let t = &(&s_nm * &c.stirling_carlitz(StirlingKind::Second, m, l)?) * &c.cauchy_carlitz(l)?;
                        bc = &bc + &(&t * &pi).scale(sign);
                    }
                    if !f_nm.is_zero() {
                        let t = &(&f_nm * &c.stirling_carlitz(StirlingKind::First, m, l)?) * &c.bernoulli_carlitz(l)?;
                        cc = &cc + &(&t * &pi.inv()?).scale(sign);
                    }
                }
                q = match q.checked_mul(r) {
                    Some(next) => next,
                    None => break,
                };
                j += 1;
            }
            ck.check(|| format!("BC n={n}"), &c.bernoulli_carlitz(n)?, &bc)?;
            ck.check(|| format!("CC n={n}"), &c.cauchy_carlitz(n)?, &cc)?;
        }
        Ok(())
    })
}

/// Closed forms at `(r^a, r^b)` against the series values, for `r^a <= max_n`.
pub fn verify_closed_forms(c: &CarlitzNumbers, max_n: u64) -> IdentityReport {
    Checker::new("closed_forms", params(c).with_n(max_n)).run(|ck| {
        let r = c.r();
        let mut a = 0u32;
        while r.pow(a) <= max_n {
            for b in 0..=a {
                for kind in [StirlingKind::First, StirlingKind::Second] {
                    let want = c.stirling_carlitz(kind, r.pow(a), r.pow(b))?;
                    let got = c.stirling_carlitz_closed_form(kind, a, b)?;
                    ck.check(|| format!("{kind:?} a={a} b={b}"), &want, &got)?;
                }
            }
            a += 1;
        }
        Ok(())
    })
}

/// Both Stirling-Carlitz numbers vanish whenever `λ(n) > λ(m)`, `1 <= m <= n <= max_n`.
pub fn verify_digit_vanishing(c: &CarlitzNumbers, max_n: u64) -> IdentityReport {
    Checker::new("digit_vanishing", params(c).with_n(max_n)).run(|ck| {
        for n in 1..=max_n {
            for m in 1..=n {
                ck.check_true(|| format!("n={n} m={m}"), c.check_digit_vanishing(n, m)?)?;
            }
        }
        Ok(())
    })
}

/// The digit and floor formulas for `Π(n)` agree for `n <= max_n`, and for
/// `d <= 3`: `Π(r^d - 1) L_d = D_d` and `Π(r^d - 1) = (D_0 ... D_{d-1})^{r-1}`.
pub fn verify_factorial(cache: &CarlitzCache, max_n: u64) -> IdentityReport {
    Checker::new("factorial", ReportParams::field(cache.field()).with_n(max_n)).run(|ck| {
        for n in 0..=max_n {
            ck.check(
                || format!("n={n}"),
                &cache.carlitz_factorial(n)?,
                &cache.carlitz_factorial_alt(n)?,
            )?;
        }
        let r = cache.r();
        for d in 0..=3u32 {
            let pi = cache.carlitz_factorial(r.pow(d) - 1)?;
            let lhs = &pi * &cache.l_of(d as usize)?;
            ck.check(|| format!("times L d={d}"), &cache.d_of(d as usize)?, &lhs)?;
            let mut prod = Poly::one(cache.field());
            for i in 0..d as usize {
                prod = &prod * &cache.d_of(i)?;
            }
            ck.check(|| format!("tower product d={d}"), &prod.pow(r - 1), &pi)?;
        }
        Ok(())
    })
}

/// `e_C(Tz) = T e_C(z) + e_C(z)^r`, `T log_C(z) = log_C(Tz) + log_C(z^r)`,
/// and `e_C ∘ log_C = log_C ∘ e_C = z`, coefficientwise to `prec`.
pub fn verify_series_functional_equations(cache: &CarlitzCache, prec: usize) -> IdentityReport {
    let f = cache.field().clone();
    Checker::new("functional_equations", ReportParams::field(&f).with_prec(prec)).run(|ck| {
        let t = RatFunc::from_poly(Poly::t(&f));
        let e = carlitz_exp_series(cache, prec)?;
        let l = carlitz_log_series(cache, prec)?;
        let z = Series::z(&f, prec);
        let zr = Series::monomial(&f, RatFunc::one(&f), cache.r() as usize, prec);

        let mut compare = |label: &str, lhs: &Series<RatFunc>, rhs: &Series<RatFunc>| -> Step {
            for n in 0..prec {
                ck.check(|| format!("{label} z^{n}"), lhs.coeff(n), rhs.coeff(n))?;
            }
            Ok(())
        };
        compare("exp", &e.scale_argument(&t), &(&e.scale(&t) + &e.pow(cache.r())))?;
        compare("log", &l.scale(&t), &(&l.scale_argument(&t) + &l.compose(&zr)?))?;
        compare("exp of log", &e.compose(&l)?, &z)?;
        compare("log of exp", &l.compose(&e)?, &z)?;
        Ok(())
    })
}

/// For `h = z f'(z) / f(z)`: `h_{r^k - 1} = f_0^{r^k} g_k` with `g` the
/// compositional inverse, and `prod_{j=1}^{l} h_{r^k - r^{k_j}} = h_{sum (r^k - r^{k_j})}`
/// for `1 <= l <= r`, `0 <= k_j <= k <= k_max`, whenever the index is below `prec`.
pub fn verify_h_relations(f: &LinearSeries, prec: usize, k_max: u32) -> IdentityReport {
    verify_h_relations_labeled(f, prec, k_max, None)
}

fn verify_h_relations_labeled(f: &LinearSeries, prec: usize, k_max: u32, subject: Option<String>) -> IdentityReport {
    let field = f.field().clone();
    let params = ReportParams {
        k_max: Some(k_max),
        subject,
        ..ReportParams::field(&field).with_prec(prec)
    };
    Checker::new("h_relations", params).run(|ck| {
        let r = field.r();
        let h = f.h_coefficients(prec)?;
        let levels = {
            let mut i = 0;
            while r.checked_pow(i as u32).is_some_and(|q| q <= prec as u64) {
                i += 1;
            }
            i
        };
        let g = f.inverse(levels)?;
        let f0 = f.coeff(0);
        for k in 0..levels {
            let idx = (r.pow(k as u32) - 1) as usize;
            if idx >= prec {
                break;
            }
            let want = &f0.frobenius(k as u32) * &g.coeff(k);
            ck.check(|| format!("inverse k={k}"), &want, h.coeff(idx))?;
        }
        for k in 0..=k_max {
            let rk = r.pow(k);
            for l in 1..=r as usize {
                for digits in non_increasing(l, k) {
                    let total: u64 = digits.iter().map(|&kj| rk - r.pow(kj)).sum();
                    if total as usize >= prec {
                        continue;
                    }
                    let mut prod = RatFunc::one(&field);
                    for &kj in &digits {
                        prod = &prod * h.coeff((rk - r.pow(kj)) as usize);
                    }
                    ck.check(
                        || format!("product k={k} k_j={digits:?}"),
                        h.coeff(total as usize),
                        &prod,
                    )?;
                }
            }
        }
        Ok(())
    })
}

/// Every non-increasing `len`-tuple with entries in `0..=max`.
fn non_increasing(len: usize, max: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in non_increasing(len - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The three routes to `CC_n`, the two routes to `BC_n`, and the two routes
/// to `CC_n^(m)` for `m <= 3`, all agree for `1 <= n <= max_n`.
pub fn verify_cauchy_agreement(c: &CarlitzNumbers, max_n: u64) -> IdentityReport {
    Checker::new("cauchy_agreement", params(c).with_n(max_n)).run(|ck| {
        for n in 0..=max_n {
            let cc = c.cauchy_carlitz(n)?;
            ck.check(|| format!("CC direct n={n}"), &cc, &c.cauchy_carlitz_direct(n)?)?;
            if n >= 1 {
                ck.check(|| format!("CC compositions n={n}"), &cc, &c.cauchy_carlitz_ht(n)?)?;
            }
            ck.check(
                || format!("BC n={n}"),
                &c.bernoulli_carlitz(n)?,
                &c.bernoulli_carlitz_direct(n)?,
            )?;
            ck.check(
                || format!("CC order 1 n={n}"),
                &cc,
                &c.cauchy_carlitz_order(n, 1, OrderMethod::Direct)?,
            )?;
        }
        for m in 1..=3 {
            for n in 1..=max_n.min(12) {
                ck.check(
                    || format!("CC order {m} n={n}"),
                    &c.cauchy_carlitz_order(n, m, OrderMethod::Direct)?,
                    &c.cauchy_carlitz_order(n, m, OrderMethod::Compositions)?,
                )?;
            }
        }
        Ok(())
    })
}

/// `CC_n = BC_n = 0` unless `(r - 1) | n`.
pub fn verify_support(c: &CarlitzNumbers, max_n: u64) -> IdentityReport {
    Checker::new("support", params(c).with_n(max_n)).run(|ck| {
        let zero = RatFunc::zero(c.field());
        for n in (0..=max_n).filter(|n| n % (c.r() - 1) != 0) {
            ck.check(|| format!("CC n={n}"), &zero, &c.cauchy_carlitz(n)?)?;
            ck.check(|| format!("BC n={n}"), &zero, &c.bernoulli_carlitz(n)?)?;
        }
        Ok(())
    })
}

/// Zero first column, unit diagonal, zero upper triangle for both kinds.
pub fn verify_boundary_rows(c: &CarlitzNumbers, max_n: u64) -> IdentityReport {
    Checker::new("boundary_rows", params(c).with_n(max_n)).run(|ck| {
        let f = c.field();
        for kind in [StirlingKind::First, StirlingKind::Second] {
            for n in 0..=max_n {
                ck.check(
                    || format!("{kind:?} n={n} diagonal"),
                    &RatFunc::one(f),
                    &c.stirling_carlitz(kind, n, n)?,
                )?;
                ck.check(
                    || format!("{kind:?} n={n} above"),
                    &RatFunc::zero(f),
                    &c.stirling_carlitz(kind, n, n + 1)?,
                )?;
                if n >= 1 {
                    ck.check(
                        || format!("{kind:?} n={n} k=0"),
                        &RatFunc::zero(f),
                        &c.stirling_carlitz(kind, n, 0)?,
                    )?;
                }
            }
        }
        Ok(())
    })
}

/// `H^(e)(log_C(z)/z)` at `z = 0` is `(-1)^i / L_i` when `e = r^i - 1`, else 0.
pub fn verify_log_pattern(cache: &CarlitzCache, e_max: usize) -> IdentityReport {
    let f = cache.field().clone();
    Checker::new("log_pattern", ReportParams::field(&f).with_n(e_max as u64)).run(|ck| {
        let g = carlitz_log_over_z(cache, e_max + 1)?;
        for e in 0..=e_max {
            let at_zero = g.ht_derivative(e)?.coeff(0).clone();
            let want = match as_r_power_minus_one(e as u64, cache.r()) {
                Some(i) => cache.l_rat(i as usize)?.inv()?.scale(f.sign(i as u64)),
                None => RatFunc::zero(&f),
            };
            ck.check(|| format!("e={e}"), &want, &at_zero)?;
        }
        Ok(())
    })
}

/// A random element of `F_r(T)`: numerator of degree at most 2 over a monic
/// denominator of degree at most 1.
pub fn random_ratfunc(rng: &mut impl Rng, field: &Arc<FieldParams>) -> RatFunc {
    let r = field.r();
    let el = |rng: &mut dyn rand::RngCore| field.element(rng.gen_range(0..r)).unwrap();
    let num: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| el(rng)).collect();
    let mut den = vec![el(rng)];
    if rng.gen_bool(0.5) {
        den.push(field.one());
    } else {
        den[0] = field.one();
    }
    RatFunc::new(Poly::new(field.clone(), num), Poly::new(field.clone(), den)).unwrap()
}

pub fn random_rational(rng: &mut impl Rng) -> BigRational {
    crate::exact_arith::rat(rng.gen_range(-6..=6), rng.gen_range(1..=6))
}

fn random_series<C: Coeff>(
    rng: &mut ChaCha8Rng,
    ctx: &C::Ctx,
    prec: usize,
    gen: &impl Fn(&mut ChaCha8Rng) -> C,
) -> Series<C> {
    let mut coeffs: Vec<C> = (0..prec).map(|_| gen(rng)).collect();
    while coeffs[0].is_zero() {
        coeffs[0] = gen(rng);
    }
    Series::new(ctx.clone(), coeffs)
}

fn ht_rules_body<C: Coeff>(
    ck: &mut Checker,
    ctx: &C::Ctx,
    samples: usize,
    n_max: usize,
    seed: u64,
    gen: impl Fn(&mut ChaCha8Rng) -> C,
) -> Step {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prec = n_max + 4;
    for s in 0..samples {
        let f = random_series(&mut rng, ctx, prec, &gen);
        let g = random_series(&mut rng, ctx, prec, &gen);
        let inv = f.reciprocal()?;
        for n in 1..=n_max {
            let direct = inv.ht_derivative(n)?;
            for rule in [QuotientRule::PositiveParts, QuotientRule::WeightedNonnegative] {
                let rhs = ht_quotient_check(&f, n, rule)?;
                for i in 0..rhs.prec() {
                    ck.check(
                        || format!("sample={s} {rule:?} n={n} z^{i}"),
                        direct.coeff(i),
                        rhs.coeff(i),
                    )?;
                }
            }
            let product = (&f * &g).ht_derivative(n)?;
            let rhs = ht_product_rule(&[f.clone(), g.clone()], n)?;
            for i in 0..rhs.prec() {
                ck.check(
                    || format!("sample={s} product n={n} z^{i}"),
                    product.coeff(i),
                    rhs.coeff(i),
                )?;
            }
        }
    }
    Ok(())
}

/// Product rule and both quotient rules against direct differentiation, for
/// `samples` seeded random series over `F_r(T)` and `n <= n_max`.
pub fn verify_ht_rules(field: &Arc<FieldParams>, samples: usize, n_max: usize, seed: u64) -> IdentityReport {
    Checker::new("ht_rules", ReportParams::field(field).with_n(n_max as u64))
        .run(|ck| ht_rules_body(ck, field, samples, n_max, seed, |rng| random_ratfunc(rng, field)))
}

/// As [`verify_ht_rules`], over the rationals.
pub fn verify_ht_rules_rational(samples: usize, n_max: usize, seed: u64) -> IdentityReport {
    Checker::new("ht_rules_rational", ReportParams::default().with_n(n_max as u64))
        .run(|ck| ht_rules_body(ck, &Rationals, samples, n_max, seed, random_rational))
}

/// All four routes to `c_n` agree for `1 <= n <= max_n`, and match the
/// poly-Cauchy numbers of index 1.
pub fn verify_classical_cauchy(c: &ClassicalNumbers, max_n: u64) -> IdentityReport {
    Checker::new("classical_cauchy", ReportParams::default().with_n(max_n)).run(|ck| {
        for n in 1..=max_n {
            let want = c.cauchy_classical(n, CauchyMethod::Series)?;
            for m in CauchyMethod::ALL {
                ck.check_rational(|| format!("{m:?} n={n}"), &want, &c.cauchy_classical(n, m)?)?;
            }
            ck.check_rational(|| format!("poly-Cauchy n={n}"), &want, &c.poly_cauchy(n, 1)?)?;
        }
        Ok(())
    })
}

/// All four routes to `c_n^(m)` agree for `1 <= n <= max_n`, `m <= 3`, and `c_n^(1) = c_n`.
pub fn verify_classical_cauchy_order(c: &ClassicalNumbers, max_n: u64) -> IdentityReport {
    Checker::new("classical_cauchy_order", ReportParams::default().with_n(max_n)).run(|ck| {
        for m in 1..=3 {
            for n in 1..=max_n {
                let want = c.cauchy_order_classical(n, m, CauchyOrderMethod::Series)?;
                for method in CauchyOrderMethod::ALL {
                    ck.check_rational(
                        || format!("{method:?} m={m} n={n}"),
                        &want,
                        &c.cauchy_order_classical(n, m, method)?,
                    )?;
                }
            }
        }
        for n in 1..=max_n {
            ck.check_rational(
                || format!("order 1 n={n}"),
                &c.cauchy_classical(n, CauchyMethod::Stirling)?,
                &c.cauchy_order_classical(n, 1, CauchyOrderMethod::Stirling)?,
            )?;
        }
        Ok(())
    })
}

/// `sum_m (-1)^{n-m} ⟦n m⟧ {m k} = δ_{n,k}` and `sum_m (-1)^{m-k} {n m} ⟦m k⟧ = δ_{n,k}`.
pub fn verify_classical_orthogonality(c: &ClassicalNumbers, max_n: u64) -> IdentityReport {
    Checker::new("classical_orthogonality", ReportParams::default().with_n(max_n)).run(|ck| {
        let sign = |k: u64| {
            if k.is_multiple_of(2) {
                <BigRational as One>::one()
            } else {
                -<BigRational as One>::one()
            }
        };
        for n in 0..=max_n {
            for k in 0..=n {
                let mut a = <BigRational as Zero>::zero();
                let mut b = <BigRational as Zero>::zero();
                for m in k..=n {
                    a += sign(n - m)
                        * c.stirling_classical(StirlingKind::First, n, m)
                        * c.stirling_classical(StirlingKind::Second, m, k);
                    b += sign(m - k)
                        * c.stirling_classical(StirlingKind::Second, n, m)
                        * c.stirling_classical(StirlingKind::First, m, k);
                }
                let want = if n == k {
                    <BigRational as One>::one()
                } else {
                    <BigRational as Zero>::zero()
                };
                ck.check_rational(|| format!("first-second n={n} k={k}"), &want, &a)?;
                ck.check_rational(|| format!("second-first n={n} k={k}"), &want, &b)?;
            }
        }
        Ok(())
    })
}

/// The composition sum of `1/prod(i_j + 1)` equals `k!/(n+k)! ⟦n+k, k⟧`.
pub fn verify_stirling_sum(c: &ClassicalNumbers, max_n: u64, k_max: u64) -> IdentityReport {
    Checker::new("stirling_sum", ReportParams::default().with_n(max_n)).run(|ck| {
        for n in 0..=max_n {
            for k in 1..=k_max {
                let (lhs, rhs) = c.stirling_sum_sides(n, k)?;
                ck.check_rational(|| format!("n={n} k={k}"), &rhs, &lhs)?;
            }
        }
        Ok(())
    })
}

/// `sum_m {n m} 𝔠_m^(k) = 1/(n+1)^k` for `k <= 2`.
pub fn verify_poly_cauchy(c: &ClassicalNumbers, max_n: u64) -> IdentityReport {
    Checker::new("poly_cauchy", ReportParams::default().with_n(max_n)).run(|ck| {
        for k in 1..=2u64 {
            for n in 0..=max_n {
                let mut acc = <BigRational as Zero>::zero();
                for m in 0..=n {
                    acc += c.stirling_classical(StirlingKind::Second, n, m) * c.poly_cauchy(m, k)?;
                }
                let want = BigRational::new(1.into(), num_bigint::BigInt::from(n + 1).pow(k as u32));
                ck.check_rational(|| format!("n={n} k={k}"), &want, &acc)?;
            }
        }
        Ok(())
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// `(p, e)` pairs.
    pub fields: Vec<(u64, u32)>,
    pub max_n: u64,
    pub prec: usize,
    /// Largest `k` in the `h`-coefficient product relations.
    pub k_max: u32,
    /// Random series per domain for the derivative rules and `h` relations.
    pub samples: usize,
    pub seed: u64,
    pub include_classical: bool,
    /// Run only this identity.
    pub only: Option<String>,
    pub tower_cap: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            fields: vec![(2, 1), (3, 1)],
            max_n: 16,
            prec: 33,
            k_max: 2,
            samples: 3,
            seed: 20170101,
            include_classical: true,
            only: None,
            tower_cap: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_n < 1 {
            return Err(Error::Config("bound too small: max_n must be at least 1".into()));
        }
        if self.prec < 2 {
            return Err(Error::Config("precision must be at least 2".into()));
        }
        if let Some(id) = &self.only {
            if !FIELD_IDENTITIES.contains(&id.as_str()) && !CLASSICAL_IDENTITIES.contains(&id.as_str()) {
                return Err(Error::Config(format!("unknown identity `{id}`")));
            }
        }
        Ok(())
    }

    fn wants(&self, id: &str) -> bool {
        self.only.as_deref().is_none_or(|o| o == id)
    }
}

/// Precision that reaches every index in the product relations up to `k_max`.
fn h_prec(r: u64, k_max: u32, prec: usize) -> usize {
    let reach = r.saturating_mul(r.saturating_pow(k_max).saturating_sub(1)) as usize + 1;
    prec.max(reach)
}

fn random_linear(rng: &mut ChaCha8Rng, field: &Arc<FieldParams>, order: usize) -> LinearSeries {
    let mut coeffs: Vec<RatFunc> = (0..order).map(|_| random_ratfunc(rng, field)).collect();
    while coeffs[0].is_zero() {
        coeffs[0] = random_ratfunc(rng, field);
    }
    LinearSeries::new(field.clone(), coeffs).unwrap()
}

fn field_reports(cfg: &SuiteConfig, field: Arc<FieldParams>) -> Result<Vec<IdentityReport>> {
    let cache = Arc::new(match cfg.tower_cap {
        Some(cap) => CarlitzCache::with_cap(field.clone(), cap),
        None => CarlitzCache::new(field.clone()),
    });
    let c = CarlitzNumbers::new(cache.clone());
    let n = cfg.max_n;
    let mut out = Vec::new();
    let mut push = |id: &str, run: &mut dyn FnMut() -> Vec<IdentityReport>| {
        if cfg.wants(id) {
            out.extend(run());
        }
    };
    push("orthogonality", &mut || vec![verify_orthogonality(&c, n)]);
    push("cc_annihilation", &mut || vec![verify_cc_annihilation(&c, n)]);
    push("bc_annihilation", &mut || vec![verify_bc_annihilation(&c, n)]);
    push("transmutation", &mut || vec![verify_bc_cc_transmutation(&c, n)]);
    push("closed_forms", &mut || vec![verify_closed_forms(&c, n)]);
    push("digit_vanishing", &mut || vec![verify_digit_vanishing(&c, n)]);
    push("factorial", &mut || vec![verify_factorial(&cache, n)]);
    push("functional_equations", &mut || {
        vec![verify_series_functional_equations(&cache, cfg.prec)]
    });
    push("h_relations", &mut || {
        let r = field.r();
        let prec = h_prec(r, cfg.k_max, cfg.prec);
        let order = {
            let mut i = 0u32;
            while r.checked_pow(i).is_some_and(|q| q <= prec as u64) {
                i += 1;
            }
            i as usize
        };
        let mut series = Vec::new();
        match (carlitz_exp_linear(&cache, order), carlitz_log_linear(&cache, order)) {
            (Ok(e), Ok(l)) => {
                series.push(e);
                series.push(l);
            }
            (Err(err), _) | (_, Err(err)) => {
                return vec![Checker::new("h_relations", ReportParams::field(&field)).run(|_| Err(err.into()))];
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ field.r());
        for _ in 0..cfg.samples {
            series.push(random_linear(&mut rng, &field, order));
        }
        series
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let subject = match i {
                    0 => "e_C".to_string(),
                    1 => "log_C".to_string(),
                    _ => format!("random#{}", i - 1),
                };
                verify_h_relations_labeled(f, prec, cfg.k_max, Some(subject))
            })
            .collect()
    });
    push("cauchy_agreement", &mut || vec![verify_cauchy_agreement(&c, n)]);
    push("support", &mut || vec![verify_support(&c, n)]);
    push("boundary_rows", &mut || vec![verify_boundary_rows(&c, n)]);
    push("ht_rules", &mut || {
        vec![verify_ht_rules(&field, cfg.samples, 6, cfg.seed)]
    });
    push("log_pattern", &mut || {
        vec![verify_log_pattern(&cache, (2 * n as usize).max(cfg.prec - 1))]
    });
    Ok(out)
}

/// Every selected verifier over every configured field, then the classical
/// identities. Deterministic apart from `elapsed_secs`.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<IdentityReport>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &(p, e) in &cfg.fields {
        let field = make_field(p, e, None)?;
        out.extend(field_reports(cfg, field)?);
    }
    if cfg.include_classical {
        let c = ClassicalNumbers::new();
        let n = cfg.max_n.min(15);
        if cfg.wants("classical_cauchy") {
            out.push(verify_classical_cauchy(&c, n));
        }
        if cfg.wants("classical_cauchy_order") {
            out.push(verify_classical_cauchy_order(&c, n.min(12)));
        }
        if cfg.wants("classical_orthogonality") {
            out.push(verify_classical_orthogonality(&c, n));
        }
        if cfg.wants("stirling_sum") {
            out.push(verify_stirling_sum(&c, n.min(10), 5));
        }
        if cfg.wants("poly_cauchy") {
            out.push(verify_poly_cauchy(&c, n.min(10)));
        }
        if cfg.wants("ht_rules_rational") {
            out.push(verify_ht_rules_rational(cfg.samples, 6, cfg.seed));
        }
    }
    Ok(out)
}
