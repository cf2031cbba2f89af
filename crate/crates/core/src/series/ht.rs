//! Closed-form product and quotient rules for Hasse-Teichmüller derivatives,
//! evaluated term by term so they can be checked against direct differentiation.

use super::Series;
use crate::error::{Error, Result};
use crate::exact_arith::Coeff;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientRule {
    /// Compositions of `n` into `k` positive parts.
    PositiveParts,
    /// Compositions into `k` nonnegative parts, weighted by `C(n+1, k+1)`.
    WeightedNonnegative,
}

/// Visits every ordered `k`-tuple of integers `>= min_part` summing to `n`.
fn for_each_composition(n: usize, k: usize, min_part: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(rest: usize, slots: usize, min_part: usize, buf: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if slots == 0 {
            if rest == 0 {
                visit(buf);
            }
            return;
        }
        if rest < min_part * slots {
            return;
        }
        for part in min_part..=rest - min_part * (slots - 1) {
            buf.push(part);
            rec(rest - part, slots - 1, min_part, buf, visit);
            buf.pop();
        }
    }
    rec(n, k, min_part, &mut Vec::with_capacity(k), visit);
}

/// Right-hand side of the quotient rule for `H^(n)(1/f)`, as a series of
/// precision `prec - n`.
pub fn ht_quotient_check<C: Coeff>(f: &Series<C>, n: usize, rule: QuotientRule) -> Result<Series<C>> {
    let prec = f.prec();
    if n < 1 || n >= prec {
        return Err(Error::OrderExceedsPrecision { order: n, prec });
    }
    let ctx = f.ctx().clone();
    let inv = f.reciprocal()?;
    let derivs: Vec<Series<C>> = (0..=n).map(|i| f.ht_derivative(i)).collect::<Result<_>>()?;
    let out_prec = prec - n;
    let min_part = match rule {
        QuotientRule::PositiveParts => 1,
        QuotientRule::WeightedNonnegative => 0,
    };

    let mut total = Series::zero(&ctx, out_prec);
    let mut inv_pow = inv.truncate(out_prec);
    for k in 1..=n {
        inv_pow = &inv_pow * &inv;
        let mut inner = Series::zero(&ctx, out_prec);
        for_each_composition(n, k, min_part, &mut |parts| {
            let mut prod = Series::one(&ctx, out_prec);
            for &i in parts {
                prod = &prod * &derivs[i];
            }
            inner = &inner + &prod;
        });
        let mut weight = C::sign(&ctx, k as u64);
        if rule == QuotientRule::WeightedNonnegative {
            weight = weight.times(&C::binomial(&ctx, n as u64 + 1, k as u64 + 1));
        }
        total = &total + &(&inv_pow * &inner).scale(&weight);
    }
    Ok(total)
}

/// Right-hand side of the product rule `sum_{i_1+...+i_k=n} H^(i_1)(f_1) ... H^(i_k)(f_k)`.
pub fn ht_product_rule<C: Coeff>(factors: &[Series<C>], n: usize) -> Result<Series<C>> {
    let Some(first) = factors.first() else {
        return Err(Error::Domain("product rule needs at least one factor".into()));
    };
    let prec = factors.iter().map(Series::prec).min().unwrap();
    if n >= prec {
        return Err(Error::OrderExceedsPrecision { order: n, prec });
    }
    let ctx = first.ctx().clone();
    let derivs: Vec<Vec<Series<C>>> = factors
        .iter()
        .map(|f| (0..=n).map(|i| f.ht_derivative(i)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut total = Series::zero(&ctx, prec - n);
    for_each_composition(n, factors.len(), 0, &mut |parts| {
        let mut prod = Series::one(&ctx, prec - n);
        for (j, &i) in parts.iter().enumerate() {
            prod = &prod * &derivs[j][i];
        }
        total = &total + &prod;
    });
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{rat, BigRational, Rationals};

    #[test]
    fn compositions_count() {
        let mut count = 0;
        for_each_composition(6, 3, 1, &mut |_| count += 1);
        assert_eq!(count, 10); // C(5, 2)
        count = 0;
        for_each_composition(4, 3, 0, &mut |_| count += 1);
        assert_eq!(count, 15); // C(6, 2)
    }

    #[test]
    fn second_derivative_of_geometric_series() {
        let f = Series::new(
            Rationals,
            vec![rat(1, 1), rat(-1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
        );
        for rule in [QuotientRule::PositiveParts, QuotientRule::WeightedNonnegative] {
            let rhs = ht_quotient_check(&f, 2, rule).unwrap();
            // H^(2)(sum z^m) = sum C(m, 2) z^{m-2}
            let want: Vec<BigRational> = (2..6).map(|m| rat(m * (m - 1) / 2, 1)).collect();
            assert_eq!(rhs.coeffs(), &want[..]);
        }
    }
}
