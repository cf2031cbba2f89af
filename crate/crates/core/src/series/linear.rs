//! `F_r`-linear series `f(z) = sum_i f_i z^{r^i}` over `F_r(T)`.

use std::sync::Arc;

use super::Series;
use crate::error::{Error, Result};
use crate::exact_arith::{FieldParams, RatFunc};

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSeries {
    field: Arc<FieldParams>,
    coeffs: Vec<RatFunc>,
}

impl LinearSeries {
    pub fn new(field: Arc<FieldParams>, coeffs: Vec<RatFunc>) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != &field) {
            return Err(Error::MixedFields);
        }
        Ok(LinearSeries { field, coeffs })
    }

    pub fn field(&self) -> &Arc<FieldParams> {
        &self.field
    }

    /// Number of stored terms.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// `f_i`, zero beyond the stored terms.
    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    /// Dense expansion truncated at `prec`, optionally divided by `z^shift`.
    fn expand(&self, prec: usize, shift: usize) -> Series<RatFunc> {
        let r = self.field.r() as usize;
        let mut s = Series::zero(&self.field, prec);
        let mut q = 1usize;
        for c in &self.coeffs {
            if q - shift >= prec {
                break;
            }
            s.set_coeff(q - shift, c.clone());
            q = match q.checked_mul(r) {
                Some(next) => next,
                None => break,
            };
        }
        s
    }

    pub fn to_series(&self, prec: usize) -> Series<RatFunc> {
        self.expand(prec, 0)
    }

    /// Compositional inverse `g` with `f(g(z)) = z` through `order` terms:
    /// `f_0 g_i = -sum_{j=1}^{i} f_j g_{i-j}^{r^j}`.
    pub fn inverse(&self, order: usize) -> Result<LinearSeries> {
        let f0 = self.coeff(0);
        let f0_inv = f0.inv().map_err(|_| Error::ZeroConstantTerm)?;
        let mut g: Vec<RatFunc> = Vec::with_capacity(order);
        for i in 0..order {
            if i == 0 {
                g.push(f0_inv.clone());
                continue;
            }
            let mut acc = RatFunc::zero(&self.field);
            for j in 1..=i {
                let fj = self.coeff(j);
                if fj.is_zero() {
                    continue;
                }
                acc = &acc + &(&fj * &g[i - j].frobenius(j as u32));
            }
            g.push(-&(&acc * &f0_inv));
        }
        LinearSeries::new(self.field.clone(), g)
    }

    /// `h(z) = z f'(z) / f(z)`. In characteristic `p` the derivative of
    /// `z^{r^i}` vanishes for `i >= 1`, so `h = f_0 z / f(z)`.
    pub fn h_coefficients(&self, prec: usize) -> Result<Series<RatFunc>> {
        let f0 = self.coeff(0);
        if f0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(self.expand(prec, 1).reciprocal()?.scale(&f0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz_basics::CarlitzCache;
    use crate::exact_arith::make_field;
    use crate::series::{carlitz_exp_linear, carlitz_log_linear};

    #[test]
    fn exp_inverts_to_log() {
        let cache = CarlitzCache::new(make_field(3, 1, None).unwrap());
        let e = carlitz_exp_linear(&cache, 4).unwrap();
        let l = carlitz_log_linear(&cache, 4).unwrap();
        assert_eq!(e.inverse(4).unwrap(), l);
        assert_eq!(l.inverse(4).unwrap(), e);
    }

    #[test]
    fn trivial_inverses() {
        let f3 = make_field(3, 1, None).unwrap();
        let id = LinearSeries::new(f3.clone(), vec![RatFunc::one(&f3)]).unwrap();
        let g = id.inverse(3).unwrap();
        assert!(g.coeff(0).is_one() && g.coeff(1).is_zero() && g.coeff(2).is_zero());

        let two = LinearSeries::new(f3.clone(), vec![RatFunc::from_int(&f3, 2)]).unwrap();
        assert_eq!(two.inverse(1).unwrap().coeff(0), RatFunc::from_int(&f3, 2));

        let bad = LinearSeries::new(f3.clone(), vec![RatFunc::zero(&f3), RatFunc::one(&f3)]).unwrap();
        assert_eq!(bad.inverse(2).unwrap_err(), Error::ZeroConstantTerm);
        assert_eq!(bad.h_coefficients(4).unwrap_err(), Error::ZeroConstantTerm);
    }

    #[test]
    fn composition_is_identity() {
        let f3 = make_field(3, 1, None).unwrap();
        let t = RatFunc::from_poly(crate::exact_arith::Poly::t(&f3));
        let f = LinearSeries::new(
            f3.clone(),
            vec![RatFunc::from_int(&f3, 2), t.clone(), &t + &RatFunc::one(&f3)],
        )
        .unwrap();
        let g = f.inverse(3).unwrap();
        let prec = 27;
        let comp = f.to_series(prec).compose(&g.to_series(prec)).unwrap();
        assert_eq!(comp, Series::z(&f3, prec));
    }
}
