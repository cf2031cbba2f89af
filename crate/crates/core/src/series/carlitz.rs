use super::{LinearSeries, Series};
use crate::carlitz_basics::CarlitzCache;
use crate::error::Result;
use crate::exact_arith::RatFunc;

/// Indices `i` with `r^i + shift < prec`, i.e. the terms that fit.
fn levels(r: u64, prec: usize, shift: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut q = 1usize;
    let mut i = 0usize;
    while q - shift < prec {
        out.push((i, q - shift));
        match q.checked_mul(r as usize) {
            Some(next) => q = next,
            None => break,
        }
        i += 1;
    }
    out
}

fn exp_coeff(cache: &CarlitzCache, i: usize) -> Result<RatFunc> {
    cache.d_rat(i)?.inv()
}

fn log_coeff(cache: &CarlitzCache, i: usize) -> Result<RatFunc> {
    let f = cache.field();
    Ok(cache.l_rat(i)?.inv()?.scale(f.sign(i as u64)))
}

fn build(
    cache: &CarlitzCache,
    prec: usize,
    shift: usize,
    coeff: fn(&CarlitzCache, usize) -> Result<RatFunc>,
) -> Result<Series<RatFunc>> {
    let mut s = Series::zero(cache.field(), prec);
    for (i, e) in levels(cache.r(), prec, shift) {
        s.set_coeff(e, coeff(cache, i)?);
    }
    Ok(s)
}

/// `e_C(z) = sum z^{r^i} / D_i`.
pub fn carlitz_exp_series(cache: &CarlitzCache, prec: usize) -> Result<Series<RatFunc>> {
    build(cache, prec, 0, exp_coeff)
}

/// `log_C(z) = sum (-1)^i z^{r^i} / L_i`.
pub fn carlitz_log_series(cache: &CarlitzCache, prec: usize) -> Result<Series<RatFunc>> {
    build(cache, prec, 0, log_coeff)
}

/// `e_C(z) / z = sum z^{r^i - 1} / D_i`.
pub fn carlitz_exp_over_z(cache: &CarlitzCache, prec: usize) -> Result<Series<RatFunc>> {
    build(cache, prec, 1, exp_coeff)
}

/// `log_C(z) / z = sum (-1)^i z^{r^i - 1} / L_i`.
pub fn carlitz_log_over_z(cache: &CarlitzCache, prec: usize) -> Result<Series<RatFunc>> {
    build(cache, prec, 1, log_coeff)
}

pub fn carlitz_exp_linear(cache: &CarlitzCache, order: usize) -> Result<LinearSeries> {
    let coeffs = (0..order).map(|i| exp_coeff(cache, i)).collect::<Result<_>>()?;
    LinearSeries::new(cache.field().clone(), coeffs)
}

pub fn carlitz_log_linear(cache: &CarlitzCache, order: usize) -> Result<LinearSeries> {
    let coeffs = (0..order).map(|i| log_coeff(cache, i)).collect::<Result<_>>()?;
    LinearSeries::new(cache.field().clone(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{make_field, Coeff};

    #[test]
    fn truncations() {
        let cache = CarlitzCache::new(make_field(3, 1, None).unwrap());
        let e = carlitz_exp_series(&cache, 3).unwrap();
        assert_eq!(e.prec(), 3);
        assert!(e.coeff(1).is_one());
        assert!(Coeff::is_zero(e.coeff(0)) && Coeff::is_zero(e.coeff(2)));

        let l = carlitz_log_series(&cache, 4).unwrap();
        assert_eq!(l.coeff(3).to_string(), "2 / (T^3 + 2*T)");

        let e10 = carlitz_exp_series(&cache, 10).unwrap();
        let nonzero: Vec<usize> = (0..10).filter(|&n| !Coeff::is_zero(e10.coeff(n))).collect();
        assert_eq!(nonzero, vec![1, 3, 9]);
        assert_eq!(*e10.coeff(9), cache.d_rat(2).unwrap().inv().unwrap());
    }
}
