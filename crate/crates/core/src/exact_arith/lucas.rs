use num_bigint::BigUint;
use num_traits::One;

/// `C(m, n) mod p` by Lucas' theorem: the product of digit-wise binomials in base `p`.
pub fn binomial_mod_p(mut m: u64, mut n: u64, p: u64) -> u64 {
    if n > m {
        return 0;
    }
    let mut acc = 1u64;
    while n > 0 || m > 0 {
        let (mi, ni) = (m % p, n % p);
        if ni > mi {
            return 0;
        }
        acc = acc * small_binomial_mod(mi, ni, p) % p;
        m /= p;
        n /= p;
    }
    acc
}

/// `C(m, n) mod p` for `m < p`, via the multiplicative formula and a modular inverse.
fn small_binomial_mod(m: u64, n: u64, p: u64) -> u64 {
    let n = n.min(m - n);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..n {
        num = num * ((m - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * pow_mod(den, p - 2, p) % p
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Exact `C(m, n)`.
pub fn binomial_big(m: u64, n: u64) -> BigUint {
    if n > m {
        return BigUint::default();
    }
    let n = n.min(m - n);
    let mut acc = BigUint::one();
    for i in 0..n {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// `(sum parts)! / prod(parts!)` as an exact integer.
pub fn multinomial_big(parts: &[u64]) -> BigUint {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &k in parts {
        total += k;
        acc *= binomial_big(total, k);
    }
    acc
}

/// Multinomial coefficient reduced mod `p`, as a product of Lucas binomials.
pub fn multinomial_mod_p(parts: &[u64], p: u64) -> u64 {
    let mut total = 0u64;
    let mut acc = 1u64;
    for &k in parts {
        total += k;
        acc = acc * binomial_mod_p(total, k, p) % p;
        if acc == 0 {
            break;
        }
    }
    acc
}
