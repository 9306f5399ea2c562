//! Elementary number theory over machine integers: primality by trial
//! division, factorization, Euler phi, Jacobi symbols and multiplicative
//! orders. All inputs in this crate are desk-scale, so trial division is
//! deliberate.

use crate::error::{Error, Result};

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Factors `n >= 1` into ascending `(prime, exponent)` pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor requires n >= 1");
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient. Rejects `n = 0`.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("euler_phi(0) is undefined".into()));
    }
    let mut phi = n;
    for (p, _) in factor(n) {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// `euler_phi` for callers that have already validated `n >= 1`.
pub(crate) fn phi(n: u64) -> u64 {
    euler_phi(n).expect("n >= 1")
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi_symbol(a: i64, n: u64) -> Result<i64> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "jacobi symbol requires odd positive n, got {n}"
        )));
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Least `k >= 1` with `a^k = 1 mod n`. Requires `gcd(a, n) = 1`.
pub fn multiplicative_order(a: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("multiplicative_order mod 0".into()));
    }
    let a = a.rem_euclid(n as i64) as u64;
    if n == 1 {
        return Ok(1);
    }
    if gcd(a, n) != 1 {
        return Err(Error::Precondition(format!(
            "multiplicative_order requires gcd(a, n) = 1, got gcd({a}, {n}) != 1"
        )));
    }
    // The order divides phi(n); walk its divisors from below.
    let ph = phi(n);
    let mut divs: Vec<u64> = divisors(ph);
    divs.sort_unstable();
    for d in divs {
        if pow_mod(a, d, n) == 1 {
            return Ok(d);
        }
    }
    unreachable!("order divides phi(n)")
}

/// All positive divisors of `n`, unsorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus > 0);
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Splits `n` as `(n_l, n_(l))`: the `l`-part and the non-`l`-part.
pub fn l_part_split(n: u64, l: u64) -> (u64, u64) {
    assert!(n >= 1 && l >= 2);
    let mut lp = 1u64;
    let mut rest = n;
    while rest % l == 0 {
        rest /= l;
        lp *= l;
    }
    (lp, rest)
}

/// Units of `Z/mZ` in ascending order; `[0]` for `m = 1`.
pub fn units_mod(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&v| gcd(v, m) == 1).collect()
}
