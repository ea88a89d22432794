//! Machine-word number theory: modular arithmetic, deterministic primality,
//! and integer factorization (exact `u64` routines plus a best-effort
//! big-integer path for determinant certificates).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// `a * b mod m` without overflow; `m` may use all 64 bits.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m` by square-and-multiply.
pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Modular inverse mod a prime.
pub fn inv_mod_prime(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin. The fixed witness set decides primality
/// correctly for every 64-bit integer.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        r += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> Option<u64> {
    // Brent's cycle variant with deterministic parameters; the constant `c`
    // is bumped whenever a cycle yields only trivial factors.
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 22 {
                break;
            }
        }
        if d != n && d != 1 {
            return Some(d);
        }
    }
    None
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Full factorization of a 64-bit integer as sorted `(prime, multiplicity)`
/// pairs. Trial division handles small primes, Pollard rho the rest.
pub fn factor(n: u64) -> Result<Vec<(u64, u32)>> {
    let mut n = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, factors: &mut Vec<(u64, u32)>| {
        if let Some(last) = factors.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            factors.push((p, 1));
        }
    };
    for p in 2u64.. {
        if p * p > n || p > 100_000 {
            break;
        }
        while n.is_multiple_of(p) {
            push(p, &mut factors);
            n /= p;
        }
    }
    let mut stack = vec![];
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_prime(m) {
            push(m, &mut factors);
            continue;
        }
        let d = pollard_rho(m).ok_or(Error::FactorizationEffort(m))?;
        stack.push(d);
        stack.push(m / d);
    }
    factors.sort_unstable();
    Ok(factors)
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factor(n)?.into_iter().map(|(p, _)| p).collect())
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let mut divs = vec![1u64];
    for (p, mult) in factor(n)? {
        let snapshot = divs.clone();
        let mut power = 1u64;
        for _ in 0..mult {
            power *= p;
            divs.extend(snapshot.iter().map(|d| d * power));
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Primes up to `n` inclusive, by sieve.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// All odd prime powers `p^n <= q_max`, returned ascending as `(q, p, n)`.
pub fn odd_prime_powers_up_to(q_max: u64) -> Vec<(u64, u64, u32)> {
    let mut out = Vec::new();
    for p in primes_up_to(q_max) {
        if p == 2 {
            continue;
        }
        let mut q = p as u128;
        let mut n = 1u32;
        while q <= q_max as u128 {
            out.push((q as u64, p, n));
            q *= p as u128;
            n += 1;
        }
    }
    out.sort_unstable();
    out
}

/// If `q = p^n` for a prime `p`, return `(p, n)`.
pub fn as_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = factor(q).ok()?;
    if factors.len() == 1 {
        Some(factors[0])
    } else {
        None
    }
}

/// Miller-Rabin on a big integer with the fixed witness set. Deterministic
/// output; for operands beyond 64 bits this is a strong probable-prime test,
/// which is all the best-effort certificate factorization needs.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Ok(small) = u64::try_from(n) {
        return is_prime(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let r = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> r;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..r {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Outcome of a best-effort factorization: the prime power factors found,
/// plus any composite cofactor the effort budget left untouched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFactorization {
    pub factors: Vec<(BigUint, u32)>,
    pub unfactored: Option<BigUint>,
}

fn rho_biguint(n: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u64..16 {
        let c = BigUint::from(c);
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut steps = 0u32;
        while d == one {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
            steps += 1;
            if steps > 1 << 16 {
                break;
            }
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

/// Trial division plus Pollard rho with a bounded budget. Factors that
/// resist the budget are returned unfactored rather than looping forever.
pub fn factor_biguint_best_effort(n: &BigUint) -> PartialFactorization {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let push = |p: BigUint, factors: &mut Vec<(BigUint, u32)>| {
        if let Some(entry) = factors.iter_mut().find(|(q, _)| *q == p) {
            entry.1 += 1;
        } else {
            factors.push((p, 1));
        }
    };
    let mut n = n.clone();
    if n.is_zero() || n.is_one() {
        return PartialFactorization {
            factors,
            unfactored: None,
        };
    }
    for p in primes_up_to(100_000) {
        let p = BigUint::from(p);
        while (&n % &p).is_zero() {
            push(p.clone(), &mut factors);
            n /= &p;
        }
        if n.is_one() {
            break;
        }
    }
    let mut unfactored = None;
    let mut stack = vec![];
    if !n.is_one() {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_probable_prime(&m) {
            push(m, &mut factors);
            continue;
        }
        match rho_biguint(&m) {
            Some(d) => {
                stack.push(&m / &d);
                stack.push(d);
            }
            None => {
                unfactored = Some(match unfactored {
                    None => m,
                    Some(prev) => prev * m,
                });
            }
        }
    }
    factors.sort();
    PartialFactorization {
        factors,
        unfactored,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn primality_large() {
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime(2_147_483_649));
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
    }

    #[test]
    fn factor_matches_product() {
        for n in [1u64, 2, 12, 97, 1009, 2400, 1 << 20, 600851475143] {
            let fs = factor(n).unwrap();
            let product: u64 = fs.iter().map(|&(p, m)| p.pow(m)).product();
            assert_eq!(product, n.max(1));
            for &(p, _) in &fs {
                assert!(is_prime(p));
            }
        }
    }

    #[test]
    fn divisors_of_12() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn odd_prime_powers_small() {
        let qs: Vec<u64> = odd_prime_powers_up_to(30)
            .into_iter()
            .map(|(q, _, _)| q)
            .collect();
        assert_eq!(qs, vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(as_prime_power(343), Some((7, 3)));
        assert_eq!(as_prime_power(6), None);
        assert_eq!(as_prime_power(2401), Some((7, 4)));
    }

    #[test]
    fn biguint_factorization() {
        let n = BigUint::from(3751u32); // 11^2 * 31
        let f = factor_biguint_best_effort(&n);
        assert!(f.unfactored.is_none());
        assert_eq!(
            f.factors,
            vec![(BigUint::from(11u32), 2), (BigUint::from(31u32), 1)]
        );
    }
}
