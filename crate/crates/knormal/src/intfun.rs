//! Arithmetic functions over the integers: trial-division factorization,
//! Euler's phi, divisor counting and listing, multiplicative orders.
//!
//! Everything here works on `u64`. Each result is bounded by its input, so
//! nothing in this module can overflow; the unbounded quantities (q^n and
//! friends) live in the callers, which use big integers.

use crate::error::{Error, Result};

/// Prime factorization of a positive integer, primes in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl IntFactorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with primes strictly increasing.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Recompose the product of prime powers.
    pub fn recompose(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
            .max(1)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the fixed base set decides u64 correctly.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factor `m >= 1` by deterministic trial division up to sqrt(m).
pub fn factor_int(m: u64) -> Result<IntFactorization> {
    if m == 0 {
        return Err(Error::ZeroInput);
    }
    let value = m;
    let mut m = m;
    let mut factors = Vec::new();
    let mut push = |p: u64, m: &mut u64| {
        let mut e = 0u32;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut m);
    push(3, &mut m);
    let mut d = 5u64;
    while d.saturating_mul(d) <= m {
        push(d, &mut m);
        push(d + 2, &mut m);
        d += 6;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
    debug_assert!(factors.iter().all(|&(p, _)| is_prime(p)));
    Ok(IntFactorization { value, factors })
}

/// Euler's phi: the number of `1 <= i <= m` coprime to `m`.
pub fn euler_phi(m: u64) -> Result<u64> {
    let f = factor_int(m)?;
    Ok(f.factors
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product())
}

/// Number of positive divisors of `m`.
pub fn sigma0(m: u64) -> Result<u64> {
    let f = factor_int(m)?;
    Ok(f.factors.iter().map(|&(_, e)| (e + 1) as u64).product())
}

/// Integer Moebius function: 0 unless squarefree, otherwise (-1)^r.
pub fn moebius(m: u64) -> Result<i32> {
    let f = factor_int(m)?;
    if f.factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.factors.len() % 2 == 0 { 1 } else { -1 })
}

/// All divisors of `m` in increasing order.
pub fn divisors(m: u64) -> Result<Vec<u64>> {
    let f = factor_int(m)?;
    let mut divs = vec![1u64];
    for &(p, e) in f.factors() {
        let prev = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..prev {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Least `j > 0` with `a^j = 1 (mod b)`; requires `gcd(a, b) = 1`.
///
/// Computed by repeated modular multiplication with early exit, so it is
/// bounded by `b` iterations and needs no factorization of phi(b).
pub fn mult_order(a: u64, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::ZeroInput);
    }
    if b == 1 {
        return Ok(1);
    }
    if gcd(a, b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    let a = a % b;
    let mut x = a;
    let mut j = 1u64;
    while x != 1 {
        x = mulmod(x, a, b);
        j += 1;
        debug_assert!(j <= b);
    }
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_examples() {
        assert!(factor_int(1).unwrap().factors().is_empty());
        assert_eq!(factor_int(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        // 2^10 - 1: verified against the trial-division oracle below
        assert_eq!(
            factor_int(1023).unwrap().factors(),
            &[(3, 1), (11, 1), (31, 1)]
        );
        assert!(factor_int(0).is_err());
    }

    #[test]
    fn factor_roundtrip_to_1e5() {
        for m in 1..=100_000u64 {
            let f = factor_int(m).unwrap();
            assert_eq!(f.recompose(), m);
        }
    }

    /// Independent oracle: phi by direct gcd counting.
    fn phi_by_count(m: u64) -> u64 {
        (1..=m).filter(|&i| gcd(i, m) == 1).count() as u64
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(phi_by_count(1023), 600);
        assert_eq!(euler_phi(1023).unwrap(), 600);
    }

    #[test]
    fn phi_divisor_sum_is_identity() {
        // sum over d | m of phi(d) = m
        for m in 1..=10_000u64 {
            let s: u64 = divisors(m)
                .unwrap()
                .iter()
                .map(|&d| euler_phi(d).unwrap())
                .sum();
            assert_eq!(s, m, "phi divisor sum failed at {m}");
        }
    }

    #[test]
    fn sigma0_examples() {
        assert_eq!(sigma0(1).unwrap(), 1);
        assert_eq!(sigma0(12).unwrap(), 6);
        assert_eq!(sigma0(1023).unwrap(), 8);
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(63).unwrap(), vec![1, 3, 7, 9, 21, 63]);
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(2, 7).unwrap(), 3);
        assert_eq!(mult_order(2, 1).unwrap(), 1);
        // oracle: iterate powers of 3 mod 80 directly
        let mut x = 3u64;
        let mut j = 1;
        while x != 1 {
            x = x * 3 % 80;
            j += 1;
        }
        assert_eq!(j, 4);
        assert_eq!(mult_order(3, 80).unwrap(), 4);
        assert!(mult_order(4, 6).is_err());
    }

    #[test]
    fn order_divides_phi() {
        for b in 2..=400u64 {
            let phi = euler_phi(b).unwrap();
            for a in 1..b {
                if gcd(a, b) == 1 {
                    assert_eq!(phi % mult_order(a, b).unwrap(), 0);
                }
            }
        }
        // sparse sample of larger moduli up to 10^4
        for b in [4096u64, 6561, 9973, 10000] {
            let phi = euler_phi(b).unwrap();
            for a in (2..b).step_by(89) {
                if gcd(a, b) == 1 {
                    assert_eq!(phi % mult_order(a, b).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn primality_spot_checks() {
        let primes = [2u64, 3, 5, 31, 127, 8191, 1_000_003, 2_147_483_647];
        for p in primes {
            assert!(is_prime(p), "{p}");
        }
        let composites = [1u64, 4, 6, 1023, 2_147_483_649, 25326001];
        for c in composites {
            assert!(!is_prime(c), "{c}");
        }
    }

    #[test]
    fn moebius_spot_checks() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(2).unwrap(), -1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        // Mertens-style sanity: partial sums of mu stay small
        let m: i64 = (1..=1000u64).map(|n| moebius(n).unwrap() as i64).sum();
        assert_eq!(m, 2);
    }
}
