//! Elementary integer arithmetic: gcd, factorization by trial division,
//! Euler's totient, modular powers and primitive roots.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization `[(p, e)]` with ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn distinct_prime_factors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let f = factorize(n);
    f.len() == 1 && f[0].1 == 1
}

/// Euler's totient.
pub fn euler_phi(q: u64) -> u64 {
    if q == 0 {
        return 0;
    }
    factorize(q)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * p.pow(e - 1) * (p - 1))
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Smallest primitive root modulo `p^e` for an odd prime `p`.
pub fn smallest_primitive_root(p: u64, e: u32) -> u64 {
    let modulus = p.pow(e);
    let phi = modulus / p * (p - 1);
    let factors = distinct_prime_factors(phi);
    (2..modulus)
        .find(|&g| {
            gcd(g, modulus) == 1 && factors.iter().all(|&r| mod_pow(g, phi / r, modulus) != 1)
        })
        .expect("odd prime powers have primitive roots")
}

/// Exact `floor(log_p x)` for integer `x >= 1`.
pub fn max_power_exponent(p: u64, x: u64) -> u32 {
    let mut k = 0;
    let mut pk: u64 = 1;
    while let Some(next) = pk.checked_mul(p) {
        if next > x {
            break;
        }
        pk = next;
        k += 1;
    }
    k
}

/// Totients of `0..=n` by a linear sieve.
pub fn phi_table(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            let mut j = i;
            while j <= n {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    phi
}

/// Smallest prime factor of each integer in `0..=n` (0 and 1 map to themselves).
pub fn smallest_prime_factor_table(n: usize) -> Vec<u32> {
    let mut spf: Vec<u32> = (0..=n as u32).collect();
    let mut i = 2;
    while i * i <= n {
        if spf[i] == i as u32 {
            let mut j = i * i;
            while j <= n {
                if spf[j] == j as u32 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        i += 1;
    }
    spf
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
        assert_eq!(euler_phi(2u64.pow(10)), 512);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(smallest_primitive_root(3, 1), 2);
        assert_eq!(smallest_primitive_root(3, 2), 2);
        assert_eq!(smallest_primitive_root(5, 1), 2);
        assert_eq!(smallest_primitive_root(7, 1), 3);
        assert_eq!(smallest_primitive_root(13, 1), 2);
        // 14 is a primitive root mod 29 but 2 suffices; mod 29^2 it stays 2
        assert_eq!(smallest_primitive_root(29, 2), 2);
    }

    #[test]
    fn tables_agree_with_direct() {
        let phi = phi_table(500);
        let spf = smallest_prime_factor_table(500);
        for n in 1..=500u64 {
            assert_eq!(phi[n as usize], euler_phi(n));
            if n >= 2 {
                assert_eq!(spf[n as usize] as u64, factorize(n)[0].0);
            }
        }
    }

    #[test]
    fn power_exponent() {
        assert_eq!(max_power_exponent(2, 10), 3);
        assert_eq!(max_power_exponent(3, 9), 2);
        assert_eq!(max_power_exponent(7, 6), 0);
    }

    proptest! {
        #[test]
        fn phi_is_multiplicative(a in 1u64..5000, b in 1u64..5000) {
            prop_assume!(gcd(a, b) == 1);
            prop_assert_eq!(euler_phi(a * b), euler_phi(a) * euler_phi(b));
        }

        #[test]
        fn factorization_multiplies_back(n in 1u64..10_000_000) {
            let prod: u64 = factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
            prop_assert_eq!(prod, n);
        }
    }
}
