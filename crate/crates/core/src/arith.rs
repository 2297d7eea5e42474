//! Small-integer number theory used throughout: divisors, Moebius, Euler phi,
//! Kronecker symbols and the index of Gamma_0(N).

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Prime factorization as (prime, exponent) pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
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

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n).len() == 1 && factor(n)[0].1 == 1
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn gcd_i(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn mobius(n: u64) -> i64 {
    let mut r = 1;
    for (_, e) in factor(n) {
        if e > 1 {
            return 0;
        }
        r = -r;
    }
    r
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// sigma_k(n) = sum of d^k over divisors d of n.
pub fn sigma(n: u64, k: u32) -> u64 {
    divisors(n).iter().map(|d| d.pow(k)).sum()
}

/// Index of Gamma_0(N) in SL_2(Z), written varpi(N).
pub fn gamma0_index(n: u64) -> u64 {
    factor(n).iter().fold(n, |acc, &(p, _)| acc / p * (p + 1))
}

/// Kronecker symbol (a/n) for n > 0.
pub fn kronecker(a: i64, n: u64) -> i64 {
    let mut result = 1i64;
    let mut n = n;
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    while n.is_multiple_of(2) {
        n /= 2;
        let r = a.rem_euclid(8);
        if r % 2 == 0 {
            return 0;
        }
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    // Jacobi symbol for odd n
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// Whether -D is a fundamental discriminant.
pub fn is_fundamental(d: i64) -> bool {
    if d <= 0 {
        return false;
    }
    let d = d as u64;
    match d % 4 {
        3 => mobius(d) != 0,
        0 => {
            let m = d / 4;
            (m % 4 == 1 || m % 4 == 2) && mobius(m) != 0
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn multiplicative_functions() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(7), -1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(sigma(6, 1), 12);
        assert_eq!(sigma(2, 3), 9);
        assert_eq!(gamma0_index(7), 8);
        assert_eq!(gamma0_index(25), 30);
        assert_eq!(gamma0_index(12), 24);
    }

    #[test]
    fn kronecker_matches_legendre() {
        for p in [3u64, 5, 7, 11, 13] {
            for a in -20i64..20 {
                let r = a.rem_euclid(p as i64) as u64;
                let expect = if r == 0 {
                    0
                } else if (1..p).any(|x| x * x % p == r) {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(a, p), expect, "({a}/{p})");
            }
        }
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }

    #[test]
    fn fundamental_discriminants() {
        let fund: Vec<i64> = (1..=40).filter(|&d| is_fundamental(d)).collect();
        assert_eq!(fund, vec![3, 4, 7, 8, 11, 15, 19, 20, 23, 24, 31, 35, 39, 40]);
    }

    #[test]
    fn bezout() {
        let (g, x, y) = ext_gcd(240, 46);
        assert_eq!(g, 2);
        assert_eq!(240 * x + 46 * y, 2);
        let (g, x, y) = ext_gcd(-3, 7);
        assert_eq!(g, 1);
        assert_eq!(-3 * x + 7 * y, 1);
    }
}
