//! Integer helpers: primality, factoring, modular square roots, valuations.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first twelve prime bases. Exact below 3.3e24, a
/// probable-prime test above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// Primes `>= start`, in increasing order.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    let mut cur = start;
    std::iter::from_fn(move || {
        let p = next_prime(cur);
        cur = p + 1;
        Some(p)
    })
}

fn pollard_brent(n: &BigInt, seed: u64) -> Option<BigInt> {
    let one = BigInt::one();
    let c = BigInt::from(seed);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(seed.wrapping_mul(7) + 2) % n;
    let m = 128u32;
    let mut g = one.clone();
    let mut r = 1u64;
    let mut q = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0u64;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min((r - k) as u32) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m as u64;
        }
        r *= 2;
        if r > 1 << 22 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if g > one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_composite(n: &BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(n) {
        out.push(n.clone());
        return;
    }
    if let Some(r) = perfect_power_root(n) {
        let (root, k) = r;
        for _ in 0..k {
            split_composite(&root, out);
        }
        return;
    }
    for seed in 1..64u64 {
        if let Some(d) = pollard_brent(n, seed) {
            split_composite(&d, out);
            split_composite(&(n / &d), out);
            return;
        }
    }
    panic!("integer factorization failed for {n}");
}

fn perfect_power_root(n: &BigInt) -> Option<(BigInt, u32)> {
    let bits = n.bits() as u32;
    for k in 2..=bits.max(2) {
        let r = n.nth_root(k);
        if r <= BigInt::one() {
            break;
        }
        if num_traits::pow(r.clone(), k as usize) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Prime factorization of `|n|` (n nonzero), sorted by prime.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut m = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();
    let mut p = 2u64;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % p).is_zero() {
            primes.push(bp.clone());
            m /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split_composite(&m, &mut primes);
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// `(v, rest)` with `n = p^v * rest`, `p ∤ rest`. `n` must be nonzero.
pub fn valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&BigInt::from(p));
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

/// Signed squarefree part: the unique squarefree `d` with `n = d * s^2`.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero());
    let mut d = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factor_integer(n) {
        if e % 2 == 1 {
            d *= p;
        }
    }
    d
}

pub fn squarefree_part_rational(q: &BigRational) -> BigInt {
    squarefree_part(&(q.numer() * q.denom()))
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn exact_sqrt_rational(q: &BigRational) -> Option<BigRational> {
    Some(BigRational::new(exact_sqrt(q.numer())?, exact_sqrt(q.denom())?))
}

pub fn is_squarefree(n: &BigInt) -> bool {
    factor_integer(n).iter().all(|(_, e)| *e == 1)
}

/// Legendre symbol `(a/p)` for an odd prime `p`, as -1, 0 or 1.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Square root modulo an odd prime (Tonelli-Shanks).
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while legendre(z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Reduce a rational modulo `p`; `None` when `p` divides the denominator.
pub fn rational_mod(q: &BigRational, p: u64) -> Option<u64> {
    let d = bigint_mod(q.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(bigint_mod(q.numer(), p), inv_mod(d, p), p))
}

/// Nonnegative residue of `n` modulo `p`.
pub fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1`), by brute force.
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    assert!(a.gcd(&m) == 1, "order of a non-unit");
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = mul_mod(x, a, m);
        k += 1;
    }
    k
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// p-adic valuation of a machine integer.
pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// A pairwise coprime set `S` such that every input factors over `S`
/// (factor refinement). Returns each base element with its exponent in every
/// input.
pub fn coprime_base(inputs: &[BigInt]) -> Vec<(BigInt, Vec<u32>)> {
    let mut base: Vec<BigInt> = Vec::new();
    for x in inputs {
        let x = x.abs();
        if x > BigInt::one() {
            base.push(x);
        }
    }
    loop {
        let mut changed = false;
        'scan: for i in 0..base.len() {
            for j in (i + 1)..base.len() {
                let g = base[i].gcd(&base[j]);
                if g > BigInt::one() {
                    let a = &base[i] / &g;
                    let b = &base[j] / &g;
                    let mut next: Vec<BigInt> = base
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i && *k != j)
                        .map(|(_, v)| v.clone())
                        .collect();
                    for v in [a, b, g] {
                        if v > BigInt::one() {
                            next.push(v);
                        }
                    }
                    base = next;
                    changed = true;
                    break 'scan;
                }
            }
        }
        if !changed {
            break;
        }
        base.sort();
        base.dedup();
    }
    base.sort();
    base.into_iter()
        .map(|b| {
            let exps = inputs
                .iter()
                .map(|x| {
                    if x.is_zero() {
                        return 0;
                    }
                    let mut m = x.abs();
                    let mut e = 0;
                    while (&m % &b).is_zero() {
                        m /= &b;
                        e += 1;
                    }
                    e
                })
                .collect();
            (b, exps)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_match_sieve() {
        let mut sieve = vec![true; 2000];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..2000 {
            if sieve[i] {
                let mut j = i * i;
                while j < 2000 {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        for (n, &is_p) in sieve.iter().enumerate() {
            assert_eq!(is_prime_u64(n as u64), is_p, "n = {n}");
        }
    }

    #[test]
    fn factors_multiply_back() {
        for n in [1i64, 2, 12, 360, 1_000_003 * 999_983, -4096, 123_456_789_012] {
            let n = BigInt::from(n);
            let prod: BigInt = factor_integer(&n)
                .into_iter()
                .map(|(p, e)| num_traits::pow(p, e as usize))
                .product();
            assert_eq!(prod, n.abs());
        }
        let big = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64) * 49;
        let f = factor_integer(&big);
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], (BigInt::from(7), 2));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&BigInt::from(-108)), BigInt::from(-3));
        assert_eq!(squarefree_part(&BigInt::from(72)), BigInt::from(2));
        assert_eq!(squarefree_part(&BigInt::from(1)), BigInt::from(1));
    }

    #[test]
    fn tonelli_shanks() {
        for p in [3u64, 5, 7, 13, 17, 41, 97, 1009] {
            for a in 1..p {
                match sqrt_mod_prime(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a),
                    None => assert_eq!(legendre(a, p), -1),
                }
            }
        }
    }

    #[test]
    fn coprime_base_reconstructs() {
        let a = BigInt::from(2i64 * 2 * 3 * 35 * 35 * 35);
        let b = BigInt::from(4i64 * 9 * 35 * 11);
        let base = coprime_base(&[a.clone(), b.clone()]);
        for (idx, x) in [a, b].iter().enumerate() {
            let prod: BigInt = base
                .iter()
                .map(|(e, ex)| num_traits::pow(e.clone(), ex[idx] as usize))
                .product();
            assert_eq!(&prod, x);
        }
        for i in 0..base.len() {
            for j in (i + 1)..base.len() {
                assert!(base[i].0.gcd(&base[j].0).is_one());
            }
        }
    }

    #[test]
    fn orders_and_phi() {
        assert_eq!(multiplicative_order(2, 9), 6);
        assert_eq!(multiplicative_order(17, 9), 2);
        assert_eq!(euler_phi(27), 18);
        assert_eq!(euler_phi(16), 8);
    }
}
