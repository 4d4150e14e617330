//! Polynomials over a prime field `F_p` and their factorization
//! (squarefree split, distinct-degree, then Cantor-Zassenhaus).

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{IntPoly, PolyError};
use crate::arith::{bigint_mod, inv_mod, is_prime_u64, mul_mod};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        Self::new(p, f.coeffs().iter().map(|a| bigint_mod(a, p)).collect())
    }

    /// Lift to `Z[x]` with coefficients in `[0, p)`.
    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&a| BigInt::from(a)).collect())
    }

    /// Lift with coefficients in the symmetric range `(-p/2, p/2]`.
    pub fn to_int_symmetric(&self) -> IntPoly {
        let half = self.p / 2;
        IntPoly::new(
            self.c
                .iter()
                .map(|&a| if a > half { BigInt::from(a) - self.p } else { BigInt::from(a) })
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1 % p] }
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0;
        for &a in self.c.iter().rev() {
            acc = (mul_mod(acc, x, self.p) + a) % self.p;
        }
        acc
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        FpPoly::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0) as u128;
                    let b = o.c.get(i).copied().unwrap_or(0) as u128;
                    ((a + b) % p as u128) as u64
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        FpPoly::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).copied().unwrap_or(0) as u128;
                    let b = o.c.get(i).copied().unwrap_or(0) as u128;
                    ((a + p as u128 - b) % p as u128) as u64
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: u64) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&a| mul_mod(a, s, self.p)).collect())
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        if p < 1 << 32 {
            for (i, &a) in self.c.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in o.c.iter().enumerate() {
                    acc[i + j] += (a * b) as u128;
                }
            }
            FpPoly::new(p, acc.into_iter().map(|v| (v % p as u128) as u64).collect())
        } else {
            for (i, &a) in self.c.iter().enumerate() {
                for (j, &b) in o.c.iter().enumerate() {
                    acc[i + j] = (acc[i + j] + mul_mod(a, b, p) as u128) % p as u128;
                }
            }
            FpPoly::new(p, acc.into_iter().map(|v| v as u64).collect())
        }
    }

    /// Quotient and remainder; `m` must be nonzero.
    pub fn divrem(&self, m: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!m.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dm = m.deg();
        if self.c.len() <= dm {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = inv_mod(m.lc(), p);
        let small = p < 1 << 32;
        let mut r: Vec<u128> = self.c.iter().map(|&a| a as u128).collect();
        let mut q = vec![0u64; self.c.len() - dm];
        for top in (dm..self.c.len()).rev() {
            let lead = (r[top] % p as u128) as u64;
            if lead == 0 {
                continue;
            }
            let t = mul_mod(lead, inv, p);
            q[top - dm] = t;
            let neg = p - t;
            for (j, &b) in m.c.iter().enumerate().take(dm) {
                let idx = top - dm + j;
                if small {
                    r[idx] += (neg * b) as u128;
                } else {
                    r[idx] = (r[idx] + mul_mod(neg, b, p) as u128) % p as u128;
                }
            }
        }
        r.truncate(dm);
        (FpPoly::new(p, q), FpPoly::new(p, r.into_iter().map(|v| (v % p as u128) as u64).collect()))
    }

    pub fn rem(&self, m: &FpPoly) -> FpPoly {
        self.divrem(m).1
    }

    pub fn mulmod(&self, o: &FpPoly, m: &FpPoly) -> FpPoly {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn powmod_u64(&self, e: u64, m: &FpPoly) -> FpPoly {
        self.powmod(&BigUint::from(e), m)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn xgcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mul_mod(a, i as u64 % self.p, self.p)).collect(),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        if self.deg() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Number of distinct roots in `F_p`.
    pub fn count_roots(&self) -> usize {
        if self.is_zero() {
            return self.p as usize;
        }
        if self.deg() == 0 {
            return 0;
        }
        let xp = FpPoly::x(self.p).powmod_u64(self.p, self);
        xp.sub(&FpPoly::x(self.p)).gcd(self).deg()
    }

    /// Whether the polynomial is a product of distinct linear factors.
    pub fn splits_completely(&self) -> bool {
        !self.is_zero() && self.is_squarefree() && self.count_roots() == self.deg()
    }

    /// All roots in `F_p`, sorted.
    pub fn roots(&self) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let xp = FpPoly::x(self.p).powmod_u64(self.p, &f);
        let g = xp.sub(&FpPoly::x(self.p)).gcd(&f);
        if g.deg() == 0 {
            return out;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.p ^ 0x5eed);
        for h in equal_degree(&g, 1, &mut rng) {
            out.push((self.p - h.c[0]) % self.p);
        }
        out.sort_unstable();
        out
    }

    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    fn div_exact(&self, m: &FpPoly) -> FpPoly {
        let (q, r) = self.divrem(m);
        debug_assert!(r.is_zero());
        q
    }

    fn canonical_cmp(&self, o: &FpPoly) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

/// Squarefree decomposition of a monic polynomial: `f = prod g_i^e_i`.
pub fn squarefree_mod_p(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (h, e) in squarefree_mod_p(&f.pth_root()) {
            out.push((h, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c.deg() > 0 {
        for (h, e) in squarefree_mod_p(&c.pth_root()) {
            out.push((h, e * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// pairs `(g_d, d)` where `g_d` is the product of all degree-`d` factors.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    distinct_degree_upto(f, usize::MAX)
}

/// Distinct-degree factorization that stops after degree `max_d`.
pub fn distinct_degree_upto(f: &FpPoly, max_d: usize) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.monic();
    let x = FpPoly::x(p);
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) && d < max_d {
        d += 1;
        h = h.powmod_u64(p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg() > 0 {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 && rest.deg() <= max_d {
        let dr = rest.deg();
        out.push((rest, dr));
    }
    out
}

fn random_poly(p: u64, n: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect())
}

/// Split a product of distinct monic degree-`d` factors.
pub fn equal_degree(g: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = g.deg();
    if n == d {
        return vec![g.monic()];
    }
    if n == 0 {
        return Vec::new();
    }
    let p = g.p;
    let exp = if p == 2 {
        BigUint::zero()
    } else {
        (num_traits::pow(BigUint::from(p), d) - 1u32) >> 1
    };
    loop {
        let a = random_poly(p, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            let mut t = a.rem(g);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mulmod(&t, g);
                acc = acc.add(&t);
            }
            acc
        } else {
            a.powmod(&exp, g).sub(&FpPoly::one(p))
        };
        let h = b.gcd(g);
        if h.deg() > 0 && h.deg() < n {
            let mut left = equal_degree(&h, d, rng);
            left.extend(equal_degree(&g.div_exact(&h), d, rng));
            return left;
        }
    }
}

/// Factor `f` modulo the prime `q` into monic irreducibles with multiplicity,
/// sorted by degree and then coefficients. Errors when `q` is not prime or
/// divides the leading coefficient.
pub fn factor_mod_p(f: &IntPoly, q: u64) -> Result<Vec<(FpPoly, u32)>, PolyError> {
    if !is_prime_u64(q) {
        return Err(PolyError::NotPrime(q));
    }
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let fp = FpPoly::from_int(f, q);
    if fp.deg() != f.deg() || fp.is_zero() {
        return Err(PolyError::PrimeDividesLeading(q));
    }
    Ok(factor_fp(&fp))
}

pub fn factor_fp(fp: &FpPoly) -> Vec<(FpPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(fp.p.wrapping_mul(0x9e37_79b9) ^ fp.deg() as u64);
    let mut out = Vec::new();
    for (g, e) in squarefree_mod_p(&fp.monic()) {
        for (part, d) in distinct_degree(&g) {
            for h in equal_degree(&part, d, &mut rng) {
                out.push((h, e));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    out
}

/// Irreducible factors of a squarefree monic polynomial, sorted.
pub fn factor_squarefree_fp(fp: &FpPoly, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let mut out = Vec::new();
    for (part, d) in distinct_degree(fp) {
        out.extend(equal_degree(&part, d, rng));
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// Degrees of the irreducible factors mod `q`, counted with multiplicity, sorted.
pub fn degree_partition(f: &IntPoly, q: u64) -> Result<Vec<usize>, PolyError> {
    let mut v: Vec<usize> = Vec::new();
    for (g, e) in factor_mod_p(f, q)? {
        for _ in 0..e {
            v.push(g.deg());
        }
    }
    v.sort_unstable();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prod(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        let mut acc = FpPoly::one(p);
        for (g, e) in fs {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }

    #[test]
    fn x4_minus_1_mod_5() {
        let f = IntPoly::from_i64(&[-1, 0, 0, 0, 1]);
        let fs = factor_mod_p(&f, 5).unwrap();
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|(g, e)| g.deg() == 1 && *e == 1));
        let mut roots: Vec<u64> = fs.iter().map(|(g, _)| (5 - g.coeffs()[0]) % 5).collect();
        roots.sort_unstable();
        assert_eq!(roots, vec![1, 2, 3, 4]);
    }

    #[test]
    fn x2_plus_1_mod_3_irreducible() {
        let fs = factor_mod_p(&IntPoly::from_i64(&[1, 0, 1]), 3).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0.deg(), 2);
    }

    #[test]
    fn rejects_bad_primes() {
        let f = IntPoly::from_i64(&[1, 0, 5]);
        assert_eq!(factor_mod_p(&f, 5), Err(PolyError::PrimeDividesLeading(5)));
        assert_eq!(factor_mod_p(&f, 9), Err(PolyError::NotPrime(9)));
    }

    #[test]
    fn multiplicities_and_products() {
        let f = &IntPoly::from_i64(&[1, 1]).pow(3) * &IntPoly::from_i64(&[2, 0, 1, 1]).pow(2);
        for p in [2u64, 3, 7, 11, 13] {
            let fs = factor_mod_p(&f, p).unwrap();
            assert_eq!(prod(&fs, p), FpPoly::from_int(&f, p).monic(), "p = {p}");
        }
    }

    #[test]
    fn roots_and_splitting() {
        let f = FpPoly::from_int(&IntPoly::from_i64(&[-6, 11, -6, 1]), 13);
        assert_eq!(f.roots(), vec![1, 2, 3]);
        assert!(f.splits_completely());
        let g = FpPoly::from_int(&IntPoly::from_i64(&[1, 0, 1]), 7);
        assert!(!g.splits_completely());
        assert_eq!(g.count_roots(), 0);
    }

    #[test]
    fn xgcd_identity() {
        let p = 101;
        let a = FpPoly::new(p, vec![3, 1, 4, 1, 5]);
        let b = FpPoly::new(p, vec![9, 2, 6]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
