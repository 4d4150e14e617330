//! Polynomial multiplication by Kronecker substitution: pack both operands
//! into single integers, multiply once, unpack the signed digits.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};

const SCHOOLBOOK_LIMIT: usize = 12;

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let bits_a = a.iter().map(|c| c.bits()).max().unwrap_or(0);
    let bits_b = b.iter().map(|c| c.bits()).max().unwrap_or(0);
    if a.len().min(b.len()) <= SCHOOLBOOK_LIMIT || bits_a + bits_b < 64 && a.len().min(b.len()) < 40 {
        return schoolbook(a, b);
    }
    let n = a.len().min(b.len()) as u64;
    let slot = bits_a + bits_b + (64 - n.leading_zeros() as u64) + 2;
    let va = pack(a, slot);
    let vb = pack(b, slot);
    let w = va * vb;
    unpack(&w, slot, a.len() + b.len() - 1)
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pack_unsigned(vals: impl Iterator<Item = (usize, BigUint)>, slot: u64, len: usize) -> BigUint {
    let total_words = (slot as usize * len).div_ceil(32) + 1;
    let mut words = vec![0u32; total_words];
    for (i, v) in vals {
        let lo = slot as usize * i;
        let (w0, sh) = (lo / 32, (lo % 32) as u32);
        for (k, d) in v.to_u32_digits().into_iter().enumerate() {
            let wide = (d as u64) << sh;
            words[w0 + k] |= wide as u32;
            let hi = (wide >> 32) as u32;
            if hi != 0 {
                words[w0 + k + 1] |= hi;
            }
        }
    }
    BigUint::new(words)
}

fn pack(c: &[BigInt], slot: u64) -> BigInt {
    let pos = pack_unsigned(
        c.iter().enumerate().filter(|(_, x)| x.is_positive()).map(|(i, x)| (i, x.magnitude().clone())),
        slot,
        c.len(),
    );
    let neg = pack_unsigned(
        c.iter().enumerate().filter(|(_, x)| x.is_negative()).map(|(i, x)| (i, x.magnitude().clone())),
        slot,
        c.len(),
    );
    BigInt::from_biguint(Sign::Plus, pos) - BigInt::from_biguint(Sign::Plus, neg)
}

fn window(words: &[u32], lo: u64, slot: u64) -> BigUint {
    let w0 = (lo / 32) as usize;
    if w0 >= words.len() {
        return BigUint::zero();
    }
    let sh = lo % 32;
    let nwords = (slot + sh).div_ceil(32) as usize;
    let end = (w0 + nwords).min(words.len());
    let mut v = BigUint::new(words[w0..end].to_vec()) >> sh;
    if v.bits() > slot {
        v -= (&v >> slot) << slot;
    }
    v
}

fn unpack(w: &BigInt, slot: u64, len: usize) -> Vec<BigInt> {
    let negate = w.is_negative();
    let words = w.magnitude().to_u32_digits();
    let half = BigUint::from(1u32) << (slot - 1);
    let full = BigInt::from(1) << slot;
    let mut carry = false;
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let mut d = window(&words, slot * i as u64, slot);
        if carry {
            d += 1u32;
        }
        let digit = if d >= half {
            carry = true;
            BigInt::from_biguint(Sign::Plus, d) - &full
        } else {
            carry = false;
            BigInt::from_biguint(Sign::Plus, d)
        };
        out.push(if negate { -digit } else { digit });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let la = rng.gen_range(1..80);
            let lb = rng.gen_range(1..80);
            let bits = rng.gen_range(1..300u32);
            let gen = |rng: &mut ChaCha8Rng, l: usize| -> Vec<BigInt> {
                (0..l)
                    .map(|_| {
                        let mut v = BigInt::from(rng.gen::<i64>());
                        for _ in 0..bits / 64 {
                            v = (v << 64) + BigInt::from(rng.gen::<u64>());
                        }
                        if rng.gen_bool(0.2) {
                            BigInt::zero()
                        } else {
                            v
                        }
                    })
                    .collect()
            };
            let a = gen(&mut rng, la);
            let b = gen(&mut rng, lb);
            let n = a.len().min(b.len()) as u64;
            let slot = a.iter().map(|c| c.bits()).max().unwrap()
                + b.iter().map(|c| c.bits()).max().unwrap()
                + (64 - n.leading_zeros() as u64)
                + 2;
            let k = unpack(&(pack(&a, slot) * pack(&b, slot)), slot, la + lb - 1);
            assert_eq!(k, schoolbook(&a, &b));
        }
    }
}
