use serde::{Deserialize, Serialize};

use super::{Curve, EcError};
use crate::arith::{bigint_mod, is_prime_u64, legendre, mul_mod, rational_mod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldPointCount {
    pub q: u64,
    pub count: u64,
}

/// Largest prime accepted by the enumeration.
pub const COUNT_LIMIT: u64 = 1_000_000;

/// `#E(F_q)` by enumerating `x` and testing quadratic residuosity. For
/// `q >= 5` the integral short model is used; for `q = 3` the given model
/// must be 3-integral with nonzero discriminant mod 3.
pub fn count_points(e: &Curve, q: u64) -> Result<FieldPointCount, EcError> {
    if !(3..=COUNT_LIMIT).contains(&q) || !is_prime_u64(q) {
        return Err(EcError::NotOddPrime(q));
    }
    if q == 3 {
        return count_long(e, q);
    }
    let m = e.short_model();
    if bigint_mod(&m.disc_kernel(), q) == 0 {
        return Err(EcError::BadReduction(q));
    }
    let a = bigint_mod(m.a(), q);
    let b = bigint_mod(m.b(), q);
    let mut count = 1u64;
    for x in 0..q {
        let rhs = (mul_mod(mul_mod(x, x, q), x, q) + mul_mod(a, x, q) + b) % q;
        count += (1 + legendre(rhs, q)) as u64;
    }
    Ok(FieldPointCount { q, count })
}

fn count_long(e: &Curve, q: u64) -> Result<FieldPointCount, EcError> {
    let mut a = [0u64; 5];
    for (slot, ai) in a.iter_mut().zip(e.a_invariants()) {
        *slot = rational_mod(ai, q).ok_or(EcError::BadReduction(q))?;
    }
    match rational_mod(e.discriminant(), q) {
        Some(d) if d != 0 => {}
        _ => return Err(EcError::BadReduction(q)),
    }
    let [a1, a2, a3, a4, a6] = a;
    let mut count = 1u64;
    for x in 0..q {
        for y in 0..q {
            let lhs = (y * y + a1 * x * y + a3 * y) % q;
            let rhs = (x * x * x + a2 * x * x + a4 * x + a6) % q;
            if lhs == rhs {
                count += 1;
            }
        }
    }
    Ok(FieldPointCount { q, count })
}
