//! Layers `Q_{m,p}` of the cyclotomic `Z_p`-extension, described by their
//! conductor and split law, and tests deciding whether a polynomial cuts out
//! one of them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{bigint_mod, exact_sqrt, factor_integer, is_prime_u64, pow_mod, primes_from, squarefree_part, valuation};
use crate::poly::modp::FpPoly;
use crate::poly::{discriminant, rational_roots, IntPoly};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{q} is ramified in the {p}-tower")]
    Ramified { q: u64, p: u64 },
    #[error("polynomial of degree {poly} cannot define a layer of degree {layer}")]
    DegreeMismatch { poly: usize, layer: u64 },
    #[error("cubic is reducible over Q")]
    Reducible,
    #[error("not a cubic polynomial")]
    NotCubic,
}

/// The layer `Q_{m,p}`: degree `p^m`, conductor `p^(m+1)` (odd `p`) or
/// `2^(m+2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LayerField {
    pub p: u64,
    pub m: u32,
}

impl LayerField {
    pub fn new(p: u64, m: u32) -> Result<Self, TowerError> {
        if !is_prime_u64(p) {
            return Err(TowerError::NotPrime(p));
        }
        Ok(LayerField { p, m })
    }

    pub fn degree(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn conductor(&self) -> u64 {
        if self.p == 2 {
            1 << (self.m + 2)
        } else {
            self.p.pow(self.m + 1)
        }
    }

    /// Whether the prime `q != p` splits completely.
    pub fn splits(&self, q: u64) -> Result<bool, TowerError> {
        if q == self.p {
            return Err(TowerError::Ramified { q, p: self.p });
        }
        let n = self.conductor();
        if self.p == 2 {
            let r = q % n;
            Ok(r == 1 || r == n - 1)
        } else {
            Ok(pow_mod(q, self.p - 1, n) == 1)
        }
    }

    /// A defining polynomial, available for `p = 2` and `p = 3`: the minimal
    /// polynomial of `2 cos(2π / 2^(m+2))`, resp. `2 cos(2π / 3^(m+1))`.
    pub fn defining_poly(&self) -> Option<IntPoly> {
        match self.p {
            2 if self.m == 0 => Some(IntPoly::x()),
            2 => Some(dickson(1 << self.m)),
            3 => Some(&dickson(3u64.pow(self.m) as usize) + &IntPoly::one()),
            _ => None,
        }
    }
}

/// `D_n` with `D_n(t + 1/t) = t^n + 1/t^n`.
fn dickson(n: usize) -> IntPoly {
    let (mut prev, mut cur) = (IntPoly::from_i64(&[2]), IntPoly::x());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&IntPoly::x() * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Whether `q` splits completely in the layer (`q != p`).
pub fn splits_in_layer(q: u64, layer: &LayerField) -> Result<bool, TowerError> {
    layer.splits(q)
}

/// Divide out every `R` with `R^2 | A` and `R^3 | B`.
pub fn reduce_cubic(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let (mut a, mut b) = (a.clone(), b.clone());
    let common = match (a.is_zero(), b.is_zero()) {
        (true, true) => return (a, b),
        (true, false) => b.clone(),
        (false, true) => a.clone(),
        (false, false) => a.gcd(&b),
    };
    for (r, _) in factor_integer(&common) {
        let r2 = &r * &r;
        let r3 = &r2 * &r;
        while (&a % &r2).is_zero() && (&b % &r3).is_zero() {
            a /= &r2;
            b /= &r3;
        }
    }
    (a, b)
}

/// Depressed form `x^3 + A x + B` of `a x^3 + b x^2 + c x + d` via
/// `x -> 3a x + b`.
pub fn depress_cubic(f: &IntPoly) -> Result<(BigInt, BigInt), TowerError> {
    if f.degree() != Some(3) {
        return Err(TowerError::NotCubic);
    }
    let (a, b, c, d) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    let big_a = BigInt::from(9) * &a * &c - BigInt::from(3) * &b * &b;
    let big_b = BigInt::from(2) * &b * &b * &b - BigInt::from(9) * &a * &b * &c + BigInt::from(27) * &a * &a * &d;
    Ok((big_a, big_b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conductor {
    Cyclic(BigInt),
    NotCyclic,
}

/// Conductor data of the cubic field cut out by `x^3 + A x + B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicFieldData {
    pub a: BigInt,
    pub b: BigInt,
    pub discriminant: BigInt,
    pub c: Option<BigInt>,
    pub conductor: Conductor,
}

/// Conductor of the cyclic cubic field defined by `x^3 + A x + B`, where
/// `(A, B)` is first reduced; `NotCyclic` when the discriminant is not a
/// square.
pub fn cubic_conductor(a: &BigInt, b: &BigInt) -> Result<CubicFieldData, TowerError> {
    let (a, b) = reduce_cubic(a, b);
    let f = IntPoly::new(vec![b.clone(), a.clone(), BigInt::zero(), BigInt::one()]);
    if !rational_roots(&f).map_err(|_| TowerError::Reducible)?.is_empty() {
        return Err(TowerError::Reducible);
    }
    let disc = BigInt::from(-4) * &a * &a * &a - BigInt::from(27) * &b * &b;
    let Some(c) = exact_sqrt(&disc) else {
        return Ok(CubicFieldData { a, b, discriminant: disc, c: None, conductor: Conductor::NotCyclic });
    };
    let v3 = |n: &BigInt| if n.is_zero() { u32::MAX } else { valuation(n, 3).0 };
    let (va, vb, vc) = (v3(&a), v3(&b), v3(&c));
    let alpha = if va == 0 || (va == 1 && vb == 0 && vc >= 3) {
        0
    } else if (va == 2 && vb == 2) || (va == 1 && vb == 0 && vc == 2) {
        2
    } else {
        // unreachable for a reduced cyclic cubic: the 3-adic valuation of the
        // discriminant would be odd
        return Ok(CubicFieldData { a, b, discriminant: disc, c: Some(c), conductor: Conductor::NotCyclic });
    };
    let mut cond = BigInt::from(3u32.pow(alpha));
    let g = a.gcd(&b);
    if !g.is_zero() {
        for (p, _) in factor_integer(&g) {
            if bigint_mod(&p, 3) == 1 {
                cond *= p;
            }
        }
    }
    Ok(CubicFieldData { a, b, discriminant: disc, c: Some(c), conductor: Conductor::Cyclic(cond) })
}

/// Whether the irreducible cubic `f` defines `Q_{1,3}`, the cyclic cubic
/// field of conductor 9.
pub fn is_layer_cubic(f: &IntPoly) -> Result<bool, TowerError> {
    let (a, b) = depress_cubic(f)?;
    let data = cubic_conductor(&a, &b)?;
    Ok(data.conductor == Conductor::Cyclic(BigInt::from(9)))
}

/// Whether the quadratic `f` defines `Q(√2) = Q_{1,2}`.
pub fn is_layer_quadratic(f: &IntPoly) -> bool {
    if f.degree() != Some(2) {
        return false;
    }
    let d = discriminant(f);
    d.is_positive() && squarefree_part(&d) == BigInt::from(2)
}

/// Upper end of the prime search in [`defines_layer`].
pub const SAMPLE_PRIME_CAP: u64 = 100_000;
pub const DEFAULT_SAMPLE_SIZE: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LayerVerdict {
    /// Every sampled prime followed the split law of the layer.
    Yes { sampled: usize, last_prime: u64 },
    /// `witness` splits in exactly one of the two fields; a proof.
    No { witness: u64, splits_in_layer: bool },
    Inconclusive { sampled: usize },
}

impl LayerVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, LayerVerdict::Yes { .. })
    }
}

/// Compare the splitting of `f` modulo sampled primes with the split law of
/// the layer. A normal field of the same degree as the layer that agrees on
/// which primes split completely equals the layer.
pub fn defines_layer(f: &IntPoly, layer: &LayerField, sample_size: usize) -> Result<LayerVerdict, TowerError> {
    let d = f.deg();
    if d as u64 != layer.degree() {
        return Err(TowerError::DegreeMismatch { poly: d, layer: layer.degree() });
    }
    let mut sampled = 0;
    for q in primes_from(2).take_while(|&q| q < SAMPLE_PRIME_CAP) {
        if q == layer.p {
            continue;
        }
        let fq = FpPoly::from_int(f, q);
        if fq.deg() != d || !fq.is_squarefree() {
            continue;
        }
        let in_layer = layer.splits(q)?;
        let in_f = fq.splits_completely();
        if in_layer != in_f {
            return Ok(LayerVerdict::No { witness: q, splits_in_layer: in_layer });
        }
        sampled += 1;
        if sampled == sample_size {
            return Ok(LayerVerdict::Yes { sampled, last_prime: q });
        }
    }
    Ok(LayerVerdict::Inconclusive { sampled })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::multiplicative_order;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn split_law_examples() {
        let l22 = LayerField::new(2, 2).unwrap();
        assert_eq!(l22.conductor(), 16);
        assert!(l22.splits(17).unwrap());
        assert!(!l22.splits(7).unwrap());
        assert!(l22.splits(2).is_err());
        let l13 = LayerField::new(3, 1).unwrap();
        assert_eq!(l13.conductor(), 9);
        assert!(l13.splits(17).unwrap());
    }

    #[test]
    fn split_law_matches_orders() {
        for (pr, m) in [(3u64, 1u32), (3, 2), (5, 1), (7, 1), (2, 1), (2, 2), (2, 3)] {
            let l = LayerField::new(pr, m).unwrap();
            let n = l.conductor();
            for q in primes_from(2).take_while(|&q| q < 500) {
                if q == pr {
                    continue;
                }
                let ord = multiplicative_order(q % n, n);
                let expect = if pr == 2 {
                    // the layer is the fixed field of {±1} in (Z/2^(m+2))^×
                    q % n == 1 || q % n == n - 1
                } else {
                    (pr - 1) % ord == 0
                };
                assert_eq!(l.splits(q).unwrap(), expect, "p={pr} m={m} q={q}");
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let r = |a: i64, b: i64| reduce_cubic(&a.into(), &b.into());
        assert_eq!(r(-108, 432), (BigInt::from(-3), BigInt::from(2)));
        assert_eq!(r(-3, 1), (BigInt::from(-3), BigInt::from(1)));
        assert_eq!(r(-4, 0), (BigInt::from(-1), BigInt::from(0)));
    }

    #[test]
    fn conductor_examples() {
        let c = cubic_conductor(&BigInt::from(-3), &BigInt::from(1)).unwrap();
        assert_eq!(c.conductor, Conductor::Cyclic(BigInt::from(9)));
        assert_eq!(c.c, Some(BigInt::from(9)));
        let c = cubic_conductor(&BigInt::from(0), &BigInt::from(-2)).unwrap();
        assert_eq!(c.conductor, Conductor::NotCyclic);
        let c = cubic_conductor(&BigInt::from(-7), &BigInt::from(7)).unwrap();
        assert_eq!(c.conductor, Conductor::Cyclic(BigInt::from(7)));
        assert_eq!(cubic_conductor(&BigInt::from(-1), &BigInt::from(0)), Err(TowerError::Reducible));
    }

    #[test]
    fn layer_cubics() {
        assert!(is_layer_cubic(&p(&[1, -3, 0, 1])).unwrap());
        assert!(!is_layer_cubic(&p(&[-2, 0, 0, 1])).unwrap());
        assert!(!is_layer_cubic(&p(&[7, -7, 0, 1])).unwrap());
        // x^3 - 3x + 1 shifted and scaled still defines Q(ζ9)^+
        let g = p(&[1, -3, 0, 1]).shift(&BigInt::from(2)).scale_var(&BigInt::from(5));
        assert!(is_layer_cubic(&g).unwrap());
    }

    #[test]
    fn quadratic_layer() {
        assert!(is_layer_quadratic(&p(&[-2, 0, 1])));
        assert!(is_layer_quadratic(&p(&[-7, 2, 1])));
        assert!(!is_layer_quadratic(&p(&[2, 0, 1])));
        assert!(!is_layer_quadratic(&p(&[-3, 0, 1])));
    }

    #[test]
    fn defining_polys() {
        assert_eq!(LayerField::new(2, 2).unwrap().defining_poly().unwrap(), p(&[2, 0, -4, 0, 1]));
        assert_eq!(LayerField::new(3, 1).unwrap().defining_poly().unwrap(), p(&[1, -3, 0, 1]));
        assert_eq!(
            LayerField::new(3, 2).unwrap().defining_poly().unwrap(),
            p(&[1, 9, 0, -30, 0, 27, 0, -9, 0, 1])
        );
        for (pr, m) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let l = LayerField::new(pr, m).unwrap();
            let f = l.defining_poly().unwrap();
            assert!(defines_layer(&f, &l, DEFAULT_SAMPLE_SIZE).unwrap().is_yes(), "p={pr} m={m}");
        }
    }

    #[test]
    fn sampling_rejects_wrong_fields() {
        let l = LayerField::new(2, 2).unwrap();
        match defines_layer(&p(&[1, 0, 0, 0, 1]), &l, 50).unwrap() {
            // x^4 + 1 splits completely only for q = 1 mod 8, so the first
            // disagreement is q = 31, which splits in the layer
            LayerVerdict::No { witness, splits_in_layer } => {
                assert!(splits_in_layer);
                assert_eq!(witness, 31);
            }
            v => panic!("expected NO, got {v:?}"),
        }
        let l3 = LayerField::new(2, 3).unwrap();
        assert_eq!(
            defines_layer(&p(&[2, 0, -4, 0, 1]), &l3, 50),
            Err(TowerError::DegreeMismatch { poly: 4, layer: 8 })
        );
    }
}
