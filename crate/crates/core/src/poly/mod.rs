//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! `coeffs[i]` is the coefficient of `x^i`; the zero polynomial is the empty
//! vector and every other value has a nonzero last entry.

mod factor;
mod kronecker;
pub mod modp;
mod resultant;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use factor::{
    factor_over_q, irreducible_factors_up_to, rational_roots, squarefree_decomposition,
    Factorization,
};
pub use resultant::{discriminant, resultant, resultant_x, BiPoly};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{0} divides the leading coefficient")]
    PrimeDividesLeading(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("recombination exceeded {0} subsets")]
    RecombinationLimit(u64),
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("no prime of good reduction found for the factorization")]
    NoGoodPrime,
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly {
    #[serde(with = "coeff_strings")]
    coeffs: Vec<BigInt>,
}

mod coeff_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(c.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Quotient and remainder of a (pseudo-)division: `lc(b)^lc_power * a = quotient * b + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivRem {
    pub quotient: IntPoly,
    pub remainder: IntPoly,
    pub lc_power: u32,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divide every coefficient by `c`; panics if the division is not exact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(c);
                    assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `f(c * x)`.
    pub fn scale_var(&self, c: &BigInt) -> Self {
        let mut pow = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::new(out)
    }

    /// `f(x + c)` by Horner's rule.
    pub fn shift(&self, c: &BigInt) -> Self {
        let lin = Self::new(vec![c.clone(), BigInt::one()]);
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(a.clone());
        }
        acc
    }

    /// `f(g(x))`.
    pub fn compose(&self, g: &IntPoly) -> Self {
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(a.clone());
        }
        acc
    }

    /// `x^deg * f(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division with a remainder of smaller degree. When the leading
    /// coefficient of `b` does not divide the running remainder, the remainder
    /// is multiplied by `lc(b)` and `lc_power` records how many times.
    pub fn divrem(&self, b: &IntPoly) -> Result<DivRem, PolyError> {
        let db = b.degree().ok_or(PolyError::DivisionByZero)?;
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q: Vec<BigInt> = vec![BigInt::zero(); r.len().saturating_sub(db)];
        let mut k = 0u32;
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            if r[top].is_zero() {
                r.pop();
                continue;
            }
            let shift = top - db;
            let (t, rem) = r[top].div_rem(&lb);
            let t = if rem.is_zero() {
                t
            } else {
                for c in r.iter_mut() {
                    *c *= &lb;
                }
                for c in q.iter_mut() {
                    *c *= &lb;
                }
                k += 1;
                r[top].clone() / &lb
            };
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[shift + i] -= &t * bc;
            }
            q[shift] += t;
            r.pop();
        }
        Ok(DivRem { quotient: Self::new(q), remainder: Self::new(r), lc_power: k })
    }

    /// Classical pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &IntPoly) -> IntPoly {
        let db = b.deg();
        let da = match self.degree() {
            Some(d) if d >= db => d,
            _ => return self.clone(),
        };
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut steps = 0;
        while r.len() > db {
            let top = r.len() - 1;
            let t = r[top].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            if !t.is_zero() {
                for (i, bc) in b.coeffs.iter().enumerate() {
                    r[top - db + i] -= &t * bc;
                }
            }
            r.pop();
            steps += 1;
        }
        let missing = (da - db + 1) - steps;
        let mut out = Self::new(r);
        if missing > 0 {
            out = out.scale(&num_traits::pow(lb, missing));
        }
        out
    }

    /// Exact quotient in `Z[x]`, or `None` when `b` does not divide `self`
    /// with an integral quotient.
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        let db = b.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let da = self.deg();
        if da < db {
            return None;
        }
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        for shift in (0..=da - db).rev() {
            let top = shift + db;
            if r[top].is_zero() {
                continue;
            }
            let (t, rem) = r[top].div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[shift + i] -= &t * bc;
            }
            q[shift] = t;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Whether `b` divides `self` in `Q[x]`.
    pub fn divisible_by(&self, b: &IntPoly) -> bool {
        self.prem(b).is_zero()
    }

    /// gcd in `Z[x]` (primitive remainder sequence), positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.deg() >= other.deg() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    pub fn l2_norm_bound(&self) -> BigInt {
        let s: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        num_integer::Roots::sqrt(&s) + 1
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Canonical order: degree first, then coefficients from the leading one down.
    pub fn canonical_cmp(&self, other: &IntPoly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(kronecker::mul(&self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
