//! Integral short Weierstrass model `Y^2 = X^3 + A X + B` of a long-form
//! curve, with the coordinate change in both directions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Curve, Point};
use crate::arith::factor_integer;
use crate::poly::IntPoly;

/// `X = (36x + 3 b2) / u^2`, `Y = 108 (2y + a1 x + a3) / u^3`, with `u`
/// chosen so that `A = -27 c4 / u^4` and `B = -54 c6 / u^6` are integers
/// with no common factor `r` such that `r^4 | A` and `r^6 | B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortModel {
    a: BigInt,
    b: BigInt,
    u: BigRational,
    a1: BigRational,
    a3: BigRational,
    b2: BigRational,
}

impl ShortModel {
    pub(crate) fn of(e: &Curve) -> ShortModel {
        let a0 = BigRational::from_integer((-27).into()) * e.c4();
        let b0 = BigRational::from_integer((-54).into()) * e.c6();
        let d = a0.denom().lcm(b0.denom());
        let mut a = (a0 * BigRational::from_integer(num_traits::pow(d.clone(), 4))).to_integer();
        let mut b = (b0 * BigRational::from_integer(num_traits::pow(d.clone(), 6))).to_integer();
        let mut scale = BigInt::one();
        let common = if a.is_zero() {
            b.clone()
        } else if b.is_zero() {
            a.clone()
        } else {
            a.gcd(&b)
        };
        if !common.is_zero() {
            for (r, _) in factor_integer(&common) {
                let r4 = num_traits::pow(r.clone(), 4);
                let r6 = num_traits::pow(r.clone(), 6);
                while (&a % &r4).is_zero() && (&b % &r6).is_zero() {
                    a /= &r4;
                    b /= &r6;
                    scale *= &r;
                }
            }
        }
        ShortModel {
            a,
            b,
            u: BigRational::new(scale, d),
            a1: e.a1().clone(),
            a3: e.a3().clone(),
            b2: e.b2().clone(),
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// Scaling factor `u` of the coordinate change.
    pub fn scale(&self) -> &BigRational {
        &self.u
    }

    /// `x^3 + A x + B`.
    pub fn cubic(&self) -> IntPoly {
        IntPoly::new(vec![self.b.clone(), self.a.clone(), BigInt::zero(), BigInt::one()])
    }

    pub fn curve(&self) -> Curve {
        Curve::short(self.a.clone(), self.b.clone()).expect("short model of a nonsingular curve")
    }

    /// `4A^3 + 27B^2`, nonzero.
    pub fn disc_kernel(&self) -> BigInt {
        BigInt::from(4) * &self.a * &self.a * &self.a + BigInt::from(27) * &self.b * &self.b
    }

    pub fn to_short(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let u2 = &self.u * &self.u;
                let u3 = &u2 * &self.u;
                let xx = (rat(36) * x + rat(3) * &self.b2) / u2;
                let yy = rat(108) * (rat(2) * y + &self.a1 * x + &self.a3) / u3;
                Point::Affine(xx, yy)
            }
        }
    }

    pub fn from_short(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(xx, yy) => {
                let u2 = &self.u * &self.u;
                let u3 = &u2 * &self.u;
                let x = (u2 * xx - rat(3) * &self.b2) / rat(36);
                let y = (u3 * yy / rat(108) - &self.a1 * &x - &self.a3) / rat(2);
                Point::Affine(x, y)
            }
        }
    }

    /// Map a short-model x-coordinate back to the long model.
    pub fn x_from_short(&self, xx: &BigRational) -> BigRational {
        (&self.u * &self.u * xx - rat(3) * &self.b2) / rat(36)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_27a4() {
        let e = Curve::from_ints([0, 0, 1, -30, 63]).unwrap();
        let m = e.short_model();
        assert_eq!((m.a().clone(), m.b().clone()), (BigInt::from(-480), BigInt::from(4048)));
        assert_eq!(m.curve().j_invariant(), e.j_invariant());
    }

    #[test]
    fn short_input_is_fixed() {
        let e = Curve::from_ints([0, 0, 0, 1, 1]).unwrap();
        let m = e.short_model();
        assert_eq!((m.a().clone(), m.b().clone()), (BigInt::from(1), BigInt::from(1)));
    }

    #[test]
    fn points_map_both_ways() {
        let e = Curve::from_ints([1, -1, 1, -5, 5]).unwrap();
        let m = e.short_model();
        let s = m.curve();
        let p = e.point(rat(1), rat(0)).unwrap();
        let sp = m.to_short(&p);
        assert!(s.contains(&sp));
        assert_eq!(m.from_short(&sp), p);
        assert_eq!(m.to_short(&e.add(&p, &p)), s.add(&sp, &sp));
    }

    #[test]
    fn rational_coefficients() {
        let half = BigRational::new(1.into(), 2.into());
        let e = Curve::new([rat(0), rat(0), rat(0), half.clone(), half]).unwrap();
        let m = e.short_model();
        assert_eq!(m.curve().j_invariant(), e.j_invariant());
    }
}
