//! Elliptic curves over Q in long Weierstrass form
//! `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.

mod count;
pub mod divpoly;
mod model;
mod point;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use count::{count_points, FieldPointCount};
pub use divpoly::{division_poly, exact_order_poly, psi_reduced, DivisionPolys};
pub use model::ShortModel;
pub use point::Point;

use crate::arith::exact_sqrt_rational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum EcError {
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    #[error("{0} is a prime of bad reduction")]
    BadReduction(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("twist parameter must be a nonzero squarefree integer, got {0}")]
    BadTwist(BigInt),
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    a: [BigRational; 5],
    c4: BigRational,
    c6: BigRational,
    b2: BigRational,
    disc: BigRational,
    j: BigRational,
}

/// Serialized form: the five a-invariants as decimal strings.
#[derive(Serialize, Deserialize)]
struct CurveRepr {
    a_invariants: Vec<String>,
}

impl Serialize for Curve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CurveRepr { a_invariants: self.a.iter().map(|x| x.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Curve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = CurveRepr::deserialize(d)?;
        let a: Vec<BigRational> = r
            .a_invariants
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
            .collect::<Result<_, _>>()?;
        let a: [BigRational; 5] = a.try_into().map_err(|_| D::Error::custom("need five a-invariants"))?;
        Curve::new(a).map_err(D::Error::custom)
    }
}

impl Curve {
    pub fn new(a: [BigRational; 5]) -> Result<Curve, EcError> {
        let [a1, a2, a3, a4, a6] = &a;
        let b2 = a1 * a1 + q(4) * a2;
        let b4 = q(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + q(4) * a6;
        let b8 = a1 * a1 * a6 + q(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - q(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + q(36) * &b2 * &b4 - q(216) * &b6;
        let disc = -(&b2 * &b2 * &b8) - q(8) * &b4 * &b4 * &b4 - q(27) * &b6 * &b6 + q(9) * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return Err(EcError::SingularCurve);
        }
        let j = &c4 * &c4 * &c4 / &disc;
        Ok(Curve { a, c4, c6, b2, disc, j })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Curve, EcError> {
        Curve::new(a.map(q))
    }

    pub fn from_bigints(a: &[BigInt; 5]) -> Result<Curve, EcError> {
        Curve::new(a.clone().map(BigRational::from_integer))
    }

    /// `y^2 = x^3 + A x + B`.
    pub fn short(a: BigInt, b: BigInt) -> Result<Curve, EcError> {
        Curve::from_bigints(&[BigInt::zero(), BigInt::zero(), BigInt::zero(), a, b])
    }

    pub fn a_invariants(&self) -> &[BigRational; 5] {
        &self.a
    }

    pub fn a1(&self) -> &BigRational {
        &self.a[0]
    }
    pub fn a2(&self) -> &BigRational {
        &self.a[1]
    }
    pub fn a3(&self) -> &BigRational {
        &self.a[2]
    }
    pub fn a4(&self) -> &BigRational {
        &self.a[3]
    }
    pub fn a6(&self) -> &BigRational {
        &self.a[4]
    }

    pub fn b2(&self) -> &BigRational {
        &self.b2
    }

    pub fn c4(&self) -> &BigRational {
        &self.c4
    }

    pub fn c6(&self) -> &BigRational {
        &self.c6
    }

    pub fn discriminant(&self) -> &BigRational {
        &self.disc
    }

    pub fn j_invariant(&self) -> &BigRational {
        &self.j
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(|x| x.is_integer())
    }

    pub fn short_model(&self) -> ShortModel {
        ShortModel::of(self)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let [a1, a2, a3, a4, a6] = &self.a;
                y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6
            }
        }
    }

    pub fn point(&self, x: BigRational, y: BigRational) -> Result<Point, EcError> {
        let p = Point::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(EcError::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y - self.a1() * x - self.a3()),
        }
    }

    pub fn add(&self, p: &Point, r: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, r) {
            (Point::Infinity, _) => return r.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, a6] = &self.a;
        let (lambda, nu) = if x1 == x2 {
            let denom = q(2) * y1 + a1 * x1 + a3;
            if y1 + y2 + a1 * x2 + a3 == BigRational::zero() || denom.is_zero() {
                return Point::Infinity;
            }
            let lambda = (q(3) * x1 * x1 + q(2) * a2 * x1 + a4 - a1 * y1) / &denom;
            let nu = (-(x1 * x1 * x1) + a4 * x1 + q(2) * a6 - a3 * y1) / &denom;
            (lambda, nu)
        } else {
            let dx = x2 - x1;
            ((y2 - y1) / &dx, (y1 * x2 - y2 * x1) / &dx)
        };
        let x3 = &lambda * &lambda + a1 * &lambda - a2 - x1 - x2;
        let y3 = -(&lambda + a1) * &x3 - nu - a3;
        Point::Affine(x3, y3)
    }

    /// `n * p` by double-and-add; negative `n` uses `-p`.
    pub fn scalar_mul(&self, n: i64, p: &Point) -> Point {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// Order of `p` if it is at most `max`.
    pub fn order_up_to(&self, p: &Point, max: u64) -> Option<u64> {
        let mut acc = p.clone();
        for k in 1..=max {
            if acc.is_infinity() {
                return Some(k);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// Quadratic twist by the squarefree integer `d`, returned as the short
    /// model `y^2 = x^3 + A d^2 x + B d^3`.
    pub fn quadratic_twist(&self, d: &BigInt) -> Result<Curve, EcError> {
        if d.is_zero() || !crate::arith::is_squarefree(d) {
            return Err(EcError::BadTwist(d.clone()));
        }
        let m = self.short_model();
        Curve::short(m.a() * d * d, m.b() * d * d * d)
    }

    /// Whether the two curves are isomorphic over Q.
    pub fn is_isomorphic(&self, other: &Curve) -> bool {
        if self.j != other.j {
            return false;
        }
        let (c4a, c6a, c4b, c6b) = (&self.c4, &self.c6, &other.c4, &other.c6);
        if c4a.is_zero() {
            // u^6 = c6b / c6a must be a sixth power
            let r = c6b / c6a;
            return exact_sqrt_rational(&r).is_some_and(|s| rational_cube_root(&s).is_some());
        }
        if c6a.is_zero() {
            let r = c4b / c4a;
            return exact_sqrt_rational(&r).is_some_and(|s| exact_sqrt_rational(&s).is_some());
        }
        // u^2 = (c6b c4a) / (c6a c4b)
        let u2 = (c6b * c4a) / (c6a * c4b);
        exact_sqrt_rational(&u2).is_some() && &u2 * &u2 * c4a == *c4b
    }

    pub fn is_short(&self) -> bool {
        self.a[0].is_zero() && self.a[1].is_zero() && self.a[2].is_zero()
    }
}

fn rational_cube_root(r: &BigRational) -> Option<BigRational> {
    let cube = |n: &BigInt| -> Option<BigInt> {
        let c = n.cbrt();
        (&c * &c * &c == *n).then_some(c)
    };
    Some(BigRational::new(cube(r.numer())?, cube(r.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        q(n)
    }

    #[test]
    fn j_invariants_of_cm_curves() {
        assert_eq!(*Curve::from_ints([0, 0, 0, 0, 1]).unwrap().j_invariant(), rat(0));
        assert_eq!(*Curve::from_ints([0, 0, 0, 1, 0]).unwrap().j_invariant(), rat(1728));
        assert_eq!(Curve::from_ints([0, 0, 0, 0, 0]), Err(EcError::SingularCurve));
    }

    #[test]
    fn order_three_point() {
        let e = Curve::from_ints([0, 0, 0, 0, 4]).unwrap();
        let p = e.point(rat(0), rat(2)).unwrap();
        let two_p = e.add(&p, &p);
        assert_eq!(two_p, Point::Affine(rat(0), rat(-2)));
        assert!(e.add(&two_p, &p).is_infinity());
        assert!(e.scalar_mul(3, &p).is_infinity());
        assert!(e.add(&p, &e.neg(&p)).is_infinity());
        assert_eq!(e.add(&p, &Point::Infinity), p);
    }

    #[test]
    fn long_form_group_law() {
        // 11a3: y^2 + y = x^3 - x^2 has (0,0) of order 5
        let e = Curve::from_ints([0, -1, 1, 0, 0]).unwrap();
        let p = e.point(rat(0), rat(0)).unwrap();
        assert_eq!(e.order_up_to(&p, 10), Some(5));
        for k in 1..5 {
            assert!(e.contains(&e.scalar_mul(k, &p)));
        }
        assert_eq!(e.scalar_mul(-2, &p), e.neg(&e.scalar_mul(2, &p)));
    }

    #[test]
    fn twists_keep_j() {
        let e = Curve::from_ints([0, 0, 0, 1, 1]).unwrap();
        let t = e.quadratic_twist(&BigInt::from(2)).unwrap();
        assert_eq!(t.j_invariant(), e.j_invariant());
        assert!(!t.is_isomorphic(&e));
        let back = t.quadratic_twist(&BigInt::from(2)).unwrap();
        assert!(back.is_isomorphic(&e));
        assert!(e.quadratic_twist(&BigInt::from(1)).unwrap().is_isomorphic(&e));
        assert!(e.quadratic_twist(&BigInt::from(4)).is_err());
        assert!(e.quadratic_twist(&BigInt::from(0)).is_err());
    }
}
