//! Torsion subgroups `Z/m ⊕ Z/n` (`m | n`, `m ∈ {1, 2}`) and the exact
//! computation of `E(Q)_tors`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{exact_sqrt_rational, factor_integer, primes_from};
use crate::ec::{count_points, Curve, DivisionPolys, Point};
use crate::poly::rational_roots;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionGroup {
    m: u64,
    n: u64,
}

impl TorsionGroup {
    /// `Z/m ⊕ Z/n`; `None` unless `m ∈ {1, 2}` and `m | n`.
    pub fn new(m: u64, n: u64) -> Option<Self> {
        (n >= 1 && (m == 1 || m == 2) && n.is_multiple_of(m)).then_some(TorsionGroup { m, n })
    }

    pub fn trivial() -> Self {
        TorsionGroup { m: 1, n: 1 }
    }

    pub fn cyclic(n: u64) -> Self {
        TorsionGroup { m: 1, n }
    }

    /// `Z/2 ⊕ Z/2n`.
    pub fn full_two(n: u64) -> Self {
        TorsionGroup { m: 2, n: 2 * n }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.m * self.n
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    /// Component-wise divisibility.
    pub fn is_subgroup_of(&self, other: &TorsionGroup) -> bool {
        other.m.is_multiple_of(self.m) && other.n.is_multiple_of(self.n)
    }

    /// The `ℓ`-primary part as `(ℓ^a, ℓ^b)` with `a <= b`.
    pub fn primary(&self, l: u64) -> (u64, u64) {
        (l.pow(crate::arith::valuation_u64(self.m, l)), l.pow(crate::arith::valuation_u64(self.n, l)))
    }

    /// Number of points of order dividing `k`.
    pub fn count_killed_by(&self, k: u64) -> u64 {
        self.m.gcd(&k) * self.n.gcd(&k)
    }

    pub fn mazur_list() -> Vec<TorsionGroup> {
        let mut v: Vec<TorsionGroup> = (1..=10).chain([12]).map(Self::cyclic).collect();
        v.extend((1..=4).map(Self::full_two));
        v
    }

    pub fn in_mazur_list(&self) -> bool {
        Self::mazur_list().contains(self)
    }

    /// Groups that occur over the whole `Z_p`-tower: Mazur's list for
    /// `p = 2`, plus `Z/21` and `Z/27` for `p = 3`.
    pub fn tower_list(p: u64) -> Vec<TorsionGroup> {
        let mut v = Self::mazur_list();
        if p == 3 {
            v.push(Self::cyclic(21));
            v.push(Self::cyclic(27));
        }
        v
    }
}

impl fmt::Display for TorsionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.n) {
            (1, 1) => write!(f, "trivial"),
            (1, n) => write!(f, "Z/{n}"),
            (m, n) => write!(f, "Z/{m} x Z/{n}"),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("cannot parse torsion group {0:?}")]
pub struct ParseGroupError(String);

impl FromStr for TorsionGroup {
    type Err = ParseGroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGroupError(s.to_string());
        let t = s.trim();
        if t == "trivial" || t == "0" || t == "{O}" {
            return Ok(Self::trivial());
        }
        let parse_part = |p: &str| -> Result<u64, ParseGroupError> {
            let p = p.trim().trim_end_matches('Z');
            p.strip_prefix("Z/").ok_or_else(err)?.parse().map_err(|_| err())
        };
        let parts: Vec<&str> = t.split(['x', '+']).collect();
        match parts.as_slice() {
            [a] => TorsionGroup::new(1, parse_part(a)?).ok_or_else(err),
            [a, b] => TorsionGroup::new(parse_part(a)?, parse_part(b)?).ok_or_else(err),
            _ => Err(err()),
        }
    }
}

impl Serialize for TorsionGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TorsionGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionData {
    pub group: TorsionGroup,
    /// Generators of orders `n` and `m`, on the input model; empty for the
    /// trivial group, one point when cyclic.
    pub generators: Vec<Point>,
    /// `gcd` of `#E(F_q)` over the bounding primes.
    pub bound: u64,
    pub bound_primes: Vec<u64>,
}

/// Number of good primes used to bound the torsion order.
pub const BOUND_PRIMES: usize = 8;

/// `gcd(#E(F_q))` over the first eight primes `5 <= q < 200` of good reduction.
pub fn torsion_bound(e: &Curve) -> (u64, Vec<u64>) {
    let mut g = 0u64;
    let mut used = Vec::new();
    for q in primes_from(5).take_while(|&q| q < 200) {
        if let Ok(c) = count_points(e, q) {
            g = g.gcd(&c.count);
            used.push(q);
            if used.len() == BOUND_PRIMES {
                break;
            }
        }
    }
    (g, used)
}

/// Rational points (on the short model) whose x-coordinate is a root of `f`.
fn lift_roots(dp: &DivisionPolys, f: &crate::poly::IntPoly) -> Vec<Point> {
    let mut out = Vec::new();
    let a = BigRational::from_integer(dp.a().clone());
    let b = BigRational::from_integer(dp.b().clone());
    for x in rational_roots(f).expect("division polynomials are nonzero") {
        let rhs = &x * &x * &x + &a * &x + &b;
        if let Some(y) = exact_sqrt_rational(&rhs) {
            if y == BigRational::from_integer(0.into()) {
                out.push(Point::Affine(x, y));
            } else {
                out.push(Point::Affine(x.clone(), -y.clone()));
                out.push(Point::Affine(x, y));
            }
        }
    }
    out
}

/// Exact `E(Q)_tors` with generators.
pub fn rational_torsion(e: &Curve) -> TorsionData {
    let model = e.short_model();
    let short = model.curve();
    let (bound, bound_primes) = torsion_bound(e);
    let mut dp = DivisionPolys::new(model.a().clone(), model.b().clone());
    let (mut m, mut n) = (1u64, 1u64);
    let mut gen = Point::Infinity;
    let mut two_torsion: Vec<Point> = Vec::new();
    for (l, exp) in factor_integer(&BigInt::from(bound)) {
        let l: u64 = l.try_into().expect("small prime");
        let mut count = 1u64;
        let mut top: Option<(u64, Point)> = None;
        for k in 1..=exp {
            let order = l.pow(k);
            let f = dp.exact_order_poly(order);
            let pts = lift_roots(&dp, &f);
            if pts.is_empty() {
                break;
            }
            if l == 2 && k == 1 {
                two_torsion = pts.clone();
            }
            count += pts.len() as u64;
            top = Some((order, pts[0].clone()));
        }
        if let Some((order, p)) = top {
            let ml = count / order;
            m *= ml;
            n *= order;
            gen = short.add(&gen, &p);
        }
    }
    let group = TorsionGroup::new(m, n).expect("torsion structure");
    assert!(group.in_mazur_list(), "computed torsion {group} outside Mazur's list");
    let mut generators = Vec::new();
    if !group.is_trivial() {
        generators.push(model.from_short(&gen));
    }
    if m == 2 {
        let half = short.scalar_mul((n / 2) as i64, &gen);
        let other = two_torsion.into_iter().find(|t| *t != half).expect("second 2-torsion point");
        generators.push(model.from_short(&other));
    }
    TorsionData { group, generators, bound, bound_primes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tors(a: [i64; 5]) -> TorsionGroup {
        rational_torsion(&Curve::from_ints(a).unwrap()).group
    }

    #[test]
    fn parse_and_display() {
        for g in TorsionGroup::tower_list(3) {
            assert_eq!(g.to_string().parse::<TorsionGroup>().unwrap(), g);
        }
        assert_eq!("Z/2Z x Z/6Z".parse::<TorsionGroup>().unwrap(), TorsionGroup::full_two(3));
        assert!("Z/3 x Z/3".parse::<TorsionGroup>().is_err());
        assert_eq!(TorsionGroup::mazur_list().len(), 15);
    }

    #[test]
    fn known_groups() {
        assert_eq!(tors([0, 0, 1, 0, 0]), TorsionGroup::cyclic(3));
        assert_eq!(tors([0, 0, 0, 1, 7]), TorsionGroup::trivial());
        assert_eq!(tors([0, 0, 0, -1, 0]), TorsionGroup::full_two(1));
        assert_eq!(tors([1, 0, 1, -36, -70]), TorsionGroup::cyclic(6));
        assert_eq!(tors([0, 0, 0, -11, 14]), TorsionGroup::cyclic(4));
        assert_eq!(tors([0, -1, 1, 0, 0]), TorsionGroup::cyclic(5));
        assert_eq!(tors([0, -1, 0, -24, -36]), TorsionGroup::full_two(1));
    }

    #[test]
    fn generators_have_claimed_orders() {
        for a in [[1, 0, 1, -36, -70], [0, -1, 0, -24, -36], [1, 0, 1, -289, 1862], [0, 0, 1, -30, 63]] {
            let e = Curve::from_ints(a).unwrap();
            let t = rational_torsion(&e);
            let orders: Vec<u64> = t.generators.iter().map(|p| e.order_up_to(p, 16).unwrap()).collect();
            let mut expect = vec![t.group.n()];
            if t.group.m() == 2 {
                expect.push(2);
            }
            assert_eq!(orders, expect, "{a:?}");
        }
    }
}
