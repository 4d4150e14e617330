//! Division polynomials of `y^2 = x^3 + A x + B` as polynomials in `x`.
//!
//! `psi_reduced(n)` is `psi_n` for odd `n` and `psi_n / (2y)` for even `n`
//! (degrees `(n^2-1)/2` and `(n^2-4)/2`). The x-form `division_poly(n)`
//! multiplies the even case by `x^3 + A x + B`, so that its roots are
//! exactly the x-coordinates of the nonzero `n`-torsion points.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Curve;
use crate::arith::factor_integer;
use crate::poly::IntPoly;

/// Memoized division polynomials of one short model.
#[derive(Clone, Debug)]
pub struct DivisionPolys {
    a: BigInt,
    b: BigInt,
    f: IntPoly,
    f2_16: IntPoly,
    phi: HashMap<u64, IntPoly>,
    exact: HashMap<u64, IntPoly>,
}

impl DivisionPolys {
    pub fn new(a: BigInt, b: BigInt) -> Self {
        let f = IntPoly::new(vec![b.clone(), a.clone(), BigInt::zero(), BigInt::one()]);
        let f2_16 = (&f * &f).scale(&BigInt::from(16));
        let mut phi = HashMap::new();
        let (a2, b2) = (&a * &a, &b * &b);
        phi.insert(0, IntPoly::zero());
        phi.insert(1, IntPoly::one());
        phi.insert(2, IntPoly::one());
        phi.insert(
            3,
            IntPoly::new(vec![-&a2, BigInt::from(12) * &b, BigInt::from(6) * &a, BigInt::zero(), BigInt::from(3)]),
        );
        phi.insert(
            4,
            IntPoly::new(vec![
                BigInt::from(-2) * &a2 * &a - BigInt::from(16) * &b2,
                BigInt::from(-8) * &a * &b,
                BigInt::from(-10) * &a2,
                BigInt::from(40) * &b,
                BigInt::from(10) * &a,
                BigInt::zero(),
                BigInt::from(2),
            ]),
        );
        DivisionPolys { a, b, f, f2_16, phi, exact: HashMap::new() }
    }

    pub fn for_curve(e: &Curve) -> Self {
        let m = e.short_model();
        Self::new(m.a().clone(), m.b().clone())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// `x^3 + A x + B`.
    pub fn cubic(&self) -> &IntPoly {
        &self.f
    }

    /// `psi_n` (odd `n`) or `psi_n / (2y)` (even `n`).
    pub fn psi_reduced(&mut self, n: u64) -> IntPoly {
        if let Some(p) = self.phi.get(&n) {
            return p.clone();
        }
        let m = n / 2;
        let [pm2, pm1, p0, pp1, pp2] = [m.saturating_sub(2), m - 1, m, m + 1, m + 2].map(|k| self.psi_reduced(k));
        let out = if n % 2 == 1 {
            let t1 = &pp2 * &(&(&p0 * &p0) * &p0);
            let t2 = &pm1 * &(&(&pp1 * &pp1) * &pp1);
            if m.is_multiple_of(2) {
                &(&self.f2_16 * &t1) - &t2
            } else {
                &t1 - &(&self.f2_16 * &t2)
            }
        } else {
            let inner = &(&pp2 * &(&pm1 * &pm1)) - &(&pm2 * &(&pp1 * &pp1));
            &p0 * &inner
        };
        self.phi.insert(n, out.clone());
        out
    }

    /// x-form: roots are the x-coordinates of the nonzero `n`-torsion points.
    pub fn division_poly(&mut self, n: u64) -> IntPoly {
        let p = self.psi_reduced(n);
        if n.is_multiple_of(2) {
            &p * &self.f
        } else {
            p
        }
    }

    /// Primitive polynomial whose roots are the x-coordinates of the points
    /// of exact order `n` (`n >= 2`): the x-form divided by `f_d` for every
    /// divisor `1 < d < n`.
    pub fn exact_order_poly(&mut self, n: u64) -> IntPoly {
        assert!(n >= 2, "exact order requires n >= 2");
        if let Some(p) = self.exact.get(&n) {
            return p.clone();
        }
        let mut out = self.division_poly(n).primitive_part();
        for d in divisors(n) {
            if d > 1 && d < n {
                let fd = self.exact_order_poly(d);
                out = out
                    .div_exact(&fd)
                    .or_else(|| {
                        let k = out.deg() - fd.deg() + 1;
                        out.scale(&num_traits::pow(fd.lc(), k)).div_exact(&fd)
                    })
                    .expect("division polynomial recurrence is inconsistent")
                    .primitive_part();
            }
        }
        self.exact.insert(n, out.clone());
        out
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = vec![1];
    for (p, e) in factor_integer(&BigInt::from(n)) {
        let p: u64 = p.try_into().expect("small");
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

pub fn psi_reduced(e: &Curve, n: u64) -> IntPoly {
    DivisionPolys::for_curve(e).psi_reduced(n)
}

pub fn division_poly(e: &Curve, n: u64) -> IntPoly {
    DivisionPolys::for_curve(e).division_poly(n)
}

pub fn exact_order_poly(e: &Curve, n: u64) -> IntPoly {
    DivisionPolys::for_curve(e).exact_order_poly(n)
}
