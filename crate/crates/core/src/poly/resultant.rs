//! Resultants and discriminants over Z, plus resultants in `x` of
//! bivariate polynomials computed by evaluation and interpolation in `y`.
//!
//! Convention: `Res(f, g) = lc(f)^deg(g) * prod g(alpha)` over the roots
//! `alpha` of `f`, which agrees with the Sylvester determinant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntPoly;

/// Subresultant pseudo-remainder sequence.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let (df, dg) = (f.deg(), g.deg());
    if df == 0 {
        return num_traits::pow(f.lc(), dg);
    }
    if dg == 0 {
        return num_traits::pow(g.lc(), df);
    }
    let ca = f.content();
    let cb = g.content();
    let mut a = f.div_scalar_exact(&ca);
    let mut b = g.div_scalar_exact(&cb);
    let t = num_traits::pow(ca, dg) * num_traits::pow(cb, df);
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
    }
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.prem(&b);
        a = b;
        let denom = &gg * num_traits::pow(h.clone(), delta);
        b = r.div_scalar_exact(&denom);
        gg = a.lc();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(gg.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.is_zero() {
            return BigInt::zero();
        }
        if b.deg() == 0 {
            let da = a.deg();
            let hb = num_traits::pow(b.lc(), da);
            let h_final = if da == 0 { h * hb } else { hb / num_traits::pow(h, da - 1) };
            return s * t * h_final;
        }
    }
}

/// `disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> BigInt {
    let n = f.deg();
    if n == 0 {
        return BigInt::one();
    }
    let r = resultant(f, &f.derivative()) / f.lc();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Polynomial in `x` whose coefficients are polynomials in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    pub x_coeffs: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut x_coeffs: Vec<IntPoly>) -> Self {
        while x_coeffs.last().is_some_and(|c| c.is_zero()) {
            x_coeffs.pop();
        }
        BiPoly { x_coeffs }
    }

    /// `y^2 - f(x)`.
    pub fn y2_minus(f: &IntPoly) -> Self {
        let mut c: Vec<IntPoly> = f.coeffs().iter().map(|a| IntPoly::constant(-a)).collect();
        if c.is_empty() {
            c.push(IntPoly::zero());
        }
        c[0] = &c[0] + &IntPoly::from_i64(&[0, 0, 1]);
        BiPoly::new(c)
    }

    pub fn deg_x(&self) -> usize {
        self.x_coeffs.len().saturating_sub(1)
    }

    pub fn deg_y(&self) -> usize {
        self.x_coeffs.iter().map(|c| c.deg()).max().unwrap_or(0)
    }

    pub fn eval_y(&self, y: &BigInt) -> IntPoly {
        IntPoly::new(self.x_coeffs.iter().map(|c| c.eval(y)).collect())
    }
}

/// `Res_x(f(x), g(x, y))` as a polynomial in `y`.
pub fn resultant_x(f: &IntPoly, g: &BiPoly) -> IntPoly {
    if f.is_zero() || g.x_coeffs.is_empty() {
        return IntPoly::zero();
    }
    let dg = g.deg_x();
    let bound = f.deg() * g.deg_y();
    let lc = f.lc();
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while xs.len() <= bound {
        let y0 = BigInt::from(k);
        let gy = g.eval_y(&y0);
        let mut r = resultant(f, &gy);
        let actual = gy.degree().unwrap_or(dg);
        if actual < dg {
            r *= num_traits::pow(lc.clone(), dg - actual);
        }
        xs.push(y0);
        ys.push(r);
        k = if k > 0 { -k } else { -k + 1 };
    }
    interpolate(&xs, &ys)
}

/// Newton interpolation through integer nodes; the result must be integral.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = num / den;
        }
    }
    let mut acc: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        let xi = BigRational::from_integer(xs[i].clone());
        for (j, c) in acc.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &xi;
        }
        next[0] += &dd[i];
        acc = next;
    }
    IntPoly::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "resultant interpolation produced a non-integer");
                c.to_integer()
            })
            .collect(),
    )
}
